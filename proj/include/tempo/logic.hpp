#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempo/lang.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// Symbolic variables. Assertions are families over a finite valuation space;
// a family denotes the union of its instances (implicit existential closure).
// ---------------------------------------------------------------------------

struct SymVar {
    std::string name;
    std::vector<Value> domain;
};

using Valuation = std::vector<Value>;

struct SymTable {
    std::vector<SymVar> vars;
    int index_of(const std::string& name) const;
    std::vector<Valuation> valuations() const;
};

struct StateFamily {
    std::string name;
    std::function<StatePredPtr(const Valuation&)> fn;
};

struct PredFamily {
    std::string name;
    std::function<TempPred(const Valuation&)> fn;
};

PredFamily lift_closed(const std::string& name, TempPred t);
std::vector<TempPred> instantiate(const PredFamily& fam, const SymTable& sym);

// ---------------------------------------------------------------------------
// hypotheses and their discharge
// ---------------------------------------------------------------------------

// hyp<p><q><o>, universally quantified over the symbol table. A present
// program selects the control-flow-sensitive form (prog-hyp), discharged
// against enrich(program, I) instead of stmt(I).
struct Hypothesis {
    std::string name;
    SymTable sym;
    StateFamily p, q, o;
    ProgramPtr program;  // null: stmt(X) form
};

struct DischargeCertificate {
    std::string hypothesis;
    enum Mode { Invariant, Bounded } mode = Bounded;
    bool holds = false;
    bool budget_exceeded = false;
    int bound = 0;
    std::string detail;
    std::vector<std::string> checks;  // per-clause results in invariant mode
    std::optional<History> witness;
};

// The governed step graph from the universe's states, precomputed once so
// repeated discharges over the same interference set stay cheap.
struct GovernedClosure {
    std::vector<State> nodes;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> edges;  // (target, recorded label)
    std::size_t seed_count = 0;  // nodes[0..seed_count) are the universe states
    int depth = 0;
    bool budget_exceeded = false;
};
GovernedClosure build_governed_closure(Universe& u, const std::vector<Interference>& I,
                                       const std::vector<LocalPart>& locals, int depth,
                                       std::uint64_t budget = 2'000'000);

// Bounded semantic discharge: enumerate governed computations from Now(p)
// states up to `depth`; every visit satisfying Now(q) must satisfy wpast(o).
// A precomputed closure avoids re-deriving the step graph per valuation.
DischargeCertificate discharge_bounded(Universe& u, const Hypothesis& h, const std::vector<Interference>& I,
                                       const std::vector<LocalPart>& locals, int depth,
                                       ExecMode mode = global_exec_mode(),
                                       const GovernedClosure* closure = nullptr);

// Invariant-mode discharge: inv contains Now(p), inv cap Now(q) entails
// wpast(o), and inv is stable under interferences and self-interferences.
DischargeCertificate discharge_invariant(Universe& u, const Hypothesis& h, const PredFamily& inv,
                                         const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                                         int bound, ExecMode mode = global_exec_mode());

// ---------------------------------------------------------------------------
// proof outlines
// ---------------------------------------------------------------------------

enum class TIVariant { Ordered, Unordered, ControlFlow };

// Hook for the linearizability layer: validates token handling per command
// step. Returns an error string or empty.
struct LinAnnot;
class LinChecker {
public:
    virtual ~LinChecker() = default;
    virtual std::string check_step(Universe& u, const LinAnnot& annot, const std::vector<TempPred>& pre,
                                   const Command& cmd, int bound) = 0;
};

struct OutlineItem {
    enum K { Com, Conseq, TI, Choice, Loop } kind = Com;
    // Com
    Command cmd;
    std::shared_ptr<LinAnnot> lin;
    // TI
    TIVariant variant = TIVariant::Ordered;
    StateFamily ti_p, ti_q, ti_o;
    ProgramPtr ti_program;  // ControlFlow only
    bool fused = false;     // rule applied together with the preceding command
    // Choice / Loop
    std::vector<std::vector<OutlineItem>> branches;
    std::vector<OutlineItem> body;
    // assertion after the item
    PredFamily post;
};

struct Outline {
    std::string name;
    SymTable sym;
    PredFamily pre;
    std::vector<OutlineItem> items;
    // value returned at the end, evaluated on a final state; nullopt for none
    std::function<std::optional<int>(const State&)> returns;
};

struct StepFailure {
    std::string point;
    std::string rule;
    std::string detail;
    std::optional<Computation> witness;
};

// The checker's result: collected intermediary assertions, interferences
// (one per executed command), and hypotheses, plus the triple itself.
struct Judgment {
    std::string outline;
    bool accepted = false;
    int bound = 0;
    std::vector<TempPred> P;
    // assertions in effect at command boundaries, for the global
    // interference-freedom check (consequence chains are collapsed)
    std::vector<TempPred> P_ifree;
    std::vector<Interference> I;
    std::vector<Hypothesis> H;
    ProgramPtr program;
    std::vector<TempPred> pre_instances;
    std::vector<TempPred> post_instances;
    std::vector<StepFailure> failures;
};

Judgment check_outline(Universe& u, const Outline& outline, int bound, LinChecker* lin = nullptr,
                       ExecMode mode = global_exec_mode());

// The standalone temporal interpolation step: from a (within wpast(p) and
// now(q), or hist(p,S) and now(q)) conclude a cap past(o), emitting the
// hypotheses the conclusion is conditional on.
struct TIResult {
    bool applicable = false;
    std::string error;
    std::vector<TempPred> conclusion;  // per valuation
    std::vector<Hypothesis> emitted;
};
TIResult apply_temporal_interpolation(Universe& u, const std::vector<TempPred>& a, const SymTable& sym,
                                      const StateFamily& p, const StateFamily& q, const StateFamily& o,
                                      TIVariant variant, ProgramPtr S, int bound);

// ---------------------------------------------------------------------------
// interference freedom and soundness certification
// ---------------------------------------------------------------------------

struct IfreeEntry {
    std::string predicate;
    std::string interference;
    bool free = true;
    std::optional<Computation> witness;
};

struct IfreeReport {
    std::vector<IfreeEntry> entries;
    bool all_free() const {
        for (const auto& e : entries)
            if (!e.free) return false;
        return true;
    }
};

IfreeReport check_interference_freedom(Universe& u, const std::vector<TempPred>& P,
                                       const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                                       int bound, ExecMode mode = global_exec_mode());

struct SoundnessReport {
    std::string outline;
    bool certified = false;
    bool budget_exceeded = false;
    std::string detail;
    std::uint64_t runs = 0;
};

// Bounded semantic validation of the G-strengthened triple: every governed
// execution of the judgment's program under I from pre lands in post.
// Requires every hypothesis of the judgment to be discharged first.
SoundnessReport certify_soundness(Universe& u, const Judgment& j, const std::vector<Interference>& I,
                                  const std::vector<LocalPart>& locals,
                                  const std::vector<DischargeCertificate>& discharged, int depth);

}  // namespace tempo
