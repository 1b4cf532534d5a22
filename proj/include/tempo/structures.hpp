#pragma once

#include <array>
#include <memory>

#include "tempo/lin.hpp"
#include "tempo/logic.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// distributed counter: the full proof-outline workbench
// ---------------------------------------------------------------------------

// ghost token operation ids
constexpr std::uint8_t kOpRead = 1;
constexpr std::uint8_t kOpInc = 2;
constexpr std::uint8_t kOpContains = 3;
constexpr std::uint8_t kOpInsert = 4;
constexpr std::uint8_t kOpDelete = 5;
constexpr std::uint8_t kOpRdcss = 6;
constexpr std::uint8_t kOpGet = 7;
constexpr std::uint8_t kOpWriteL = 8;

struct CounterWorkbench {
    std::shared_ptr<Universe> proof_universe;      // cells, vars, tokens
    std::shared_ptr<Universe> discharge_universe;  // cells only
    SeqSpec spec;
    SymTable sym;  // nl, nr, nrp
    Outline read_outline;
    Outline inc_outline;
    Outline broken_read_outline;  // x bound to nl+1: must be rejected
    Hypothesis hypothesis;        // hyp<p><q><o> of the read proof
    PredFamily invariant;         // the inductive invariant proving it
    std::vector<Interference> discharge_interferences;
    std::vector<LocalPart> proof_interferer_locals;
    int max_value = 3;
};

CounterWorkbench make_counter_workbench(int max_value = 3);

// thread programs for the explorer
ProgramPtr counter_read_program(Universe& u);
ProgramPtr counter_inc_program(Universe& u);

// ---------------------------------------------------------------------------
// logical-ordering list
// ---------------------------------------------------------------------------

enum class LoVariant { Original, Feldman, Fixed };

// node fields, one heap cell each
enum LoField : int { FKey = 0, FMark = 1, FLock = 2, FPred = 3, FSucc = 4, FVis = 5, kLoFields = 6 };

struct LoUniverseSpec {
    int pool = 5;             // nodes including the two sentinels
    std::vector<int> keys{1, 2, 3};
    LoVariant variant = LoVariant::Fixed;
    bool fault_unlink_without_mark = false;  // fault injection for delete
};

class LoStructure {
public:
    explicit LoStructure(LoUniverseSpec spec);

    const LoUniverseSpec& spec() const { return spec_; }
    Universe& universe() { return *u_; }
    std::shared_ptr<Universe> universe_ptr() { return u_; }

    // initial state: sentinels linked, optional preloaded keys
    State initial_state(const std::vector<int>& preload = {}) const;

    // labeled thread program for an operation
    ProgramPtr program_for(const std::string& op, int key) const;

    // the set abstraction: unmarked nodes on the flow path
    SeqSpec set_specification() const;

    int node_addr(int node, LoField f) const { return node * kLoFields + f; }
    int var(const std::string& name) const { return u_->var_id(name); }

    // canonical interference set over the mutating commands, guards derived
    // from the operational contexts the mutators establish
    std::vector<Interference> interference_set() const;
    std::vector<LocalPart> interferer_locals() const;

    // reachable snapshot states for hypothesis discharge
    std::vector<State> reachable_states(int threads, int steps) const;

private:
    LoUniverseSpec spec_;
    std::shared_ptr<Universe> u_;
};

// key interval sets over the bounded key domain: bitmask over
// {-inf, keys..., +inf}
struct InsetMap {
    std::vector<std::uint32_t> inset;   // per node
    std::vector<std::uint32_t> keyset;  // inset cap [-inf, key]
    std::vector<std::uint32_t> contents_bits;
};

InsetMap compute_insets(const LoStructure& lo, const State& snapshot);

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// I1..I4 plus keyset disjointness and contents within keysets
InvariantReport check_structure_invariants(const LoStructure& lo, const State& snapshot);

// hypotheses of the contains proof plus key-immutability and
// mark-monotonicity, and the paper's invariant shape now(q) -> wpast(p cap q)
struct LoHypotheses {
    std::vector<Hypothesis> hyps;
    std::vector<PredFamily> invariants;  // aligned with hyps
};
LoHypotheses lo_contains_hypotheses(LoStructure& lo);

// ---------------------------------------------------------------------------
// rdcss
// ---------------------------------------------------------------------------

struct RdcssSpecConfig {
    int values = 2;       // register/location values 0..values-1
    int descriptors = 2;  // descriptor pool, never reused
};

class RdcssStructure {
public:
    explicit RdcssStructure(RdcssSpecConfig cfg);

    Universe& universe() { return *u_; }
    std::shared_ptr<Universe> universe_ptr() { return u_; }
    const RdcssSpecConfig& config() const { return cfg_; }

    State initial_state(int r0, int l0) const;

    // ops: rdcss(n1,m1,n2), get(), writel(v)
    ProgramPtr program_for(const std::string& op, const std::vector<int>& args) const;

    SeqSpec specification() const;

    int root_addr() const { return 0; }
    int ell_addr() const { return 1 + cfg_.descriptors; }
    int desc_addr(int d) const { return 1 + d; }

    std::vector<Interference> interference_set() const;
    std::vector<LocalPart> interferer_locals() const;
    std::vector<State> reachable_states() const;

    // Appendix-B hypotheses: clock monotonicity, the snapshot contradiction,
    // and the unordered descriptor-agreement hypothesis
    std::vector<Hypothesis> hypotheses() const;

private:
    RdcssSpecConfig cfg_;
    std::shared_ptr<Universe> u_;
};

}  // namespace tempo
