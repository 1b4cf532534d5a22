#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempo/preds.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// expressions over local variables
// ---------------------------------------------------------------------------

struct ValueExpr {
    enum K { Const, VarRef, WrapA, WrapI, UnwrapA, Field };
    K kind = Const;
    Value cval;
    int var = -1;
    int idx = 0;

    static ValueExpr constant(Value v) { return ValueExpr{Const, v, -1, 0}; }
    static ValueExpr var_ref(int v) { return ValueExpr{VarRef, Value::none(), v, 0}; }
    static ValueExpr wrap_a(int v) { return ValueExpr{WrapA, Value::none(), v, 0}; }
    static ValueExpr wrap_i(int v) { return ValueExpr{WrapI, Value::none(), v, 0}; }
    static ValueExpr unwrap_a(int v) { return ValueExpr{UnwrapA, Value::none(), v, 0}; }
    // payload slot of a structured value (descriptor fields, tag payloads)
    static ValueExpr field(int v, int idx) { return ValueExpr{Field, Value::none(), v, idx}; }

    // nullopt marks an evaluation fault (unset variable, wrong shape)
    std::optional<Value> eval(const State& s) const;
};

// Address of a heap cell: either a direct global address or a field of the
// block identified by a node-valued variable (base + id * stride + field).
struct AddrExpr {
    int direct = -1;
    int var = -1;
    int base = 0;
    int stride = 0;
    int field = 0;

    static AddrExpr at(int a) { return AddrExpr{a, -1, 0, 0, 0}; }
    static AddrExpr field_of(int var, int base, int stride, int field) {
        return AddrExpr{-1, var, base, stride, field};
    }

    std::optional<int> eval(const State& s) const;
};

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

// When a ghost decoration fires: unconditionally, only when a CmpX step
// matched, only when a CmpX step failed against an inactive register, or only
// when the read result is an inactive register value.
enum class GhostCond { Always, CmpxSuccess, CmpxFailInactive, ReadInactive };

// Optional ghost decoration, applied atomically with the base effect: trade
// an obligation for a receipt (or record a persistent snapshot), bump a
// clock, update abstract contents.
struct GhostEffect {
    bool has_trade = false;
    bool snapshot_only = false;  // record the persistent receipt without a token trade
    TokenTag obl;
    TokenTag rct;
    int result_src_var = -1;   // when >= 0, rct.args[result_slot] := value of this var
    int result_src_var2 = -1;  // when also >= 0, the two variables are summed
    int result_src_field = 0;  // payload slot of the source variable
    int result_slot = 0;
    bool clocked = false;
    int clock_root = 0;
    bool update_contents = false;
    int contents_root = 0;
    int contents_src_var = -1;  // IntVal from var; otherwise contents_val
    AbstractVal contents_val;
    GhostCond when = GhostCond::Always;
    bool active() const { return has_trade || snapshot_only || clocked || update_contents; }
};

struct Command {
    enum Kind { Skip, Read, ReadMany, Write, Faa, CmpX, Assume, LocalAssign, Alloc, Lock, Unlock, Choose };
    Kind kind = Skip;
    int label = 0;  // unique per syntactic occurrence
    std::string text = "skip";

    AddrExpr addr;
    ValueExpr value;     // write value / cmpx new / local assign rhs
    ValueExpr expected;  // cmpx expected
    int var = -1;        // result var (read/cmpx), alloc var, choose var, assign var
    int delta = 0;       // faa

    StatePredPtr assume_pred;  // assume

    // alloc: block = alloc_base + id * alloc_stride; ids drawn from the freelist
    int alloc_base = 0;
    int alloc_stride = 1;
    std::vector<std::pair<int, ValueExpr>> init_fields;

    // choose: nondeterministic assignment from a state-derived candidate set
    std::function<std::vector<Value>(const State&)> chooser;

    // readmany: one atomic multi-cell read, for lock-protected validations
    std::vector<std::pair<AddrExpr, int>> reads;

    // self-interference guard: assume(guard * true) fused before the effect
    std::shared_ptr<const TempPred> sched_guard;

    GhostEffect ghost;
};

Command cmd_skip(int label = 0);
Command cmd_read(int label, AddrExpr a, int var, std::string text);
Command cmd_write(int label, AddrExpr a, ValueExpr v, std::string text);
Command cmd_faa(int label, AddrExpr a, int delta, std::string text);
Command cmd_cmpx(int label, AddrExpr a, ValueExpr expected, ValueExpr neu, int result_var, std::string text);
Command cmd_assume(int label, StatePredPtr p, std::string text);
Command cmd_assign(int label, int var, ValueExpr v, std::string text);
Command cmd_alloc(int label, int var, int base, int stride, std::vector<std::pair<int, ValueExpr>> fields,
                  std::string text);
Command cmd_lock(int label, AddrExpr a, std::string text);
Command cmd_unlock(int label, AddrExpr a, std::string text);
Command cmd_choose(int label, int var, std::function<std::vector<Value>(const State&)> ch, std::string text);

// All successor states; faults yield the abort sentinel, domain overflow
// prunes the branch, blocked locks and failed assumes yield no successor.
std::vector<State> exec_command(Universe& u, const Command& c, const State& s);

// Lifts to computations/histories: appends one state (and records the label).
void exec_on_computation(Universe& u, const Command& c, const Computation& in, std::vector<Computation>& out);
void exec_on_history(Universe& u, const Command& c, const History& in, std::vector<History>& out);

// ---------------------------------------------------------------------------
// programs
// ---------------------------------------------------------------------------

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct Program {
    enum Kind { PCom, PSeq, PChoice, PLoop };
    Kind kind = PCom;
    Command com;
    std::vector<ProgramPtr> kids;
};

ProgramPtr prog_com(Command c);
ProgramPtr prog_seq(std::vector<ProgramPtr> kids);
ProgramPtr prog_choice(std::vector<ProgramPtr> kids);
ProgramPtr prog_loop(ProgramPtr body);

// while (cond) body, desugared into loop/choice with assume guards
ProgramPtr prog_while(StatePredPtr cond, int label_t, int label_f, ProgramPtr body, const std::string& text);

// Commands executable first, with their continuations after silent closure
// over sequencing, choice, and loop unfolding. cont may be null.
void first_steps(const ProgramPtr& p, const ProgramPtr& cont,
                 std::vector<std::pair<const Command*, ProgramPtr>>& out);
// Can the program reach completion by silent steps only?
bool can_finish(const ProgramPtr& p);

// Regular language of the program over command labels.
std::shared_ptr<const Dfa> program_language(const ProgramPtr& p);

void collect_commands(const ProgramPtr& p, std::vector<const Command*>& out);
std::string to_string(const ProgramPtr& p);

// ---------------------------------------------------------------------------
// interference
// ---------------------------------------------------------------------------

struct Interference {
    TempPred guard;
    Command cmd;
    std::string name;
};

// The local states an interfering thread may bring along; defaults to just
// the empty local part.
struct LocalPart {
    Heap lheap;
    Ghost lghost;
    VarMap lvars;
};

// Per the interference semantics: only the global portion changes, the guard
// existentially binds the interfering thread's local part. The guard's now
// projection is evaluated; past information never blocks.
std::vector<State> apply_interference(Universe& u, const Interference& i, const State& s,
                                      const std::vector<LocalPart>& interferer_locals);

// atomic { assume(guard * true); cmd }
Command self_interference(const TempPred& guard, const Command& cmd);

// (sum of self-interferences)*; empty set degenerates to a skip-only loop
ProgramPtr stmt_of(const std::vector<Interference>& interferences);

// Replaces every labeled command by the guarded choice over the matching
// interferences; throws on a label with no interference.
ProgramPtr enrich(const ProgramPtr& p, const std::vector<Interference>& interferences);

// ---------------------------------------------------------------------------
// governed computations
// ---------------------------------------------------------------------------

struct GovernedOptions {
    int depth = 4;                   // maximum number of states per element
    bool record_commands = false;    // yield histories instead of computations
    std::uint64_t budget = 50'000'000;
    bool guard_now_projection = true;  // report: how self-interference guards were read
};

struct GovernedStats {
    std::uint64_t visited = 0;
    bool budget_exceeded = false;
};

// Visit callback: path so far (states plus recorded labels) and the program
// still to execute; nullptr-able remaining is completable via can_finish.
using GovernedVisit =
    std::function<bool(const std::vector<StateId>&, const std::vector<int>&, const ProgramPtr&)>;

// Enumerates every computation (or projected history) generated by executing
// `program` under the interference set from the given initial states. The
// callback sees every prefix; returning false aborts the enumeration.
GovernedStats run_governed(Universe& u, const ProgramPtr& program, const std::vector<Interference>& interferences,
                           const std::vector<LocalPart>& interferer_locals, const std::vector<StateId>& init,
                           const GovernedOptions& opts, const GovernedVisit& visit);

// G(I) itself: run stmt_of(I) under I.
GovernedStats governed(Universe& u, const std::vector<Interference>& interferences,
                       const std::vector<LocalPart>& interferer_locals, const std::vector<StateId>& init,
                       const GovernedOptions& opts, const GovernedVisit& visit);

}  // namespace tempo
