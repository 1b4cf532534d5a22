#pragma once

#include "tempo/structures.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// interleaving exploration
// ---------------------------------------------------------------------------

struct OpInstance {
    std::string op;
    std::vector<int> args;
    ProgramPtr program;
    std::function<std::optional<int>(const State&)> result;
};

struct Event {
    int thread = 0;
    bool response = false;
    std::string op;
    std::vector<int> args;
    std::optional<int> result;
};
using OpHistory = std::vector<Event>;

std::string to_string(const OpHistory& h);

struct ExploreOptions {
    int steps_per_thread = 8;  // state-touching commands per thread
    std::uint64_t config_budget = 4'000'000;
    bool history_in_key = true;   // distinguish configs by their event history
    bool record_trace = false;
    bool schedule_in_key = false;  // no merging at all: every schedule is a run
};

struct ExploredRun {
    OpHistory history;
    State final_state;
    bool complete = false;  // all threads ran their programs to completion
    std::vector<std::string> trace;           // command texts in schedule order
    std::vector<State> visited_states;        // global states along the run
};

struct ExploreOutcome {
    std::uint64_t configs = 0;
    bool budget_exceeded = false;
    std::uint64_t runs = 0;
};

// Depth-first exploration of all schedules up to the bounds with
// visited-configuration hashing. The sink sees each maximal run (all threads
// done, or no step enabled within the bounds); returning false stops the
// exploration. The state callback, when set, sees every visited global state.
ExploreOutcome run_interleavings(Universe& u, const State& initial,
                                 const std::vector<std::vector<OpInstance>>& threads, const ExploreOptions& opts,
                                 const std::function<bool(const ExploredRun&)>& sink,
                                 const std::function<void(const State&)>& on_state = nullptr);

// ---------------------------------------------------------------------------
// linearizability oracle
// ---------------------------------------------------------------------------

struct LinVerdict {
    bool linearizable = false;
    bool budget_exceeded = false;
    std::vector<std::string> witness_order;           // sequential witness if linearizable
    std::vector<std::string> orders_tried;            // per-order violation reasons otherwise
    std::string reason;
};

// Wing-Gong style search: a linearization order consistent with real-time
// precedence and the sequential specification; pending operations are
// considered both completable and removable.
LinVerdict wing_gong_check(const OpHistory& h, const SeqSpec& spec, const AbstractVal& initial);

// ---------------------------------------------------------------------------
// canned checks
// ---------------------------------------------------------------------------

struct ViolationReport {
    bool found = false;
    bool budget_exceeded = false;
    OpHistory history;
    LinVerdict verdict;
    std::vector<std::string> trace;
    std::uint64_t runs_checked = 0;
    std::string detail;
};

// Drives the explorer over an operation mix and checks every history;
// returns the first violation with its trace, or certifies exhaustion.
ViolationReport find_violation(LoStructure& lo, const std::vector<std::vector<std::pair<std::string, int>>>& mix,
                               const std::vector<int>& preload, const ExploreOptions& opts);

struct ReachabilityInvariantReport {
    bool all_hold = true;
    std::uint64_t states_checked = 0;
    std::string witness;
    std::vector<std::string> violations;
};

// Runs the structural invariant check on every reachable state of the mix.
ReachabilityInvariantReport check_invariants_on_reachables(LoStructure& lo,
                                                           const std::vector<std::vector<std::pair<std::string, int>>>& mix,
                                                           const std::vector<int>& preload,
                                                           const ExploreOptions& opts);

struct BugReport {
    int id = 0;
    LoVariant variant = LoVariant::Original;
    bool reproduced = false;
    ViolationReport violation;
    bool fixed_clean = false;  // the fixed variant passes the same mix
    std::uint64_t fixed_runs = 0;
    std::string detail;
};

// Bug 1: stale duplicate after a concurrent delete and re-insert; Bug 2:
// backward-first linking hides a logically inserted key.
BugReport reproduce_bug(int id, LoVariant buggy_variant, int steps = 30);

// Explores the rdcss setup (2 rdcss, 1 get, 1 client writer) and checks
// every history against the sequential specification.
struct RdcssExploreReport {
    bool linearizable = true;
    bool budget_exceeded = false;
    std::uint64_t runs = 0;
    OpHistory violating;
    std::string detail;
};
RdcssExploreReport rdcss_explore_and_check(RdcssStructure& rd, const ExploreOptions& opts);

// reachable-state collectors backing the discharge universes
std::vector<State> lo_collect_reachable(const LoStructure& lo, int threads, int steps);
std::vector<State> rdcss_collect_reachable(const RdcssStructure& rd);

}  // namespace tempo
