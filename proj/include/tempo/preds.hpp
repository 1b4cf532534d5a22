#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempo/automata.hpp"
#include "tempo/parallel.hpp"
#include "tempo/sequences.hpp"
#include "tempo/universe.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// State predicates: total membership functions over states. Realized either
// as symbolic evaluators over fields or as decision tables over the carrier.
// ---------------------------------------------------------------------------

class StatePredImpl;
using StatePredPtr = std::shared_ptr<const StatePredImpl>;

class StatePredImpl {
public:
    StatePredImpl(std::string name, std::function<bool(const State&)> eval, bool abort_absorbing = false);

    const std::string& name() const { return name_; }
    int uid() const { return uid_; }
    bool abort_absorbing() const { return abort_absorbing_; }

    bool member(const State& s) const {
        if (s.abort) return abort_absorbing_;
        return eval_(s);
    }

private:
    std::string name_;
    std::function<bool(const State&)> eval_;
    bool abort_absorbing_;
    int uid_;
};

StatePredPtr make_pred(std::string name, std::function<bool(const State&)> eval, bool abort_absorbing = false);
StatePredPtr pred_true();
StatePredPtr pred_false();
StatePredPtr p_and(StatePredPtr a, StatePredPtr b);
StatePredPtr p_or(StatePredPtr a, StatePredPtr b);
StatePredPtr p_not(StatePredPtr a);
// Points-to over the global heap: fraction at least min_frac (0 = any).
StatePredPtr p_pts(Universe& u, const std::string& addr, Value v, int min_frac = 0);
StatePredPtr p_pts_exact_frac(Universe& u, const std::string& addr, Value v, int frac);
// Separating conjunction / implication, table-backed over the carrier.
StatePredPtr p_star(Universe& u, StatePredPtr a, StatePredPtr b);
StatePredPtr p_wand(Universe& u, StatePredPtr a, StatePredPtr b);

// p is intuitionistic if p * Gamma subseteq p; exhaustive over the carrier.
bool is_intuitionistic(Universe& u, const StatePredPtr& p);
// p subseteq q over the carrier.
bool state_subset(Universe& u, const StatePredPtr& p, const StatePredPtr& q);
bool state_equal(Universe& u, const StatePredPtr& p, const StatePredPtr& q);

// ---------------------------------------------------------------------------
// Temporal predicates: lattice terms over Now/Past/Hist atoms with a
// temporal normal form (union of clauses) and a brute-force oracle.
// ---------------------------------------------------------------------------

// Hist atoms in normal form use the strict reading: the witnessing position
// lies strictly before the last state. The non-strict part (empty command
// word, p holds now) is split off as a Now clause at construction.
struct HistAtom {
    StatePredPtr p;
    std::shared_ptr<const Dfa> lang;
    std::string label;
};

struct Clause {
    StatePredPtr now;  // nullptr means true
    std::vector<StatePredPtr> pasts;
    std::vector<HistAtom> hists;
};

struct TempExpr;
using TempExprPtr = std::shared_ptr<const TempExpr>;

struct TempExpr {
    enum Op { ENow, EPast, EHist, EAnd, EOr, ENot, EStar, EWand, ETrue, EFalse };
    Op op;
    StatePredPtr p;                       // ENow/EPast/EHist
    std::shared_ptr<const Dfa> lang;      // EHist
    std::vector<TempExprPtr> kids;
};

struct TempPred {
    std::string name;
    std::vector<Clause> clauses;
    bool nf_valid = true;  // false: only the oracle knows the semantics
    TempExprPtr expr;

    bool has_hist() const {
        for (const auto& c : clauses)
            if (!c.hists.empty()) return true;
        return false;
    }
};

TempPred tp_true();
TempPred tp_false();
TempPred tp_now(StatePredPtr p);
TempPred tp_past(StatePredPtr p);
TempPred tp_wpast(StatePredPtr p);
TempPred tp_hist(StatePredPtr p, std::shared_ptr<const Dfa> lang, const std::string& label);
TempPred tp_and(const TempPred& a, const TempPred& b);
TempPred tp_or(const TempPred& a, const TempPred& b);
TempPred tp_star(Universe& u, const TempPred& a, const TempPred& b);
TempPred tp_not(const TempPred& a);                             // oracle only
TempPred tp_wand(const TempPred& a, const TempPred& b);         // oracle only
TempPred tp_named(std::string name, TempPred a);

// Brute-force membership oracle following the definitions directly.
bool oracle_member(Universe& u, const TempPred& a, const SeqRef& seq);
// Normal-form evaluator on an explicit sequence.
bool nf_member(Universe& u, const TempPred& a, const SeqRef& seq);

struct InclusionReport {
    bool holds = true;
    bool budget_exceeded = false;
    int bound = 0;
    std::optional<Computation> witness;
    std::optional<History> witness_history;
    std::string detail;
};

// Exhaustively checks A subseteq B over all computations (or histories, when
// Hist atoms occur) of length <= bound. Witness on failure.
InclusionReport includes(Universe& u, const TempPred& a, const TempPred& b, int bound,
                         ExecMode mode = global_exec_mode());

// Oracle-route inclusion by raw enumeration of state sequences; exponential,
// for cross-validation on tiny universes only.
InclusionReport includes_by_enumeration(Universe& u, const TempPred& a, const TempPred& b, int bound,
                                        std::uint64_t budget = 20'000'000);

bool is_intuitionistic_temp(Universe& u, const TempPred& a, int bound);
// Computation predicates: closed under one stuttering step. For predicates
// with Hist atoms the step must be closed under every recorded command too,
// which Hist deliberately is not.
bool is_frameable(Universe& u, const TempPred& a, int bound);

// ---------------------------------------------------------------------------
// The mask machine: membership of a hist-free TempPred on a computation is a
// function of (set of past atoms realized by the prefix, last state). The
// machine enumerates exactly the realizable pairs up to a length bound.
// ---------------------------------------------------------------------------

class MaskMachine {
public:
    // Collects past atoms of all given predicates into one alphabet. Atoms
    // are deduplicated semantically by their decision table over the carrier,
    // so families that re-instantiate the same predicate share one bit.
    MaskMachine(Universe& u, const std::vector<const TempPred*>& preds, int bound);

    bool alphabet_overflow() const { return overflow_; }
    std::size_t mask_count() const { return masks_.size(); }
    std::size_t atom_count() const { return atoms_.size(); }

    // Does the clause set hold on (mask, state)? Throws if the predicate has
    // atoms unknown to the machine or Hist atoms.
    bool member(const TempPred& a, std::uint64_t mask, const State& s) const;
    bool member_union(const std::vector<TempPred>& instances, std::uint64_t mask, const State& s) const;
    std::uint64_t sig(const State& s) const;
    // Bit index of a registered atom; throws if unknown.
    int bit_of(const StatePredPtr& p) const { return atom_index(p); }

    struct Pair {
        std::uint64_t mask;
        int depth;
    };
    const std::vector<Pair>& masks() const { return masks_; }

    // Reconstructs a prefix of states realizing the mask.
    std::vector<StateId> realize(std::uint64_t mask) const;

private:
    Universe& u_;
    std::vector<StatePredPtr> atoms_;
    std::vector<std::vector<std::uint8_t>> atom_tables_;
    std::unordered_map<int, int> uid_to_idx_;
    std::vector<std::uint64_t> sigs_;  // per carrier position
    std::vector<Pair> masks_;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, StateId>> parent_;
    bool overflow_ = false;
    void register_atom(const StatePredPtr& p);
    int atom_index(const StatePredPtr& p) const;
    friend InclusionReport includes(Universe&, const TempPred&, const TempPred&, int, ExecMode);
};

}  // namespace tempo
