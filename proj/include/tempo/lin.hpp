#pragma once

#include "tempo/logic.hpp"

namespace tempo {

// ---------------------------------------------------------------------------
// sequential specifications
// ---------------------------------------------------------------------------

// Sequential specification of a concurrent structure: the abstraction from a
// state to its logical contents, the UP relation prescribing how operations
// change the contents, and the reference sequential semantics.
struct SeqSpec {
    std::string name;
    std::function<std::optional<AbstractVal>(const Universe&, const State&)> css;
    std::function<bool(const AbstractVal& before, const AbstractVal& after, const std::string& op,
                       const std::vector<int>& args, int result)>
        up;
    std::function<std::pair<AbstractVal, int>(const AbstractVal& before, const std::string& op,
                                              const std::vector<int>& args)>
        apply;
};

// set over a small key domain: insert/delete/contains
SeqSpec set_spec();
// monotone counter: inc/read
SeqSpec counter_spec(int l_addr = 0, int r_addr = 1);
// single-cell rdcss register: rdcss(l_expected, r_expected, r_new)/get,
// abstracted over the ghost contents entry for the root
SeqSpec rdcss_spec(int root_ghost = 0);

// reference sequential semantics, exposed for the linearizability oracle
std::pair<AbstractVal, int> sequential_apply(const SeqSpec& spec, const AbstractVal& abstract,
                                             const std::string& op, const std::vector<int>& args);

// ---------------------------------------------------------------------------
// token rules
// ---------------------------------------------------------------------------

struct LinAnnot {
    enum Rule { Void, Pure, Impure, Mixed } rule = Void;
    std::string op;
    std::vector<int> args;
    // expected result of the traded receipt, per valuation
    std::function<int(const Valuation&)> result;
    // pure/mixed: the past witness certifying the linearization moment
    StateFamily witness;
    const SeqSpec* spec = nullptr;
};

std::shared_ptr<LinAnnot> lin_void(const SeqSpec& spec);
std::shared_ptr<LinAnnot> lin_impure(const SeqSpec& spec, std::string op, std::vector<int> args,
                                     std::function<int(const Valuation&)> result);
std::shared_ptr<LinAnnot> lin_pure(const SeqSpec& spec, std::string op, std::vector<int> args,
                                   std::function<int(const Valuation&)> result, StateFamily witness);
std::shared_ptr<LinAnnot> lin_mixed(const SeqSpec& spec, std::string op, std::vector<int> args,
                                    std::function<int(const Valuation&)> result, StateFamily witness);

// Validates the token side-conditions of one command step against the rules:
// void commands keep the contents, impure trades must match UP at the step,
// pure/mixed trades must cite a confirmed past witness. Returns "" or error.
class LinRules : public LinChecker {
public:
    LinRules(const SymTable& sym) : sym_(sym) {}
    std::string check_step(Universe& u, const LinAnnot& annot, const std::vector<TempPred>& pre,
                           const Command& cmd, int bound) override;

private:
    SymTable sym_;
};

// Applies a rule to a precondition: validates the side conditions and returns
// the strongest post over the carrier (per valuation), with the token traded.
struct LinApplication {
    bool ok = false;
    std::string error;
    std::vector<TempPred> post;
};
LinApplication apply_lin_rule(Universe& u, const LinAnnot& annot, const SymTable& sym,
                              const std::vector<TempPred>& pre, const Command& cmd, int bound);

// (a, c) decorated: the guard additionally requires the obligation, the
// command trades it for the receipt.
Interference decorate_interference(const Interference& i, const TokenTag& obl, const TokenTag& rct,
                                   bool clocked = false, int clock_root = 0);

// Runs the outline checker with command steps routed through the token rules,
// then verifies that the final post carries the receipt matching the returned
// value.
struct LinJudgment {
    Judgment judgment;
    bool tokens_ok = false;
    std::string token_detail;
};
LinJudgment check_lin_outline(Universe& u, const Outline& outline, const SeqSpec& spec, int bound,
                              ExecMode mode = global_exec_mode());

// token-presence predicates
StatePredPtr p_obl(const TokenTag& t);
StatePredPtr p_rct_result(std::uint8_t op, int result);

}  // namespace tempo
