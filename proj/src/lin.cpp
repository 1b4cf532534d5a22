#include "tempo/lin.hpp"

#include <sstream>

namespace tempo {

// ---------------------------------------------------------------------------
// sequential specifications
// ---------------------------------------------------------------------------

SeqSpec set_spec() {
    SeqSpec s;
    s.name = "set";
    s.css = nullptr;  // structure universes wire in their own abstraction
    s.up = [](const AbstractVal& c, const AbstractVal& c2, const std::string& op, const std::vector<int>& args,
              int result) {
        std::uint32_t before = static_cast<std::uint32_t>(c.payload);
        std::uint32_t after = static_cast<std::uint32_t>(c2.payload);
        std::uint32_t bit = 1u << args.at(0);
        if (op == "insert") return after == (before | bit) && result == ((before & bit) == 0 ? 1 : 0);
        if (op == "delete") return after == (before & ~bit) && result == ((before & bit) != 0 ? 1 : 0);
        if (op == "contains") return after == before && result == ((before & bit) != 0 ? 1 : 0);
        return false;
    };
    s.apply = [](const AbstractVal& c, const std::string& op, const std::vector<int>& args) {
        std::uint32_t before = static_cast<std::uint32_t>(c.payload);
        std::uint32_t bit = 1u << args.at(0);
        if (op == "insert")
            return std::make_pair(AbstractVal::key_set(before | bit), (before & bit) == 0 ? 1 : 0);
        if (op == "delete")
            return std::make_pair(AbstractVal::key_set(before & ~bit), (before & bit) != 0 ? 1 : 0);
        return std::make_pair(AbstractVal::key_set(before), (before & bit) != 0 ? 1 : 0);  // contains
    };
    return s;
}

SeqSpec counter_spec(int l_addr, int r_addr) {
    SeqSpec s;
    s.name = "counter";
    s.css = [l_addr, r_addr](const Universe&, const State& st) -> std::optional<AbstractVal> {
        if (st.abort || !st.gheap.present(l_addr) || !st.gheap.present(r_addr)) return std::nullopt;
        return AbstractVal::int_val(st.gheap.at(l_addr).val.as_int() + st.gheap.at(r_addr).val.as_int());
    };
    s.up = [](const AbstractVal& c, const AbstractVal& c2, const std::string& op, const std::vector<int>&,
              int result) {
        if (op == "inc") return c2.payload == c.payload + 1;
        if (op == "read") return c2.payload == c.payload && result == c.payload;
        return false;
    };
    s.apply = [](const AbstractVal& c, const std::string& op, const std::vector<int>&) {
        if (op == "inc") return std::make_pair(AbstractVal::int_val(c.payload + 1), 0);
        return std::make_pair(c, c.payload);  // read
    };
    return s;
}

namespace {
constexpr int pack_rl(int r, int l) { return r * 16 + l; }
}  // namespace

SeqSpec rdcss_spec(int root_ghost) {
    // abstract value packs the register's logical value with the external
    // location: rdcss observes both in one step
    SeqSpec s;
    s.name = "rdcss";
    s.css = [root_ghost](const Universe& u, const State& st) -> std::optional<AbstractVal> {
        (void)u;
        auto r = st.gghost.contents_of(root_ghost);
        if (!r || st.gheap.cells.empty()) return std::nullopt;
        // the external location is by convention the last global address
        int ell = static_cast<int>(st.gheap.cells.size()) - 1;
        if (!st.gheap.present(ell)) return std::nullopt;
        return AbstractVal::int_val(pack_rl(r->payload, st.gheap.at(ell).val.as_int()));
    };
    s.up = [](const AbstractVal& c, const AbstractVal& c2, const std::string& op, const std::vector<int>& args,
              int result) {
        int r = c.payload / 16, l = c.payload % 16;
        int r2 = c2.payload / 16, l2 = c2.payload % 16;
        if (op == "rdcss") {
            int n1 = args.at(0), m1 = args.at(1), n2 = args.at(2);
            int want = (l == m1 && r == n1) ? n2 : r;
            return r2 == want && l2 == l && result == r;
        }
        if (op == "get") return c2 == c && result == r;
        if (op == "writel") return r2 == r && l2 == args.at(0);
        return false;
    };
    s.apply = [](const AbstractVal& c, const std::string& op, const std::vector<int>& args) {
        int r = c.payload / 16, l = c.payload % 16;
        if (op == "rdcss") {
            int n1 = args.at(0), m1 = args.at(1), n2 = args.at(2);
            int r2 = (l == m1 && r == n1) ? n2 : r;
            return std::make_pair(AbstractVal::int_val(pack_rl(r2, l)), r);
        }
        if (op == "writel") return std::make_pair(AbstractVal::int_val(pack_rl(r, args.at(0))), 0);
        return std::make_pair(c, r);  // get
    };
    return s;
}

std::pair<AbstractVal, int> sequential_apply(const SeqSpec& spec, const AbstractVal& abstract,
                                             const std::string& op, const std::vector<int>& args) {
    return spec.apply(abstract, op, args);
}

// ---------------------------------------------------------------------------
// annotations
// ---------------------------------------------------------------------------

std::shared_ptr<LinAnnot> lin_void(const SeqSpec& spec) {
    auto a = std::make_shared<LinAnnot>();
    a->rule = LinAnnot::Void;
    a->spec = &spec;
    return a;
}

std::shared_ptr<LinAnnot> lin_impure(const SeqSpec& spec, std::string op, std::vector<int> args,
                                     std::function<int(const Valuation&)> result) {
    auto a = std::make_shared<LinAnnot>();
    a->rule = LinAnnot::Impure;
    a->spec = &spec;
    a->op = std::move(op);
    a->args = std::move(args);
    a->result = std::move(result);
    return a;
}

std::shared_ptr<LinAnnot> lin_pure(const SeqSpec& spec, std::string op, std::vector<int> args,
                                   std::function<int(const Valuation&)> result, StateFamily witness) {
    auto a = std::make_shared<LinAnnot>();
    a->rule = LinAnnot::Pure;
    a->spec = &spec;
    a->op = std::move(op);
    a->args = std::move(args);
    a->result = std::move(result);
    a->witness = std::move(witness);
    return a;
}

std::shared_ptr<LinAnnot> lin_mixed(const SeqSpec& spec, std::string op, std::vector<int> args,
                                    std::function<int(const Valuation&)> result, StateFamily witness) {
    auto a = lin_pure(spec, std::move(op), std::move(args), std::move(result), std::move(witness));
    a->rule = LinAnnot::Mixed;
    return a;
}

// ---------------------------------------------------------------------------
// rule checking
// ---------------------------------------------------------------------------

namespace {

bool now_possible(const std::vector<TempPred>& pre, const State& s) {
    for (const auto& inst : pre)
        for (const auto& c : inst.clauses)
            if (!c.now || c.now->member(s)) return true;
    return false;
}

}  // namespace

std::string LinRules::check_step(Universe& u, const LinAnnot& annot, const std::vector<TempPred>& pre,
                                 const Command& cmd, int bound) {
    const SeqSpec& spec = *annot.spec;
    const auto& carrier = u.all_states();
    auto valuations = sym_.valuations();

    switch (annot.rule) {
        case LinAnnot::Void: {
            if (cmd.ghost.has_trade) return "void step must not trade tokens";
            for (StateId sid : carrier) {
                const State s = u.state(sid);
                if (!now_possible(pre, s)) continue;
                auto before = spec.css ? spec.css(u, s) : std::nullopt;
                if (!before) continue;
                for (const State& t : exec_command(u, cmd, s)) {
                    if (t.abort) continue;
                    auto after = spec.css(u, t);
                    if (after && !(*after == *before)) return "contents changed without an obligation";
                }
            }
            return "";
        }
        case LinAnnot::Impure: {
            if (!cmd.ghost.has_trade) return "impure linearization point must trade the obligation";
            for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
                const TempPred& inst = pre[std::min(vi, pre.size() - 1)];
                int result = annot.result ? annot.result(valuations[vi]) : 0;
                for (StateId sid : carrier) {
                    const State s = u.state(sid);
                    bool applies = false;
                    for (const auto& c : inst.clauses)
                        if (!c.now || c.now->member(s)) applies = true;
                    if (!applies) continue;
                    auto before = spec.css ? spec.css(u, s) : std::nullopt;
                    if (!before) continue;
                    for (const State& t : exec_command(u, cmd, s)) {
                        if (t.abort) continue;
                        auto after = spec.css(u, t);
                        if (!after) continue;
                        if (!spec.up(*before, *after, annot.op, annot.args, result))
                            return "update does not match the sequential specification at " + cmd.text;
                    }
                }
            }
            return "";
        }
        case LinAnnot::Pure:
        case LinAnnot::Mixed: {
            if (!cmd.ghost.has_trade) return "retrospective trade requires the token decoration";
            if (annot.rule == LinAnnot::Mixed && !cmd.ghost.clocked) return "mixed trade must be clock-indexed";
            if (annot.rule == LinAnnot::Pure && spec.css) {
                // the trade itself must not alter the contents
                for (StateId sid : carrier) {
                    const State s = u.state(sid);
                    if (!now_possible(pre, s)) continue;
                    auto before = spec.css(u, s);
                    if (!before) continue;
                    for (const State& t : exec_command(u, cmd, s)) {
                        if (t.abort) continue;
                        auto after = spec.css(u, t);
                        if (after && !(*after == *before)) return "pure trade changes the contents";
                    }
                }
            }
            for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
                const Valuation& rho = valuations[vi];
                StatePredPtr w = annot.witness.fn(rho);
                int result = annot.result ? annot.result(rho) : 0;
                // every witness state must satisfy the pure update shape
                for (StateId sid : carrier) {
                    const State s = u.state(sid);
                    if (!w->member(s)) continue;
                    auto c = spec.css ? spec.css(u, s) : std::nullopt;
                    if (!c) continue;
                    if (!spec.up(*c, *c, annot.op, annot.args, result))
                        return "witness state does not certify the linearization (valuation #" +
                               std::to_string(vi) + ")";
                }
                // the precondition must confirm the witness in the past
                const TempPred& inst = pre[std::min(vi, pre.size() - 1)];
                auto rep = includes(u, inst, tp_wpast(w), bound);
                if (!rep.holds)
                    return "precondition does not entail wpast(witness) (valuation #" + std::to_string(vi) + ")";
            }
            return "";
        }
    }
    return "";
}

LinApplication apply_lin_rule(Universe& u, const LinAnnot& annot, const SymTable& sym,
                              const std::vector<TempPred>& pre, const Command& cmd, int bound) {
    LinApplication out;
    LinRules rules(sym);
    out.error = rules.check_step(u, annot, pre, cmd, bound);
    if (!out.error.empty()) return out;

    // strongest post over the carrier, past atoms carried through
    const auto& carrier = u.all_states();
    for (const auto& inst : pre) {
        TempPred post = tp_false();
        bool first = true;
        for (const auto& c : inst.clauses) {
            auto image = std::make_shared<std::vector<StateId>>();
            for (StateId sid : carrier) {
                const State s = u.state(sid);
                if (c.now && !c.now->member(s)) continue;
                for (const State& t : exec_command(u, cmd, s)) {
                    if (t.abort) continue;
                    image->push_back(u.intern(t));
                }
            }
            const Universe* up = &u;
            TempPred clause_post = tp_now(make_pred("post-image", [image, up](const State& s) {
                auto id = up->find(s);
                if (!id) return false;
                for (StateId x : *image)
                    if (x == *id) return true;
                return false;
            }));
            for (const auto& p : c.pasts) clause_post = tp_and(clause_post, tp_past(p));
            post = first ? clause_post : tp_or(post, clause_post);
            first = false;
        }
        out.post.push_back(post);
    }
    out.ok = true;
    return out;
}

Interference decorate_interference(const Interference& i, const TokenTag& obl, const TokenTag& rct, bool clocked,
                                   int clock_root) {
    Interference d = i;
    d.name = i.name + "+token";
    d.guard = tp_and(i.guard, tp_now(p_obl(obl)));
    d.cmd.ghost.has_trade = true;
    d.cmd.ghost.obl = obl;
    d.cmd.ghost.rct = rct;
    d.cmd.ghost.clocked = clocked;
    d.cmd.ghost.clock_root = clock_root;
    return d;
}

LinJudgment check_lin_outline(Universe& u, const Outline& outline, const SeqSpec& spec, int bound, ExecMode mode) {
    (void)spec;
    LinJudgment out;
    LinRules rules(outline.sym);
    out.judgment = check_outline(u, outline, bound, &rules, mode);
    out.tokens_ok = true;

    // the final post must carry the receipt matching the returned value
    const auto& carrier = u.all_states();
    for (const auto& inst : out.judgment.post_instances) {
        for (const auto& c : inst.clauses) {
            for (StateId sid : carrier) {
                const State s = u.state(sid);
                if (c.now && !c.now->member(s)) continue;
                std::optional<int> ret = outline.returns ? outline.returns(s) : std::nullopt;
                bool found = false;
                for (const auto& r : s.lghost.receipts) {
                    if (!ret || r.tag.args[0] == *ret) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    out.tokens_ok = false;
                    out.token_detail = "final post admits a state without the matching receipt";
                    return out;
                }
            }
        }
    }
    return out;
}

StatePredPtr p_obl(const TokenTag& t) {
    return make_pred("obl", [t](const State& s) {
        for (const auto& o : s.lghost.obligations)
            if (o == t) return true;
        for (const auto& o : s.gghost.obligations)
            if (o == t) return true;
        return false;
    });
}

StatePredPtr p_rct_result(std::uint8_t op, int result) {
    return make_pred("rct", [op, result](const State& s) {
        for (const auto& r : s.lghost.receipts)
            if (r.tag.op == op && r.tag.args[0] == result) return true;
        return false;
    });
}

}  // namespace tempo
