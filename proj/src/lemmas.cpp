#include "tempo/lemmas.hpp"

#include <functional>
#include <sstream>

namespace tempo {

namespace {

struct Suite {
    Universe& u;
    int bound;
    ExecMode mode;
    LemmaSuiteReport rep;

    void law(const std::string& name, bool pass, const std::string& witness = "") {
        rep.laws.push_back(LawResult{name, pass, pass ? "" : witness});
    }

    bool both_ways(const TempPred& a, const TempPred& b) {
        return includes(u, a, b, bound, mode).holds && includes(u, b, a, bound, mode).holds;
    }
};

// All state predicates of a small carrier, as decision tables.
std::vector<StatePredPtr> all_subsets(Universe& u) {
    const auto& carrier = u.all_states();
    std::size_t n = carrier.size();
    std::vector<StatePredPtr> out;
    if (n > 10) return out;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        auto ids = std::make_shared<std::vector<StateId>>();
        for (std::size_t i = 0; i < n; ++i)
            if (bits & (1u << i)) ids->push_back(carrier[i]);
        const Universe* up = &u;
        out.push_back(make_pred("S" + std::to_string(bits), [ids, up](const State& s) {
            auto id = up->find(s);
            if (!id) return false;
            for (StateId x : *ids)
                if (x == *id) return true;
            return false;
        }));
    }
    return out;
}

// Structured family for the computation-level clause checks.
std::vector<StatePredPtr> structured_family(Universe& u) {
    std::vector<StatePredPtr> fam;
    fam.push_back(pred_true());
    fam.push_back(pred_false());
    for (std::size_t a = 0; a < u.config().gaddrs.size(); ++a) {
        const auto& spec = u.config().gaddrs[a];
        for (const Value& v : spec.domain) fam.push_back(p_pts(u, spec.name, v));
        int addr = static_cast<int>(a);
        fam.push_back(make_pred(spec.name + " set", [addr](const State& s) { return s.gheap.present(addr); }));
    }
    std::size_t base = fam.size();
    for (std::size_t i = 2; i < base; ++i) fam.push_back(p_not(fam[i]));
    return fam;
}

void check_state_level_clauses(Suite& su, const std::vector<StatePredPtr>& subsets) {
    Universe& u = su.u;
    const auto& carrier = u.all_states();
    std::size_t total = subsets.size() * subsets.size();
    std::size_t bad = parallel_find_first(total, su.mode, [&](std::size_t k) {
        const auto& p = subsets[k / subsets.size()];
        const auto& q = subsets[k % subsets.size()];
        for (StateId sid : carrier) {
            const State& s = u.state(sid);
            if ((p->member(s) && q->member(s)) != p_and(p, q)->member(s)) return true;
            if ((p->member(s) || q->member(s)) != p_or(p, q)->member(s)) return true;
        }
        return false;
    });
    bool ok = bad == total;
    std::string w = ok ? "" : "pair #" + std::to_string(bad);
    su.law("sl-ops: now(p cap q) = now(p) cap now(q), all subsets", ok, w);
    su.law("sl-ops: now(p cup q) = now(p) cup now(q), all subsets", ok, w);
}

void check_sl_operators(Suite& su, const std::vector<StatePredPtr>& fam) {
    Universe& u = su.u;
    {
        bool ok = true;
        std::string w;
        for (const auto& p : fam) {
            TempPred lhs = tp_now(p_not(p));
            TempPred rhs = tp_not(tp_now(p));
            auto r1 = includes_by_enumeration(u, lhs, rhs, std::min(su.bound, 3));
            auto r2 = includes_by_enumeration(u, rhs, lhs, std::min(su.bound, 3));
            if (!r1.holds || !r2.holds) {
                ok = false;
                w = p->name();
                break;
            }
        }
        su.law("sl-ops: now(~p) = ~now(p)", ok, w);
    }
    su.law("sl-ops: false = now(false)", su.both_ways(tp_false(), tp_now(pred_false())));
    su.law("sl-ops: true = now(true)", su.both_ways(tp_true(), tp_now(pred_true())));

    {
        bool ok = true;
        std::string w;
        for (const auto& p : fam) {
            for (const auto& q : fam) {
                bool st = state_subset(u, p, q);
                bool now_inc = includes(u, tp_now(p), tp_now(q), su.bound, su.mode).holds;
                bool past_inc = includes(u, tp_past(p), tp_past(q), su.bound, su.mode).holds;
                if (now_inc != st || past_inc != st) {
                    ok = false;
                    w = p->name() + " vs " + q->name();
                    break;
                }
            }
            if (!ok) break;
        }
        su.law("sl-ops: now/past inclusion iff state inclusion", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (const auto& p : fam) {
            for (const auto& q : fam) {
                TempPred lhs = tp_star(u, tp_now(p), tp_now(q));
                TempPred rhs = tp_now(p_star(u, p, q));
                if (!su.both_ways(lhs, rhs)) {
                    ok = false;
                    w = p->name() + " * " + q->name();
                    break;
                }
            }
            if (!ok) break;
        }
        su.law("sl-ops: now(p * q) = now(p) * now(q)", ok, w);
    }
    {
        bool ok = true;
        std::string w;
        // oracle route for the wand; small subfamily keeps this tractable
        std::vector<StatePredPtr> small(fam.begin(), fam.begin() + std::min<std::size_t>(fam.size(), 8));
        const auto& carrier = u.all_states();
        for (const auto& p : small) {
            for (const auto& q : small) {
                TempPred lhs = tp_wand(tp_now(p), tp_now(q));
                auto table = p_wand(u, p, q);
                std::vector<StateId> seq;
                std::function<bool(int)> rec = [&](int depth) -> bool {
                    if (!seq.empty()) {
                        SeqRef view(u, seq, nullptr);
                        if (oracle_member(u, lhs, view) != table->member(u.state(seq.back()))) return true;
                    }
                    if (depth >= std::min(su.bound, 3)) return false;
                    for (StateId s : carrier) {
                        seq.push_back(s);
                        if (rec(depth + 1)) return true;
                        seq.pop_back();
                    }
                    return false;
                };
                if (rec(0)) {
                    ok = false;
                    w = p->name() + " -* " + q->name();
                    break;
                }
            }
            if (!ok) break;
        }
        su.law("sl-ops: now(p -* q) = now(p) -* now(q)", ok, w);
    }

    {
        bool sub_ok = true, cup_ok = true;
        std::string sub_w, cup_w;
        for (const auto& p : fam) {
            for (const auto& q : fam) {
                if (!includes(u, tp_past(p_and(p, q)), tp_and(tp_past(p), tp_past(q)), su.bound, su.mode).holds) {
                    sub_ok = false;
                    sub_w = p->name() + " cap " + q->name();
                }
                TempPred lhs = tp_past(p_or(p, q));
                TempPred rhs = tp_or(tp_past(p), tp_past(q));
                if (!su.both_ways(lhs, rhs)) {
                    cup_ok = false;
                    cup_w = p->name() + " cup " + q->name();
                }
                if (!sub_ok || !cup_ok) break;
            }
            if (!sub_ok || !cup_ok) break;
        }
        su.law("sl-ops: past(p cap q) subseteq past(p) cap past(q)", sub_ok, sub_w);
        su.law("sl-ops: past(p cup q) = past(p) cup past(q)", cup_ok, cup_w);
    }
}

void check_intuitionistic_lemma(Suite& su, const std::vector<StatePredPtr>& fam) {
    Universe& u = su.u;
    bool now_ok = true, past_ok = true;
    std::string now_w, past_w;
    for (const auto& p : fam) {
        if (is_intuitionistic(u, p) && !is_intuitionistic_temp(u, tp_now(p), su.bound)) {
            now_ok = false;
            now_w = p->name();
        }
        if (!is_intuitionistic_temp(u, tp_past(p), su.bound)) {
            past_ok = false;
            past_w = p->name();
        }
    }
    su.law("intuitionistic: p intuitionistic implies now(p) intuitionistic", now_ok, now_w);
    su.law("intuitionistic: past(p) is intuitionistic", past_ok, past_w);
}

void check_interplay(Suite& su, const std::vector<StatePredPtr>& fam) {
    Universe& u = su.u;
    bool ok = true;
    std::string w;
    for (const auto& pb : fam) {
        for (const auto& pc : fam) {
            for (const auto& po : fam) {
                TempPred b = tp_now(pb), c = tp_now(pc), o = tp_past(po);
                TempPred lhs = tp_and(tp_star(u, b, c), o);
                TempPred rhs = tp_star(u, tp_and(b, o), c);
                if (!su.both_ways(lhs, rhs)) {
                    ok = false;
                    w = pb->name() + "," + pc->name() + "," + po->name();
                    break;
                }
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    su.law("interplay: b*c cap past(o) = (b cap past(o))*c", ok, w);
}

void check_state_algebra(Suite& su) {
    Universe& u = su.u;
    u.ensure_tables();
    const auto& states = u.all_states();
    const std::size_t n = states.size();

    std::size_t hit = parallel_find_first(n * n, su.mode, [&](std::size_t k) {
        StateId x = states[k / n], y = states[k % n];
        return u.compose_ids(x, y) != u.compose_ids(y, x);
    });
    su.law("algebra(states): commutativity", hit == n * n);

    hit = parallel_find_first(n * n, su.mode, [&](std::size_t k) {
        StateId x = states[k / n], y = states[k % n];
        auto xy = u.compose_ids(x, y);
        for (StateId z : states) {
            auto yz = u.compose_ids(y, z);
            auto l = xy >= 0 ? u.compose_ids(static_cast<StateId>(xy), z) : -1;
            auto r = yz >= 0 ? u.compose_ids(x, static_cast<StateId>(yz)) : -1;
            if (l != r) return true;
        }
        return false;
    });
    su.law("algebra(states): associativity", hit == n * n);

    bool unit = true;
    for (StateId x : states)
        if (u.compose_ids(x, u.unit_id(x)) != static_cast<std::int64_t>(x)) unit = false;
    su.law("algebra(states): unit law", unit);

    bool decomp = true;
    for (const auto& [x, y] : u.composable_pairs()) {
        (void)y;
        if (!u.carrier_pos(x)) decomp = false;
    }
    su.law("algebra(states): decomposability of the product", decomp);
}

// The computation algebra lifts the state algebra: composition shares the
// prefix, so the laws run over every prefix and composable last-state pair.
void check_computation_algebra(Suite& su) {
    Universe& u = su.u;
    u.ensure_tables();
    const auto& states = u.all_states();
    const auto& pairs = u.composable_pairs();

    std::vector<std::vector<StateId>> prefixes{{}};
    std::size_t level_start = 0;
    for (int len = 1; len < su.bound; ++len) {
        std::size_t level_end = prefixes.size();
        for (std::size_t i = level_start; i < level_end; ++i)
            for (StateId s : states) {
                auto ext = prefixes[i];
                ext.push_back(s);
                prefixes.push_back(std::move(ext));
            }
        level_start = level_end;
    }

    bool comm = parallel_all_of(prefixes.size(), su.mode, [&](std::size_t pi) {
        (void)pi;
        for (const auto& [x, y] : pairs)
            if (u.compose_ids(x, y) != u.compose_ids(y, x)) return false;
        return true;
    });
    su.law("algebra(computations): commutativity over all prefixes", comm);

    bool assoc = parallel_all_of(prefixes.size(), su.mode, [&](std::size_t pi) {
        (void)pi;
        for (const auto& [x, y] : pairs) {
            auto xy = u.compose_ids(x, y);
            for (StateId z : states) {
                auto yz = u.compose_ids(y, z);
                auto l = xy >= 0 ? u.compose_ids(static_cast<StateId>(xy), z) : -1;
                auto r = yz >= 0 ? u.compose_ids(x, static_cast<StateId>(yz)) : -1;
                if (l != r) return false;
            }
        }
        return true;
    });
    su.law("algebra(computations): associativity over all prefixes", assoc);

    bool unit = true;
    for (StateId x : states) {
        Computation cx{{x, x}};
        Computation cu{{x, u.unit_id(x)}};
        auto r = compose_computation(u, cx, cu);
        if (!r || !(r->states == cx.states)) unit = false;
    }
    su.law("algebra(computations): unit law", unit);

    bool mismatch = true;
    if (states.size() >= 2) {
        Computation a{{states[0], states[0]}};
        Computation b{{states[1], states[0]}};
        mismatch = !compose_computation(u, a, b).has_value();
    }
    su.law("algebra(computations): prefix mismatch undefined", mismatch);
}

void check_history_algebra(Suite& su) {
    Universe& u = su.u;
    u.ensure_tables();
    const auto& states = u.all_states();
    const auto& pairs = u.composable_pairs();
    const std::vector<int> gap_alpha{kNoCommand, 7};

    struct Past {
        std::vector<StateId> states;
        std::vector<int> gaps;
    };
    std::vector<Past> pasts{{{}, {}}};
    std::size_t level_start = 0;
    for (int len = 1; len < su.bound; ++len) {
        std::size_t level_end = pasts.size();
        for (std::size_t i = level_start; i < level_end; ++i)
            for (StateId s : states) {
                if (pasts[i].states.empty()) {
                    Past ext = pasts[i];
                    ext.states.push_back(s);
                    pasts.push_back(std::move(ext));
                } else {
                    for (int g : gap_alpha) {
                        Past ext = pasts[i];
                        ext.states.push_back(s);
                        ext.gaps.push_back(g);
                        pasts.push_back(std::move(ext));
                    }
                }
            }
        level_start = level_end;
    }

    bool comm = parallel_all_of(pasts.size(), su.mode, [&](std::size_t pi) {
        (void)pi;
        for (const auto& [x, y] : pairs)
            if (u.compose_ids(x, y) != u.compose_ids(y, x)) return false;
        return true;
    });
    su.law("algebra(histories): commutativity over all pasts", comm);

    bool cmds = true;
    if (!states.empty()) {
        History a{{states[0], states[0]}, {7}};
        History b{{states[0], states[0]}, {kNoCommand}};
        cmds = !compose_history(u, a, b).has_value();
    }
    su.law("algebra(histories): recorded commands shared", cmds);

    bool unit = true;
    for (StateId x : states) {
        History hx{{x, x}, {7}};
        History hu{{x, u.unit_id(x)}, {7}};
        auto r = compose_history(u, hx, hu);
        if (!r || !(r->states == hx.states)) unit = false;
    }
    su.law("algebra(histories): unit law", unit);
}

void check_loccom(Suite& su) {
    Universe& u = su.u;
    u.ensure_tables();
    const auto& pairs = u.composable_pairs();

    std::vector<std::pair<std::string, Command>> cmds;
    cmds.emplace_back("skip", cmd_skip(1));
    cmds.emplace_back("write", cmd_write(3, AddrExpr::at(0), ValueExpr::constant(Value::intv(1)), "[a] := 1"));
    cmds.emplace_back("faa", cmd_faa(4, AddrExpr::at(0), 1, "faa(a,1)"));
    cmds.emplace_back("cmpx", cmd_cmpx(5, AddrExpr::at(0), ValueExpr::constant(Value::intv(0)),
                                       ValueExpr::constant(Value::intv(1)), -1, "cmpx(a,0,1)"));

    for (const auto& [name, cmd] : cmds) {
        bool ok = true;
        std::string w;
        for (const auto& [x, y] : pairs) {
            const State& sx = u.state(x);
            auto local = exec_command(u, cmd, sx);
            bool faults = false;
            for (const State& t : local)
                if (t.abort) faults = true;
            if (faults) continue;  // abort is the top: nothing to check
            std::int64_t big = u.compose_ids(x, y);
            if (big < 0) continue;
            auto framed = exec_command(u, cmd, u.state(static_cast<StateId>(big)));
            for (const State& t : framed) {
                if (t.abort) {
                    ok = false;
                    w = name + ": framed run faults";
                    break;
                }
                bool covered = false;
                for (const State& small : local) {
                    auto combined = compose_state(small, u.state(y), u.denominator());
                    if (combined && *combined == t) {
                        covered = true;
                        break;
                    }
                }
                if (!covered) {
                    ok = false;
                    w = name + ": framed successor not covered";
                    break;
                }
            }
            if (!ok) break;
        }
        su.law("loccom: " + name, ok, w);
    }

    // lock, unlock, alloc on hand-built states: the freelist token and lock
    // cell make locality non-trivial
    {
        UniverseConfig cfg = parse_universe_config(R"(
name loccom-aux
gaddr lk optional bool full
gaddr p0 optional int:0..1 full
gaddr p1 optional int:0..1 full
)");
        Universe aux(cfg);
        aux.ensure_tables();
        Command lock = cmd_lock(11, AddrExpr::at(0), "lock lk");
        Command unlock = cmd_unlock(12, AddrExpr::at(0), "unlock lk");
        Command alloc = cmd_alloc(13, -1, 1, 1, {{0, ValueExpr::constant(Value::intv(1))}}, "alloc");
        // the alloc result variable does not exist in this universe; allocate
        // into no var by writing the freelist pool only
        bool ok = true;
        std::string w;
        for (const auto& [x, y] : aux.composable_pairs()) {
            State sx = aux.state(x);
            sx.gghost.has_freelist = true;
            sx.gghost.freelist = {0, 1};
            // drop pool addresses already owned
            std::vector<std::int16_t> fl;
            for (std::int16_t f : sx.gghost.freelist)
                if (!sx.gheap.present(1 + f) && !aux.state(y).gheap.present(1 + f)) fl.push_back(f);
            sx.gghost.freelist = fl;
            auto big = compose_state(sx, aux.state(y), aux.denominator());
            if (!big) continue;
            for (const Command* c : {&lock, &unlock, &alloc}) {
                Command cc = *c;
                if (cc.kind == Command::Alloc) cc.var = -1;
                auto local = exec_command(aux, cc, sx);
                bool faults = false;
                for (const State& t : local)
                    if (t.abort) faults = true;
                if (faults) continue;
                auto framed = exec_command(aux, cc, *big);
                for (const State& t : framed) {
                    if (t.abort) {
                        ok = false;
                        w = cc.text + ": framed faults";
                        break;
                    }
                    bool covered = false;
                    for (const State& small : local) {
                        auto combined = compose_state(small, aux.state(y), aux.denominator());
                        if (combined && *combined == t) covered = true;
                    }
                    if (!covered) {
                        ok = false;
                        w = cc.text + ": framed successor not covered";
                        break;
                    }
                }
            }
            if (!ok) break;
        }
        su.law("loccom: lock/unlock/alloc with freelist token", ok, w);
    }
}

void check_hist_properties(Suite& su) {
    Universe& u = su.u;
    u.ensure_tables();
    const auto& carrier = u.all_states();
    auto p = p_pts(u, u.config().gaddrs[0].name, Value::intv(0));
    auto p_wide = make_pred("cell set", [](const State& s) { return s.gheap.present(0); });

    Command c7 = cmd_skip(7);
    Command c8 = cmd_skip(8);
    auto lang_one = program_language(prog_com(c7));
    auto lang_seq = program_language(prog_seq({prog_com(c7), prog_com(c8)}));
    auto lang_star = program_language(prog_loop(prog_choice({prog_com(c7), prog_com(c8)})));

    {
        bool mono = language_included(*lang_one, *lang_star) && state_subset(u, p, p_wide);
        TempPred small = tp_hist(p, lang_one, "c7");
        TempPred big = tp_hist(p_wide, lang_star, "(c7+c8)*");
        auto rep = includes(u, small, big, su.bound);
        su.law("hist (i): monotonic in both components", mono && rep.holds);
    }

    {
        TempPred before = tp_hist(p, lang_one, "c7");
        TempPred after = tp_hist(p, lang_seq, "c7;c8");
        bool violated = false;
        std::vector<StateId> seq;
        std::vector<int> gaps;
        std::function<bool(int)> rec = [&](int len) -> bool {
            if (!seq.empty()) {
                SeqRef view(u, seq, &gaps);
                if (nf_member(u, before, view)) {
                    History h{seq, gaps};
                    std::vector<History> out;
                    exec_on_history(u, c8, h, out);
                    for (const auto& ext : out) {
                        if (u.state(ext.last()).abort) continue;
                        if (!nf_member(u, after, SeqRef(u, ext))) return true;
                    }
                }
            }
            if (len >= su.bound) return false;
            for (StateId s : carrier) {
                if (seq.empty()) {
                    seq.push_back(s);
                    if (rec(len + 1)) return true;
                    seq.pop_back();
                } else {
                    for (int g : {kNoCommand, 7, 8}) {
                        seq.push_back(s);
                        gaps.push_back(g);
                        if (rec(len + 1)) return true;
                        seq.pop_back();
                        gaps.pop_back();
                    }
                }
            }
            return false;
        };
        violated = rec(0);
        su.law("hist (ii): exec interplay with commands", !violated);
    }

    {
        TempPred h = tp_hist(p, lang_seq, "c7;c8");
        std::vector<StateId> seq;
        std::vector<int> gaps;
        std::function<bool(int)> rec = [&](int len) -> bool {
            if (!seq.empty()) {
                SeqRef view(u, seq, &gaps);
                if (nf_member(u, h, view)) {
                    for (StateId s : carrier) {
                        seq.push_back(s);
                        gaps.push_back(kNoCommand);
                        bool still = nf_member(u, h, SeqRef(u, seq, &gaps));
                        seq.pop_back();
                        gaps.pop_back();
                        if (!still) return true;
                    }
                }
            }
            if (len >= su.bound - 1) return false;
            for (StateId s : carrier) {
                if (seq.empty()) {
                    seq.push_back(s);
                    if (rec(len + 1)) return true;
                    seq.pop_back();
                } else {
                    for (int g : {kNoCommand, 7, 8}) {
                        seq.push_back(s);
                        gaps.push_back(g);
                        if (rec(len + 1)) return true;
                        seq.pop_back();
                        gaps.pop_back();
                    }
                }
            }
            return false;
        };
        su.law("hist (iii): interference-free", !rec(0));
    }

    {
        TempPred h = tp_hist(p, lang_one, "c7");
        su.law("hist (iv): not (and should not be) frameable", !is_frameable(u, h, su.bound));
    }

    {
        // the star-true language accepts the empty word, so the now part of
        // the history predicate is exercised too
        auto pi = make_pred("cell owned somewhere", [](const State& s) { return s.gheap.present(0); });
        bool p_int = is_intuitionistic(u, pi);
        TempPred h = tp_hist(pi, lang_star, "(c7+c8)*");
        TempPred framed = tp_star(u, h, tp_now(pred_true()));
        auto rep = includes(u, framed, h, su.bound);
        su.law("hist (v): intuitionistic when p is", p_int && rep.holds);
    }
}

}  // namespace

LemmaSuiteReport run_lemma_suite(Universe& u, int bound, ExecMode mode) {
    Suite su{u, bound, mode, {}};
    u.ensure_tables();

    auto subsets = all_subsets(u);
    auto fam = structured_family(u);

    if (!subsets.empty()) check_state_level_clauses(su, subsets);
    check_sl_operators(su, fam);
    check_intuitionistic_lemma(su, fam);
    check_interplay(su, fam);
    check_state_algebra(su);
    check_computation_algebra(su);
    check_history_algebra(su);
    check_loccom(su);
    check_hist_properties(su);

    return su.rep;
}

std::string to_text(const LemmaSuiteReport& rep) {
    std::ostringstream os;
    for (const auto& l : rep.laws) {
        os << (l.pass ? "PASS " : "FAIL ") << l.name;
        if (!l.pass && !l.witness.empty()) os << "  [" << l.witness << "]";
        os << "\n";
    }
    os << (rep.all_pass() ? "all laws hold" : "LAW VIOLATIONS FOUND") << "\n";
    return os.str();
}

}  // namespace tempo
