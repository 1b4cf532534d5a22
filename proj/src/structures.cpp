#include "tempo/structures.hpp"

#include <mutex>
#include <set>
#include <unordered_set>

namespace tempo {

// ---------------------------------------------------------------------------
// distributed counter
// ---------------------------------------------------------------------------

namespace {

int ival(const Value& v) { return v.f[0]; }

TokenTag tag1(std::uint8_t op, int a0 = 0) {
    TokenTag t;
    t.op = op;
    t.args[0] = static_cast<std::int16_t>(a0);
    return t;
}

// heap predicates over the counter layout (l at 0, r at 1)
StatePredPtr ctr_cells() {
    return make_pred("cells", [](const State& s) { return s.gheap.present(0) && s.gheap.present(1); });
}
StatePredPtr ctr_lr(int l, int r) {
    return make_pred("l=" + std::to_string(l) + ",r=" + std::to_string(r), [l, r](const State& s) {
        return s.gheap.present(0) && s.gheap.present(1) && ival(s.gheap.at(0).val) == l &&
               ival(s.gheap.at(1).val) == r;
    });
}
StatePredPtr ctr_r(int r) {
    return make_pred("r=" + std::to_string(r),
                     [r](const State& s) { return s.gheap.present(1) && ival(s.gheap.at(1).val) == r; });
}
StatePredPtr ctr_sum(int n) {
    return make_pred("sum=" + std::to_string(n), [n](const State& s) {
        return s.gheap.present(0) && s.gheap.present(1) &&
               ival(s.gheap.at(0).val) + ival(s.gheap.at(1).val) == n;
    });
}
StatePredPtr var_is(int var, int v) {
    return make_pred("v" + std::to_string(var) + "=" + std::to_string(v), [var, v](const State& s) {
        const Value& x = s.lvars.get(var);
        return x.is_set() && ival(x) == v;
    });
}

}  // namespace

CounterWorkbench make_counter_workbench(int max_value) {
    CounterWorkbench wb;
    wb.max_value = max_value;

    UniverseConfig proof_cfg;
    proof_cfg.name = "counter-proof";
    AddrSpec l{"l", AddrPolicy::Always, {}, {24}};
    AddrSpec r{"r", AddrPolicy::Always, {}, {24}};
    for (int v = 0; v <= max_value; ++v) {
        l.domain.push_back(Value::intv(v));
        r.domain.push_back(Value::intv(v));
    }
    proof_cfg.gaddrs = {l, r};
    VarSpec x{"x", {}}, y{"y", {}};
    for (int v = 0; v <= max_value; ++v) {
        x.domain.push_back(Value::intv(v));
        y.domain.push_back(Value::intv(v));
    }
    proof_cfg.lvars = {x, y};
    proof_cfg.lghost.exclusive = true;
    proof_cfg.lghost.obligations = {tag1(kOpRead), tag1(kOpInc)};
    for (int v = 0; v <= 2 * max_value; ++v) proof_cfg.lghost.receipts.emplace_back(-1, tag1(kOpRead, v));
    proof_cfg.lghost.receipts.emplace_back(-1, tag1(kOpInc));
    wb.proof_universe = std::make_shared<Universe>(proof_cfg);

    UniverseConfig plain_cfg;
    plain_cfg.name = "counter";
    plain_cfg.gaddrs = {l, r};
    wb.discharge_universe = std::make_shared<Universe>(plain_cfg);

    wb.spec = counter_spec(0, 1);

    // symbolic variables of the read proof
    SymVar nl{"nl", {}}, nr{"nr", {}}, nrp{"nrp", {}};
    for (int v = 0; v <= max_value; ++v) {
        nl.domain.push_back(Value::intv(v));
        nr.domain.push_back(Value::intv(v));
        nrp.domain.push_back(Value::intv(v));
    }
    wb.sym = SymTable{{nl, nr, nrp}};

    Universe& up = *wb.proof_universe;
    const int vx = up.var_id("x");
    const int vy = up.var_id("y");

    auto obl_read = p_obl(tag1(kOpRead));
    auto obl_inc = p_obl(tag1(kOpInc));

    // the read outline, Fig.-2 shape
    {
        Outline& o = wb.read_outline;
        o.name = "counter-read";
        o.sym = wb.sym;
        o.pre = lift_closed("counter(c,n) * OBL", tp_now(p_and(ctr_cells(), obl_read)));

        // unfold counter(c,n)
        OutlineItem unfold;
        unfold.kind = OutlineItem::Conseq;
        unfold.post = PredFamily{"cells(nl,nr) * OBL", [obl_read](const Valuation& rho) {
                                     return tp_now(p_and(ctr_lr(ival(rho[0]), ival(rho[1])), obl_read));
                                 }};
        o.items.push_back(unfold);

        // x := l, recording the read state in the past
        OutlineItem read_l;
        read_l.kind = OutlineItem::Com;
        read_l.cmd = cmd_read(11, AddrExpr::at(0), vx, "x := l");
        read_l.post = PredFamily{"after-read-l", [obl_read, vx](const Valuation& rho) {
                                     int nl_ = ival(rho[0]), nr_ = ival(rho[1]);
                                     return tp_and(tp_now(p_and(p_and(ctr_lr(nl_, nr_), var_is(vx, nl_)), obl_read)),
                                                   tp_past(ctr_lr(nl_, nr_)));
                                 }};
        o.items.push_back(read_l);

        // weaken to the interference-free form: fresh current values, the
        // lower bound on r pushed into the past predicate
        OutlineItem stabilize;
        stabilize.kind = OutlineItem::Conseq;
        stabilize.post = PredFamily{"stable-after-read-l", [obl_read, vx](const Valuation& rho) {
                                        int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                        if (nr_ > nrp_) return tp_false();
                                        return tp_and(tp_now(p_and(p_and(ctr_r(nrp_), var_is(vx, nl_)), obl_read)),
                                                      tp_past(ctr_lr(nl_, nr_)));
                                    }};
        o.items.push_back(stabilize);

        // y := r
        OutlineItem read_r;
        read_r.kind = OutlineItem::Com;
        read_r.cmd = cmd_read(12, AddrExpr::at(1), vy, "y := r");
        read_r.post = PredFamily{"after-read-r", [obl_read, vx, vy](const Valuation& rho) {
                                     int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                     if (nr_ > nrp_) return tp_false();
                                     return tp_and(tp_now(p_and(p_and(p_and(ctr_r(nrp_), var_is(vx, nl_)),
                                                                      var_is(vy, nrp_)),
                                                                obl_read)),
                                                   tp_past(ctr_lr(nl_, nr_)));
                                 }};
        o.items.push_back(read_r);

        // the temporal interpolation: a past counter state with value nl+nrp
        OutlineItem ti;
        ti.kind = OutlineItem::TI;
        ti.variant = TIVariant::Ordered;
        ti.fused = true;  // applied together with the preceding read
        ti.ti_p = StateFamily{"p", [](const Valuation& rho) {
                                  int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                  if (nr_ > nrp_) return pred_false();
                                  return ctr_lr(nl_, nr_);
                              }};
        ti.ti_q = StateFamily{"q", [](const Valuation& rho) { return ctr_r(ival(rho[2])); }};
        ti.ti_o = StateFamily{"o", [](const Valuation& rho) { return ctr_sum(ival(rho[0]) + ival(rho[2])); }};
        ti.post = PredFamily{"interpolated", [obl_read, vx, vy](const Valuation& rho) {
                                 int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                 if (nr_ > nrp_) return tp_false();
                                 return tp_and(tp_and(tp_now(p_and(p_and(var_is(vx, nl_), var_is(vy, nrp_)),
                                                                   obl_read)),
                                                      tp_past(ctr_lr(nl_, nr_))),
                                               tp_past(ctr_sum(nl_ + nrp_)));
                             }};
        o.items.push_back(ti);

        // retrospective pure linearization: trade the obligation citing the
        // past counter state
        OutlineItem trade;
        trade.kind = OutlineItem::Com;
        trade.cmd = cmd_skip(13);
        trade.cmd.text = "linearize read";
        trade.cmd.ghost.has_trade = true;
        trade.cmd.ghost.obl = tag1(kOpRead);
        trade.cmd.ghost.rct = tag1(kOpRead);
        trade.cmd.ghost.result_src_var = vx;
        trade.cmd.ghost.result_src_var2 = vy;
        trade.lin = lin_pure(wb.spec, "read", {},
                             [](const Valuation& rho) { return ival(rho[0]) + ival(rho[2]); },
                             StateFamily{"counter(nl+nrp)", [](const Valuation& rho) {
                                             return ctr_sum(ival(rho[0]) + ival(rho[2]));
                                         }});
        trade.post = PredFamily{"read-post", [vx, vy](const Valuation& rho) {
                                    int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                    if (nr_ > nrp_) return tp_false();
                                    auto rct = p_rct_result(kOpRead, nl_ + nrp_);
                                    return tp_and(tp_now(p_and(p_and(var_is(vx, nl_), var_is(vy, nrp_)), rct)),
                                                  tp_past(ctr_sum(nl_ + nrp_)));
                                }};
        o.items.push_back(trade);

        o.returns = [vx, vy](const State& s) -> std::optional<int> {
            const Value& a = s.lvars.get(vx);
            const Value& b = s.lvars.get(vy);
            if (!a.is_set() || !b.is_set()) return std::nullopt;
            return ival(a) + ival(b);
        };
    }

    // the inc outline: nondeterministic FAA, impure trade at the increment
    {
        Outline& o = wb.inc_outline;
        o.name = "counter-inc";
        o.sym = SymTable{};
        o.pre = lift_closed("counter(c,n) * OBL", tp_now(p_and(ctr_cells(), obl_inc)));

        auto inc_post = lift_closed("inc-post", tp_now(p_rct_result(kOpInc, 0)));

        auto faa_branch = [&](int addr, int label, const std::string& text) {
            OutlineItem com;
            com.kind = OutlineItem::Com;
            com.cmd = cmd_faa(label, AddrExpr::at(addr), 1, text);
            com.cmd.ghost.has_trade = true;
            com.cmd.ghost.obl = tag1(kOpInc);
            com.cmd.ghost.rct = tag1(kOpInc);
            com.lin = lin_impure(wb.spec, "inc", {}, [](const Valuation&) { return 0; });
            com.post = inc_post;
            return std::vector<OutlineItem>{com};
        };

        OutlineItem choice;
        choice.kind = OutlineItem::Choice;
        choice.branches.push_back(faa_branch(0, 21, "FAA(l,1)"));
        choice.branches.push_back(faa_branch(1, 22, "FAA(r,1)"));
        choice.post = inc_post;
        o.items.push_back(choice);
        o.returns = nullptr;
    }

    // the broken variant: x claimed to be nl+1 after the read
    {
        Outline& o = wb.broken_read_outline;
        o.name = "counter-read-broken";
        o.sym = wb.sym;
        o.pre = wb.read_outline.pre;
        OutlineItem unfold = wb.read_outline.items[0];
        o.items.push_back(unfold);
        OutlineItem read_l;
        read_l.kind = OutlineItem::Com;
        read_l.cmd = cmd_read(11, AddrExpr::at(0), vx, "x := l");
        read_l.post = PredFamily{"after-read-l-broken", [obl_read, vx, max_value](const Valuation& rho) {
                                     int nl_ = ival(rho[0]), nr_ = ival(rho[1]);
                                     int claimed = std::min(nl_ + 1, max_value);
                                     return tp_and(
                                         tp_now(p_and(p_and(ctr_lr(nl_, nr_), var_is(vx, claimed)), obl_read)),
                                         tp_past(ctr_lr(nl_, nr_)));
                                 }};
        o.items.push_back(read_l);
        o.returns = nullptr;
    }

    // the hypothesis of the read proof and the paper's inductive invariant
    wb.hypothesis.name = "counter-hyp";
    wb.hypothesis.sym = wb.sym;
    wb.hypothesis.p = StateFamily{"p", [](const Valuation& rho) {
                                      int nl_ = ival(rho[0]), nr_ = ival(rho[1]), nrp_ = ival(rho[2]);
                                      if (nr_ > nrp_) return pred_false();
                                      return ctr_lr(nl_, nr_);
                                  }};
    wb.hypothesis.q = StateFamily{"q", [](const Valuation& rho) { return ctr_r(ival(rho[2])); }};
    wb.hypothesis.o = StateFamily{"o", [](const Valuation& rho) {
                                      return ctr_sum(ival(rho[0]) + ival(rho[2]));
                                  }};

    wb.invariant = PredFamily{"counter-inv", [](const Valuation& rho) {
                                  int nl_ = ival(rho[0]), nrp_ = ival(rho[2]);
                                  int target = nl_ + nrp_;
                                  auto low = make_pred("l>=nl,sum<target", [nl_, target](const State& s) {
                                      if (!s.gheap.present(0) || !s.gheap.present(1)) return false;
                                      int lv = ival(s.gheap.at(0).val), rv = ival(s.gheap.at(1).val);
                                      return lv >= nl_ && lv + rv < target;
                                  });
                                  return tp_or(tp_now(low), tp_wpast(ctr_sum(target)));
                              }};

    wb.discharge_interferences = {
        Interference{tp_now(ctr_cells()), cmd_faa(101, AddrExpr::at(0), 1, "FAA(l,1)"), "inc-l"},
        Interference{tp_now(ctr_cells()), cmd_faa(102, AddrExpr::at(1), 1, "FAA(r,1)"), "inc-r"},
        Interference{tp_true(), cmd_skip(103), "env-skip"},
    };

    LocalPart none;
    LocalPart holds_inc;
    holds_inc.lghost.add_obligation(tag1(kOpInc));
    LocalPart holds_read;
    holds_read.lghost.add_obligation(tag1(kOpRead));
    wb.proof_interferer_locals = {none, holds_inc, holds_read};

    return wb;
}

ProgramPtr counter_read_program(Universe& u) {
    int vx = u.var_id("x"), vy = u.var_id("y");
    return prog_seq({prog_com(cmd_read(11, AddrExpr::at(0), vx, "x := l")),
                     prog_com(cmd_read(12, AddrExpr::at(1), vy, "y := r"))});
}

ProgramPtr counter_inc_program(Universe& u) {
    (void)u;
    return prog_choice({prog_com(cmd_faa(21, AddrExpr::at(0), 1, "FAA(l,1)")),
                        prog_com(cmd_faa(22, AddrExpr::at(1), 1, "FAA(r,1)"))});
}

// ---------------------------------------------------------------------------
// logical-ordering list
// ---------------------------------------------------------------------------

namespace {

constexpr int kMin = 0;
constexpr int kMax = 1;

// program-local variables of the LO thread programs
const char* kLoVars[] = {"x", "y", "z", "z2", "tk", "tz", "tm", "res"};

std::vector<Value> lo_key_domain(const std::vector<int>& keys) {
    std::vector<Value> d{Value::neg_inf(), Value::pos_inf()};
    for (int k : keys) d.push_back(Value::intv(k));
    return d;
}

}  // namespace

LoStructure::LoStructure(LoUniverseSpec spec) : spec_(std::move(spec)) {
    UniverseConfig cfg;
    cfg.name = "lolist";
    for (int node = 0; node < spec_.pool; ++node) {
        std::string pre = "n" + std::to_string(node) + ".";
        cfg.gaddrs.push_back(AddrSpec{pre + "key", AddrPolicy::Optional, lo_key_domain(spec_.keys), {24}});
        cfg.gaddrs.push_back(AddrSpec{pre + "mark", AddrPolicy::Optional,
                                      {Value::boolean(false), Value::boolean(true)}, {24}});
        cfg.gaddrs.push_back(AddrSpec{pre + "lock", AddrPolicy::Optional,
                                      {Value::boolean(false), Value::boolean(true)}, {24}});
        std::vector<Value> nodes;
        for (int t = 0; t < spec_.pool; ++t) nodes.push_back(Value::node(t));
        cfg.gaddrs.push_back(AddrSpec{pre + "pred", AddrPolicy::Optional, nodes, {24}});
        cfg.gaddrs.push_back(AddrSpec{pre + "succ", AddrPolicy::Optional, nodes, {24}});
        cfg.gaddrs.push_back(AddrSpec{pre + "vis", AddrPolicy::Optional,
                                      {Value::boolean(false), Value::boolean(true)}, {24}});
    }
    for (const char* v : kLoVars) cfg.lvars.push_back(VarSpec{v, {}});
    cfg.state_ceiling = 50'000'000;
    u_ = std::make_shared<Universe>(cfg);
}

State LoStructure::initial_state(const std::vector<int>& preload) const {
    State s = u_->empty_state();
    auto put = [&](int node, LoField f, Value v) { s.gheap.set(node_addr(node, f), 24, v); };
    auto mk_node = [&](int node, Value key) {
        put(node, FKey, key);
        put(node, FMark, Value::boolean(false));
        put(node, FLock, Value::boolean(false));
        put(node, FVis, Value::boolean(true));
    };
    mk_node(kMin, Value::neg_inf());
    mk_node(kMax, Value::pos_inf());

    std::vector<std::pair<int, int>> chain;  // (node, key) in key order
    int next = 2;
    std::vector<int> keys = preload;
    std::sort(keys.begin(), keys.end());
    for (int k : keys) {
        mk_node(next, Value::intv(k));
        chain.emplace_back(next, k);
        ++next;
    }
    // link min -> preloaded -> max, and close the cycle backwards
    int prev = kMin;
    for (auto [node, k] : chain) {
        (void)k;
        put(prev, FSucc, Value::node(node));
        put(node, FPred, Value::node(prev));
        prev = node;
    }
    put(prev, FSucc, Value::node(kMax));
    put(kMax, FPred, Value::node(prev));
    put(kMax, FSucc, Value::node(kMin));
    put(kMin, FPred, Value::node(kMax));

    s.gghost.has_freelist = true;
    for (int n = next; n < spec_.pool; ++n) s.gghost.freelist.push_back(static_cast<std::int16_t>(n));
    return s;
}

namespace {

// choosers capture the field layout; nodes are alive when their key cell is

bool lo_alive(const State& s, int node) { return s.gheap.present(node * kLoFields + FKey); }

Value lo_field(const State& s, int node, LoField f) { return s.gheap.at(node * kLoFields + f).val; }

std::vector<Value> choose_visible(const State& s) {
    std::vector<Value> out;
    int pool = static_cast<int>(s.gheap.cells.size()) / kLoFields;
    for (int n = 0; n < pool; ++n)
        if (lo_alive(s, n) && lo_field(s, n, FVis).as_bool()) out.push_back(Value::node(n));
    return out;
}

std::vector<Value> choose_visible_or_pred(const State& s) {
    std::vector<Value> out = choose_visible(s);
    std::size_t direct = out.size();
    for (std::size_t i = 0; i < direct; ++i) {
        int n = out[i].f[0];
        Value p = lo_field(s, n, FPred);
        bool seen = false;
        for (const Value& v : out)
            if (v == p) seen = true;
        if (!seen && lo_alive(s, p.f[0])) out.push_back(p);
    }
    return out;
}

StatePredPtr lvar_cond(const std::string& name, std::function<bool(const State&)> fn) {
    return make_pred(name, std::move(fn));
}

}  // namespace

ProgramPtr LoStructure::program_for(const std::string& op, int key) const {
    const int vx = var("x"), vy = var("y"), vz = var("z"), vz2 = var("z2");
    const int vtk = var("tk"), vtz = var("tz"), vtm = var("tm"), vres = var("res");
    const Value K = Value::intv(key);
    const int base = op == "contains" ? 300 : op == "insert" ? 400 : 500;
    int lbl = base;
    auto L = [&]() { return lbl++; };

    auto addr = [&](int v, LoField f) { return AddrExpr::field_of(v, 0, kLoFields, f); };

    if (op == "contains") {
        std::vector<ProgramPtr> seq;
        seq.push_back(prog_com(cmd_choose(L(), vy, choose_visible, "y := traverse(k)")));
        if (spec_.variant == LoVariant::Fixed) {
            // follow pred until an unmarked node is reached
            auto body = prog_seq({prog_com(cmd_read(L(), addr(vy, FMark), vtm, "tm := y.mark")),
                                  prog_com(cmd_assume(L(),
                                                      lvar_cond("tm", [vtm](const State& s) {
                                                          return s.lvars.get(vtm).is_set() &&
                                                                 s.lvars.get(vtm).as_bool();
                                                      }),
                                                      "assume tm")),
                                  prog_com(cmd_read(L(), addr(vy, FPred), vy, "y := y.pred"))});
            seq.push_back(prog_loop(body));
            seq.push_back(prog_com(cmd_read(L(), addr(vy, FMark), vtm, "tm := y.mark")));
            seq.push_back(prog_com(cmd_assume(L(),
                                              lvar_cond("!tm",
                                                        [vtm](const State& s) {
                                                            return s.lvars.get(vtm).is_set() &&
                                                                   !s.lvars.get(vtm).as_bool();
                                                        }),
                                              "assume !tm")));
        }
        // while (k < y.key) y := y.pred
        {
            auto body = prog_seq({prog_com(cmd_read(L(), addr(vy, FKey), vtk, "tk := y.key")),
                                  prog_com(cmd_assume(L(),
                                                      lvar_cond("k<tk",
                                                                [vtk, K](const State& s) {
                                                                    return s.lvars.get(vtk).is_set() &&
                                                                           key_less(K, s.lvars.get(vtk));
                                                                }),
                                                      "assume k < tk")),
                                  prog_com(cmd_read(L(), addr(vy, FPred), vy, "y := y.pred"))});
            seq.push_back(prog_loop(body));
            seq.push_back(prog_com(cmd_read(L(), addr(vy, FKey), vtk, "tk := y.key")));
            seq.push_back(prog_com(cmd_assume(L(),
                                              lvar_cond("!(k<tk)",
                                                        [vtk, K](const State& s) {
                                                            return s.lvars.get(vtk).is_set() &&
                                                                   !key_less(K, s.lvars.get(vtk));
                                                        }),
                                              "assume !(k<tk)")));
        }
        // while (y.key < k) y := y.succ
        {
            auto body = prog_seq({prog_com(cmd_read(L(), addr(vy, FKey), vtk, "tk := y.key")),
                                  prog_com(cmd_assume(L(),
                                                      lvar_cond("tk<k",
                                                                [vtk, K](const State& s) {
                                                                    return s.lvars.get(vtk).is_set() &&
                                                                           key_less(s.lvars.get(vtk), K);
                                                                }),
                                                      "assume tk < k")),
                                  prog_com(cmd_read(L(), addr(vy, FSucc), vy, "y := y.succ"))});
            seq.push_back(prog_loop(body));
            seq.push_back(prog_com(cmd_read(L(), addr(vy, FKey), vtk, "tk := y.key")));
            seq.push_back(prog_com(cmd_assume(L(),
                                              lvar_cond("!(tk<k)",
                                                        [vtk, K](const State& s) {
                                                            return s.lvars.get(vtk).is_set() &&
                                                                   !key_less(s.lvars.get(vtk), K);
                                                        }),
                                              "assume !(tk<k)")));
        }
        // res := y.key == k && !y.mark
        seq.push_back(prog_com(cmd_read(L(), addr(vy, FMark), vtm, "tm := y.mark")));
        auto yes = prog_seq(
            {prog_com(cmd_assume(L(),
                                 lvar_cond("tk=k&!tm",
                                           [vtk, vtm, K](const State& s) {
                                               return s.lvars.get(vtk) == K && s.lvars.get(vtm).is_set() &&
                                                      !s.lvars.get(vtm).as_bool();
                                           }),
                                 "assume found")),
             prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(1)), "res := true"))});
        auto no = prog_seq(
            {prog_com(cmd_assume(L(),
                                 lvar_cond("miss",
                                           [vtk, vtm, K](const State& s) {
                                               return !(s.lvars.get(vtk) == K) ||
                                                      (s.lvars.get(vtm).is_set() && s.lvars.get(vtm).as_bool());
                                           }),
                                 "assume missed")),
             prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(0)), "res := false"))});
        seq.push_back(prog_choice({yes, no}));
        return prog_seq(std::move(seq));
    }

    // locate(k): candidate, lock, read successor, validate under the lock
    auto locate_attempt = [&](std::vector<ProgramPtr>& seq, bool looped) {
        (void)looped;
        seq.push_back(prog_com(cmd_choose(L(), vx, choose_visible_or_pred, "x := candidate(k)")));
        seq.push_back(prog_com(cmd_lock(L(), addr(vx, FLock), "lock x")));
        seq.push_back(prog_com(cmd_read(L(), addr(vx, FSucc), vz, "z := x.succ")));
        Command validate = cmd_read(L(), addr(vx, FKey), vtk, "tk,tz,tm := x.key,z.key,x.mark");
        validate.kind = Command::ReadMany;
        validate.reads = {{addr(vx, FKey), vtk}, {addr(vz, FKey), vtz}, {addr(vx, FMark), vtm}};
        seq.push_back(prog_com(validate));
    };
    auto valid_cond = lvar_cond("valid", [vtk, vtz, vtm, K](const State& s) {
        const Value& tk = s.lvars.get(vtk);
        const Value& tz = s.lvars.get(vtz);
        const Value& tm = s.lvars.get(vtm);
        if (!tk.is_set() || !tz.is_set() || !tm.is_set()) return false;
        return key_less(tk, K) && key_leq(K, tz) && !tm.as_bool();
    });

    std::vector<ProgramPtr> retry_body;
    locate_attempt(retry_body, true);
    retry_body.push_back(prog_com(cmd_assume(L(), p_not(valid_cond), "assume !valid")));
    retry_body.push_back(prog_com(cmd_unlock(L(), addr(vx, FLock), "unlock x")));

    std::vector<ProgramPtr> seq;
    seq.push_back(prog_loop(prog_seq(std::move(retry_body))));
    locate_attempt(seq, false);
    seq.push_back(prog_com(cmd_assume(L(), valid_cond, "assume valid")));

    auto tz_is_k = lvar_cond("tz=k", [vtz, K](const State& s) { return s.lvars.get(vtz) == K; });

    if (op == "insert") {
        // duplicate: fail
        auto fail = prog_seq({prog_com(cmd_assume(L(), tz_is_k, "assume z.key = k")),
                              prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(0)), "res := false")),
                              prog_com(cmd_unlock(L(), addr(vx, FLock), "unlock x"))});

        bool vis_first = spec_.variant == LoVariant::Feldman;
        std::vector<std::pair<int, ValueExpr>> fields = {
            {FKey, ValueExpr::constant(K)},
            {FMark, ValueExpr::constant(Value::boolean(false))},
            {FLock, ValueExpr::constant(Value::boolean(false))},
            {FPred, ValueExpr::var_ref(vx)},
            {FSucc, ValueExpr::var_ref(vz)},
            {FVis, ValueExpr::constant(Value::boolean(vis_first))},
        };
        std::vector<ProgramPtr> ins;
        ins.push_back(prog_com(cmd_assume(L(), p_not(tz_is_k), "assume z.key != k")));
        ins.push_back(prog_com(cmd_alloc(L(), vy, 0, kLoFields, fields, "y := new Node(k)")));
        auto succ_link = prog_com(cmd_write(L(), addr(vx, FSucc), ValueExpr::var_ref(vy), "x.succ := y"));
        auto pred_link = prog_com(cmd_write(L(), addr(vz, FPred), ValueExpr::var_ref(vy), "z.pred := y"));
        if (spec_.variant == LoVariant::Fixed) {
            ins.push_back(succ_link);
            ins.push_back(pred_link);
        } else {
            // original order: backward ordering first
            ins.push_back(pred_link);
            ins.push_back(succ_link);
        }
        ins.push_back(prog_com(cmd_unlock(L(), addr(vx, FLock), "unlock x")));
        if (!vis_first)
            ins.push_back(
                prog_com(cmd_write(L(), addr(vy, FVis), ValueExpr::constant(Value::boolean(true)), "tree-insert y")));
        ins.push_back(prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(1)), "res := true")));

        seq.push_back(prog_choice({fail, prog_seq(std::move(ins))}));
        return prog_seq(std::move(seq));
    }

    if (op == "delete") {
        auto fail = prog_seq({prog_com(cmd_assume(L(), p_not(tz_is_k), "assume z.key != k")),
                              prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(0)), "res := false")),
                              prog_com(cmd_unlock(L(), addr(vx, FLock), "unlock x"))});

        std::vector<ProgramPtr> del;
        del.push_back(prog_com(cmd_assume(L(), tz_is_k, "assume z.key = k")));
        del.push_back(prog_com(cmd_lock(L(), addr(vz, FLock), "lock z")));
        del.push_back(prog_com(cmd_read(L(), addr(vz, FSucc), vz2, "z2 := z.succ")));
        auto mark = prog_com(
            cmd_write(L(), addr(vz, FMark), ValueExpr::constant(Value::boolean(true)), "z.mark := true"));
        if (!spec_.fault_unlink_without_mark) del.push_back(mark);
        del.push_back(prog_com(cmd_write(L(), addr(vz2, FPred), ValueExpr::var_ref(vx), "z2.pred := x")));
        del.push_back(prog_com(cmd_write(L(), addr(vx, FSucc), ValueExpr::var_ref(vz2), "x.succ := z2")));
        del.push_back(prog_com(cmd_unlock(L(), addr(vz, FLock), "unlock z")));
        del.push_back(prog_com(cmd_unlock(L(), addr(vx, FLock), "unlock x")));
        del.push_back(
            prog_com(cmd_write(L(), addr(vz, FVis), ValueExpr::constant(Value::boolean(false)), "tree-delete z")));
        del.push_back(prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(1)), "res := true")));

        seq.push_back(prog_choice({fail, prog_seq(std::move(del))}));
        return prog_seq(std::move(seq));
    }

    throw std::runtime_error("unknown lo operation: " + op);
}

// ---------------------------------------------------------------------------
// insets and invariants
// ---------------------------------------------------------------------------

namespace {

// key domain bits: bit 0 = -inf, bits 1..n = keys ascending, last = +inf
int key_bit(const LoStructure& lo, const Value& key) {
    if (key.kind == Value::NegInf) return 0;
    if (key.kind == Value::PosInf) return static_cast<int>(lo.spec().keys.size()) + 1;
    for (std::size_t i = 0; i < lo.spec().keys.size(); ++i)
        if (lo.spec().keys[i] == key.as_int()) return static_cast<int>(i) + 1;
    return -1;
}

std::uint32_t interval_above(const LoStructure& lo, const Value& key) {
    // (key, +inf]
    int nbits = static_cast<int>(lo.spec().keys.size()) + 2;
    int kb = key_bit(lo, key);
    std::uint32_t out = 0;
    for (int b = kb + 1; b < nbits; ++b) out |= (1u << b);
    return out;
}

std::uint32_t interval_upto(const LoStructure& lo, const Value& key) {
    // [-inf, key]
    int kb = key_bit(lo, key);
    std::uint32_t out = 0;
    for (int b = 0; b <= kb; ++b) out |= (1u << b);
    return out;
}

}  // namespace

InsetMap compute_insets(const LoStructure& lo, const State& snapshot) {
    const int pool = lo.spec().pool;
    InsetMap m;
    m.inset.assign(pool, 0);
    m.keyset.assign(pool, 0);
    m.contents_bits.assign(pool, 0);

    int nbits = static_cast<int>(lo.spec().keys.size()) + 2;
    std::uint32_t full = (1u << nbits) - 1;

    auto alive = [&](int n) { return snapshot.gheap.present(n * kLoFields + FKey); };
    auto field = [&](int n, LoField f) { return snapshot.gheap.at(n * kLoFields + f).val; };

    // least fixpoint of the flow equation, min seeded with the full interval
    if (alive(kMin)) m.inset[kMin] = full;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < pool; ++x) {
            if (!alive(x) || x == kMin) continue;
            std::uint32_t in = 0;
            for (int y = 0; y < pool; ++y) {
                if (!alive(y)) continue;
                Value succ = field(y, FSucc);
                if (succ.kind != Value::Node || succ.f[0] != x) continue;
                in |= m.inset[y] & interval_above(lo, field(y, FKey));
            }
            if (in != m.inset[x]) {
                m.inset[x] = in;
                changed = true;
            }
        }
    }
    for (int x = 0; x < pool; ++x) {
        if (!alive(x)) continue;
        m.keyset[x] = m.inset[x] & interval_upto(lo, field(x, FKey));
        Value key = field(x, FKey);
        if (!field(x, FMark).as_bool() && key.kind == Value::Int) {
            int kb = key_bit(lo, key);
            if (kb >= 0) m.contents_bits[x] = 1u << kb;
        }
    }
    return m;
}

InvariantReport check_structure_invariants(const LoStructure& lo, const State& snapshot) {
    InvariantReport rep;
    const int pool = lo.spec().pool;
    auto alive = [&](int n) { return snapshot.gheap.present(n * kLoFields + FKey); };
    auto field = [&](int n, LoField f) { return snapshot.gheap.at(n * kLoFields + f).val; };
    auto bad = [&](const std::string& what) {
        rep.ok = false;
        rep.violations.push_back(what);
    };

    InsetMap m = compute_insets(lo, snapshot);

    // a node belongs to the shared structure once it is published: visible
    // to traversals or referenced by another node; a freshly allocated node
    // is still the inserting thread's own
    std::vector<bool> member(pool, false);
    for (int x = 0; x < pool; ++x) {
        if (!alive(x)) continue;
        if (field(x, FVis).as_bool()) member[x] = true;
    }
    for (int x = 0; x < pool; ++x) {
        if (!alive(x)) continue;
        for (LoField f : {FPred, FSucc}) {
            Value t = field(x, f);
            if (t.kind == Value::Node && t.f[0] >= 0 && t.f[0] < pool && alive(t.f[0])) member[t.f[0]] = true;
        }
    }

    for (int x = 0; x < pool; ++x) {
        if (!alive(x) || !member[x]) continue;
        std::string nx = "n" + std::to_string(x);
        // I1: contents within the keyset, pointers stay in the pool
        if ((m.contents_bits[x] & ~m.keyset[x]) != 0) bad("I1: contents of " + nx + " escape its keyset");
        Value p = field(x, FPred), sc = field(x, FSucc);
        if (p.kind != Value::Node || !alive(p.f[0])) bad("I1: pred of " + nx + " dangles");
        if (sc.kind != Value::Node || !alive(sc.f[0])) bad("I1: succ of " + nx + " dangles");
        // I2: sentinels unmarked with infinite keys
        if (x == kMin && (field(x, FMark).as_bool() || field(x, FKey).kind != Value::NegInf))
            bad("I2: min corrupted");
        if (x == kMax && (field(x, FMark).as_bool() || field(x, FKey).kind != Value::PosInf))
            bad("I2: max corrupted");
        // I3: unmarked nodes have flow covering [key, +inf]
        if (!field(x, FMark).as_bool()) {
            if (m.inset[x] == 0) bad("I3: unmarked " + nx + " has empty inset");
            std::uint32_t tail = interval_upto(lo, field(x, FKey)) ^ ((1u << (key_bit(lo, field(x, FKey)) + 1)) - 1);
            (void)tail;
            if (m.inset[x] != 0) {
                std::uint32_t needed = ~interval_upto(lo, field(x, FKey)) | (1u << key_bit(lo, field(x, FKey)));
                std::uint32_t nbitsmask = (1u << (static_cast<int>(lo.spec().keys.size()) + 2)) - 1;
                needed &= nbitsmask;
                if ((m.inset[x] & needed) != needed) bad("I3: inset of " + nx + " misses [key,+inf]");
            }
        }
        // I4: the successor of unlocked unmarked nodes is unmarked; nonempty
        // inset propagates backwards
        if (!field(x, FLock).as_bool() && !field(x, FMark).as_bool()) {
            int s = sc.f[0];
            if (alive(s) && field(s, FMark).as_bool() && s != kMin) bad("I4: marked successor of " + nx);
        }
        if (m.inset[x] != 0 && x != kMin) {
            int pr = p.f[0];
            if (alive(pr) && m.inset[pr] == 0) bad("I4: " + nx + " has flow but its pred has none");
        }
    }
    // flow-path uniqueness: at most one flow-carrying predecessor per node
    for (int x = 0; x < pool; ++x) {
        if (!alive(x) || !member[x]) continue;
        int carriers = 0;
        for (int y = 0; y < pool; ++y) {
            if (!alive(y)) continue;
            Value sc = field(y, FSucc);
            if (sc.kind == Value::Node && sc.f[0] == x && (m.inset[y] & interval_above(lo, field(y, FKey))) != 0)
                ++carriers;
        }
        if (carriers > 1) bad("flow: n" + std::to_string(x) + " receives flow from " + std::to_string(carriers));
    }
    // keyset disjointness
    for (int x = 0; x < pool; ++x)
        for (int y = x + 1; y < pool; ++y) {
            if (!alive(x) || !alive(y) || !member[x] || !member[y]) continue;
            if ((m.keyset[x] & m.keyset[y]) != 0)
                bad("keysets of n" + std::to_string(x) + " and n" + std::to_string(y) + " overlap");
        }
    return rep;
}

SeqSpec LoStructure::set_specification() const {
    SeqSpec s = set_spec();
    const LoStructure* lo = this;
    s.css = [lo](const Universe&, const State& st) -> std::optional<AbstractVal> {
        if (st.abort) return std::nullopt;
        InsetMap m = compute_insets(*lo, st);
        std::uint32_t bits = 0;
        for (int n = 0; n < lo->spec().pool; ++n) {
            if (m.inset[n] == 0) continue;  // only flow-path nodes contribute
            if (m.contents_bits[n] == 0) continue;
            for (std::size_t i = 0; i < lo->spec().keys.size(); ++i)
                if (m.contents_bits[n] & (1u << (i + 1))) bits |= (1u << lo->spec().keys[i]);
        }
        return AbstractVal::key_set(bits);
    };
    return s;
}

// ---------------------------------------------------------------------------
// LO interference set and hypotheses
// ---------------------------------------------------------------------------

std::vector<LocalPart> LoStructure::interferer_locals() const {
    // triples of nodes bound to x, y/z, z2
    std::vector<LocalPart> out;
    const int vx = var("x"), vy = var("y"), vz = var("z"), vz2 = var("z2");
    std::size_t nvars = u_->config().lvars.size();
    for (int a = 0; a < spec_.pool; ++a)
        for (int b = 0; b < spec_.pool; ++b)
            for (int c = 0; c < spec_.pool; ++c) {
                LocalPart lp;
                lp.lvars.vars.assign(nvars, Value::none());
                lp.lvars.vars[vx] = Value::node(a);
                lp.lvars.vars[vy] = Value::node(b);
                lp.lvars.vars[vz] = Value::node(b);
                lp.lvars.vars[vz2] = Value::node(c);
                out.push_back(std::move(lp));
            }
    return out;
}

std::vector<Interference> LoStructure::interference_set() const {
    std::vector<Interference> out;
    const LoStructure* lo = this;
    const int vx = var("x"), vy = var("y"), vz = var("z"), vz2 = var("z2");
    auto addr = [&](int v, LoField f) { return AddrExpr::field_of(v, 0, kLoFields, f); };

    auto node_of = [](const State& s, int var) -> int {
        const Value& v = s.lvars.get(var);
        return v.kind == Value::Node ? v.f[0] : -1;
    };
    auto alive = [lo](const State& s, int n) {
        return n >= 0 && n < lo->spec().pool && s.gheap.present(n * kLoFields + FKey);
    };
    auto fld = [](const State& s, int n, LoField f) { return s.gheap.at(n * kLoFields + f).val; };
    auto published = [lo, alive, fld](const State& s, int n) {
        if (!alive(s, n)) return false;
        if (fld(s, n, FVis).as_bool()) return true;
        for (int m = 0; m < lo->spec().pool; ++m) {
            if (m == n || !alive(s, m)) continue;
            if (fld(s, m, FSucc) == Value::node(n) || fld(s, m, FPred) == Value::node(n)) return true;
        }
        return false;
    };

    // insert, logical linking under the position lock; in the fixed variant
    // the forward link happens first, so the pred link sees a flow-connected
    // node
    bool fixed = spec_.variant == LoVariant::Fixed;
    auto ins_ctx = [=](const State& s, bool after_succ_link) {
        int x = node_of(s, vx), y = node_of(s, vy), z = node_of(s, vz);
        if (!alive(s, x) || !alive(s, y) || !alive(s, z)) return false;
        if (!published(s, x) || !published(s, z)) return false;
        if (!fld(s, x, FLock).as_bool()) return false;
        if (fld(s, x, FMark).as_bool() || fld(s, z, FMark).as_bool() || fld(s, y, FMark).as_bool()) return false;
        if (!key_less(fld(s, x, FKey), fld(s, y, FKey)) || !key_less(fld(s, y, FKey), fld(s, z, FKey)))
            return false;
        if (!(fld(s, y, FPred) == Value::node(x)) || !(fld(s, y, FSucc) == Value::node(z))) return false;
        if (after_succ_link) return fld(s, x, FSucc) == Value::node(y);
        return fld(s, x, FSucc) == Value::node(z);
    };
    out.push_back(Interference{
        tp_now(make_pred("ins-succ-ctx", [=](const State& s) { return ins_ctx(s, false); })),
        cmd_write(441, addr(vx, FSucc), ValueExpr::var_ref(vy), "x.succ := y"), "ins-succ-link"});
    out.push_back(Interference{
        tp_now(make_pred("ins-pred-ctx", [=](const State& s) { return ins_ctx(s, fixed); })),
        cmd_write(442, addr(vz, FPred), ValueExpr::var_ref(vy), "z.pred := y"), "ins-pred-link"});

    // delete, after locate validated (x unmarked, z = succ(x) holds key k)
    auto del_ctx = [=](const State& s, bool marked, bool pred_done) {
        int x = node_of(s, vx), z = node_of(s, vz), z2 = node_of(s, vz2);
        if (!alive(s, x) || !alive(s, z) || !alive(s, z2)) return false;
        if (!published(s, x) || !published(s, z) || !published(s, z2)) return false;
        if (!fld(s, x, FLock).as_bool() || !fld(s, z, FLock).as_bool()) return false;
        if (fld(s, x, FMark).as_bool()) return false;
        if (z == kMin || z == kMax) return false;
        if (fld(s, z, FMark).as_bool() != marked) return false;
        if (fld(s, z2, FMark).as_bool()) return false;
        if (!(fld(s, x, FSucc) == Value::node(z)) || !(fld(s, z, FSucc) == Value::node(z2))) return false;
        if (pred_done) return fld(s, z2, FPred) == Value::node(x);
        return true;
    };
    out.push_back(Interference{
        tp_now(make_pred("del-mark-ctx", [=](const State& s) { return del_ctx(s, false, false); })),
        cmd_write(541, addr(vz, FMark), ValueExpr::constant(Value::boolean(true)), "z.mark := true"),
        "del-mark"});
    out.push_back(Interference{
        tp_now(make_pred("del-pred-ctx", [=](const State& s) { return del_ctx(s, true, false); })),
        cmd_write(542, addr(vz2, FPred), ValueExpr::var_ref(vx), "z2.pred := x"), "del-pred-unlink"});
    out.push_back(Interference{
        tp_now(make_pred("del-succ-ctx", [=](const State& s) { return del_ctx(s, true, true); })),
        cmd_write(543, addr(vx, FSucc), ValueExpr::var_ref(vz2), "x.succ := z2"), "del-succ-unlink"});

    // lock handling and the tree-visibility stubs; unlocking happens only
    // once the node-local invariant is restored, publication only after the
    // forward linking
    auto alive_at = [=](const State& s, int v) { return alive(s, node_of(s, v)); };
    auto linked_in = [=](const State& s, int n) {
        for (int m = 0; m < lo->spec().pool; ++m) {
            if (m == n || !alive(s, m)) continue;
            if (fld(s, m, FSucc) == Value::node(n)) return true;
        }
        return false;
    };
    out.push_back(Interference{
        tp_now(make_pred("x published", [=](const State& s) { return published(s, node_of(s, vx)); })),
        cmd_lock(444, addr(vx, FLock), "lock x"), "lock"});
    out.push_back(Interference{
        tp_now(make_pred("x restored", [=](const State& s) {
            int x = node_of(s, vx);
            if (!alive(s, x) || !fld(s, x, FLock).as_bool()) return false;
            if (fld(s, x, FMark).as_bool()) return true;
            int sc = fld(s, x, FSucc).f[0];
            return alive(s, sc) && !fld(s, sc, FMark).as_bool();
        })),
        cmd_unlock(445, addr(vx, FLock), "unlock x"), "unlock"});
    out.push_back(Interference{
        tp_now(make_pred("y linked", [=](const State& s) {
            int y = node_of(s, vy);
            return alive(s, y) && !fld(s, y, FVis).as_bool() && linked_in(s, y);
        })),
        cmd_write(446, addr(vy, FVis), ValueExpr::constant(Value::boolean(true)), "show y"), "tree-insert"});
    out.push_back(Interference{
        tp_now(make_pred("y unlinked marked", [=](const State& s) {
            int y = node_of(s, vy);
            return alive(s, y) && fld(s, y, FVis).as_bool() && fld(s, y, FMark).as_bool() && !linked_in(s, y);
        })),
        cmd_write(447, addr(vy, FVis), ValueExpr::constant(Value::boolean(false)), "hide y"), "tree-delete"});

    // allocation of a fresh node between x and z
    auto alloc_ctx = [=](const State& s) {
        int x = node_of(s, vx), z = node_of(s, vz);
        if (!alive(s, x) || !alive(s, z)) return false;
        if (!fld(s, x, FLock).as_bool() || fld(s, x, FMark).as_bool()) return false;
        return fld(s, x, FSucc) == Value::node(z);
    };
    for (int k : spec_.keys) {
        std::vector<std::pair<int, ValueExpr>> fields = {
            {FKey, ValueExpr::constant(Value::intv(k))},
            {FMark, ValueExpr::constant(Value::boolean(false))},
            {FLock, ValueExpr::constant(Value::boolean(false))},
            {FPred, ValueExpr::var_ref(vx)},
            {FSucc, ValueExpr::var_ref(vz)},
            {FVis, ValueExpr::constant(Value::boolean(false))},
        };
        Command alloc = cmd_alloc(450 + k, vy, 0, kLoFields, fields, "y := new Node(" + std::to_string(k) + ")");
        out.push_back(Interference{
            tp_now(make_pred("alloc-ctx", [=](const State& s) {
                if (!alloc_ctx(s)) return false;
                if (!published(s, node_of(s, vx)) || !published(s, node_of(s, vz))) return false;
                return key_less(fld(s, node_of(s, vx), FKey), Value::intv(k)) &&
                       key_less(Value::intv(k), fld(s, node_of(s, vz), FKey));
            })),
            alloc, "alloc-" + std::to_string(k)});
    }
    return out;
}

std::vector<State> LoStructure::reachable_states(int threads, int steps) const {
    // collected by the explorer; implemented in explore.cpp
    extern std::vector<State> lo_collect_reachable(const LoStructure& lo, int threads, int steps);
    return lo_collect_reachable(*this, threads, steps);
}

LoHypotheses lo_contains_hypotheses(LoStructure& lo) {
    LoHypotheses out;
    const int pool = lo.spec().pool;
    auto lop = &lo;

    // structural invariant as a memoized snapshot predicate
    auto inv_cache = std::make_shared<std::unordered_map<std::uint64_t, bool>>();
    auto inv_mutex = std::make_shared<std::mutex>();
    auto struct_inv = [lop, inv_cache, inv_mutex](const State& s) {
        std::uint64_t h = hash_state(s);
        {
            std::lock_guard<std::mutex> g(*inv_mutex);
            auto it = inv_cache->find(h);
            if (it != inv_cache->end()) return it->second;
        }
        bool ok = check_structure_invariants(*lop, s).ok;
        std::lock_guard<std::mutex> g(*inv_mutex);
        inv_cache->emplace(h, ok);
        return ok;
    };

    auto alive = [lop](const State& s, int n) {
        return n >= 0 && n < lop->spec().pool && s.gheap.present(n * kLoFields + FKey);
    };
    auto fld = [](const State& s, int n, LoField f) { return s.gheap.at(n * kLoFields + f).val; };

    SymVar v{"v", {}}, uvar{"u", {}};
    for (int n = 0; n < pool; ++n) {
        v.domain.push_back(Value::node(n));
        uvar.domain.push_back(Value::node(n));
    }
    SymVar kvar{"k", {}};
    for (int k : lo.spec().keys) kvar.domain.push_back(Value::intv(k));

    // the flow fixpoint is referenced by every valuation: memoize per state
    auto inset_cache = std::make_shared<std::unordered_map<std::uint64_t, InsetMap>>();
    auto inset_mutex = std::make_shared<std::mutex>();
    auto insets_of = [lop, inset_cache, inset_mutex](const State& s) {
        std::uint64_t h = hash_state(s);
        {
            std::lock_guard<std::mutex> g(*inset_mutex);
            auto it = inset_cache->find(h);
            if (it != inset_cache->end()) return it->second;
        }
        InsetMap m = compute_insets(*lop, s);
        std::lock_guard<std::mutex> g(*inset_mutex);
        inset_cache->emplace(h, m);
        return m;
    };
    auto published = [lop, alive](const State& s, int n) {
        if (!alive(s, n)) return false;
        if (s.gheap.at(n * kLoFields + FVis).val.as_bool()) return true;
        for (int m = 0; m < lop->spec().pool; ++m) {
            if (m == n || !alive(s, m)) continue;
            if (s.gheap.at(m * kLoFields + FSucc).val == Value::node(n) ||
                s.gheap.at(m * kLoFields + FPred).val == Value::node(n))
                return true;
        }
        return false;
    };
    auto inset_nonempty = [insets_of, alive](const State& s, int n) {
        if (!alive(s, n)) return false;
        return insets_of(s).inset[n] != 0;
    };
    auto key_in_inset = [lop, insets_of, alive](const State& s, int n, const Value& k) {
        if (!alive(s, n)) return false;
        int kb = key_bit(*lop, k);
        return kb >= 0 && (insets_of(s).inset[n] & (1u << kb)) != 0;
    };

    // 1. the pred-loop hypothesis: flow in the past plus the current pred
    //    pointer were true simultaneously
    {
        Hypothesis h;
        h.name = "lo-pred-loop";
        h.sym = SymTable{{v, uvar}};
        h.p = StateFamily{"Inv * inset(v)!=0", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              return make_pred("p", [=](const State& s) {
                                  return struct_inv(s) && inset_nonempty(s, vn);
                              });
                          }};
        h.q = StateFamily{"Inv * pred(v)=u", [=](const Valuation& rho) {
                              int vn = rho[0].f[0], un = rho[1].f[0];
                              return make_pred("q", [=](const State& s) {
                                  return struct_inv(s) && published(s, vn) &&
                                         fld(s, vn, FPred) == Value::node(un);
                              });
                          }};
        h.o = StateFamily{"p cap q", [=](const Valuation& rho) {
                              int vn = rho[0].f[0], un = rho[1].f[0];
                              return make_pred("o", [=](const State& s) {
                                  return struct_inv(s) && inset_nonempty(s, vn) && published(s, vn) &&
                                         fld(s, vn, FPred) == Value::node(un);
                              });
                          }};
        out.hyps.push_back(h);
    }
    // 2. the succ-loop analogue with k in the inset
    {
        Hypothesis h;
        h.name = "lo-succ-loop";
        h.sym = SymTable{{v, uvar, kvar}};
        h.p = StateFamily{"Inv * k in inset(v)", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[2];
                              return make_pred("p", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k);
                              });
                          }};
        h.q = StateFamily{"Inv * succ(v)=u * key(v)<k", [=](const Valuation& rho) {
                              int vn = rho[0].f[0], un = rho[1].f[0];
                              Value k = rho[2];
                              return make_pred("q", [=](const State& s) {
                                  return struct_inv(s) && published(s, vn) &&
                                         fld(s, vn, FSucc) == Value::node(un) &&
                                         key_less(fld(s, vn, FKey), k);
                              });
                          }};
        h.o = StateFamily{"p cap q", [=](const Valuation& rho) {
                              int vn = rho[0].f[0], un = rho[1].f[0];
                              Value k = rho[2];
                              return make_pred("o", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k) && published(s, vn) &&
                                         fld(s, vn, FSucc) == Value::node(un) && key_less(fld(s, vn, FKey), k);
                              });
                          }};
        out.hyps.push_back(h);
    }
    // 3. key immutability: the key fact moves freely between now and past
    {
        Hypothesis h;
        h.name = "lo-key-immutable";
        h.sym = SymTable{{v, kvar}};
        h.p = StateFamily{"Inv * k in inset(v)", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("p", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k);
                              });
                          }};
        h.q = StateFamily{"key(v)=k", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("q", [=](const State& s) {
                                  return published(s, vn) && fld(s, vn, FKey) == k;
                              });
                          }};
        h.o = StateFamily{"p cap q", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("o", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k) && alive(s, vn) &&
                                         fld(s, vn, FKey) == k;
                              });
                          }};
        out.hyps.push_back(h);
    }
    // 4. mark monotonicity: once the node with key k is marked, the flow fact
    //    held at the marking moment
    {
        Hypothesis h;
        h.name = "lo-mark-monotone";
        h.sym = SymTable{{v, kvar}};
        h.p = StateFamily{"Inv * k in inset(v) * key(v)=k", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("p", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k) && alive(s, vn) &&
                                         fld(s, vn, FKey) == k;
                              });
                          }};
        h.q = StateFamily{"mark(v) * key(v)=k", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("q", [=](const State& s) {
                                  return published(s, vn) && fld(s, vn, FMark).as_bool() && fld(s, vn, FKey) == k;
                              });
                          }};
        h.o = StateFamily{"p cap q", [=](const Valuation& rho) {
                              int vn = rho[0].f[0];
                              Value k = rho[1];
                              return make_pred("o", [=](const State& s) {
                                  return struct_inv(s) && key_in_inset(s, vn, k) && alive(s, vn) &&
                                         fld(s, vn, FKey) == k && fld(s, vn, FMark).as_bool();
                              });
                          }};
        out.hyps.push_back(h);
    }

    // inv = now(q) -> wpast(p cap q), for every hypothesis
    for (const auto& h : out.hyps) {
        PredFamily inv{
            "now(q)->wpast(o) for " + h.name, [h](const Valuation& rho) {
                StatePredPtr q = h.q.fn(rho);
                StatePredPtr o = h.o.fn(rho);
                return tp_or(tp_now(p_not(q)), tp_wpast(o));
            }};
        out.invariants.push_back(inv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rdcss
// ---------------------------------------------------------------------------

namespace {
const char* kRdVars[] = {"d", "s", "dl", "m", "u", "res"};
}

RdcssStructure::RdcssStructure(RdcssSpecConfig cfg) : cfg_(cfg) {
    UniverseConfig c;
    c.name = "rdcss";
    std::vector<Value> rdom;
    for (int v = 0; v < cfg_.values; ++v) rdom.push_back(Value::rd_inactive(v));
    for (int d = 0; d < cfg_.descriptors; ++d) rdom.push_back(Value::rd_active(d));
    c.gaddrs.push_back(AddrSpec{"r", AddrPolicy::Always, rdom, {24}});
    std::vector<Value> ddom;
    for (int n1 = 0; n1 < cfg_.values; ++n1)
        for (int m1 = 0; m1 < cfg_.values; ++m1)
            for (int n2 = 0; n2 < cfg_.values; ++n2) ddom.push_back(Value::descriptor(0, n1, m1, n2));
    for (int d = 0; d < cfg_.descriptors; ++d)
        c.gaddrs.push_back(AddrSpec{"d" + std::to_string(d), AddrPolicy::Optional, ddom, {24}});
    std::vector<Value> ldom;
    for (int v = 0; v < cfg_.values; ++v) ldom.push_back(Value::intv(v));
    c.gaddrs.push_back(AddrSpec{"ell", AddrPolicy::Always, ldom, {24}});
    for (const char* v : kRdVars) c.lvars.push_back(VarSpec{v, {}});
    c.state_ceiling = 50'000'000;
    u_ = std::make_shared<Universe>(c);
}

State RdcssStructure::initial_state(int r0, int l0) const {
    State s = u_->empty_state();
    s.gheap.set(root_addr(), 24, Value::rd_inactive(r0));
    s.gheap.set(ell_addr(), 24, Value::intv(l0));
    s.gghost.has_freelist = true;
    for (int d = 0; d < cfg_.descriptors; ++d) s.gghost.freelist.push_back(static_cast<std::int16_t>(d));
    s.gghost.set_clock(0, 0);
    s.gghost.set_contents(0, AbstractVal::int_val(r0));
    return s;
}

namespace {

// complete(r, d): read the descriptor, read ell, set r back to inactive; the
// winning CmpX is the linearization commitment of the active operation
std::vector<ProgramPtr> rdcss_complete(const RdcssStructure& rd, int dvar, int& lbl) {
    Universe& u = const_cast<RdcssStructure&>(rd).universe();
    const int vdl = u.var_id("dl"), vm = u.var_id("m"), vu = u.var_id("u");
    auto L = [&]() { return lbl++; };

    std::vector<ProgramPtr> seq;
    seq.push_back(prog_com(cmd_read(L(), AddrExpr::field_of(dvar, 1, 1, 0), vdl, "dl := !d")));
    seq.push_back(prog_com(cmd_read(L(), AddrExpr::at(rd.ell_addr()), vm, "m := !ell")));
    // u := m == dl.m1 ? dl.n2 : dl.n1
    auto meq = make_pred("m=dl.m1", [vdl, vm](const State& s) {
        const Value& dl = s.lvars.get(vdl);
        const Value& m = s.lvars.get(vm);
        return dl.kind == Value::Desc && m.is_set() && m.f[0] == dl.f[2];
    });
    auto yes = prog_seq({prog_com(cmd_assume(L(), meq, "assume m = m1")),
                         prog_com(cmd_assign(L(), vu, ValueExpr::field(vdl, 3), "u := n2"))});
    auto no = prog_seq({prog_com(cmd_assume(L(), p_not(meq), "assume m != m1")),
                        prog_com(cmd_assign(L(), vu, ValueExpr::field(vdl, 1), "u := n1"))});
    seq.push_back(prog_choice({yes, no}));

    Command commit = cmd_cmpx(L(), AddrExpr::at(rd.root_addr()), ValueExpr::wrap_a(dvar), ValueExpr::wrap_i(vu),
                              -1, "CmpX(r, A(d), I(u))");
    commit.ghost.when = GhostCond::CmpxSuccess;
    commit.ghost.snapshot_only = true;
    commit.ghost.clocked = true;
    commit.ghost.clock_root = 0;
    commit.ghost.rct = TokenTag{kOpRdcss, {0, 0, 0, 0}};
    commit.ghost.result_src_var = vdl;
    commit.ghost.result_src_field = 1;  // returns the old value n1
    commit.ghost.update_contents = true;
    commit.ghost.contents_root = 0;
    commit.ghost.contents_src_var = vu;
    seq.push_back(prog_com(commit));
    return seq;
}

}  // namespace

ProgramPtr RdcssStructure::program_for(const std::string& op, const std::vector<int>& args) const {
    Universe& u = *u_;
    const int vd = u.var_id("d"), vs = u.var_id("s"), vres = u.var_id("res");

    if (op == "writel") {
        Command w = cmd_write(801, AddrExpr::at(ell_addr()), ValueExpr::constant(Value::intv(args.at(0))),
                              "ell := " + std::to_string(args.at(0)));
        return prog_com(w);
    }

    if (op == "get") {
        int lbl = 700;
        auto L = [&]() { return lbl++; };
        Command rd = cmd_read(L(), AddrExpr::at(root_addr()), vs, "s := !r");
        rd.ghost.when = GhostCond::ReadInactive;
        rd.ghost.snapshot_only = true;
        rd.ghost.clocked = true;
        rd.ghost.clock_root = 0;
        rd.ghost.rct = TokenTag{kOpGet, {0, 0, 0, 0}};
        rd.ghost.result_src_var = vs;

        auto is_inactive = make_pred("s=I(_)", [vs](const State& s) { return s.lvars.get(vs).kind == Value::RdI; });
        auto inactive = prog_seq({prog_com(cmd_assume(L(), is_inactive, "assume s = I(v)")),
                                  prog_com(cmd_assign(L(), vres, ValueExpr::field(vs, 0), "res := v"))});

        std::vector<ProgramPtr> helping;
        helping.push_back(prog_com(cmd_assume(L(), p_not(is_inactive), "assume s = A(d)")));
        helping.push_back(prog_com(cmd_assign(L(), vd, ValueExpr::unwrap_a(vs), "d := descr(s)")));
        for (auto& p : rdcss_complete(*this, vd, lbl)) helping.push_back(p);

        auto loop_body = prog_seq({prog_com(rd), prog_seq(std::move(helping))});
        // retry until the register is inactive
        return prog_seq({prog_loop(loop_body), prog_com(rd), inactive});
    }

    if (op == "rdcss") {
        int n1 = args.at(0), m1 = args.at(1), n2 = args.at(2);
        int lbl = 600;
        auto L = [&]() { return lbl++; };
        Value desc = Value::descriptor(0, n1, m1, n2);


        // the loop form: help while the register is active, then act
        std::vector<ProgramPtr> loop_body;
        loop_body.push_back(prog_com(cmd_read(L(), AddrExpr::at(root_addr()), vs, "s := !r")));
        loop_body.push_back(prog_com(cmd_assume(L(), make_pred("s=A", [vs](const State& s) {
                                                     return s.lvars.get(vs).kind == Value::RdA;
                                                 }),
                                                 "assume s = A(d')")));
        loop_body.push_back(prog_com(cmd_assign(L(), vd, ValueExpr::unwrap_a(vs), "d' := descr(s)")));
        for (auto& p : rdcss_complete(*this, vd, lbl)) loop_body.push_back(p);

        std::vector<ProgramPtr> seq;
        seq.push_back(prog_loop(prog_seq(std::move(loop_body))));
        seq.push_back(prog_com(cmd_alloc(L(), vd, 1, 1, {{0, ValueExpr::constant(desc)}}, "d := new Descr")));
        Command act = cmd_cmpx(L(), AddrExpr::at(root_addr()), ValueExpr::constant(Value::rd_inactive(n1)),
                               ValueExpr::wrap_a(vd), vs, "s := CmpX(r, I(n1), A(d))");
        act.ghost.when = GhostCond::CmpxFailInactive;
        act.ghost.snapshot_only = true;
        act.ghost.clocked = true;
        act.ghost.clock_root = 0;
        act.ghost.rct = TokenTag{kOpRdcss, {0, 0, 0, 0}};
        act.ghost.result_src_var = vs;
        seq.push_back(prog_com(act));

        auto won = make_pred("s=I(n1)",
                             [vs, n1](const State& s) { return s.lvars.get(vs) == Value::rd_inactive(n1); });
        auto other_inactive = make_pred("s=I(n),n!=n1", [vs, n1](const State& s) {
            const Value& v = s.lvars.get(vs);
            return v.kind == Value::RdI && v.f[0] != n1;
        });
        auto active = make_pred("s=A(d')", [vs](const State& s) { return s.lvars.get(vs).kind == Value::RdA; });

        std::vector<ProgramPtr> win{prog_com(cmd_assume(L(), won, "assume s = I(n1)"))};
        for (auto& p : rdcss_complete(*this, vd, lbl)) win.push_back(p);
        win.push_back(prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(n1)), "res := n1")));

        auto fail = prog_seq({prog_com(cmd_assume(L(), other_inactive, "assume s = I(n), n != n1")),
                              prog_com(cmd_assign(L(), vres, ValueExpr::field(vs, 0), "res := n"))});

        // losing against another active descriptor: help and give up this
        // attempt (the bounded model forgoes unbounded retries; the history
        // records the operation as pending)
        std::vector<ProgramPtr> conceded{prog_com(cmd_assume(L(), active, "assume s = A(d')")),
                                         prog_com(cmd_assign(L(), vd, ValueExpr::unwrap_a(vs), "d' := descr(s)"))};
        for (auto& p : rdcss_complete(*this, vd, lbl)) conceded.push_back(p);
        Command act2 = act;
        act2.label = L();
        conceded.push_back(prog_com(act2));
        conceded.push_back(prog_com(cmd_assume(L(), won, "assume s = I(n1)")));
        conceded.push_back(prog_com(cmd_assign(L(), vres, ValueExpr::constant(Value::intv(n1)), "res := n1")));

        seq.push_back(prog_choice({prog_seq(std::move(win)), fail, prog_seq(std::move(conceded))}));
        return prog_seq(std::move(seq));
    }
    throw std::runtime_error("unknown rdcss operation: " + op);
}

SeqSpec RdcssStructure::specification() const {
    SeqSpec s = rdcss_spec(0);
    return s;
}

std::vector<LocalPart> RdcssStructure::interferer_locals() const {
    return {LocalPart{}};
}

std::vector<Interference> RdcssStructure::interference_set() const {
    std::vector<Interference> out;
    const RdcssStructure* rd = this;
    const int root = root_addr(), ell = ell_addr();
    int label = 900;

    auto r_is = [root](const State& s, const Value& v) {
        return s.gheap.present(root) && s.gheap.at(root).val == v;
    };

    // allocation of a descriptor (contents fixed per interference)
    for (int n1 = 0; n1 < cfg_.values; ++n1)
        for (int m1 = 0; m1 < cfg_.values; ++m1)
            for (int n2 = 0; n2 < cfg_.values; ++n2) {
                Value desc = Value::descriptor(0, n1, m1, n2);
                Command alloc = cmd_alloc(label++, -1, 1, 1, {{0, ValueExpr::constant(desc)}}, "alloc descr");
                out.push_back(Interference{
                    tp_now(make_pred("free descr", [](const State& s) {
                        return s.gghost.has_freelist && !s.gghost.freelist.empty();
                    })),
                    alloc, "alloc-descr"});
            }

    // activation: r flips from I(n1) to A(d) when d holds a matching descriptor
    for (int d = 0; d < cfg_.descriptors; ++d) {
        int daddr = desc_addr(d);
        for (int n1 = 0; n1 < cfg_.values; ++n1) {
            Command act = cmd_cmpx(label++, AddrExpr::at(root), ValueExpr::constant(Value::rd_inactive(n1)),
                                   ValueExpr::constant(Value::rd_active(d)), -1, "activate");
            out.push_back(Interference{
                tp_now(make_pred("descr matches", [daddr, n1](const State& s) {
                    return s.gheap.present(daddr) && s.gheap.at(daddr).val.f[1] == n1;
                })),
                act, "activate-d" + std::to_string(d)});
        }
    }

    // the winning completion: r flips back to inactive, the clock advances,
    // the logical value moves per the descriptor and the current ell
    for (int d = 0; d < cfg_.descriptors; ++d) {
        int daddr = desc_addr(d);
        for (int u = 0; u < cfg_.values; ++u) {
            Command commit = cmd_cmpx(label++, AddrExpr::at(root), ValueExpr::constant(Value::rd_active(d)),
                                      ValueExpr::constant(Value::rd_inactive(u)), -1, "complete");
            commit.ghost.when = GhostCond::CmpxSuccess;
            commit.ghost.snapshot_only = true;
            commit.ghost.clocked = true;
            commit.ghost.clock_root = 0;
            commit.ghost.rct = TokenTag{kOpRdcss, {0, 0, 0, 0}};
            commit.ghost.update_contents = true;
            commit.ghost.contents_root = 0;
            commit.ghost.contents_val = AbstractVal::int_val(u);
            out.push_back(Interference{
                tp_now(make_pred("helper computed u", [daddr, u, ell, rd](const State& s) {
                    (void)rd;
                    if (!s.gheap.present(daddr) || !s.gheap.present(ell)) return false;
                    const Value& dv = s.gheap.at(daddr).val;
                    int m = s.gheap.at(ell).val.f[0];
                    int want = (m == dv.f[2]) ? dv.f[3] : dv.f[1];
                    return want == u;
                })),
                commit, "complete-d" + std::to_string(d)});
        }
    }

    // pure linearizations: get and failing rdcss against an inactive register
    for (int v = 0; v < cfg_.values; ++v) {
        Command lin_get = cmd_skip(label++);
        lin_get.text = "linearize get";
        lin_get.ghost.snapshot_only = true;
        lin_get.ghost.clocked = true;
        lin_get.ghost.clock_root = 0;
        lin_get.ghost.rct = TokenTag{kOpGet, {static_cast<std::int16_t>(v), 0, 0, 0}};
        out.push_back(Interference{
            tp_now(make_pred("r inactive", [root, v, r_is](const State& s) {
                (void)root;
                return r_is(s, Value::rd_inactive(v));
            })),
            lin_get, "lin-get"});

        Command lin_fail = cmd_skip(label++);
        lin_fail.text = "linearize failing rdcss";
        lin_fail.ghost.snapshot_only = true;
        lin_fail.ghost.clocked = true;
        lin_fail.ghost.clock_root = 0;
        lin_fail.ghost.rct = TokenTag{kOpRdcss, {static_cast<std::int16_t>(v), 0, 0, 0}};
        out.push_back(Interference{
            tp_now(make_pred("r inactive", [v, r_is](const State& s) { return r_is(s, Value::rd_inactive(v)); })),
            lin_fail, "lin-rdcss-fail"});
    }

    // client writes to ell
    for (int v = 0; v < cfg_.values; ++v) {
        Command w = cmd_write(label++, AddrExpr::at(ell), ValueExpr::constant(Value::intv(v)), "ell := v");
        out.push_back(Interference{tp_true(), w, "write-ell"});
    }
    return out;
}

std::vector<State> RdcssStructure::reachable_states() const {
    extern std::vector<State> rdcss_collect_reachable(const RdcssStructure& rd);
    return rdcss_collect_reachable(*this);
}

std::vector<Hypothesis> RdcssStructure::hypotheses() const {
    std::vector<Hypothesis> out;
    const int root = root_addr();
    const int maxclock = 6;

    SymVar c{"c", {}}, c2{"c2", {}};
    for (int i = 0; i <= maxclock; ++i) {
        c.domain.push_back(Value::intv(i));
        c2.domain.push_back(Value::intv(i));
    }
    SymVar d{"d", {}}, d2{"d2", {}};
    for (int i = 0; i < cfg_.descriptors; ++i) {
        d.domain.push_back(Value::node(i));
        d2.domain.push_back(Value::node(i));
    }

    auto clock_is = [](const State& s, int v) {
        auto cl = s.gghost.clock_of(0);
        return cl && *cl == v;
    };

    // clock monotonicity
    {
        Hypothesis h;
        h.name = "rdcss-clock-monotone";
        h.sym = SymTable{{c, c2}};
        h.p = StateFamily{"Clock(c)", [clock_is](const Valuation& rho) {
                              int cv = rho[0].f[0];
                              return make_pred("clk=c", [clock_is, cv](const State& s) { return clock_is(s, cv); });
                          }};
        h.q = StateFamily{"Clock(c2)", [clock_is](const Valuation& rho) {
                              int cv = rho[1].f[0];
                              return make_pred("clk=c2", [clock_is, cv](const State& s) { return clock_is(s, cv); });
                          }};
        h.o = StateFamily{"c2>=c", [](const Valuation& rho) {
                              return rho[1].f[0] >= rho[0].f[0] ? pred_true() : pred_false();
                          }};
        out.push_back(h);
    }
    // the contradiction hypothesis: while r is active at clock c, slot c can
    // never hold a get snapshot
    {
        Hypothesis h;
        h.name = "rdcss-active-slot-contradiction";
        h.sym = SymTable{{d, c, c2}};
        h.p = StateFamily{"r=A(d) * Clock(c)", [root, clock_is](const Valuation& rho) {
                              int dv = rho[0].f[0], cv = rho[1].f[0];
                              return make_pred("p", [root, clock_is, dv, cv](const State& s) {
                                  return s.gheap.present(root) && s.gheap.at(root).val == Value::rd_active(dv) &&
                                         clock_is(s, cv);
                              });
                          }};
        h.q = StateFamily{"oRCT_get@c * Clock(c2), c2>c", [clock_is](const Valuation& rho) {
                              int cv = rho[1].f[0], cv2 = rho[2].f[0];
                              if (cv2 <= cv) return pred_false();
                              return make_pred("q", [clock_is, cv, cv2](const State& s) {
                                  if (!clock_is(s, cv2)) return false;
                                  const ReceiptEntry* r = s.gghost.receipt_at(cv);
                                  return r && r->persistent && r->tag.op == kOpGet;
                              });
                          }};
        h.o = StateFamily{"false", [](const Valuation&) { return pred_false(); }};
        out.push_back(h);
    }
    // unordered: two sightings of an active register at the same clock agree
    // on the descriptor
    {
        Hypothesis h;
        h.name = "rdcss-active-descriptor-agreement";
        h.sym = SymTable{{d, d2, c}};
        h.p = StateFamily{"r=A(d) * Clock(c)", [root, clock_is](const Valuation& rho) {
                              int dv = rho[0].f[0], cv = rho[2].f[0];
                              return make_pred("p", [root, clock_is, dv, cv](const State& s) {
                                  return s.gheap.present(root) && s.gheap.at(root).val == Value::rd_active(dv) &&
                                         clock_is(s, cv);
                              });
                          }};
        h.q = StateFamily{"r=A(d2) * Clock(c)", [root, clock_is](const Valuation& rho) {
                              int dv = rho[1].f[0], cv = rho[2].f[0];
                              return make_pred("q", [root, clock_is, dv, cv](const State& s) {
                                  return s.gheap.present(root) && s.gheap.at(root).val == Value::rd_active(dv) &&
                                         clock_is(s, cv);
                              });
                          }};
        h.o = StateFamily{"d=d2", [](const Valuation& rho) {
                              return rho[0].f[0] == rho[1].f[0] ? pred_true() : pred_false();
                          }};
        out.push_back(h);
    }
    return out;
}

}  // namespace tempo
