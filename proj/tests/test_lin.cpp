#include "doctest.h"
#include "tempo/structures.hpp"

using namespace tempo;

namespace {

CounterWorkbench& wb() {
    static CounterWorkbench w = make_counter_workbench();
    return w;
}

TokenTag tag(std::uint8_t op, int a0 = 0) {
    TokenTag t;
    t.op = op;
    t.args[0] = static_cast<std::int16_t>(a0);
    return t;
}

}  // namespace

TEST_CASE("decorating an interference adds the token to the guard and the trade") {
    auto& w = wb();
    Interference base = w.discharge_interferences[0];
    Interference dec = decorate_interference(base, tag(kOpInc), tag(kOpInc));
    CHECK(dec.cmd.ghost.has_trade);

    Universe& u = *w.proof_universe;
    State s = u.state(u.all_states()[0]);
    // without the obligation in any local, the decorated guard blocks
    CHECK(apply_interference(u, dec, s, {LocalPart{}}).empty());
    // with the obligation it fires and consumes it
    LocalPart holder;
    holder.lghost.add_obligation(tag(kOpInc));
    auto out = apply_interference(u, dec, s, {holder});
    CHECK(!out.empty());
    // the undecorated interference passes through unchanged
    CHECK(!apply_interference(u, base, s, {LocalPart{}}).empty());
}

TEST_CASE("apply_lin_rule: the impure trade follows the sequential update") {
    auto& w = wb();
    Universe& u = *w.proof_universe;
    auto cells = make_pred("cells", [](const State& s) { return s.gheap.present(0) && s.gheap.present(1); });
    auto obl = p_obl(tag(kOpInc));
    std::vector<TempPred> pre{tp_now(p_and(cells, obl))};

    Command faa = cmd_faa(31, AddrExpr::at(0), 1, "FAA(l,1)");
    faa.ghost.has_trade = true;
    faa.ghost.obl = tag(kOpInc);
    faa.ghost.rct = tag(kOpInc);

    SymTable sym{};
    auto annot = lin_impure(w.spec, "inc", {}, [](const Valuation&) { return 0; });
    auto app = apply_lin_rule(u, *annot, sym, pre, faa, 4);
    INFO(app.error);
    CHECK(app.ok);
    REQUIRE(app.post.size() == 1);
    // the strongest post contains only receipt-carrying states
    bool receipt_everywhere = true;
    for (StateId sid : u.all_states()) {
        const State& s = u.state(sid);
        SeqRef view(u, {}, nullptr);
        (void)view;
        std::vector<StateId> single{sid};
        if (!nf_member(u, app.post[0], SeqRef(u, single, nullptr))) continue;
        bool has = false;
        for (const auto& r : s.lghost.receipts)
            if (r.tag.op == kOpInc) has = true;
        if (!has) receipt_everywhere = false;
    }
    CHECK(receipt_everywhere);
}

TEST_CASE("a void step that changes the contents is rejected") {
    auto& w = wb();
    Universe& u = *w.proof_universe;
    std::vector<TempPred> pre{tp_now(make_pred("cells", [](const State& s) {
        return s.gheap.present(0) && s.gheap.present(1);
    }))};
    Command faa = cmd_faa(32, AddrExpr::at(0), 1, "FAA(l,1)");
    SymTable sym{};
    LinRules rules(sym);
    auto err = rules.check_step(u, *lin_void(w.spec), pre, faa, 4);
    CHECK(err == "contents changed without an obligation");

    // a read is fine
    Command rd = cmd_read(33, AddrExpr::at(0), u.var_id("x"), "x := l");
    CHECK(rules.check_step(u, *lin_void(w.spec), pre, rd, 4).empty());
}

TEST_CASE("a pure trade must cite a confirmed past witness") {
    auto& w = wb();
    Universe& u = *w.proof_universe;
    auto obl = p_obl(tag(kOpRead));
    // precondition without any past counter fact
    std::vector<TempPred> bare{tp_now(obl)};
    Command skip = cmd_skip(34);
    skip.ghost.has_trade = true;
    skip.ghost.obl = tag(kOpRead);
    skip.ghost.rct = tag(kOpRead);
    SymTable sym{};
    LinRules rules(sym);
    auto annot = lin_pure(w.spec, "read", {}, [](const Valuation&) { return 1; },
                          StateFamily{"counter=1", [](const Valuation&) {
                                          return make_pred("sum=1", [](const State& s) {
                                              return s.gheap.present(0) && s.gheap.present(1) &&
                                                     s.gheap.at(0).val.f[0] + s.gheap.at(1).val.f[0] == 1;
                                          });
                                      }});
    auto err = rules.check_step(u, *annot, bare, skip, 4);
    CHECK(err.find("wpast") != std::string::npos);

    // with the witness recorded in the past the trade goes through
    auto sum1 = make_pred("sum=1", [](const State& s) {
        return s.gheap.present(0) && s.gheap.present(1) && s.gheap.at(0).val.f[0] + s.gheap.at(1).val.f[0] == 1;
    });
    std::vector<TempPred> good{tp_and(tp_now(obl), tp_past(sum1))};
    CHECK(rules.check_step(u, *annot, good, skip, 4).empty());
}

TEST_CASE("token non-duplicability: a second trade faults the outline") {
    auto& w = wb();
    Universe& u = *w.proof_universe;
    Outline o;
    o.name = "double-trade";
    o.sym = SymTable{};
    auto obl = p_obl(tag(kOpInc));
    auto cells = make_pred("cells", [](const State& s) { return s.gheap.present(0) && s.gheap.present(1); });
    o.pre = lift_closed("pre", tp_now(p_and(cells, obl)));

    auto trade_cmd = [&](int label) {
        Command c = cmd_skip(label);
        c.ghost.has_trade = true;
        c.ghost.obl = tag(kOpInc);
        c.ghost.rct = tag(kOpInc);
        return c;
    };
    OutlineItem first;
    first.kind = OutlineItem::Com;
    first.cmd = trade_cmd(41);
    first.post = lift_closed("after-first", tp_now(p_rct_result(kOpInc, 0)));
    OutlineItem second;
    second.kind = OutlineItem::Com;
    second.cmd = trade_cmd(42);
    second.post = lift_closed("after-second", tp_true());
    o.items.push_back(first);
    o.items.push_back(second);

    auto j = check_outline(u, o, 4);
    CHECK(!j.accepted);
    bool faulted = false;
    for (const auto& f : j.failures)
        if (f.detail.find("fault") != std::string::npos) faulted = true;
    CHECK(faulted);
}

TEST_CASE("clock-indexed trades bump the clock and leave a persistent snapshot") {
    RdcssSpecConfig cfg;
    RdcssStructure rd(cfg);
    Universe& u = rd.universe();
    State s = rd.initial_state(0, 0);

    Command lin = cmd_skip(51);
    lin.ghost.snapshot_only = true;
    lin.ghost.clocked = true;
    lin.ghost.clock_root = 0;
    lin.ghost.rct = TokenTag{kOpGet, {0, 0, 0, 0}};
    auto out = exec_command(u, lin, s);
    REQUIRE(out.size() == 1);
    CHECK(out[0].gghost.clock_of(0) == 1);
    const ReceiptEntry* r = out[0].gghost.receipt_at(0);
    REQUIRE(r != nullptr);
    CHECK(r->persistent);
    CHECK(r->tag.op == kOpGet);

    // clock monotonicity along any decorated run is enforced by construction:
    // the same slot can only be written once the clock reached it
    auto out2 = exec_command(u, lin, out[0]);
    REQUIRE(out2.size() == 1);
    CHECK(out2[0].gghost.clock_of(0) == 2);
    CHECK(out2[0].gghost.receipt_at(1) != nullptr);
}
