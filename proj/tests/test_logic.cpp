#include "doctest.h"
#include "tempo/explore.hpp"
#include "tempo/structures.hpp"

using namespace tempo;

namespace {

CounterWorkbench& workbench() {
    static CounterWorkbench wb = make_counter_workbench();
    return wb;
}

}  // namespace

TEST_CASE("trivial outline: skip preserves a frameable assertion") {
    auto& wb = workbench();
    Outline o;
    o.name = "skip-keeps";
    o.sym = SymTable{};
    auto cells = make_pred("cells", [](const State& s) { return s.gheap.present(0) && s.gheap.present(1); });
    o.pre = lift_closed("now(cells)", tp_now(cells));
    OutlineItem item;
    item.kind = OutlineItem::Com;
    item.cmd = cmd_skip(77);
    item.post = lift_closed("now(cells)", tp_now(cells));
    o.items.push_back(item);
    auto j = check_outline(*wb.discharge_universe, o, 3);
    CHECK(j.accepted);
    REQUIRE(j.I.size() == 1);
    CHECK(j.I[0].cmd.kind == Command::Skip);
}

TEST_CASE("counter read outline is accepted and collects the hypothesis") {
    auto& wb = workbench();
    LinRules rules(wb.sym);
    auto lj = check_lin_outline(*wb.proof_universe, wb.read_outline, wb.spec, 6);
    for (const auto& f : lj.judgment.failures) {
        INFO(f.point << " [" << f.rule << "] " << f.detail);
        CHECK(false);
    }
    CHECK(lj.judgment.accepted);
    CHECK(lj.tokens_ok);
    REQUIRE(lj.judgment.H.size() == 1);
    // one interference per executed command: the two reads and the trade;
    // the fused interpolation adds no skip of its own
    CHECK(lj.judgment.I.size() == 3);
}

TEST_CASE("counter inc outline is accepted with the impure trade") {
    auto& wb = workbench();
    auto lj = check_lin_outline(*wb.proof_universe, wb.inc_outline, wb.spec, 4);
    for (const auto& f : lj.judgment.failures) {
        INFO(f.point << " [" << f.rule << "] " << f.detail);
        CHECK(false);
    }
    CHECK(lj.judgment.accepted);
    CHECK(lj.tokens_ok);
    CHECK(lj.judgment.H.empty());
}

TEST_CASE("a broken intermediate assertion is rejected with a witness") {
    auto& wb = workbench();
    auto j = check_outline(*wb.proof_universe, wb.broken_read_outline, 4);
    CHECK(!j.accepted);
    REQUIRE(!j.failures.empty());
    CHECK(j.failures[0].rule == "com-ti");
    CHECK(j.failures[0].witness.has_value());
}

TEST_CASE("hypothesis discharge: invariant mode and bounded mode agree") {
    auto& wb = workbench();
    Universe& u = *wb.discharge_universe;

    auto inv_cert = discharge_invariant(u, wb.hypothesis, wb.invariant, wb.discharge_interferences, {}, 4);
    INFO(inv_cert.detail);
    CHECK(inv_cert.holds);
    CHECK(inv_cert.mode == DischargeCertificate::Invariant);
    CHECK(inv_cert.checks.size() == 4);

    auto bnd_cert = discharge_bounded(u, wb.hypothesis, wb.discharge_interferences, {}, 6);
    INFO(bnd_cert.detail);
    CHECK(bnd_cert.holds);
    CHECK(bnd_cert.mode == DischargeCertificate::Bounded);
    CHECK(inv_cert.holds == bnd_cert.holds);
}

TEST_CASE("a falsified hypothesis yields a witness computation") {
    auto& wb = workbench();
    Universe& u = *wb.discharge_universe;

    Hypothesis h;
    h.name = "bogus";
    h.sym = SymTable{};
    auto l_is = [](int v) {
        return make_pred("l=" + std::to_string(v), [v](const State& s) {
            return s.gheap.present(0) && s.gheap.at(0).val == Value::intv(v);
        });
    };
    h.p = StateFamily{"l=0", [l_is](const Valuation&) { return l_is(0); }};
    h.q = StateFamily{"l=2", [l_is](const Valuation&) { return l_is(2); }};
    h.o = StateFamily{"false", [](const Valuation&) { return pred_false(); }};
    auto cert = discharge_bounded(u, h, wb.discharge_interferences, {}, 6);
    CHECK(!cert.holds);
    CHECK(cert.witness.has_value());

    // o = true holds at any depth
    Hypothesis triv = h;
    triv.name = "trivial";
    triv.o = StateFamily{"true", [](const Valuation&) { return pred_true(); }};
    CHECK(discharge_bounded(u, triv, wb.discharge_interferences, {}, 6).holds);
}

TEST_CASE("interference freedom of the boundary assertions") {
    auto& wb = workbench();
    auto read_j = check_outline(*wb.proof_universe, wb.read_outline, 6);
    auto inc_j = check_outline(*wb.proof_universe, wb.inc_outline, 4);
    REQUIRE(read_j.accepted);
    REQUIRE(inc_j.accepted);

    std::vector<Interference> total = read_j.I;
    for (const auto& i : inc_j.I) total.push_back(i);

    std::vector<TempPred> P = read_j.P_ifree;
    for (const auto& t : inc_j.P_ifree) P.push_back(t);

    auto rep = check_interference_freedom(*wb.proof_universe, P, total, wb.proof_interferer_locals, 6);
    for (const auto& e : rep.entries) {
        INFO(e.predicate << " vs " << e.interference);
        CHECK(e.free);
    }
    CHECK(rep.all_free());
}

TEST_CASE("a now assertion pinning the cells is not interference-free") {
    auto& wb = workbench();
    auto fixed = make_pred("l=0,r=1", [](const State& s) {
        return s.gheap.present(0) && s.gheap.present(1) && s.gheap.at(0).val == Value::intv(0) &&
               s.gheap.at(1).val == Value::intv(1);
    });
    std::vector<TempPred> P{tp_now(fixed)};
    auto rep = check_interference_freedom(*wb.discharge_universe, P, wb.discharge_interferences, {}, 4);
    CHECK(!rep.all_free());
    // past-only assertions survive anything
    std::vector<TempPred> past{tp_past(fixed)};
    CHECK(check_interference_freedom(*wb.discharge_universe, past, wb.discharge_interferences, {}, 4).all_free());
}

TEST_CASE("soundness certification of the counter judgments") {
    auto& wb = workbench();
    auto read_j = check_outline(*wb.proof_universe, wb.read_outline, 6);
    auto inc_j = check_outline(*wb.proof_universe, wb.inc_outline, 4);
    REQUIRE(read_j.accepted);

    std::vector<Interference> total = read_j.I;
    for (const auto& i : inc_j.I) total.push_back(i);

    // hypotheses discharged against the final interference set of the whole
    // proof, on the plain counter universe
    std::vector<DischargeCertificate> certs;
    for (const auto& h : read_j.H) {
        auto cert = discharge_bounded(*wb.discharge_universe, h, wb.discharge_interferences, {}, 6);
        CHECK(cert.holds);
        certs.push_back(cert);
    }

    auto rep = certify_soundness(*wb.proof_universe, read_j, total, wb.proof_interferer_locals, certs, 7);
    INFO(rep.detail);
    CHECK(rep.certified);

    // an undischarged hypothesis refuses certification
    auto refused = certify_soundness(*wb.proof_universe, read_j, total, wb.proof_interferer_locals, {}, 7);
    CHECK(!refused.certified);

    auto inc_rep = certify_soundness(*wb.proof_universe, inc_j, total, wb.proof_interferer_locals, {}, 6);
    INFO(inc_rep.detail);
    CHECK(inc_rep.certified);
}

TEST_CASE("apply_temporal_interpolation emits the hypotheses") {
    auto& wb = workbench();
    Universe& u = *wb.discharge_universe;
    std::vector<TempPred> a{tp_true()};
    SymTable sym{};
    StateFamily p{"p", [](const Valuation&) {
                      return make_pred("l set", [](const State& s) { return s.gheap.present(0); });
                  }};
    auto res = apply_temporal_interpolation(u, a, sym, p, p, p, TIVariant::Unordered, nullptr, 3);
    CHECK(res.applicable);
    CHECK(res.emitted.size() == 2);  // both symmetric hypotheses

    // degenerate unordered case: p = q, o = p is dischargeable
    auto cert = discharge_bounded(u, res.emitted[0], wb.discharge_interferences, {}, 4);
    CHECK(cert.holds);

    // non-intuitionistic arguments are refused
    Universe frac(parse_universe_config(R"(
name frac
gaddr m optional int:0..1 list:12,24
)"));
    StateFamily exact{"exact", [&frac](const Valuation&) { return p_pts_exact_frac(frac, "m", Value::intv(1), 12); }};
    auto bad = apply_temporal_interpolation(frac, a, sym, exact, exact, exact, TIVariant::Ordered, nullptr, 3);
    CHECK(!bad.applicable);
}
