#include "doctest.h"
#include "tempo/sequences.hpp"
#include "tempo/universe.hpp"

using namespace tempo;

namespace {

// 1 address, values {0,1}, full fractions, no ghost, no vars
UniverseConfig tiny_config() {
    return parse_universe_config(R"(
name tiny
gaddr a optional int:0..1 full
)");
}

UniverseConfig frac_config() {
    return parse_universe_config(R"(
name frac
gaddr m optional int:0..1 list:8,12,16,24
)");
}

UniverseConfig receipt_config() {
    return parse_universe_config(R"(
name receipts
lrct 0 7 3
)");
}

}  // namespace

TEST_CASE("tiny universe enumerates 2 full cells + empty per side") {
    Universe u(tiny_config());
    // global side: {absent, 0, 1}; local side empty product = 1
    CHECK(u.all_states().size() == 3);
}

TEST_CASE("empty universe yields exactly the unit state") {
    Universe u(parse_universe_config("name empty\n"));
    CHECK(u.all_states().size() == 1);
    CHECK(u.state(u.all_states()[0]) == u.empty_state());
}

TEST_CASE("counter universe: 16 global heaps producted with local var maps") {
    Universe u(parse_universe_config(R"(
name counter
gaddr l always int:0..3 full
gaddr r always int:0..3 full
lvar x int:0..3
lvar y int:0..3
)"));
    CHECK(u.all_states().size() == 16 * 5 * 5);
}

TEST_CASE("fraction composition adds numerators, undefined above denominator") {
    Universe u(frac_config());
    State a = u.empty_state();
    a.gheap.set(0, 8, Value::intv(1));
    State b = u.empty_state();
    b.gheap.set(0, 8, Value::intv(1));
    auto ab = compose_state(a, b, u.denominator());
    REQUIRE(ab.has_value());
    CHECK(ab->gheap.at(0).frac == 16);
    CHECK(ab->gheap.at(0).val == Value::intv(1));

    State c = u.empty_state();
    c.gheap.set(0, 24, Value::intv(1));
    CHECK(!compose_state(*ab, c, u.denominator()).has_value());

    // values must agree
    State d = u.empty_state();
    d.gheap.set(0, 12, Value::intv(0));
    State e = u.empty_state();
    e.gheap.set(0, 12, Value::intv(1));
    CHECK(!compose_state(d, e, u.denominator()).has_value());
}

TEST_CASE("separation algebra laws over small universes") {
    for (auto cfg : {tiny_config(), frac_config(), receipt_config()}) {
        Universe u(cfg);
        u.ensure_tables();
        const auto& states = u.all_states();

        // commutativity and associativity where defined
        for (StateId x : states)
            for (StateId y : states) {
                auto xy = u.compose_ids(x, y);
                auto yx = u.compose_ids(y, x);
                CHECK(xy == yx);
                for (StateId z : states) {
                    auto l = xy >= 0 ? u.compose_ids(static_cast<StateId>(xy), z) : -1;
                    auto yz = u.compose_ids(y, z);
                    auto r = yz >= 0 ? u.compose_ids(x, static_cast<StateId>(yz)) : -1;
                    CHECK(l == r);
                }
            }

        // every element has a unit
        for (StateId x : states) {
            StateId ux = u.unit_id(x);
            CHECK(u.compose_ids(x, ux) == static_cast<std::int64_t>(x));
        }

        // units are idempotent under composition
        for (StateId x : states) {
            StateId ux = u.unit_id(x);
            CHECK(u.compose_ids(ux, ux) == static_cast<std::int64_t>(ux));
        }

        // decomposability of the global/local product
        for (const auto& [x, y] : u.composable_pairs()) {
            auto c = u.compose_ids(x, y);
            REQUIRE(c >= 0);
            const State& sx = u.state(x);
            CHECK(u.find(sx).has_value());
        }
    }
}

TEST_CASE("receipt algebra: persistent snapshot is the unit of its receipt") {
    Universe u(receipt_config());
    TokenTag t;
    t.op = 7;
    t.args[0] = 3;
    State rct = u.empty_state();
    rct.lghost.set_receipt(0, false, t);
    State snap = u.empty_state();
    snap.lghost.set_receipt(0, true, t);

    auto a = compose_state(snap, rct, u.denominator());
    REQUIRE(a.has_value());
    CHECK(*a == rct);  // oRCT * RCT = RCT
    CHECK(!compose_state(rct, rct, u.denominator()).has_value());  // RCT * RCT undefined
    auto b = compose_state(snap, snap, u.denominator());
    REQUIRE(b.has_value());
    CHECK(*b == snap);

    // distinct units of the slot algebra never compose
    TokenTag t2 = t;
    t2.args[0] = 4;
    State snap2 = u.empty_state();
    snap2.lghost.set_receipt(0, true, t2);
    CHECK(!compose_state(snap, snap2, u.denominator()).has_value());
}

TEST_CASE("abort composes with nothing") {
    Universe u(tiny_config());
    State a = u.abort_state();
    State b = u.empty_state();
    CHECK(!compose_state(a, b, u.denominator()).has_value());
    CHECK(!compose_state(a, a, u.denominator()).has_value());
}

TEST_CASE("computation composition shares the prefix and composes last states") {
    Universe u(tiny_config());
    u.ensure_tables();
    StateId empty = *u.find(u.empty_state());
    State c0 = u.empty_state();
    c0.gheap.set(0, 24, Value::intv(0));
    State c1 = u.empty_state();
    c1.gheap.set(0, 24, Value::intv(1));
    StateId s0 = *u.find(c0);
    StateId s1 = *u.find(c1);

    // length-1 case
    Computation ca{{empty}};
    Computation cb{{s0}};
    auto r1 = compose_computation(u, ca, cb);
    REQUIRE(r1.has_value());
    CHECK(r1->states == std::vector<StateId>{s0});

    // shared prefix
    Computation cc{{s0, empty}};
    Computation cd{{s0, s1}};
    auto r2 = compose_computation(u, cc, cd);
    REQUIRE(r2.has_value());
    CHECK(r2->states == std::vector<StateId>{s0, s1});

    // prefix mismatch
    Computation ce{{s0, empty}};
    Computation cf{{s1, empty}};
    CHECK(!compose_computation(u, ce, cf).has_value());

    // last states that do not compose
    Computation cg{{empty, s0}};
    Computation ch{{empty, s1}};
    CHECK(!compose_computation(u, cg, ch).has_value());
}

TEST_CASE("history composition shares recorded commands") {
    Universe u(tiny_config());
    u.ensure_tables();
    StateId empty = *u.find(u.empty_state());
    State c0 = u.empty_state();
    c0.gheap.set(0, 24, Value::intv(0));
    StateId s0 = *u.find(c0);

    History ha{{s0, empty}, {5}};
    History hb{{s0, s0}, {5}};
    auto r = compose_history(u, ha, hb);
    REQUIRE(r.has_value());
    CHECK(r->states == std::vector<StateId>{s0, s0});
    CHECK(r->gaps == std::vector<int>{5});

    History hc{{s0, empty}, {6}};
    CHECK(!compose_history(u, ha, hc).has_value());  // different recorded command
}

TEST_CASE("computation algebra laws lift from the state algebra") {
    Universe u(tiny_config());
    u.ensure_tables();
    const auto& states = u.all_states();
    // all computations of length <= 3: prefixes of length <= 2
    std::vector<std::vector<StateId>> prefixes{{}};
    for (StateId a : states) prefixes.push_back({a});
    for (StateId a : states)
        for (StateId b : states) prefixes.push_back({a, b});

    for (const auto& pre : prefixes) {
        for (const auto& [x, y] : u.composable_pairs()) {
            Computation cx, cy;
            cx.states = pre;
            cx.states.push_back(x);
            cy.states = pre;
            cy.states.push_back(y);
            auto xy = compose_computation(u, cx, cy);
            auto yx = compose_computation(u, cy, cx);
            REQUIRE(xy.has_value());
            REQUIRE(yx.has_value());
            CHECK(*xy == *yx);
        }
    }
}
