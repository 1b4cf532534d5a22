#include "doctest.h"
#include "tempo/explore.hpp"
#include "tempo/structures.hpp"

using namespace tempo;

namespace {

LoStructure& fixed_lo() {
    static LoStructure lo{LoUniverseSpec{}};
    return lo;
}

}  // namespace

TEST_CASE("insets: two sentinels only") {
    auto& lo = fixed_lo();
    State s = lo.initial_state({});
    InsetMap m = compute_insets(lo, s);
    // inset(min) is the full interval, max receives everything above -inf
    std::uint32_t full = (1u << 5) - 1;
    CHECK(m.inset[0] == full);
    CHECK(m.inset[1] == (full & ~1u));  // (-inf, +inf]
    CHECK(m.keyset[1] == (full & ~1u));
    CHECK(m.contents_bits[0] == 0);     // sentinel keys carry no contents
}

TEST_CASE("insets: preloaded node splits the keyspace") {
    auto& lo = fixed_lo();
    State s = lo.initial_state({2});
    InsetMap m = compute_insets(lo, s);
    int a = 2;  // first non-sentinel node
    // keyset(a) = (-inf, 2]: bits for keys 1 and 2
    CHECK(m.inset[a] == 0b11110u);
    CHECK(m.keyset[a] == 0b00110u);
    CHECK(m.contents_bits[a] == 0b00100u);
    // max keeps (2, +inf]
    CHECK(m.keyset[1] == 0b11000u);
}

TEST_CASE("a marked node off the flow path has an empty inset") {
    auto& lo = fixed_lo();
    State s = lo.initial_state({2});
    // unlink the node: min.succ := max, max.pred := min, mark the node
    s.gheap.set(lo.node_addr(0, FSucc), 24, Value::node(1));
    s.gheap.set(lo.node_addr(1, FPred), 24, Value::node(0));
    s.gheap.set(lo.node_addr(2, FMark), 24, Value::boolean(true));
    InsetMap m = compute_insets(lo, s);
    CHECK(m.inset[2] == 0);
    CHECK(check_structure_invariants(lo, s).ok);
}

TEST_CASE("structure invariants on the initial state and simple mutations") {
    auto& lo = fixed_lo();
    CHECK(check_structure_invariants(lo, lo.initial_state({})).ok);
    CHECK(check_structure_invariants(lo, lo.initial_state({1, 3})).ok);

    // marking a sentinel violates I2
    State s = lo.initial_state({});
    s.gheap.set(lo.node_addr(0, FMark), 24, Value::boolean(true));
    auto rep = check_structure_invariants(lo, s);
    CHECK(!rep.ok);
    bool found_i2 = false;
    for (const auto& v : rep.violations)
        if (v.find("I2") != std::string::npos) found_i2 = true;
    CHECK(found_i2);

    // a published unmarked node without flow violates I3
    State s2 = lo.initial_state({2});
    s2.gheap.set(lo.node_addr(0, FSucc), 24, Value::node(1));  // unlink forward only
    s2.gheap.set(lo.node_addr(1, FPred), 24, Value::node(0));
    auto rep2 = check_structure_invariants(lo, s2);
    CHECK(!rep2.ok);

    // fan-in on the succ graph breaks flow-path uniqueness
    State s3 = lo.initial_state({1, 2});
    s3.gheap.set(lo.node_addr(3, FSucc), 24, Value::node(1));  // both nodes point at max
    s3.gheap.set(lo.node_addr(2, FSucc), 24, Value::node(1));
    auto rep3 = check_structure_invariants(lo, s3);
    CHECK(!rep3.ok);
}

TEST_CASE("sequential specification of the set") {
    SeqSpec spec = set_spec();
    AbstractVal empty = AbstractVal::key_set(0);
    auto [c1, r1] = sequential_apply(spec, empty, "insert", {2});
    CHECK(r1 == 1);
    auto [c2, r2] = sequential_apply(spec, c1, "insert", {2});
    CHECK(r2 == 0);
    CHECK(c2 == c1);
    auto [c3, r3] = sequential_apply(spec, c1, "contains", {2});
    CHECK(r3 == 1);
    CHECK(c3 == c1);
    auto [c4, r4] = sequential_apply(spec, c1, "delete", {2});
    CHECK(r4 == 1);
    CHECK(c4 == empty);
    auto [c5, r5] = sequential_apply(spec, empty, "contains", {1});
    CHECK(r5 == 0);
    CHECK(c5 == empty);
}

TEST_CASE("sequential specification of rdcss") {
    SeqSpec spec = rdcss_spec(0);
    AbstractVal s0 = AbstractVal::int_val(0);  // r = 0, ell = 0
    // matching rdcss swings the register and returns the old value
    auto [s1, r1] = sequential_apply(spec, s0, "rdcss", {0, 0, 1});
    CHECK(r1 == 0);
    CHECK(s1.payload / 16 == 1);
    // ell mismatch leaves the value unchanged
    auto [s2, r2] = sequential_apply(spec, s0, "rdcss", {0, 1, 1});
    CHECK(r2 == 0);
    CHECK(s2.payload / 16 == 0);
    auto [s3, r3] = sequential_apply(spec, s1, "get", {});
    CHECK(r3 == 1);
    CHECK(s3 == s1);
    auto [s4, r4] = sequential_apply(spec, s0, "writel", {1});
    (void)r4;
    CHECK(s4.payload % 16 == 1);
}

TEST_CASE("program shapes: insert link order per variant") {
    auto texts = [](LoVariant v) {
        LoUniverseSpec spec;
        spec.variant = v;
        LoStructure lo(spec);
        ProgramPtr prog = lo.program_for("insert", 2);
        std::vector<const Command*> cmds;
        collect_commands(prog, cmds);
        std::vector<std::string> writes;
        for (const Command* c : cmds)
            if (c->kind == Command::Write || c->kind == Command::Alloc) writes.push_back(c->text);
        return writes;
    };
    auto fixed = texts(LoVariant::Fixed);
    // fixed: forward linking first
    bool succ_before_pred = false;
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (fixed[i] == "x.succ := y")
            for (std::size_t j = i + 1; j < fixed.size(); ++j)
                if (fixed[j] == "z.pred := y") succ_before_pred = true;
    CHECK(succ_before_pred);

    auto original = texts(LoVariant::Original);
    bool pred_before_succ = false;
    for (std::size_t i = 0; i < original.size(); ++i)
        if (original[i] == "z.pred := y")
            for (std::size_t j = i + 1; j < original.size(); ++j)
                if (original[j] == "x.succ := y") pred_before_succ = true;
    CHECK(pred_before_succ);

    // the unfixed contains lacks the unmark loop
    std::vector<const Command*> fixed_contains, orig_contains;
    LoUniverseSpec sf;
    sf.variant = LoVariant::Fixed;
    LoUniverseSpec so;
    so.variant = LoVariant::Original;
    LoStructure lof(sf), loo(so);
    ProgramPtr pf = lof.program_for("contains", 2);
    ProgramPtr po = loo.program_for("contains", 2);
    collect_commands(pf, fixed_contains);
    collect_commands(po, orig_contains);
    CHECK(fixed_contains.size() > orig_contains.size());
}

TEST_CASE("lo set abstraction tracks logical membership") {
    auto& lo = fixed_lo();
    SeqSpec spec = lo.set_specification();
    State s = lo.initial_state({2});
    auto abs = spec.css(lo.universe(), s);
    REQUIRE(abs.has_value());
    CHECK(abs->payload == (1 << 2));
    // marking removes the key from the contents
    s.gheap.set(lo.node_addr(2, FMark), 24, Value::boolean(true));
    abs = spec.css(lo.universe(), s);
    CHECK(abs->payload == 0);
}

TEST_CASE("rdcss structure initial state and invariant bookkeeping") {
    RdcssStructure rd(RdcssSpecConfig{});
    State s = rd.initial_state(0, 1);
    CHECK(s.gheap.at(rd.root_addr()).val == Value::rd_inactive(0));
    CHECK(s.gheap.at(rd.ell_addr()).val == Value::intv(1));
    CHECK(s.gghost.clock_of(0) == 0);
    auto c = s.gghost.contents_of(0);
    REQUIRE(c.has_value());
    CHECK(c->payload == 0);
    CHECK(s.gghost.has_freelist);
    CHECK(s.gghost.freelist.size() == 2);
}
