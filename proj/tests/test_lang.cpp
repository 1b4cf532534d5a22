#include "doctest.h"
#include "tempo/lang.hpp"
#include "tempo/lemmas.hpp"

using namespace tempo;

namespace {

UniverseConfig counter_config() {
    return parse_universe_config(R"(
name counter
gaddr l always int:0..3 full
gaddr r always int:0..3 full
lvar x int:0..3
lvar y int:0..3
)");
}

StateId counter_state(Universe& u, int l, int r) {
    State s = u.empty_state();
    s.gheap.set(0, 24, Value::intv(l));
    s.gheap.set(1, 24, Value::intv(r));
    return u.intern(s);
}

std::vector<Interference> counter_interferences(Universe& u) {
    auto cells = make_pred("counter cells", [](const State& s) { return s.gheap.present(0) && s.gheap.present(1); });
    (void)u;
    return {
        Interference{tp_now(cells), cmd_faa(101, AddrExpr::at(0), 1, "FAA(l,1)"), "inc-l"},
        Interference{tp_now(cells), cmd_faa(102, AddrExpr::at(1), 1, "FAA(r,1)"), "inc-r"},
    };
}

}  // namespace

TEST_CASE("skip is the identity") {
    Universe u(counter_config());
    StateId s = counter_state(u, 1, 2);
    auto out = exec_command(u, cmd_skip(1), u.state(s));
    REQUIRE(out.size() == 1);
    CHECK(u.intern(out[0]) == s);
}

TEST_CASE("faa atomically increments within the domain") {
    Universe u(counter_config());
    StateId s = counter_state(u, 0, 0);
    auto out = exec_command(u, cmd_faa(1, AddrExpr::at(0), 1, "FAA(l,1)"), u.state(s));
    REQUIRE(out.size() == 1);
    CHECK(u.intern(out[0]) == counter_state(u, 1, 0));

    // at the top of the configured range the branch is pruned
    StateId top = counter_state(u, 3, 0);
    CHECK(exec_command(u, cmd_faa(1, AddrExpr::at(0), 1, "FAA(l,1)"), u.state(top)).empty());
}

TEST_CASE("write to a partial-permission cell faults") {
    Universe u(parse_universe_config(R"(
name frac
gaddr m optional int:0..1 list:12,24
)"));
    State s = u.empty_state();
    s.gheap.set(0, 12, Value::intv(0));
    auto out = exec_command(u, cmd_write(1, AddrExpr::at(0), ValueExpr::constant(Value::intv(1)), "[m] := 1"), s);
    REQUIRE(out.size() == 1);
    CHECK(out[0].abort);
    // reads are possible with any fraction
    Universe u2(parse_universe_config(R"(
name frac2
gaddr m optional int:0..1 list:12,24
lvar t int:0..1
)"));
    State s2 = u2.empty_state();
    s2.gheap.set(0, 12, Value::intv(1));
    auto rd = exec_command(u2, cmd_read(2, AddrExpr::at(0), 0, "t := [m]"), s2);
    REQUIRE(rd.size() == 1);
    CHECK(rd[0].lvars.get(0) == Value::intv(1));
}

TEST_CASE("interference changes only the global portion") {
    Universe u(counter_config());
    auto interferences = counter_interferences(u);
    State s = u.state(counter_state(u, 2, 0));
    s.lvars.set(0, Value::intv(3));  // the isolated thread's local x

    auto out = apply_interference(u, interferences[0], s, {});
    REQUIRE(out.size() == 1);
    CHECK(out[0].gheap.at(0).val == Value::intv(3));
    CHECK(out[0].gheap.at(1).val == Value::intv(0));
    CHECK(out[0].lvars.get(0) == Value::intv(3));  // local part unchanged

    // unsatisfiable guard yields the empty set
    Interference blocked{tp_now(pred_false()), cmd_faa(9, AddrExpr::at(0), 1, "FAA(l,1)"), "no"};
    CHECK(apply_interference(u, blocked, s, {}).empty());
}

TEST_CASE("past-guarded interference never blocks") {
    Universe u(counter_config());
    auto p = make_pred("l was 0", [](const State& s) { return s.gheap.at(0).val == Value::intv(0); });
    Interference i{tp_past(p), cmd_faa(9, AddrExpr::at(1), 1, "FAA(r,1)"), "past-guarded"};
    State s = u.state(counter_state(u, 3, 1));
    auto out = apply_interference(u, i, s, {});
    CHECK(out.size() == 1);  // the past atom does not block
}

TEST_CASE("self-interference guards filter by the now projection of a*true") {
    Universe u(counter_config());
    u.ensure_tables();
    auto l_is = [&](int v) {
        return make_pred("l=" + std::to_string(v),
                         [v](const State& s) { return s.gheap.present(0) && s.gheap.at(0).val == Value::intv(v); });
    };
    Command c = self_interference(tp_now(l_is(1)), cmd_faa(5, AddrExpr::at(0), 1, "FAA(l,1)"));
    CHECK(exec_command(u, c, u.state(counter_state(u, 1, 0))).size() == 1);
    CHECK(exec_command(u, c, u.state(counter_state(u, 2, 0))).empty());

    // guard true reduces to the plain command
    Command c2 = self_interference(tp_true(), cmd_faa(6, AddrExpr::at(0), 1, "FAA(l,1)"));
    CHECK(exec_command(u, c2, u.state(counter_state(u, 0, 0))).size() == 1);
}

TEST_CASE("stmt_of builds the iterated choice over self-interferences") {
    Universe u(counter_config());
    auto I = counter_interferences(u);
    auto prog = stmt_of(I);
    std::vector<std::pair<const Command*, ProgramPtr>> steps;
    first_steps(prog, nullptr, steps);
    CHECK(steps.size() == 2);
    CHECK(can_finish(prog));

    // empty interference set degenerates to a loop that can only finish
    auto empty_prog = stmt_of({});
    steps.clear();
    first_steps(empty_prog, nullptr, steps);
    CHECK(steps.empty());
    CHECK(can_finish(empty_prog));
}

TEST_CASE("enrich replaces commands by their guarded interferences") {
    Universe u(counter_config());
    auto I = counter_interferences(u);
    auto p = prog_seq({prog_com(cmd_faa(101, AddrExpr::at(0), 1, "FAA(l,1)")),
                       prog_com(cmd_faa(102, AddrExpr::at(1), 1, "FAA(r,1)"))});
    auto e = enrich(p, I);
    std::vector<const Command*> cmds;
    collect_commands(e, cmds);
    REQUIRE(cmds.size() == 2);
    CHECK(cmds[0]->sched_guard != nullptr);

    // a label with no interference is an incomplete-interference error
    auto bad = prog_com(cmd_skip(999));
    CHECK_THROWS(enrich(bad, I));
}

TEST_CASE("governed enumeration covers the FAA interleavings") {
    Universe u(counter_config());
    auto I = counter_interferences(u);
    std::vector<StateId> init{counter_state(u, 0, 0)};

    GovernedOptions opts;
    opts.depth = 3;
    bool found = false;
    std::vector<StateId> want{counter_state(u, 0, 0), counter_state(u, 1, 0), counter_state(u, 1, 1)};
    auto stats = governed(u, I, {}, init, opts,
                          [&](const std::vector<StateId>& states, const std::vector<int>&, const ProgramPtr&) {
                              if (states == want) found = true;
                              return true;
                          });
    CHECK(found);
    CHECK(!stats.budget_exceeded);

    // depth 1 yields exactly the initial states as singleton computations
    int count = 0;
    GovernedOptions d1;
    d1.depth = 1;
    governed(u, I, {}, init, d1,
             [&](const std::vector<StateId>& states, const std::vector<int>&, const ProgramPtr&) {
                 ++count;
                 CHECK(states.size() == 1);
                 return true;
             });
    CHECK(count == 1);
}

TEST_CASE("governed histories record plain command labels") {
    Universe u(counter_config());
    auto I = counter_interferences(u);
    std::vector<StateId> init{counter_state(u, 0, 0)};
    GovernedOptions opts;
    opts.depth = 2;
    opts.record_commands = true;
    bool saw_plain_label = false;
    governed(u, I, {}, init, opts,
             [&](const std::vector<StateId>& states, const std::vector<int>& gaps, const ProgramPtr&) {
                 if (states.size() == 2 && gaps.size() == 1 && gaps[0] == 101) saw_plain_label = true;
                 return true;
             });
    CHECK(saw_plain_label);
}

TEST_CASE("lemma suite over the 2-address 2-value law universe") {
    Universe u(parse_universe_config(R"(
name law2x2
gaddr a optional int:0..1 full
gaddr b optional int:0..1 full
)"));
    auto rep = run_lemma_suite(u, 4);
    for (const auto& law : rep.laws) {
        INFO(law.name << " " << law.witness);
        CHECK(law.pass);
    }
    CHECK(rep.laws.size() >= 20);
}

TEST_CASE("lemma suite serial and parallel modes agree") {
    Universe u(parse_universe_config(R"(
name law1x2
gaddr a optional int:0..1 full
)"));
    auto serial = run_lemma_suite(u, 3, ExecMode::Serial);
    auto parallel = run_lemma_suite(u, 3, ExecMode::Parallel);
    REQUIRE(serial.laws.size() == parallel.laws.size());
    for (std::size_t i = 0; i < serial.laws.size(); ++i) {
        CHECK(serial.laws[i].pass == parallel.laws[i].pass);
    }
}
