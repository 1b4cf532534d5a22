#include "tempo/explore.hpp"

#include <sstream>
#include <unordered_set>

namespace tempo {

// ---------------------------------------------------------------------------
// thread programs as control-flow graphs: positions must be stable integers
// for configuration hashing
// ---------------------------------------------------------------------------

namespace {

struct Cfg {
    struct Edge {
        Command cmd;
        int next;
    };
    std::vector<std::vector<Edge>> nodes;
    int start = 0;
    int exit = 0;

    int add_node() {
        nodes.emplace_back();
        return static_cast<int>(nodes.size()) - 1;
    }
};

// Thompson-style compilation with epsilon elimination.
struct CfgBuilder {
    Cfg cfg;
    std::vector<std::vector<int>> eps;

    int add_node() {
        eps.emplace_back();
        return cfg.add_node();
    }

    std::pair<int, int> compile(const ProgramPtr& p) {
        int in = add_node();
        int out = add_node();
        build(p, in, out);
        return {in, out};
    }

    void build(const ProgramPtr& p, int in, int out) {
        switch (p->kind) {
            case Program::PCom:
                cfg.nodes[in].push_back(Cfg::Edge{p->com, out});
                break;
            case Program::PSeq: {
                int cur = in;
                for (std::size_t i = 0; i < p->kids.size(); ++i) {
                    int next = i + 1 == p->kids.size() ? out : add_node();
                    build(p->kids[i], cur, next);
                    cur = next;
                }
                if (p->kids.empty()) eps[in].push_back(out);
                break;
            }
            case Program::PChoice: {
                if (p->kids.empty()) eps[in].push_back(out);
                for (const auto& k : p->kids) build(k, in, out);
                break;
            }
            case Program::PLoop: {
                eps[in].push_back(out);
                if (!p->kids.empty()) {
                    int body_in = add_node();
                    eps[in].push_back(body_in);
                    build(p->kids[0], body_in, in);
                }
                break;
            }
        }
    }

    Cfg finish(int start, int exit_node) {
        // epsilon closure per node, then rewire edges over the closure
        std::size_t n = cfg.nodes.size();
        std::vector<std::vector<int>> closure(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> stack{static_cast<int>(i)};
            std::unordered_set<int> seen{static_cast<int>(i)};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                closure[i].push_back(x);
                for (int e : eps[x])
                    if (seen.insert(e).second) stack.push_back(e);
            }
        }
        Cfg out;
        out.nodes.resize(n);
        out.start = start;
        out.exit = exit_node;
        std::vector<std::uint8_t> reaches_exit(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (int c : closure[i]) {
                if (c == exit_node) reaches_exit[i] = 1;
                for (const auto& e : cfg.nodes[c]) out.nodes[i].push_back(e);
            }
        // exit reachability by silent moves folds into node identity: a node
        // whose closure contains the exit can end the program there
        exit_reachable = std::move(reaches_exit);
        return out;
    }

    std::vector<std::uint8_t> exit_reachable;
};

struct CompiledOp {
    OpInstance op;
    Cfg cfg;
    std::vector<std::uint8_t> exit_reachable;
};

CompiledOp compile_op(const OpInstance& op) {
    CfgBuilder b;
    auto [in, out] = b.compile(op.program);
    CompiledOp c{op, {}, {}};
    c.cfg = b.finish(in, out);
    c.exit_reachable = std::move(b.exit_reachable);
    return c;
}

bool counts_as_step(const Command& c) {
    switch (c.kind) {
        case Command::Skip:
        case Command::Assume:
        case Command::LocalAssign:
            return false;
        default:
            return true;
    }
}

struct ThreadState {
    Heap lheap;
    Ghost lghost;
    VarMap lvars;
    std::size_t op_idx = 0;
    int node = 0;
    int steps = 0;
    bool done = false;
};

struct Explorer {
    Universe& u;
    const std::vector<std::vector<CompiledOp>>& threads;
    const ExploreOptions& opts;
    const std::function<bool(const ExploredRun&)>& sink;
    const std::function<void(const State&)>& on_state;

    ExploreOutcome outcome;
    // visited configurations keyed without the step counters; per key the
    // Pareto-minimal step vectors (fewer steps used can only reach more)
    std::unordered_map<std::uint64_t, std::vector<std::vector<int>>> visited;
    OpHistory history;
    std::uint64_t schedule_hash = 1469598103934665603ULL;
    std::vector<std::string> trace;
    std::vector<State> states_along;
    bool stop = false;

    std::uint64_t config_hash(const State& global, const std::vector<ThreadState>& ts) const {
        std::uint64_t h = hash_state(global);
        for (const auto& t : ts) {
            State probe;
            probe.lheap = t.lheap;
            probe.lghost = t.lghost;
            probe.lvars = t.lvars;
            h = h * 1099511628211ULL + hash_state(probe);
            h = h * 31 + t.op_idx;
            h = h * 31 + static_cast<std::uint64_t>(t.node);
            h = h * 31 + (t.done ? 1 : 0);
        }
        if (opts.history_in_key) {
            for (const auto& e : history) {
                h = h * 131 + e.thread * 2 + (e.response ? 1 : 0);
                h = h * 131 + (e.result ? *e.result + 2 : 0);
            }
        }
        return h;
    }

    // true when the configuration was already reached with pointwise fewer
    // steps used; otherwise records the new vector and drops dominated ones
    bool dominated(std::uint64_t key, const std::vector<ThreadState>& ts) {
        std::vector<int> steps;
        steps.reserve(ts.size());
        for (const auto& t : ts) steps.push_back(t.steps);
        auto& entries = visited[key];
        for (const auto& e : entries) {
            bool dom = true;
            for (std::size_t i = 0; i < steps.size(); ++i)
                if (e[i] > steps[i]) {
                    dom = false;
                    break;
                }
            if (dom) return true;
        }
        entries.erase(std::remove_if(entries.begin(), entries.end(),
                                     [&](const std::vector<int>& e) {
                                         for (std::size_t i = 0; i < steps.size(); ++i)
                                             if (steps[i] > e[i]) return false;
                                         return true;
                                     }),
                      entries.end());
        entries.push_back(std::move(steps));
        return false;
    }

    State assemble(const State& global, const ThreadState& t) const {
        State s = global;
        s.lheap = t.lheap;
        s.lghost = t.lghost;
        s.lvars = t.lvars;
        return s;
    }

    // advance op boundaries: emit the response once the cfg reached a node
    // that silently reaches the exit with no pending work we want to force
    void normalize(State& global, std::vector<ThreadState>& ts) {
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                ThreadState& t = ts[ti];
                if (t.done) continue;
                const CompiledOp& cop = threads[ti][t.op_idx];
                bool at_exit = t.node == cop.cfg.exit ||
                               (cop.exit_reachable[t.node] && cop.cfg.nodes[t.node].empty());
                if (!at_exit) continue;
                // response of the finished operation
                Event resp;
                resp.thread = static_cast<int>(ti);
                resp.response = true;
                resp.op = cop.op.op;
                resp.args = cop.op.args;
                if (cop.op.result) resp.result = cop.op.result(assemble(global, t));
                history.push_back(resp);
                t.op_idx++;
                t.steps = 0;
                if (t.op_idx >= threads[ti].size()) {
                    t.done = true;
                } else {
                    const CompiledOp& next = threads[ti][t.op_idx];
                    Event inv;
                    inv.thread = static_cast<int>(ti);
                    inv.op = next.op.op;
                    inv.args = next.op.args;
                    history.push_back(inv);
                    t.node = next.cfg.start;
                    // locals reset between operations of the same thread
                    t.lvars.vars.assign(t.lvars.vars.size(), Value::none());
                    t.lghost = Ghost{};
                }
                again = true;
            }
        }
    }

    void emit_run(const State& global, const std::vector<ThreadState>& ts, bool complete) {
        ExploredRun run;
        run.history = history;
        run.final_state = global;
        run.complete = complete;
        if (opts.record_trace) {
            run.trace = trace;
            run.visited_states = states_along;
        }
        ++outcome.runs;
        if (!sink(run)) stop = true;
    }

    void dfs(State global, std::vector<ThreadState> ts) {
        if (stop) return;
        normalize(global, ts);
        if (++outcome.configs > opts.config_budget) {
            outcome.budget_exceeded = true;
            stop = true;
            return;
        }
        std::uint64_t h = config_hash(global, ts);
        if (opts.schedule_in_key) {
            h = h * 16777619ULL + schedule_hash;
            if (!visited.emplace(h, std::vector<std::vector<int>>{}).second) return;
        } else if (dominated(h, ts)) {
            return;
        }
        if (on_state) on_state(global);

        bool all_done = true;
        bool any_step = false;
        for (std::size_t ti = 0; ti < ts.size() && !stop; ++ti) {
            ThreadState& t = ts[ti];
            if (t.done) continue;
            all_done = false;
            const CompiledOp& cop = threads[ti][t.op_idx];
            for (const auto& edge : cop.cfg.nodes[t.node]) {
                bool costs = counts_as_step(edge.cmd);
                if (costs && t.steps >= opts.steps_per_thread) continue;
                State view = assemble(global, t);
                auto succs = exec_command(u, edge.cmd, view);
                for (const State& next : succs) {
                    if (next.abort) continue;  // modeling faults end the branch
                    any_step = true;
                    ThreadState saved = t;
                    State g2 = next;
                    t.lheap = next.lheap;
                    t.lghost = next.lghost;
                    t.lvars = next.lvars;
                    g2.lheap = Heap{};
                    g2.lheap.cells.resize(global.lheap.cells.size());
                    g2.lghost = Ghost{};
                    g2.lvars.vars.assign(global.lvars.vars.size(), Value::none());
                    int old_node = t.node;
                    t.node = edge.next;
                    if (costs) t.steps++;
                    std::uint64_t old_sched = schedule_hash;
                    schedule_hash = schedule_hash * 1000003ULL + (ti * 1024 + edge.cmd.label);
                    std::size_t hist_len = history.size();
                    if (opts.record_trace) {
                        trace.push_back("t" + std::to_string(ti) + ": " + edge.cmd.text);
                        states_along.push_back(g2);
                    }
                    dfs(g2, ts);
                    if (opts.record_trace) {
                        trace.pop_back();
                        states_along.pop_back();
                    }
                    history.resize(hist_len);
                    schedule_hash = old_sched;
                    t = saved;
                    t.node = old_node;
                    if (stop) return;
                }
            }
        }
        if (all_done || !any_step) emit_run(global, ts, all_done);
    }
};

}  // namespace

std::string to_string(const OpHistory& h) {
    std::ostringstream os;
    for (const auto& e : h) {
        if (e.response) {
            os << "res(t" << e.thread << "," << e.op;
            if (e.result) os << "=" << *e.result;
            os << ") ";
        } else {
            os << "inv(t" << e.thread << "," << e.op;
            for (int a : e.args) os << " " << a;
            os << ") ";
        }
    }
    return os.str();
}

ExploreOutcome run_interleavings(Universe& u, const State& initial,
                                 const std::vector<std::vector<OpInstance>>& threads, const ExploreOptions& opts,
                                 const std::function<bool(const ExploredRun&)>& sink,
                                 const std::function<void(const State&)>& on_state) {
    std::vector<std::vector<CompiledOp>> compiled(threads.size());
    for (std::size_t ti = 0; ti < threads.size(); ++ti)
        for (const auto& op : threads[ti]) compiled[ti].push_back(compile_op(op));

    Explorer ex{u, compiled, opts, sink, on_state, {}, {}, {}, 1469598103934665603ULL, {}, {}, false};

    State global = initial;
    std::vector<ThreadState> ts(threads.size());
    for (std::size_t ti = 0; ti < threads.size(); ++ti) {
        ts[ti].lheap.cells.resize(initial.lheap.cells.size());
        ts[ti].lvars.vars.assign(initial.lvars.vars.size(), Value::none());
        if (compiled[ti].empty()) {
            ts[ti].done = true;
            continue;
        }
        ts[ti].node = compiled[ti][0].cfg.start;
        Event inv;
        inv.thread = static_cast<int>(ti);
        inv.op = compiled[ti][0].op.op;
        inv.args = compiled[ti][0].op.args;
        ex.history.push_back(inv);
    }
    ex.dfs(global, ts);
    return ex.outcome;
}

// ---------------------------------------------------------------------------
// the linearizability oracle
// ---------------------------------------------------------------------------

namespace {

struct LinOp {
    std::string op;
    std::vector<int> args;
    std::optional<int> result;  // nullopt: pending
    std::size_t inv_pos = 0;
    std::size_t res_pos = 0;
    std::string label;
};

std::vector<LinOp> collect_ops(const OpHistory& h) {
    std::vector<LinOp> ops;
    std::vector<std::vector<std::size_t>> open;  // per-thread stack of op indices
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Event& e = h[i];
        if (static_cast<std::size_t>(e.thread) >= open.size()) open.resize(e.thread + 1);
        if (!e.response) {
            LinOp op;
            op.op = e.op;
            op.args = e.args;
            op.inv_pos = i;
            op.res_pos = h.size();  // pending until matched
            std::string a;
            for (int x : e.args) a += (a.empty() ? "" : ",") + std::to_string(x);
            op.label = e.op + "(" + a + ")";
            open[e.thread].push_back(ops.size());
            ops.push_back(op);
        } else {
            std::size_t idx = open[e.thread].back();
            open[e.thread].pop_back();
            ops[idx].result = e.result;
            ops[idx].res_pos = i;
            if (e.result) ops[idx].label += "=" + std::to_string(*e.result);
        }
    }
    return ops;
}

bool precedes(const LinOp& a, const LinOp& b) { return a.res_pos < b.inv_pos; }

struct WgSearch {
    const std::vector<LinOp>& ops;
    const SeqSpec& spec;
    std::uint32_t completed_mask = 0;
    std::map<std::pair<std::uint32_t, std::int64_t>, bool> memo;
    std::vector<int> order;
    std::vector<int> best_order;
    bool found = false;

    bool run(std::uint32_t done, const AbstractVal& abs) {
        if ((done & completed_mask) == completed_mask) {
            best_order = order;
            return true;
        }
        auto key = std::make_pair(done, static_cast<std::int64_t>(abs.kind) << 32 | static_cast<std::uint32_t>(abs.payload));
        auto it = memo.find(key);
        if (it != memo.end() && !it->second) return false;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (done & (1u << i)) continue;
            bool ready = true;
            for (std::size_t j = 0; j < ops.size(); ++j) {
                if (i == j || (done & (1u << j))) continue;
                if (precedes(ops[j], ops[i])) {
                    ready = false;
                    break;
                }
            }
            if (!ready) continue;
            auto [next, result] = spec.apply(abs, ops[i].op, ops[i].args);
            if (ops[i].result && *ops[i].result != result) continue;
            order.push_back(static_cast<int>(i));
            if (run(done | (1u << i), next)) return true;
            order.pop_back();
        }
        memo[key] = false;
        return false;
    }
};

}  // namespace

LinVerdict wing_gong_check(const OpHistory& h, const SeqSpec& spec, const AbstractVal& initial) {
    LinVerdict v;
    auto ops = collect_ops(h);
    if (ops.size() > 20) {
        v.budget_exceeded = true;
        v.reason = "history too long";
        return v;
    }
    std::uint32_t completed = 0;
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].result) completed |= (1u << i);

    WgSearch search{ops, spec, completed, {}, {}, {}, false};
    if (search.run(0, initial)) {
        v.linearizable = true;
        for (int i : search.best_order) v.witness_order.push_back(ops[i].label);
        return v;
    }
    v.linearizable = false;
    v.reason = "no precedence-respecting order satisfies the sequential specification";

    // enumerate the candidate orders of the completed operations and report
    // where each one breaks
    std::vector<std::size_t> completed_idx;
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].result) completed_idx.push_back(i);
    if (completed_idx.size() <= 7) {
        std::vector<std::size_t> perm = completed_idx;
        std::sort(perm.begin(), perm.end());
        do {
            bool respects = true;
            for (std::size_t a = 0; a < perm.size() && respects; ++a)
                for (std::size_t b = a + 1; b < perm.size() && respects; ++b)
                    if (precedes(ops[perm[b]], ops[perm[a]])) respects = false;
            if (!respects) continue;
            AbstractVal abs = initial;
            std::string line;
            std::string verdict = "consistent";
            for (std::size_t k = 0; k < perm.size(); ++k) {
                const LinOp& op = ops[perm[k]];
                line += (line.empty() ? "" : "; ") + op.label;
                auto [next, result] = spec.apply(abs, op.op, op.args);
                if (op.result && *op.result != result) {
                    verdict = "violates at " + op.label + " (expected " + std::to_string(result) + ")";
                    break;
                }
                abs = next;
            }
            v.orders_tried.push_back(line + "  -> " + verdict);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return v;
}

// ---------------------------------------------------------------------------
// canned checks over the LO list
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<OpInstance>> lo_mix_threads(LoStructure& lo,
                                                    const std::vector<std::vector<std::pair<std::string, int>>>& mix) {
    std::vector<std::vector<OpInstance>> threads;
    int vres = lo.var("res");
    for (const auto& ops : mix) {
        std::vector<OpInstance> list;
        for (const auto& [op, key] : ops) {
            OpInstance inst;
            inst.op = op;
            inst.args = {key};
            inst.program = lo.program_for(op, key);
            inst.result = [vres](const State& s) -> std::optional<int> {
                const Value& r = s.lvars.get(vres);
                if (!r.is_set()) return std::nullopt;
                return r.f[0];
            };
            list.push_back(std::move(inst));
        }
        threads.push_back(std::move(list));
    }
    return threads;
}

AbstractVal lo_initial_abs(const std::vector<int>& preload) {
    std::uint32_t bits = 0;
    for (int k : preload) bits |= (1u << k);
    return AbstractVal::key_set(bits);
}

}  // namespace

ViolationReport find_violation(LoStructure& lo, const std::vector<std::vector<std::pair<std::string, int>>>& mix,
                               const std::vector<int>& preload, const ExploreOptions& opts) {
    ViolationReport rep;
    SeqSpec spec = set_spec();
    AbstractVal init_abs = lo_initial_abs(preload);

    auto threads = lo_mix_threads(lo, mix);
    auto outcome = run_interleavings(lo.universe(), lo.initial_state(preload), threads, opts,
                                     [&](const ExploredRun& run) {
                                         ++rep.runs_checked;
                                         LinVerdict v = wing_gong_check(run.history, spec, init_abs);
                                         if (!v.linearizable && !v.budget_exceeded) {
                                             rep.found = true;
                                             rep.history = run.history;
                                             rep.verdict = std::move(v);
                                             rep.trace = run.trace;
                                             return false;
                                         }
                                         return true;
                                     });
    rep.budget_exceeded = outcome.budget_exceeded;
    if (!rep.found)
        rep.detail = rep.budget_exceeded ? "budget exhausted without a verdict"
                                         : "exhausted all schedules without a violation";
    return rep;
}

ReachabilityInvariantReport check_invariants_on_reachables(
    LoStructure& lo, const std::vector<std::vector<std::pair<std::string, int>>>& mix,
    const std::vector<int>& preload, const ExploreOptions& opts) {
    ReachabilityInvariantReport rep;
    auto threads = lo_mix_threads(lo, mix);
    std::unordered_set<std::uint64_t> checked;
    run_interleavings(lo.universe(), lo.initial_state(preload), threads, opts,
                      [&](const ExploredRun&) { return rep.all_hold; },
                      [&](const State& s) {
                          State proj = s;
                          proj.lheap.cells.assign(proj.lheap.cells.size(), HeapCell{});
                          proj.lghost = Ghost{};
                          proj.lvars.vars.assign(proj.lvars.vars.size(), Value::none());
                          if (!checked.insert(hash_state(proj)).second) return;
                          ++rep.states_checked;
                          if (!rep.all_hold) return;
                          auto r = check_structure_invariants(lo, proj);
                          if (!r.ok) {
                              rep.all_hold = false;
                              rep.witness = to_string(proj);
                              rep.violations = r.violations;
                          }
                      });
    return rep;
}

BugReport reproduce_bug(int id, LoVariant buggy_variant, int steps) {
    BugReport rep;
    rep.id = id;
    rep.variant = buggy_variant;

    std::vector<std::vector<std::pair<std::string, int>>> mix;
    std::vector<int> preload;
    if (id == 1) {
        // a stale marked duplicate confuses the unfixed traversal
        mix = {{{"contains", 2}, {"insert", 2}, {"contains", 2}}, {{"delete", 2}}};
        preload = {2};
    } else if (id == 2) {
        // backward-first linking hides the new node from forward searches
        mix = {{{"insert", 2}}, {{"contains", 2}, {"contains", 2}}};
        preload = {};
    } else {
        rep.detail = "unknown bug id";
        return rep;
    }

    ExploreOptions opts;
    opts.steps_per_thread = steps;
    opts.record_trace = true;

    LoUniverseSpec buggy;
    buggy.variant = buggy_variant;
    LoStructure lo_buggy(buggy);
    rep.violation = find_violation(lo_buggy, mix, preload, opts);
    rep.reproduced = rep.violation.found;

    LoUniverseSpec fixed;
    fixed.variant = LoVariant::Fixed;
    LoStructure lo_fixed(fixed);
    ExploreOptions fopts = opts;
    fopts.record_trace = false;
    auto clean = find_violation(lo_fixed, mix, preload, fopts);
    rep.fixed_clean = !clean.found && !clean.budget_exceeded;
    rep.fixed_runs = clean.runs_checked;
    return rep;
}

// ---------------------------------------------------------------------------
// rdcss exploration
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<OpInstance>> rdcss_setup(RdcssStructure& rd) {
    Universe& u = rd.universe();
    int vres = u.var_id("res");
    auto result_of = [vres](const State& s) -> std::optional<int> {
        const Value& r = s.lvars.get(vres);
        if (!r.is_set()) return std::nullopt;
        return r.f[0];
    };
    auto op = [&](const std::string& name, std::vector<int> args) {
        OpInstance inst;
        inst.op = name;
        inst.args = args;
        inst.program = rd.program_for(name, args);
        inst.result = name == "writel" ? std::function<std::optional<int>(const State&)>(
                                             [](const State&) { return std::optional<int>(0); })
                                       : result_of;
        return inst;
    };
    return {
        {op("rdcss", {0, 1, 1})},
        {op("rdcss", {0, 0, 1})},
        {op("get", {})},
        {op("writel", {1})},
    };
}

}  // namespace

RdcssExploreReport rdcss_explore_and_check(RdcssStructure& rd, const ExploreOptions& opts) {
    RdcssExploreReport rep;
    SeqSpec spec = rd.specification();
    AbstractVal init = AbstractVal::int_val(0 * 16 + 0);  // r = 0, ell = 0

    auto threads = rdcss_setup(rd);
    auto outcome = run_interleavings(rd.universe(), rd.initial_state(0, 0), threads, opts,
                                     [&](const ExploredRun& run) {
                                         ++rep.runs;
                                         LinVerdict v = wing_gong_check(run.history, spec, init);
                                         if (!v.linearizable && !v.budget_exceeded) {
                                             rep.linearizable = false;
                                             rep.violating = run.history;
                                             rep.detail = v.reason;
                                             return false;
                                         }
                                         return true;
                                     });
    rep.budget_exceeded = outcome.budget_exceeded;
    return rep;
}

// ---------------------------------------------------------------------------
// reachable-state collectors
// ---------------------------------------------------------------------------

std::vector<State> lo_collect_reachable(const LoStructure& lo, int threads, int steps) {
    (void)threads;
    LoStructure& mlo = const_cast<LoStructure&>(lo);
    const auto& keys = lo.spec().keys;
    int k0 = keys.front();
    int k1 = keys.size() > 1 ? keys[1] : k0;
    int k2 = keys.size() > 2 ? keys[2] : k1;

    std::vector<std::vector<std::vector<std::pair<std::string, int>>>> mixes = {
        {{{"insert", k1}}, {{"delete", k0}}},
        {{{"insert", k1}}, {{"delete", k2}}},
        {{{"delete", k0}}, {{"contains", k1}}},
        {{{"insert", k1}}, {{"insert", k0}}},
    };
    std::vector<int> preload{k0, k2};

    std::vector<State> out;
    std::unordered_set<std::uint64_t> seen;
    ExploreOptions opts;
    opts.steps_per_thread = steps;
    opts.history_in_key = false;
    for (const auto& mix : mixes) {
        auto tprogs = lo_mix_threads(mlo, mix);
        run_interleavings(mlo.universe(), mlo.initial_state(preload), tprogs, opts,
                          [](const ExploredRun&) { return true; },
                          [&](const State& s) {
                              State proj = s;  // global projection, empty local part
                              proj.lheap.cells.assign(proj.lheap.cells.size(), HeapCell{});
                              proj.lghost = Ghost{};
                              proj.lvars.vars.assign(proj.lvars.vars.size(), Value::none());
                              if (seen.insert(hash_state(proj)).second) out.push_back(std::move(proj));
                          });
    }
    return out;
}

std::vector<State> rdcss_collect_reachable(const RdcssStructure& rd) {
    RdcssStructure& mrd = const_cast<RdcssStructure&>(rd);
    std::vector<State> out;
    std::unordered_set<std::uint64_t> seen;
    ExploreOptions opts;
    opts.steps_per_thread = 14;
    opts.history_in_key = false;
    auto threads = rdcss_setup(mrd);
    run_interleavings(mrd.universe(), mrd.initial_state(0, 0), threads, opts,
                      [](const ExploredRun&) { return true; },
                      [&](const State& s) {
                          State proj = s;
                          proj.lheap.cells.assign(proj.lheap.cells.size(), HeapCell{});
                          proj.lghost = Ghost{};
                          proj.lvars.vars.assign(proj.lvars.vars.size(), Value::none());
                          if (seen.insert(hash_state(proj)).second) out.push_back(std::move(proj));
                      });
    return out;
}

}  // namespace tempo
