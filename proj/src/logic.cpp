#include "tempo/logic.hpp"

#include <cstring>
#include <map>
#include <sstream>
#include <unordered_set>

namespace tempo {

// ---------------------------------------------------------------------------
// symbolic variables
// ---------------------------------------------------------------------------

int SymTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    throw std::runtime_error("unknown symbolic variable: " + name);
}

std::vector<Valuation> SymTable::valuations() const {
    std::vector<Valuation> out{{}};
    for (const auto& v : vars) {
        std::vector<Valuation> next;
        next.reserve(out.size() * v.domain.size());
        for (const auto& partial : out)
            for (const Value& val : v.domain) {
                next.push_back(partial);
                next.back().push_back(val);
            }
        out.swap(next);
    }
    return out;
}

PredFamily lift_closed(const std::string& name, TempPred t) {
    auto shared = std::make_shared<TempPred>(std::move(t));
    return PredFamily{name, [shared](const Valuation&) { return *shared; }};
}

std::vector<TempPred> instantiate(const PredFamily& fam, const SymTable& sym) {
    std::vector<TempPred> out;
    for (const auto& rho : sym.valuations()) out.push_back(fam.fn(rho));
    return out;
}

// ---------------------------------------------------------------------------
// compiled clause engine: membership of hist-free assertions over the carrier
// as bit tables, with the realizable past-atom masks enumerated once
// ---------------------------------------------------------------------------

namespace {

struct Engine {
    Universe& u;
    int bound;
    std::size_t n = 0;      // carrier size
    std::size_t words = 0;  // bitset words

    std::vector<StatePredPtr> atoms;
    std::vector<std::vector<std::uint8_t>> atom_tables;
    std::unordered_map<int, int> uid2bit;
    bool overflow = false;

    std::unordered_map<int, std::shared_ptr<std::vector<std::uint64_t>>> now_cache;
    std::shared_ptr<std::vector<std::uint64_t>> all_ones;

    std::vector<std::uint64_t> sigs;
    std::vector<std::uint64_t> masks;
    std::unordered_map<std::uint64_t, std::uint32_t> mask_idx;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, StateId>> parent;

    Engine(Universe& universe, int b) : u(universe), bound(b) {
        u.all_states();
        n = u.carrier_size();
        words = (n + 63) / 64;
        all_ones = std::make_shared<std::vector<std::uint64_t>>(words, ~0ULL);
        if (n % 64) all_ones->back() = (~0ULL) >> (64 - n % 64);
    }

    int reg_atom(const StatePredPtr& p) {
        auto it = uid2bit.find(p->uid());
        if (it != uid2bit.end()) return it->second;
        const auto& carrier = u.all_states();
        std::vector<std::uint8_t> table(n);
        for (std::size_t i = 0; i < n; ++i) table[i] = p->member(u.state(carrier[i])) ? 1 : 0;
        for (std::size_t a = 0; a < atom_tables.size(); ++a)
            if (atom_tables[a] == table) {
                uid2bit.emplace(p->uid(), static_cast<int>(a));
                return static_cast<int>(a);
            }
        int bit = static_cast<int>(atoms.size());
        if (bit >= 62) {
            overflow = true;
            return -1;
        }
        uid2bit.emplace(p->uid(), bit);
        atoms.push_back(p);
        atom_tables.push_back(std::move(table));
        return bit;
    }

    std::shared_ptr<std::vector<std::uint64_t>> now_table(const StatePredPtr& p) {
        if (!p) return all_ones;
        auto it = now_cache.find(p->uid());
        if (it != now_cache.end()) return it->second;
        auto bits = std::make_shared<std::vector<std::uint64_t>>(words, 0);
        const auto& carrier = u.all_states();
        for (std::size_t i = 0; i < n; ++i)
            if (p->member(u.state(carrier[i]))) (*bits)[i / 64] |= (1ULL << (i % 64));
        now_cache.emplace(p->uid(), bits);
        return bits;
    }

    void collect(const TempPred& t) {
        for (const auto& c : t.clauses) {
            if (!c.hists.empty()) throw std::logic_error("engine: hist atom in " + t.name);
            for (const auto& p : c.pasts) reg_atom(p);
            now_table(c.now);
        }
    }
    void collect_atom(const StatePredPtr& p) {
        reg_atom(p);
        now_table(p);
    }

    void build_masks() {
        const auto& carrier = u.all_states();
        sigs.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t s = 0;
            for (std::size_t a = 0; a < atoms.size(); ++a)
                if (atom_tables[a][i]) s |= (1ULL << a);
            sigs[i] = s;
        }
        masks.push_back(0);
        mask_idx.emplace(0, 0);
        std::vector<int> depth{0};
        std::size_t head = 0;
        while (head < masks.size()) {
            std::uint64_t m = masks[head];
            int d = depth[head];
            ++head;
            if (d >= bound - 1) continue;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t nm = m | sigs[i];
                if (mask_idx.count(nm)) continue;
                mask_idx.emplace(nm, static_cast<std::uint32_t>(masks.size()));
                masks.push_back(nm);
                depth.push_back(d + 1);
                parent.emplace(nm, std::make_pair(m, carrier[i]));
                if (masks.size() > 300'000) {
                    overflow = true;
                    return;
                }
            }
        }
    }

    struct CClause {
        std::shared_ptr<std::vector<std::uint64_t>> now;
        std::uint64_t need = 0;
        StatePredPtr now_pred;
    };
    struct Compiled {
        std::vector<CClause> clauses;
    };

    Compiled compile(const std::vector<TempPred>& instances) {
        Compiled out;
        for (const auto& t : instances) {
            for (const auto& c : t.clauses) {
                CClause cc;
                cc.now = now_table(c.now);
                cc.now_pred = c.now;
                for (const auto& p : c.pasts) cc.need |= (1ULL << uid2bit.at(p->uid()));
                out.clauses.push_back(std::move(cc));
            }
        }
        return out;
    }

    void active(const Compiled& c, std::uint64_t m, std::vector<std::uint64_t>& out) const {
        out.assign(words, 0);
        for (const auto& cc : c.clauses) {
            if ((cc.need & m) != cc.need) continue;
            for (std::size_t w = 0; w < words; ++w) out[w] |= (*cc.now)[w];
        }
    }

    bool member_pos(const Compiled& c, std::uint64_t m, std::size_t pos) const {
        for (const auto& cc : c.clauses) {
            if ((cc.need & m) != cc.need) continue;
            if ((*cc.now)[pos / 64] & (1ULL << (pos % 64))) return true;
        }
        return false;
    }

    bool member_state(const Compiled& c, std::uint64_t m, const State& s) const {
        for (const auto& cc : c.clauses) {
            if ((cc.need & m) != cc.need) continue;
            if (!cc.now_pred || cc.now_pred->member(s)) return true;
        }
        return false;
    }

    std::vector<StateId> realize(std::uint64_t mask) const {
        std::vector<StateId> prefix;
        std::uint64_t m = mask;
        while (m != 0) {
            auto it = parent.find(m);
            if (it == parent.end()) break;
            prefix.push_back(it->second.second);
            m = it->second.first;
        }
        std::reverse(prefix.begin(), prefix.end());
        return prefix;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// bounded discharge
// ---------------------------------------------------------------------------

namespace {

// One governed step of stmt(I) under I: self-interference executions plus
// environment interferences; abort successors are dropped (the governed set
// stays within the universe).
void governed_successors(Universe& u, const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                         const State& s, std::vector<std::pair<State, int>>& out) {
    out.clear();
    std::unordered_set<std::uint64_t> seen;
    for (const auto& i : I) {
        Command self = self_interference(i.guard, i.cmd);
        for (const State& t : exec_command(u, self, s)) {
            if (t.abort) continue;
            if (seen.insert(hash_state(t)).second) out.emplace_back(t, i.cmd.label);
        }
        for (const State& t : apply_interference(u, i, s, locals)) {
            if (t.abort) continue;
            if (seen.insert(hash_state(t)).second) out.emplace_back(t, kNoCommand);
        }
    }
}

struct BfsNode {
    State state;
    bool o_seen;
    std::int64_t parent;
    int gap;
};

// Layered search over (state, o-seen) pairs: a violation is a reachable pair
// with now(q) and no o anywhere on the way. Exact for the depth bound.
bool bounded_violation(Universe& u, const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                       const StatePredPtr& p, const StatePredPtr& q, const StatePredPtr& o, int depth,
                       std::uint64_t budget, bool want_witness, History* witness, bool* exceeded) {
    std::vector<BfsNode> nodes;
    std::unordered_set<std::uint64_t> seen;
    std::size_t frontier_begin = 0;

    auto key_of = [](const State& st, bool flag) { return hash_state(st) * 2 + (flag ? 1 : 0); };
    auto check = [&](std::size_t idx) {
        const BfsNode& n = nodes[idx];
        if (n.o_seen || !q->member(n.state)) return false;
        if (want_witness && witness) {
            std::vector<std::pair<StateId, int>> rev;
            std::int64_t cur = static_cast<std::int64_t>(idx);
            while (cur >= 0) {
                rev.emplace_back(u.intern(nodes[cur].state), nodes[cur].gap);
                cur = nodes[cur].parent;
            }
            witness->states.clear();
            witness->gaps.clear();
            for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
                if (!witness->states.empty()) witness->gaps.push_back(it->second);
                witness->states.push_back(it->first);
            }
        }
        return true;
    };

    for (StateId sid : u.all_states()) {
        const State& st = u.state(sid);
        if (!p->member(st)) continue;
        bool flag = o->member(st);
        if (!seen.insert(key_of(st, flag)).second) continue;
        nodes.push_back(BfsNode{st, flag, -1, kNoCommand});
        if (check(nodes.size() - 1)) return true;
    }

    std::vector<std::pair<State, int>> succ;
    for (int layer = 1; layer < depth; ++layer) {
        std::size_t frontier_end = nodes.size();
        if (frontier_begin == frontier_end) break;
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            if (nodes.size() > budget) {
                if (exceeded) *exceeded = true;
                return false;
            }
            governed_successors(u, I, locals, nodes[i].state, succ);
            for (auto& [t, gap] : succ) {
                bool flag = nodes[i].o_seen || o->member(t);
                if (!seen.insert(key_of(t, flag)).second) continue;
                nodes.push_back(BfsNode{t, flag, static_cast<std::int64_t>(i), gap});
                if (check(nodes.size() - 1)) return true;
            }
        }
        frontier_begin = frontier_end;
    }
    return false;
}

}  // namespace

GovernedClosure build_governed_closure(Universe& u, const std::vector<Interference>& I,
                                       const std::vector<LocalPart>& locals, int depth, std::uint64_t budget) {
    GovernedClosure c;
    c.depth = depth;
    std::unordered_map<State, std::uint32_t, StateHash> index;
    std::vector<int> layer;
    for (StateId sid : u.all_states()) {
        const State& st = u.state(sid);
        if (index.count(st)) continue;
        index.emplace(st, static_cast<std::uint32_t>(c.nodes.size()));
        c.nodes.push_back(st);
        layer.push_back(0);
    }
    c.seed_count = c.nodes.size();
    c.edges.resize(c.nodes.size());
    std::vector<std::pair<State, int>> succ;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (layer[i] >= depth - 1) continue;
        if (c.nodes.size() > budget) {
            c.budget_exceeded = true;
            break;
        }
        governed_successors(u, I, locals, c.nodes[i], succ);
        for (auto& [t, gap] : succ) {
            auto it = index.find(t);
            std::uint32_t ti;
            if (it == index.end()) {
                ti = static_cast<std::uint32_t>(c.nodes.size());
                index.emplace(t, ti);
                c.nodes.push_back(t);
                layer.push_back(layer[i] + 1);
                c.edges.emplace_back();
            } else {
                ti = it->second;
            }
            c.edges[i].emplace_back(ti, gap);
        }
    }
    return c;
}

namespace {

// flag-BFS over the precomputed graph: a violation is a (node, no-o-yet)
// pair with now(q), reached within the depth bound
bool closure_violation(const GovernedClosure& c, const std::vector<std::uint8_t>& pbits,
                       const std::vector<std::uint8_t>& qbits, const std::vector<std::uint8_t>& obits,
                       int depth, std::vector<std::pair<std::uint32_t, bool>>* witness_path) {
    std::size_t n = c.nodes.size();
    std::vector<std::uint8_t> seen(n * 2, 0);
    std::vector<std::pair<std::uint32_t, bool>> frontier, next;
    std::vector<std::int64_t> parent(n * 2, -1);
    auto idx = [](std::uint32_t node, bool flag) { return node * 2 + (flag ? 1 : 0); };

    auto hit = [&](std::uint32_t node, bool flag) { return !flag && qbits[node]; };
    auto reconstruct = [&](std::uint32_t node, bool flag) {
        if (!witness_path) return;
        witness_path->clear();
        std::int64_t cur = idx(node, flag);
        while (cur >= 0) {
            witness_path->emplace_back(static_cast<std::uint32_t>(cur / 2), (cur % 2) != 0);
            cur = parent[cur];
        }
        std::reverse(witness_path->begin(), witness_path->end());
    };

    for (std::uint32_t i = 0; i < c.seed_count; ++i) {
        if (!pbits[i]) continue;
        bool flag = obits[i];
        if (seen[idx(i, flag)]) continue;
        seen[idx(i, flag)] = 1;
        frontier.emplace_back(i, flag);
        if (hit(i, flag)) {
            reconstruct(i, flag);
            return true;
        }
    }
    for (int l = 1; l < depth && !frontier.empty(); ++l) {
        next.clear();
        for (auto [node, flag] : frontier) {
            for (auto [t, gap] : c.edges[node]) {
                (void)gap;
                bool nf = flag || obits[t];
                if (seen[idx(t, nf)]) continue;
                seen[idx(t, nf)] = 1;
                parent[idx(t, nf)] = idx(node, flag);
                next.emplace_back(t, nf);
                if (hit(t, nf)) {
                    reconstruct(t, nf);
                    return true;
                }
            }
        }
        frontier.swap(next);
    }
    return false;
}

}  // namespace

DischargeCertificate discharge_bounded(Universe& u, const Hypothesis& h, const std::vector<Interference>& I,
                                       const std::vector<LocalPart>& locals, int depth, ExecMode mode,
                                       const GovernedClosure* closure) {
    DischargeCertificate cert;
    cert.hypothesis = h.name;
    cert.mode = DischargeCertificate::Bounded;
    cert.bound = depth;
    cert.holds = true;

    auto valuations = h.sym.valuations();

    if (h.program) {
        // control-flow-sensitive form: run the enriched program under I and
        // track the recorded commands (sequential: small by construction)
        ProgramPtr program = enrich(h.program, I);
        const auto& carrier = u.all_states();
        for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
            const Valuation& rho = valuations[vi];
            StatePredPtr p = h.p.fn(rho);
            StatePredPtr q = h.q.fn(rho);
            StatePredPtr o = h.o.fn(rho);
            std::vector<StateId> init;
            for (StateId sid : carrier)
                if (p->member(u.state(sid))) init.push_back(sid);
            if (init.empty()) continue;
            GovernedOptions opts;
            opts.depth = depth;
            opts.record_commands = true;
            bool violated = false;
            auto stats = run_governed(u, program, I, locals, init, opts,
                                      [&](const std::vector<StateId>& states, const std::vector<int>& gaps,
                                          const ProgramPtr&) {
                                          if (!q->member(u.state(states.back()))) return true;
                                          for (StateId sx : states)
                                              if (o->member(u.state(sx))) return true;
                                          violated = true;
                                          cert.witness = History{states, gaps};
                                          return false;
                                      });
            cert.budget_exceeded = cert.budget_exceeded || stats.budget_exceeded;
            if (violated) {
                cert.holds = false;
                cert.detail = "violation under valuation #" + std::to_string(vi);
                return cert;
            }
        }
        if (cert.budget_exceeded) {
            cert.holds = false;
            cert.detail = "enumeration budget exceeded";
        }
        return cert;
    }

    u.all_states();
    u.ensure_tables();

    if (closure) {
        cert.budget_exceeded = closure->budget_exceeded;
        std::size_t n = closure->nodes.size();
        std::size_t hit = parallel_find_first(valuations.size(), mode, [&](std::size_t vi) {
            const Valuation& rho = valuations[vi];
            StatePredPtr p = h.p.fn(rho);
            StatePredPtr q = h.q.fn(rho);
            StatePredPtr o = h.o.fn(rho);
            std::vector<std::uint8_t> pbits(n), qbits(n), obits(n);
            for (std::size_t i = 0; i < n; ++i) {
                pbits[i] = p->member(closure->nodes[i]) ? 1 : 0;
                qbits[i] = q->member(closure->nodes[i]) ? 1 : 0;
                obits[i] = o->member(closure->nodes[i]) ? 1 : 0;
            }
            return closure_violation(*closure, pbits, qbits, obits, depth, nullptr);
        });
        if (hit != valuations.size()) {
            cert.holds = false;
            cert.detail =
                "violation under valuation #" + std::to_string(hit) + ": reached now(q) without wpast(o)";
            const Valuation& rho = valuations[hit];
            StatePredPtr p = h.p.fn(rho);
            StatePredPtr q = h.q.fn(rho);
            StatePredPtr o = h.o.fn(rho);
            std::size_t nn = closure->nodes.size();
            std::vector<std::uint8_t> pbits(nn), qbits(nn), obits(nn);
            for (std::size_t i = 0; i < nn; ++i) {
                pbits[i] = p->member(closure->nodes[i]) ? 1 : 0;
                qbits[i] = q->member(closure->nodes[i]) ? 1 : 0;
                obits[i] = o->member(closure->nodes[i]) ? 1 : 0;
            }
            std::vector<std::pair<std::uint32_t, bool>> path;
            closure_violation(*closure, pbits, qbits, obits, depth, &path);
            History w;
            for (auto [node, flag] : path) {
                (void)flag;
                if (!w.states.empty()) w.gaps.push_back(kNoCommand);
                w.states.push_back(u.intern(closure->nodes[node]));
            }
            cert.witness = std::move(w);
        } else if (cert.budget_exceeded) {
            cert.holds = false;
            cert.detail = "closure budget exceeded before exhausting depth " + std::to_string(depth);
        }
        return cert;
    }

    std::vector<std::uint8_t> exceeded(valuations.size(), 0);
    std::size_t hit = parallel_find_first(valuations.size(), mode, [&](std::size_t vi) {
        const Valuation& rho = valuations[vi];
        StatePredPtr p = h.p.fn(rho);
        StatePredPtr q = h.q.fn(rho);
        StatePredPtr o = h.o.fn(rho);
        bool ex = false;
        bool bad = bounded_violation(u, I, locals, p, q, o, depth, 4'000'000, false, nullptr, &ex);
        if (ex) exceeded[vi] = 1;
        return bad;
    });
    for (std::size_t vi = 0; vi < valuations.size(); ++vi)
        if (exceeded[vi]) cert.budget_exceeded = true;
    if (hit != valuations.size()) {
        cert.holds = false;
        cert.detail = "violation under valuation #" + std::to_string(hit) + ": reached now(q) without wpast(o)";
        History w;
        const Valuation& rho = valuations[hit];
        bounded_violation(u, I, locals, h.p.fn(rho), h.q.fn(rho), h.o.fn(rho), depth, 4'000'000, true, &w,
                          nullptr);
        cert.witness = std::move(w);
    } else if (cert.budget_exceeded) {
        cert.holds = false;
        cert.detail = "enumeration budget exceeded before exhausting depth " + std::to_string(depth);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// invariant-mode discharge
// ---------------------------------------------------------------------------

DischargeCertificate discharge_invariant(Universe& u, const Hypothesis& h, const PredFamily& inv,
                                         const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                                         int bound, ExecMode mode) {
    DischargeCertificate cert;
    cert.hypothesis = h.name;
    cert.mode = DischargeCertificate::Invariant;
    cert.bound = bound;
    cert.holds = true;

    auto valuations = h.sym.valuations();
    const auto& carrier = u.all_states();

    std::vector<std::string> details(valuations.size());
    std::size_t hit = parallel_find_first(valuations.size(), mode, [&](std::size_t vi) {
        const Valuation& rho = valuations[vi];
        TempPred inv_t = inv.fn(rho);
        TempPred now_p = tp_now(h.p.fn(rho));
        TempPred goal = tp_wpast(h.o.fn(rho));
        TempPred inv_and_q = tp_and(inv_t, tp_now(h.q.fn(rho)));

        auto r1 = includes(u, now_p, inv_t, bound, ExecMode::Serial);
        if (!r1.holds) {
            details[vi] = "now(p) not contained in inv";
            return true;
        }
        auto r2 = includes(u, inv_and_q, goal, bound, ExecMode::Serial);
        if (!r2.holds) {
            details[vi] = "inv cap now(q) does not entail wpast(o)";
            return true;
        }
        MaskMachine machine(u, {&inv_t}, bound);
        if (machine.alphabet_overflow()) {
            details[vi] = "mask machine budget exceeded";
            return true;
        }
        for (const auto& [m, d] : machine.masks()) {
            (void)d;
            for (StateId sid : carrier) {
                const State s = u.state(sid);
                if (!machine.member(inv_t, m, s)) continue;
                std::uint64_t grown = m | machine.sig(s);
                for (const auto& i : I) {
                    for (const State& t : apply_interference(u, i, s, locals)) {
                        if (t.abort) continue;
                        if (!machine.member(inv_t, grown, t)) {
                            details[vi] = "inv not interference-free under " + i.name;
                            return true;
                        }
                    }
                    Command self = self_interference(i.guard, i.cmd);
                    for (const State& t : exec_command(u, self, s)) {
                        if (t.abort) continue;
                        if (!machine.member(inv_t, grown, t)) {
                            details[vi] = "inv not stable under self-interference " + i.name;
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    });

    if (hit != valuations.size()) {
        cert.holds = false;
        cert.detail = details[hit] + " (valuation #" + std::to_string(hit) + ")";
    }
    cert.checks.push_back("now(p) subseteq inv");
    cert.checks.push_back("inv cap now(q) subseteq wpast(o)");
    cert.checks.push_back("ifree_I(inv)");
    cert.checks.push_back("inv stable under self-interferences");
    return cert;
}

// ---------------------------------------------------------------------------
// the outline checker
// ---------------------------------------------------------------------------

namespace {

struct PreparedTI {
    std::vector<StatePredPtr> p, q, o;
};

struct CheckCtx {
    Universe& u;
    const Outline& outline;
    int bound;
    LinChecker* lin;
    ExecMode mode;
    Judgment& j;
    Engine engine;
    std::map<const OutlineItem*, PreparedTI> ti;
    std::map<const OutlineItem*, std::vector<TempPred>> posts;
    int fresh_label = 9000;

    CheckCtx(Universe& universe, const Outline& o, int b, LinChecker* l, ExecMode m, Judgment& jj)
        : u(universe), outline(o), bound(b), lin(l), mode(m), j(jj), engine(universe, b) {}

    TempPred closed_union(const std::vector<TempPred>& instances, const std::string& name) {
        if (instances.empty()) return tp_named(name, tp_false());
        TempPred acc = instances[0];
        for (std::size_t i = 1; i < instances.size(); ++i) acc = tp_or(acc, instances[i]);
        return tp_named(name, acc);
    }

    void fail(const std::string& point, const std::string& rule, const std::string& detail,
              std::optional<Computation> w = std::nullopt) {
        j.failures.push_back(StepFailure{point, rule, detail, std::move(w)});
    }

    Computation witness_of(std::uint64_t mask, StateId last) {
        Computation w;
        w.states = engine.realize(mask);
        w.states.push_back(last);
        return w;
    }

    void check_com(const std::string& point, const std::vector<TempPred>& pre, const Command& cmd,
                   const std::vector<TempPred>& post) {
        const auto& carrier = u.all_states();
        Engine::Compiled pre_c = engine.compile(pre);
        Engine::Compiled post_c = engine.compile(post);

        std::vector<std::vector<State>> succs(engine.n);
        parallel_for(engine.n, mode, [&](std::size_t i) { succs[i] = exec_command(u, cmd, u.state(carrier[i])); });

        struct Bad {
            std::uint64_t mask;
            StateId sid;
            std::string detail;
        };
        std::vector<std::optional<Bad>> bads(engine.masks.size());
        parallel_for(engine.masks.size(), mode, [&](std::size_t mi) {
            const std::uint64_t m = engine.masks[mi];
            std::vector<std::uint64_t> act;
            engine.active(pre_c, m, act);
            for (std::size_t w = 0; w < engine.words; ++w) {
                std::uint64_t bits = act[w];
                while (bits) {
                    std::size_t pos = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    std::uint64_t m2 = m | engine.sigs[pos];
                    for (const State& t : succs[pos]) {
                        if (t.abort) {
                            bads[mi] = Bad{m, carrier[pos], "command may fault"};
                            return;
                        }
                        auto id = u.find(t);
                        auto tpos = id ? u.carrier_pos(*id) : std::nullopt;
                        bool ok =
                            tpos ? engine.member_pos(post_c, m2, *tpos) : engine.member_state(post_c, m2, t);
                        if (!ok) {
                            bads[mi] = Bad{m, carrier[pos], "postcondition violated"};
                            return;
                        }
                    }
                }
            }
        });
        for (std::size_t mi = 0; mi < engine.masks.size(); ++mi) {
            if (!bads[mi]) continue;
            fail(point, "com-ti", bads[mi]->detail + " after " + cmd.text, witness_of(bads[mi]->mask, bads[mi]->sid));
            return;
        }
    }

    void check_inclusion(const std::string& point, const std::string& rule, const std::vector<TempPred>& from,
                         const std::vector<TempPred>& to) {
        Engine::Compiled from_c = engine.compile(from);
        Engine::Compiled to_c = engine.compile(to);
        const auto& carrier = u.all_states();
        std::size_t hit = parallel_find_first(engine.masks.size(), mode, [&](std::size_t mi) {
            std::uint64_t m = engine.masks[mi];
            std::vector<std::uint64_t> f, t;
            engine.active(from_c, m, f);
            engine.active(to_c, m, t);
            for (std::size_t w = 0; w < engine.words; ++w)
                if (f[w] & ~t[w]) return true;
            return false;
        });
        if (hit == engine.masks.size()) return;
        std::uint64_t m = engine.masks[hit];
        std::vector<std::uint64_t> f, t;
        engine.active(from_c, m, f);
        engine.active(to_c, m, t);
        for (std::size_t w = 0; w < engine.words; ++w) {
            std::uint64_t bad = f[w] & ~t[w];
            if (!bad) continue;
            std::size_t pos = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bad));
            fail(point, rule, "inclusion does not hold", witness_of(m, carrier[pos]));
            return;
        }
    }

    void check_ti(const std::string& point, const OutlineItem& item, const std::vector<TempPred>& cur,
                  const std::vector<TempPred>& post) {
        const PreparedTI& pi = ti.at(&item);
        auto valuations = outline.sym.valuations();
        for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
            if (!is_intuitionistic(u, pi.p[vi]) || !is_intuitionistic(u, pi.q[vi])) {
                fail(point, "temporal-interpolation", "p or q not intuitionistic");
                return;
            }
        }
        if (item.variant == TIVariant::ControlFlow) {
            std::vector<TempPred> premise, conclusion;
            auto lang = program_language(item.ti_program);
            for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
                premise.push_back(tp_and(tp_hist(pi.p[vi], lang, "S"), tp_now(pi.q[vi])));
                conclusion.push_back(tp_and(cur[std::min(vi, cur.size() - 1)], tp_past(pi.o[vi])));
            }
            TempPred lhs = closed_union(cur, "pre@" + point);
            TempPred prem = closed_union(premise, "hist-premise@" + point);
            if (!includes(u, lhs, prem, bound).holds) {
                fail(point, "temporal-interpolation-cf", "premise fit fails");
                return;
            }
            TempPred concl = closed_union(conclusion, "conclusion@" + point);
            TempPred rhs = closed_union(post, "post@" + point);
            if (!includes(u, concl, rhs, bound).holds)
                fail(point, "temporal-interpolation-cf", "stated post not implied");
            return;
        }

        const bool ordered = item.variant == TIVariant::Ordered;
        const auto& carrier = u.all_states();
        Engine::Compiled cur_c = engine.compile(cur);
        Engine::Compiled post_c = engine.compile(post);

        struct VInfo {
            int p_bit;
            int q_bit;
            std::shared_ptr<std::vector<std::uint64_t>> p_now, q_now;
            std::uint64_t o_grant;
        };
        std::vector<VInfo> vinfo;
        for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
            VInfo v;
            v.p_bit = engine.uid2bit.at(pi.p[vi]->uid());
            v.q_bit = engine.uid2bit.at(pi.q[vi]->uid());
            v.p_now = engine.now_table(pi.p[vi]);
            v.q_now = engine.now_table(pi.q[vi]);
            v.o_grant = 1ULL << engine.uid2bit.at(pi.o[vi]->uid());
            vinfo.push_back(std::move(v));
        }

        struct Bad {
            std::uint64_t mask;
            StateId sid;
            std::string detail;
        };
        std::vector<std::optional<Bad>> bads(engine.masks.size());
        parallel_for(engine.masks.size(), mode, [&](std::size_t mi) {
            std::uint64_t m = engine.masks[mi];
            std::vector<std::uint64_t> act;
            engine.active(cur_c, m, act);
            for (std::size_t w = 0; w < engine.words; ++w) {
                std::uint64_t bits = act[w];
                while (bits) {
                    std::size_t pos = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    std::uint64_t bitpos = 1ULL << (pos % 64);
                    std::uint64_t grants = 0;
                    bool any = false;
                    for (const auto& v : vinfo) {
                        bool pp = (m & (1ULL << v.p_bit)) || ((*v.p_now)[w] & bitpos);
                        bool qq = ((*v.q_now)[w] & bitpos) || (!ordered && (m & (1ULL << v.q_bit)));
                        if (pp && qq) {
                            any = true;
                            grants |= v.o_grant;
                        }
                    }
                    if (!any) {
                        bads[mi] = Bad{m, carrier[pos], "premise wpast(p) cap now(q) does not hold"};
                        return;
                    }
                    std::uint64_t after = m | engine.sigs[pos] | grants;
                    if (!engine.member_pos(post_c, after, pos)) {
                        bads[mi] = Bad{m, carrier[pos], "stated post not implied by granted past(o)"};
                        return;
                    }
                }
            }
        });
        for (std::size_t mi = 0; mi < engine.masks.size(); ++mi) {
            if (!bads[mi]) continue;
            fail(point, ordered ? "temporal-interpolation" : "temporal-interpolation-unordered", bads[mi]->detail,
                 witness_of(bads[mi]->mask, bads[mi]->sid));
            return;
        }
    }

    // The fused spelling: the rule applied together with the preceding
    // command, so the intermediate assertion never exists. For every
    // computation in `pre`, the command's successor must satisfy the premise
    // for some valuation; the granted past(o) facts then imply the post.
    void check_com_ti_fused(const std::string& point, const std::vector<TempPred>& pre, const Command& cmd,
                            const OutlineItem& ti_item, const std::vector<TempPred>& post) {
        const PreparedTI& pi = ti.at(&ti_item);
        auto valuations = outline.sym.valuations();
        for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
            if (!is_intuitionistic(u, pi.p[vi]) || !is_intuitionistic(u, pi.q[vi])) {
                fail(point, "temporal-interpolation", "p or q not intuitionistic");
                return;
            }
        }
        const bool ordered = ti_item.variant == TIVariant::Ordered;
        const auto& carrier = u.all_states();
        Engine::Compiled pre_c = engine.compile(pre);
        Engine::Compiled post_c = engine.compile(post);

        struct VInfo {
            int p_bit;
            int q_bit;
            StatePredPtr p_pred, q_pred;
            std::uint64_t o_grant;
        };
        std::vector<VInfo> vinfo;
        for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
            VInfo v;
            v.p_bit = engine.uid2bit.at(pi.p[vi]->uid());
            v.q_bit = engine.uid2bit.at(pi.q[vi]->uid());
            v.p_pred = pi.p[vi];
            v.q_pred = pi.q[vi];
            v.o_grant = 1ULL << engine.uid2bit.at(pi.o[vi]->uid());
            vinfo.push_back(std::move(v));
        }

        std::vector<std::vector<State>> succs(engine.n);
        parallel_for(engine.n, mode, [&](std::size_t i) { succs[i] = exec_command(u, cmd, u.state(carrier[i])); });

        struct Bad {
            std::uint64_t mask;
            StateId sid;
            std::string detail;
        };
        std::vector<std::optional<Bad>> bads(engine.masks.size());
        parallel_for(engine.masks.size(), mode, [&](std::size_t mi) {
            const std::uint64_t m = engine.masks[mi];
            std::vector<std::uint64_t> act;
            engine.active(pre_c, m, act);
            for (std::size_t w = 0; w < engine.words; ++w) {
                std::uint64_t bits = act[w];
                while (bits) {
                    std::size_t pos = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    std::uint64_t m2 = m | engine.sigs[pos];
                    for (const State& t : succs[pos]) {
                        if (t.abort) {
                            bads[mi] = Bad{m, carrier[pos], "command may fault"};
                            return;
                        }
                        std::uint64_t grants = 0;
                        bool any = false;
                        for (const auto& v : vinfo) {
                            bool pp = (m2 & (1ULL << v.p_bit)) || v.p_pred->member(t);
                            bool qq = v.q_pred->member(t) || (!ordered && (m2 & (1ULL << v.q_bit)));
                            if (pp && qq) {
                                any = true;
                                grants |= v.o_grant;
                            }
                        }
                        if (!any) {
                            bads[mi] = Bad{m, carrier[pos], "premise wpast(p) cap now(q) does not hold"};
                            return;
                        }
                        std::uint64_t after = m2 | grants;
                        auto id = u.find(t);
                        auto tpos = id ? u.carrier_pos(*id) : std::nullopt;
                        bool ok = tpos ? engine.member_pos(post_c, after, *tpos)
                                       : engine.member_state(post_c, after, t);
                        if (!ok) {
                            bads[mi] = Bad{m, carrier[pos], "stated post not implied by granted past(o)"};
                            return;
                        }
                    }
                }
            }
        });
        for (std::size_t mi = 0; mi < engine.masks.size(); ++mi) {
            if (!bads[mi]) continue;
            fail(point, "com-ti+temporal-interpolation", bads[mi]->detail + " after " + cmd.text,
                 witness_of(bads[mi]->mask, bads[mi]->sid));
            return;
        }
    }

    std::vector<TempPred> walk(const std::string& prefix, std::vector<TempPred> pre,
                               const std::vector<OutlineItem>& items) {
        std::vector<TempPred> cur = std::move(pre);
        int step = 0;
        for (std::size_t idx = 0; idx < items.size(); ++idx) {
            const OutlineItem& item = items[idx];
            std::string point = prefix + "#" + std::to_string(step++);
            const std::vector<TempPred>* post_ptr = &posts.at(&item);
            switch (item.kind) {
                case OutlineItem::Com: {
                    if (lin && item.lin) {
                        std::string err = lin->check_step(u, *item.lin, cur, item.cmd, bound);
                        if (!err.empty()) fail(point, "com-lin", err);
                    }
                    TempPred guard = closed_union(cur, "pre@" + point);
                    j.P_ifree.push_back(guard);
                    j.I.push_back(Interference{guard, item.cmd, "outline:" + point});
                    if (idx + 1 < items.size() && items[idx + 1].kind == OutlineItem::TI &&
                        items[idx + 1].fused) {
                        const OutlineItem& ti_item = items[idx + 1];
                        post_ptr = &posts.at(&ti_item);
                        check_com_ti_fused(point, cur, item.cmd, ti_item, *post_ptr);
                        Hypothesis hyp;
                        hyp.name = outline.name + ":" + prefix + "#" + std::to_string(step);
                        hyp.sym = outline.sym;
                        hyp.p = ti_item.ti_p;
                        hyp.q = ti_item.ti_q;
                        hyp.o = ti_item.ti_o;
                        j.H.push_back(hyp);
                        if (ti_item.variant == TIVariant::Unordered) {
                            Hypothesis sym_hyp = hyp;
                            sym_hyp.name += ":sym";
                            sym_hyp.p = ti_item.ti_q;
                            sym_hyp.q = ti_item.ti_p;
                            j.H.push_back(sym_hyp);
                        }
                        ++idx;
                        ++step;
                    } else {
                        check_com(point, cur, item.cmd, *post_ptr);
                    }
                    break;
                }
                case OutlineItem::Conseq: {
                    check_inclusion(point, "consequence-ti", cur, *post_ptr);
                    break;
                }
                case OutlineItem::TI: {
                    check_ti(point, item, cur, *post_ptr);
                    Hypothesis hyp;
                    hyp.name = outline.name + ":" + point;
                    hyp.sym = outline.sym;
                    hyp.p = item.ti_p;
                    hyp.q = item.ti_q;
                    hyp.o = item.ti_o;
                    hyp.program = item.variant == TIVariant::ControlFlow ? item.ti_program : nullptr;
                    j.H.push_back(hyp);
                    if (item.variant == TIVariant::Unordered) {
                        Hypothesis sym_hyp = hyp;
                        sym_hyp.name += ":sym";
                        sym_hyp.p = item.ti_q;
                        sym_hyp.q = item.ti_p;
                        j.H.push_back(sym_hyp);
                    }
                    Command skip = cmd_skip(fresh_label++);
                    skip.text = "skip (ti)";
                    TempPred guard = closed_union(cur, "pre@" + point);
                    j.P_ifree.push_back(guard);
                    j.I.push_back(Interference{guard, skip, "outline:" + point});
                    break;
                }
                case OutlineItem::Choice: {
                    for (std::size_t b = 0; b < item.branches.size(); ++b) {
                        auto branch_post = walk(point + "/b" + std::to_string(b), cur, item.branches[b]);
                        check_inclusion(point + "/b" + std::to_string(b), "choice-ti", branch_post, *post_ptr);
                    }
                    break;
                }
                case OutlineItem::Loop: {
                    check_inclusion(point + "/entry", "loop-ti", cur, *post_ptr);
                    auto body_post = walk(point + "/body", *post_ptr, item.body);
                    check_inclusion(point + "/back", "loop-ti", body_post, *post_ptr);
                    break;
                }
            }
            for (const auto& t : *post_ptr) j.P.push_back(t);
            cur = *post_ptr;
        }
        return cur;
    }
};

void prepare_items(const Outline& outline, const std::vector<OutlineItem>& items, CheckCtx& ctx) {
    for (const auto& item : items) {
        ctx.posts.emplace(&item, instantiate(item.post, outline.sym));
        if (item.kind == OutlineItem::TI) {
            PreparedTI pi;
            for (const auto& rho : outline.sym.valuations()) {
                pi.p.push_back(item.ti_p.fn(rho));
                pi.q.push_back(item.ti_q.fn(rho));
                pi.o.push_back(item.ti_o.fn(rho));
                if (item.variant != TIVariant::ControlFlow) {
                    ctx.engine.collect_atom(pi.p.back());
                    ctx.engine.collect_atom(pi.q.back());
                    ctx.engine.collect_atom(pi.o.back());
                }
            }
            ctx.ti.emplace(&item, std::move(pi));
        }
        for (const auto& b : item.branches) prepare_items(outline, b, ctx);
        prepare_items(outline, item.body, ctx);
    }
}

void collect_posts(const CheckCtx& ctx, const std::vector<OutlineItem>& items, Engine& engine) {
    for (const auto& item : items) {
        for (const auto& t : ctx.posts.at(&item))
            if (!t.has_hist()) engine.collect(t);
        for (const auto& b : item.branches) collect_posts(ctx, b, engine);
        collect_posts(ctx, item.body, engine);
    }
}

ProgramPtr outline_program(const std::vector<OutlineItem>& items, int& fresh);

ProgramPtr item_program(const OutlineItem& item, int& fresh) {
    switch (item.kind) {
        case OutlineItem::Com:
            return prog_com(item.cmd);
        case OutlineItem::Conseq:
            return nullptr;
        case OutlineItem::TI: {
            if (item.fused) return nullptr;  // applied with the preceding command
            Command skip = cmd_skip(fresh++);
            skip.text = "skip (ti)";
            return prog_com(skip);
        }
        case OutlineItem::Choice: {
            std::vector<ProgramPtr> kids;
            for (const auto& b : item.branches) {
                auto p = outline_program(b, fresh);
                kids.push_back(p ? p : prog_com(cmd_skip(fresh++)));
            }
            return prog_choice(std::move(kids));
        }
        case OutlineItem::Loop: {
            auto body = outline_program(item.body, fresh);
            return prog_loop(body ? body : prog_com(cmd_skip(fresh++)));
        }
    }
    return nullptr;
}

ProgramPtr outline_program(const std::vector<OutlineItem>& items, int& fresh) {
    std::vector<ProgramPtr> seq;
    for (const auto& item : items) {
        auto p = item_program(item, fresh);
        if (p) seq.push_back(p);
    }
    if (seq.empty()) return nullptr;
    return prog_seq(std::move(seq));
}

}  // namespace

Judgment check_outline(Universe& u, const Outline& outline, int bound, LinChecker* lin, ExecMode mode) {
    Judgment j;
    j.outline = outline.name;
    j.bound = bound;

    CheckCtx ctx(u, outline, bound, lin, mode, j);
    j.pre_instances = instantiate(outline.pre, outline.sym);
    prepare_items(outline, outline.items, ctx);
    for (const auto& t : j.pre_instances) ctx.engine.collect(t);
    collect_posts(ctx, outline.items, ctx.engine);
    if (ctx.engine.overflow) {
        j.failures.push_back(StepFailure{"setup", "engine", "atom alphabet exceeds the machine width", {}});
        return j;
    }
    ctx.engine.build_masks();
    if (ctx.engine.overflow) {
        j.failures.push_back(StepFailure{"setup", "engine", "mask budget exceeded", {}});
        return j;
    }

    for (const auto& t : j.pre_instances) j.P.push_back(t);
    j.post_instances = ctx.walk(outline.name, j.pre_instances, outline.items);
    j.P_ifree.push_back(ctx.closed_union(j.post_instances, "post@" + outline.name));
    int fresh = 9500;
    j.program = outline_program(outline.items, fresh);
    j.accepted = j.failures.empty();
    return j;
}

TIResult apply_temporal_interpolation(Universe& u, const std::vector<TempPred>& a, const SymTable& sym,
                                      const StateFamily& p, const StateFamily& q, const StateFamily& o,
                                      TIVariant variant, ProgramPtr S, int bound) {
    TIResult res;
    if (variant == TIVariant::ControlFlow && !S) {
        res.error = "control-flow variant requires a program";
        return res;
    }
    auto valuations = sym.valuations();
    for (const auto& rho : valuations) {
        if (!is_intuitionistic(u, p.fn(rho)) || !is_intuitionistic(u, q.fn(rho))) {
            res.error = "p and q must be intuitionistic";
            return res;
        }
    }
    (void)bound;
    for (std::size_t vi = 0; vi < valuations.size(); ++vi) {
        const auto& rho = valuations[vi];
        const TempPred& base = a[std::min(vi, a.size() - 1)];
        res.conclusion.push_back(tp_and(base, tp_past(o.fn(rho))));
    }
    Hypothesis hyp;
    hyp.name = "ti";
    hyp.sym = sym;
    hyp.p = p;
    hyp.q = q;
    hyp.o = o;
    hyp.program = variant == TIVariant::ControlFlow ? S : nullptr;
    res.emitted.push_back(hyp);
    if (variant == TIVariant::Unordered) {
        Hypothesis h2 = hyp;
        h2.p = q;
        h2.q = p;
        res.emitted.push_back(h2);
    }
    res.applicable = true;
    return res;
}

// ---------------------------------------------------------------------------
// interference freedom
// ---------------------------------------------------------------------------

IfreeReport check_interference_freedom(Universe& u, const std::vector<TempPred>& P,
                                       const std::vector<Interference>& I, const std::vector<LocalPart>& locals,
                                       int bound, ExecMode mode) {
    IfreeReport rep;
    if (P.empty() || I.empty()) return rep;

    Engine engine(u, bound);
    for (const auto& t : P) engine.collect(t);
    if (engine.overflow) {
        rep.entries.push_back(IfreeEntry{"*", "*", false, std::nullopt});
        return rep;
    }
    engine.build_masks();
    const auto& carrier = u.all_states();

    std::vector<std::vector<std::vector<State>>> succs(I.size());
    for (std::size_t ii = 0; ii < I.size(); ++ii) {
        succs[ii].resize(engine.n);
        parallel_for(engine.n, mode,
                     [&](std::size_t pos) { succs[ii][pos] = apply_interference(u, I[ii], u.state(carrier[pos]), locals); });
    }

    for (const auto& a : P) {
        Engine::Compiled ac = engine.compile({a});
        for (std::size_t ii = 0; ii < I.size(); ++ii) {
            IfreeEntry entry{a.name, I[ii].name, true, std::nullopt};
            std::size_t hit = parallel_find_first(engine.masks.size(), mode, [&](std::size_t mi) {
                std::uint64_t m = engine.masks[mi];
                std::vector<std::uint64_t> act;
                engine.active(ac, m, act);
                for (std::size_t w = 0; w < engine.words; ++w) {
                    std::uint64_t bits = act[w];
                    while (bits) {
                        std::size_t pos = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        std::uint64_t m2 = m | engine.sigs[pos];
                        for (const State& t : succs[ii][pos]) {
                            if (t.abort) continue;
                            auto id = u.find(t);
                            auto tpos = id ? u.carrier_pos(*id) : std::nullopt;
                            bool ok = tpos ? engine.member_pos(ac, m2, *tpos) : engine.member_state(ac, m2, t);
                            if (!ok) return true;
                        }
                    }
                }
                return false;
            });
            if (hit != engine.masks.size()) {
                entry.free = false;
                Computation w;
                w.states = engine.realize(engine.masks[hit]);
                entry.witness = std::move(w);
            }
            rep.entries.push_back(std::move(entry));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// soundness certification
// ---------------------------------------------------------------------------

SoundnessReport certify_soundness(Universe& u, const Judgment& j, const std::vector<Interference>& I,
                                  const std::vector<LocalPart>& locals,
                                  const std::vector<DischargeCertificate>& discharged, int depth) {
    SoundnessReport rep;
    rep.outline = j.outline;
    if (!j.accepted) {
        rep.detail = "judgment not accepted";
        return rep;
    }
    for (const auto& h : j.H) {
        bool found = false;
        for (const auto& c : discharged)
            if (c.hypothesis == h.name && c.holds) found = true;
        if (!found) {
            rep.detail = "undischarged hypothesis: " + h.name;
            return rep;
        }
    }
    if (!j.program) {
        rep.certified = true;
        rep.detail = "empty program";
        return rep;
    }

    std::vector<StateId> init;
    for (StateId s : u.all_states()) {
        std::vector<StateId> single{s};
        SeqRef view(u, single, nullptr);
        for (const auto& pre : j.pre_instances) {
            if (nf_member(u, pre, view)) {
                init.push_back(s);
                break;
            }
        }
    }

    GovernedOptions opts;
    opts.depth = depth;
    bool ok = true;
    auto stats = run_governed(u, j.program, I, locals, init, opts,
                              [&](const std::vector<StateId>& states, const std::vector<int>&,
                                  const ProgramPtr& remaining) {
                                  if (remaining && !can_finish(remaining)) return true;
                                  SeqRef view(u, states, nullptr);
                                  for (const auto& post : j.post_instances)
                                      if (nf_member(u, post, view)) return true;
                                  ok = false;
                                  return false;
                              });
    rep.runs = stats.visited;
    rep.budget_exceeded = stats.budget_exceeded;
    rep.certified = ok && !stats.budget_exceeded;
    if (!ok) rep.detail = "completed run escapes the postcondition";
    if (stats.budget_exceeded) rep.detail = "budget ceiling reached";
    return rep;
}

}  // namespace tempo
