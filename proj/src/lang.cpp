#include "tempo/lang.hpp"

#include <set>
#include <unordered_set>

namespace tempo {

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

std::optional<Value> ValueExpr::eval(const State& s) const {
    switch (kind) {
        case Const:
            return cval;
        case VarRef: {
            const Value& v = s.lvars.get(var);
            if (!v.is_set()) return std::nullopt;
            return v;
        }
        case WrapA: {
            const Value& v = s.lvars.get(var);
            if (v.kind != Value::Node) return std::nullopt;
            return Value::rd_active(v.f[0]);
        }
        case WrapI: {
            const Value& v = s.lvars.get(var);
            if (v.kind != Value::Int) return std::nullopt;
            return Value::rd_inactive(v.f[0]);
        }
        case UnwrapA: {
            const Value& v = s.lvars.get(var);
            if (v.kind != Value::RdA) return std::nullopt;
            return Value::node(v.f[0]);
        }
        case Field: {
            const Value& v = s.lvars.get(var);
            if (!v.is_set()) return std::nullopt;
            return Value::intv(v.f[idx]);
        }
    }
    return std::nullopt;
}

std::optional<int> AddrExpr::eval(const State& s) const {
    if (var < 0) return direct;
    const Value& v = s.lvars.get(var);
    if (v.kind != Value::Node) return std::nullopt;
    return base + v.f[0] * stride + field;
}

// ---------------------------------------------------------------------------
// command constructors
// ---------------------------------------------------------------------------

Command cmd_skip(int label) {
    Command c;
    c.kind = Command::Skip;
    c.label = label;
    c.text = "skip";
    return c;
}

Command cmd_read(int label, AddrExpr a, int var, std::string text) {
    Command c;
    c.kind = Command::Read;
    c.label = label;
    c.addr = a;
    c.var = var;
    c.text = std::move(text);
    return c;
}

Command cmd_write(int label, AddrExpr a, ValueExpr v, std::string text) {
    Command c;
    c.kind = Command::Write;
    c.label = label;
    c.addr = a;
    c.value = v;
    c.text = std::move(text);
    return c;
}

Command cmd_faa(int label, AddrExpr a, int delta, std::string text) {
    Command c;
    c.kind = Command::Faa;
    c.label = label;
    c.addr = a;
    c.delta = delta;
    c.text = std::move(text);
    return c;
}

Command cmd_cmpx(int label, AddrExpr a, ValueExpr expected, ValueExpr neu, int result_var, std::string text) {
    Command c;
    c.kind = Command::CmpX;
    c.label = label;
    c.addr = a;
    c.expected = expected;
    c.value = neu;
    c.var = result_var;
    c.text = std::move(text);
    return c;
}

Command cmd_assume(int label, StatePredPtr p, std::string text) {
    Command c;
    c.kind = Command::Assume;
    c.label = label;
    c.assume_pred = std::move(p);
    c.text = std::move(text);
    return c;
}

Command cmd_assign(int label, int var, ValueExpr v, std::string text) {
    Command c;
    c.kind = Command::LocalAssign;
    c.label = label;
    c.var = var;
    c.value = v;
    c.text = std::move(text);
    return c;
}

Command cmd_alloc(int label, int var, int base, int stride, std::vector<std::pair<int, ValueExpr>> fields,
                  std::string text) {
    Command c;
    c.kind = Command::Alloc;
    c.label = label;
    c.var = var;
    c.alloc_base = base;
    c.alloc_stride = stride;
    c.init_fields = std::move(fields);
    c.text = std::move(text);
    return c;
}

Command cmd_lock(int label, AddrExpr a, std::string text) {
    Command c;
    c.kind = Command::Lock;
    c.label = label;
    c.addr = a;
    c.text = std::move(text);
    return c;
}

Command cmd_unlock(int label, AddrExpr a, std::string text) {
    Command c;
    c.kind = Command::Unlock;
    c.label = label;
    c.addr = a;
    c.text = std::move(text);
    return c;
}

Command cmd_choose(int label, int var, std::function<std::vector<Value>(const State&)> ch, std::string text) {
    Command c;
    c.kind = Command::Choose;
    c.label = label;
    c.var = var;
    c.chooser = std::move(ch);
    c.text = std::move(text);
    return c;
}

// ---------------------------------------------------------------------------
// command execution
// ---------------------------------------------------------------------------

namespace {

bool in_domain(const Universe& u, int addr, const Value& v) {
    if (addr < 0 || addr >= static_cast<int>(u.config().gaddrs.size())) return false;
    const auto& dom = u.config().gaddrs[addr].domain;
    for (const Value& d : dom)
        if (d == v) return true;
    return false;
}

// assume(guard * true): a decomposition of the state satisfies the guard's
// now part. On enumerable universes the decompositions are enumerated; on
// structure universes guards are intuitionistic field conditions, for which
// guard * true coincides with guard.
bool now_star_true(Universe& u, const TempPred& guard, const State& s) {
    auto member_now = [&](const State& t) {
        for (const auto& c : guard.clauses) {
            if (!c.now || c.now->member(t)) return true;
        }
        return false;
    };
    if (member_now(s)) return true;
    if (!u.enumerated()) return false;
    auto id = u.find(s);
    if (!id) return false;
    auto pos = u.carrier_pos(*id);
    if (!pos) return false;
    for (const auto& [x, y] : u.decompositions()[*pos]) {
        (void)y;
        if (member_now(u.state(x))) return true;
    }
    return false;
}

void apply_ghost(Universe& u, const GhostEffect& g, State& s, bool& fault) {
    (void)u;
    TokenTag rct = g.rct;
    if (g.result_src_var >= 0) {
        const Value& v = s.lvars.get(g.result_src_var);
        int r = v.is_set() ? v.f[g.result_src_field] : 0;
        if (g.result_src_var2 >= 0) {
            const Value& v2 = s.lvars.get(g.result_src_var2);
            r += v2.is_set() ? v2.f[0] : 0;
        }
        rct.args[g.result_slot] = static_cast<std::int16_t>(r);
    }
    if (g.has_trade) {
        bool from_local = s.lghost.remove_obligation(g.obl);
        if (!from_local && !s.gghost.remove_obligation(g.obl)) {
            fault = true;
            return;
        }
        if (g.clocked) {
            auto c = s.gghost.clock_of(g.clock_root);
            if (!c) {
                fault = true;
                return;
            }
            s.gghost.set_receipt(*c, true, rct);  // persistent snapshot stays shared
            if (from_local) s.lghost.set_receipt(*c, false, rct);
            s.gghost.set_clock(g.clock_root, *c + 1);
        } else {
            s.lghost.set_receipt(-1, false, rct);
        }
    } else if (g.clocked) {
        auto c = s.gghost.clock_of(g.clock_root);
        if (!c) {
            fault = true;
            return;
        }
        if (g.snapshot_only) s.gghost.set_receipt(*c, true, rct);
        s.gghost.set_clock(g.clock_root, *c + 1);
    }
    if (g.update_contents) {
        AbstractVal v = g.contents_val;
        if (g.contents_src_var >= 0) {
            const Value& sv = s.lvars.get(g.contents_src_var);
            v = AbstractVal::int_val(sv.is_set() ? sv.f[0] : 0);
        }
        s.gghost.set_contents(g.contents_root, v);
    }
}

}  // namespace

std::vector<State> exec_command(Universe& u, const Command& c, const State& s) {
    if (s.abort) return {u.abort_state()};
    if (c.sched_guard && !now_star_true(u, *c.sched_guard, s)) return {};

    std::vector<State> out;
    bool ghost_cond = c.ghost.when == GhostCond::Always;
    auto fault = [&]() { out.assign(1, u.abort_state()); };

    switch (c.kind) {
        case Command::Skip:
            out.push_back(s);
            break;
        case Command::Read: {
            auto a = c.addr.eval(s);
            if (!a || !s.gheap.present(*a)) {
                fault();
                return out;
            }
            State t = s;
            t.lvars.set(c.var, s.gheap.at(*a).val);
            if (c.ghost.when == GhostCond::ReadInactive) ghost_cond = s.gheap.at(*a).val.kind == Value::RdI;
            out.push_back(std::move(t));
            break;
        }
        case Command::ReadMany: {
            State t = s;
            for (const auto& [ae, var] : c.reads) {
                auto a = ae.eval(s);
                if (!a || !s.gheap.present(*a)) {
                    fault();
                    return out;
                }
                t.lvars.set(var, s.gheap.at(*a).val);
            }
            out.push_back(std::move(t));
            break;
        }
        case Command::Write: {
            auto a = c.addr.eval(s);
            auto v = c.value.eval(s);
            if (!a || !v || !s.gheap.present(*a) || s.gheap.at(*a).frac != u.denominator()) {
                fault();
                return out;
            }
            if (!in_domain(u, *a, *v)) return {};  // outside the configured domain
            State t = s;
            t.gheap.set(*a, static_cast<std::uint8_t>(u.denominator()), *v);
            out.push_back(std::move(t));
            break;
        }
        case Command::Faa: {
            auto a = c.addr.eval(s);
            if (!a || !s.gheap.present(*a) || s.gheap.at(*a).frac != u.denominator() ||
                s.gheap.at(*a).val.kind != Value::Int) {
                fault();
                return out;
            }
            Value nv = Value::intv(s.gheap.at(*a).val.as_int() + c.delta);
            if (!in_domain(u, *a, nv)) return {};
            State t = s;
            t.gheap.set(*a, static_cast<std::uint8_t>(u.denominator()), nv);
            out.push_back(std::move(t));
            break;
        }
        case Command::CmpX: {
            auto a = c.addr.eval(s);
            auto expd = c.expected.eval(s);
            auto neu = c.value.eval(s);
            if (!a || !expd || !neu || !s.gheap.present(*a) || s.gheap.at(*a).frac != u.denominator()) {
                fault();
                return out;
            }
            Value cur = s.gheap.at(*a).val;
            State t = s;
            if (c.var >= 0) t.lvars.set(c.var, cur);
            bool matched = cur == *expd;
            if (matched) {
                if (!in_domain(u, *a, *neu)) return {};
                t.gheap.set(*a, static_cast<std::uint8_t>(u.denominator()), *neu);
            }
            if (c.ghost.when == GhostCond::CmpxSuccess) ghost_cond = matched;
            if (c.ghost.when == GhostCond::CmpxFailInactive) ghost_cond = !matched && cur.kind == Value::RdI;
            out.push_back(std::move(t));
            break;
        }
        case Command::Assume: {
            if (c.assume_pred->member(s)) out.push_back(s);
            break;
        }
        case Command::LocalAssign: {
            auto v = c.value.eval(s);
            if (!v) {
                fault();
                return out;
            }
            State t = s;
            t.lvars.set(c.var, *v);
            out.push_back(std::move(t));
            break;
        }
        case Command::Alloc: {
            if (!s.gghost.has_freelist || s.gghost.freelist.empty()) {
                fault();
                return out;
            }
            State t = s;
            int id = t.gghost.freelist.front();  // smallest free id
            t.gghost.freelist.erase(t.gghost.freelist.begin());
            for (const auto& [field, ve] : c.init_fields) {
                auto v = ve.eval(s);
                int cell = c.alloc_base + id * c.alloc_stride + field;
                if (!v || s.gheap.present(cell)) {
                    fault();
                    return out;
                }
                t.gheap.set(cell, static_cast<std::uint8_t>(u.denominator()), *v);
            }
            if (c.var >= 0) t.lvars.set(c.var, Value::node(id));
            out.push_back(std::move(t));
            break;
        }
        case Command::Lock: {
            auto a = c.addr.eval(s);
            if (!a || !s.gheap.present(*a)) {
                fault();
                return out;
            }
            if (s.gheap.at(*a).val.as_bool()) return {};  // blocks until free
            State t = s;
            t.gheap.set(*a, s.gheap.at(*a).frac, Value::boolean(true));
            out.push_back(std::move(t));
            break;
        }
        case Command::Unlock: {
            auto a = c.addr.eval(s);
            if (!a || !s.gheap.present(*a) || !s.gheap.at(*a).val.as_bool()) {
                fault();
                return out;
            }
            State t = s;
            t.gheap.set(*a, s.gheap.at(*a).frac, Value::boolean(false));
            out.push_back(std::move(t));
            break;
        }
        case Command::Choose: {
            for (const Value& v : c.chooser(s)) {
                State t = s;
                t.lvars.set(c.var, v);
                out.push_back(std::move(t));
            }
            break;
        }
    }

    if (c.ghost.active() && ghost_cond) {
        std::vector<State> decorated;
        for (State& t : out) {
            if (t.abort) {
                decorated.push_back(std::move(t));
                continue;
            }
            bool bad = false;
            apply_ghost(u, c.ghost, t, bad);
            decorated.push_back(bad ? u.abort_state() : std::move(t));
        }
        return decorated;
    }
    return out;
}

void exec_on_computation(Universe& u, const Command& c, const Computation& in, std::vector<Computation>& out) {
    for (const State& t : exec_command(u, c, u.state(in.last()))) {
        Computation next = in;
        next.states.push_back(u.intern(t));
        out.push_back(std::move(next));
    }
}

void exec_on_history(Universe& u, const Command& c, const History& in, std::vector<History>& out) {
    for (const State& t : exec_command(u, c, u.state(in.last()))) {
        History next = in;
        next.gaps.push_back(c.label);
        next.states.push_back(u.intern(t));
        out.push_back(std::move(next));
    }
}

// ---------------------------------------------------------------------------
// programs
// ---------------------------------------------------------------------------

ProgramPtr prog_com(Command c) {
    auto p = std::make_shared<Program>();
    p->kind = Program::PCom;
    p->com = std::move(c);
    return p;
}

ProgramPtr prog_seq(std::vector<ProgramPtr> kids) {
    if (kids.size() == 1) return kids[0];
    auto p = std::make_shared<Program>();
    p->kind = Program::PSeq;
    p->kids = std::move(kids);
    return p;
}

ProgramPtr prog_choice(std::vector<ProgramPtr> kids) {
    auto p = std::make_shared<Program>();
    p->kind = Program::PChoice;
    p->kids = std::move(kids);
    return p;
}

ProgramPtr prog_loop(ProgramPtr body) {
    auto p = std::make_shared<Program>();
    p->kind = Program::PLoop;
    p->kids.push_back(std::move(body));
    return p;
}

ProgramPtr prog_while(StatePredPtr cond, int label_t, int label_f, ProgramPtr body, const std::string& text) {
    auto enter = prog_com(cmd_assume(label_t, cond, "assume " + text));
    auto leave = prog_com(cmd_assume(label_f, p_not(cond), "assume !" + text));
    return prog_seq({prog_loop(prog_seq({enter, body})), leave});
}

namespace {

void first_steps_rec(const ProgramPtr& p, const ProgramPtr& cont,
                     std::vector<std::pair<const Command*, ProgramPtr>>& out,
                     std::set<const Program*>& guard_set);

void continue_into(const ProgramPtr& cont, std::vector<std::pair<const Command*, ProgramPtr>>& out,
                   std::set<const Program*>& guard_set) {
    if (!cont) return;
    first_steps_rec(cont, nullptr, out, guard_set);
}

void first_steps_rec(const ProgramPtr& p, const ProgramPtr& cont,
                     std::vector<std::pair<const Command*, ProgramPtr>>& out,
                     std::set<const Program*>& guard_set) {
    switch (p->kind) {
        case Program::PCom:
            out.emplace_back(&p->com, cont);
            break;
        case Program::PSeq: {
            ProgramPtr rest = cont;
            for (std::size_t i = p->kids.size(); i > 1; --i)
                rest = rest ? prog_seq({p->kids[i - 1], rest}) : p->kids[i - 1];
            first_steps_rec(p->kids[0], rest, out, guard_set);
            break;
        }
        case Program::PChoice:
            for (const auto& k : p->kids) first_steps_rec(k, cont, out, guard_set);
            if (p->kids.empty()) continue_into(cont, out, guard_set);
            break;
        case Program::PLoop: {
            if (!guard_set.insert(p.get()).second) break;  // already unfolding this loop
            // loop = exit + body;loop
            if (!p->kids.empty()) {
                ProgramPtr back = cont ? prog_seq({p, cont}) : p;
                first_steps_rec(p->kids[0], back, out, guard_set);
            }
            continue_into(cont, out, guard_set);
            guard_set.erase(p.get());
            break;
        }
    }
}

bool can_finish_rec(const ProgramPtr& p, std::set<const Program*>& guard_set) {
    if (!p) return true;
    switch (p->kind) {
        case Program::PCom:
            return false;
        case Program::PSeq:
            for (const auto& k : p->kids)
                if (!can_finish_rec(k, guard_set)) return false;
            return true;
        case Program::PChoice: {
            if (p->kids.empty()) return true;
            for (const auto& k : p->kids)
                if (can_finish_rec(k, guard_set)) return true;
            return false;
        }
        case Program::PLoop:
            return true;  // zero iterations
    }
    return false;
}

}  // namespace

void first_steps(const ProgramPtr& p, const ProgramPtr& cont,
                 std::vector<std::pair<const Command*, ProgramPtr>>& out) {
    if (!p) {
        if (cont) first_steps(cont, nullptr, out);
        return;
    }
    std::set<const Program*> guard_set;
    first_steps_rec(p, cont, out, guard_set);
}

bool can_finish(const ProgramPtr& p) {
    std::set<const Program*> guard_set;
    return can_finish_rec(p, guard_set);
}

void collect_commands(const ProgramPtr& p, std::vector<const Command*>& out) {
    if (!p) return;
    if (p->kind == Program::PCom) {
        out.push_back(&p->com);
        return;
    }
    for (const auto& k : p->kids) collect_commands(k, out);
}

namespace {

// Thompson construction over command labels.
std::pair<int, int> build_nfa(const ProgramPtr& p, Nfa& nfa) {
    int in = nfa.add_state();
    int out = nfa.add_state();
    switch (p->kind) {
        case Program::PCom:
            nfa.states[in].edges.emplace_back(p->com.label, out);
            break;
        case Program::PSeq: {
            int cur = in;
            for (const auto& k : p->kids) {
                auto [ki, ko] = build_nfa(k, nfa);
                nfa.states[cur].eps.push_back(ki);
                cur = ko;
            }
            nfa.states[cur].eps.push_back(out);
            break;
        }
        case Program::PChoice: {
            for (const auto& k : p->kids) {
                auto [ki, ko] = build_nfa(k, nfa);
                nfa.states[in].eps.push_back(ki);
                nfa.states[ko].eps.push_back(out);
            }
            if (p->kids.empty()) nfa.states[in].eps.push_back(out);
            break;
        }
        case Program::PLoop: {
            nfa.states[in].eps.push_back(out);
            if (!p->kids.empty()) {
                auto [ki, ko] = build_nfa(p->kids[0], nfa);
                nfa.states[in].eps.push_back(ki);
                nfa.states[ko].eps.push_back(in);
            }
            break;
        }
    }
    return {in, out};
}

}  // namespace

std::shared_ptr<const Dfa> program_language(const ProgramPtr& p) {
    Nfa nfa;
    auto [in, out] = build_nfa(p, nfa);
    nfa.start = in;
    nfa.accept = out;
    return std::make_shared<Dfa>(determinize(nfa));
}

std::string to_string(const ProgramPtr& p) {
    if (!p) return "done";
    switch (p->kind) {
        case Program::PCom:
            return p->com.text;
        case Program::PSeq: {
            std::string s;
            for (const auto& k : p->kids) {
                if (!s.empty()) s += "; ";
                s += to_string(k);
            }
            return s;
        }
        case Program::PChoice: {
            std::string s = "(";
            for (std::size_t i = 0; i < p->kids.size(); ++i) {
                if (i) s += " + ";
                s += to_string(p->kids[i]);
            }
            return s + ")";
        }
        case Program::PLoop:
            return "(" + to_string(p->kids.empty() ? nullptr : p->kids[0]) + ")*";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// interference
// ---------------------------------------------------------------------------

std::vector<State> apply_interference(Universe& u, const Interference& i, const State& s,
                                      const std::vector<LocalPart>& interferer_locals) {
    std::vector<State> out;
    auto guard_now = [&](const State& t) {
        for (const auto& c : i.guard.clauses) {
            if (!c.now || c.now->member(t)) return true;  // past atoms never block
        }
        return false;
    };
    static const std::vector<LocalPart> kEmpty{LocalPart{}};
    const std::vector<LocalPart>& locals = interferer_locals.empty() ? kEmpty : interferer_locals;
    std::unordered_set<std::uint64_t> seen;
    for (const LocalPart& lp : locals) {
        State probe = s;
        probe.lheap = lp.lheap;
        if (probe.lheap.cells.size() != s.lheap.cells.size()) probe.lheap.cells.resize(s.lheap.cells.size());
        probe.lghost = lp.lghost;
        probe.lvars = lp.lvars;
        if (probe.lvars.vars.size() != s.lvars.vars.size()) probe.lvars.vars.resize(s.lvars.vars.size());
        if (!guard_now(probe)) continue;
        for (const State& t : exec_command(u, i.cmd, probe)) {
            State result = s;
            if (t.abort) {
                result = u.abort_state();
            } else {
                result.gheap = t.gheap;
                result.gghost = t.gghost;
            }
            if (seen.insert(hash_state(result)).second) out.push_back(std::move(result));
        }
    }
    return out;
}

Command self_interference(const TempPred& guard, const Command& cmd) {
    Command c = cmd;
    c.sched_guard = std::make_shared<TempPred>(guard);
    c.text = "atomic{assume(" + guard.name + " * true); " + cmd.text + "}";
    return c;
}

ProgramPtr stmt_of(const std::vector<Interference>& interferences) {
    std::vector<ProgramPtr> branches;
    branches.reserve(interferences.size());
    for (const auto& i : interferences) branches.push_back(prog_com(self_interference(i.guard, i.cmd)));
    return prog_loop(prog_choice(std::move(branches)));
}

ProgramPtr enrich(const ProgramPtr& p, const std::vector<Interference>& interferences) {
    if (!p) return nullptr;
    if (p->kind == Program::PCom) {
        std::vector<ProgramPtr> branches;
        for (const auto& i : interferences)
            if (i.cmd.label == p->com.label) branches.push_back(prog_com(self_interference(i.guard, i.cmd)));
        if (branches.empty())
            throw std::runtime_error("enrich: no interference for command label " + std::to_string(p->com.label) +
                                     " (" + p->com.text + ")");
        return branches.size() == 1 ? branches[0] : prog_choice(std::move(branches));
    }
    auto q = std::make_shared<Program>();
    q->kind = p->kind;
    q->com = p->com;
    for (const auto& k : p->kids) q->kids.push_back(enrich(k, interferences));
    return q;
}

// ---------------------------------------------------------------------------
// governed computations
// ---------------------------------------------------------------------------

namespace {

struct GovernedRun {
    Universe& u;
    const std::vector<Interference>& interferences;
    const std::vector<LocalPart>& locals;
    const GovernedOptions& opts;
    const GovernedVisit& visit;
    GovernedStats stats;
    std::vector<StateId> states;
    std::vector<int> gaps;
    bool stop = false;

    void dfs(const ProgramPtr& remaining) {
        if (stop) return;
        if (++stats.visited > opts.budget) {
            stats.budget_exceeded = true;
            stop = true;
            return;
        }
        if (!visit(states, gaps, remaining)) {
            stop = true;
            return;
        }
        if (static_cast<int>(states.size()) >= opts.depth) return;

        // copy: interning below may reallocate the pool
        const State cur = u.state(states.back());
        // program steps (self-interferences when the program is stmt_of(I))
        std::vector<std::pair<const Command*, ProgramPtr>> steps;
        first_steps(remaining, nullptr, steps);
        std::unordered_set<std::uint64_t> seen;
        for (const auto& [cmd, cont] : steps) {
            for (const State& t : exec_command(u, *cmd, cur)) {
                if (t.abort) continue;  // governed computations stay within the universe
                std::uint64_t h = hash_state(t) * 1315423911ULL + static_cast<std::uint64_t>(cmd->label + 1);
                if (!seen.insert(h).second) continue;
                states.push_back(u.intern(t));
                gaps.push_back(cmd->label);
                dfs(cont);
                states.pop_back();
                gaps.pop_back();
                if (stop) return;
            }
        }
        // interference steps: other threads move, the command is not recorded
        std::unordered_set<std::uint64_t> seen_env;
        for (const auto& i : interferences) {
            for (const State& t : apply_interference(u, i, cur, locals)) {
                if (t.abort) continue;
                if (!seen_env.insert(hash_state(t)).second) continue;
                states.push_back(u.intern(t));
                gaps.push_back(kNoCommand);
                dfs(remaining);
                states.pop_back();
                gaps.pop_back();
                if (stop) return;
            }
        }
    }
};

}  // namespace

GovernedStats run_governed(Universe& u, const ProgramPtr& program, const std::vector<Interference>& interferences,
                           const std::vector<LocalPart>& interferer_locals, const std::vector<StateId>& init,
                           const GovernedOptions& opts, const GovernedVisit& visit) {
    GovernedStats total;
    for (StateId s0 : init) {
        GovernedRun run{u, interferences, interferer_locals, opts, visit, {}, {}, {}, false};
        run.states.push_back(s0);
        run.dfs(program);
        total.visited += run.stats.visited;
        total.budget_exceeded = total.budget_exceeded || run.stats.budget_exceeded;
    }
    return total;
}

GovernedStats governed(Universe& u, const std::vector<Interference>& interferences,
                       const std::vector<LocalPart>& interferer_locals, const std::vector<StateId>& init,
                       const GovernedOptions& opts, const GovernedVisit& visit) {
    return run_governed(u, stmt_of(interferences), interferences, interferer_locals, init, opts, visit);
}

}  // namespace tempo
