#include "tempo/preds.hpp"

#include <atomic>
#include <cassert>
#include <deque>

namespace tempo {

// ---------------------------------------------------------------------------
// automata
// ---------------------------------------------------------------------------

namespace {

void eps_closure(const Nfa& nfa, std::set<int>& states) {
    std::vector<int> work(states.begin(), states.end());
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        for (int t : nfa.states[s].eps)
            if (states.insert(t).second) work.push_back(t);
    }
}

}  // namespace

Dfa determinize(const Nfa& nfa) {
    std::set<int> alphabet_set;
    for (const auto& s : nfa.states)
        for (const auto& [sym, _] : s.edges) alphabet_set.insert(sym);
    std::vector<int> alphabet(alphabet_set.begin(), alphabet_set.end());

    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> subsets;
    std::vector<std::map<int, int>> trans;
    std::set<int> start{nfa.start};
    eps_closure(nfa, start);
    ids[start] = 0;
    subsets.push_back(start);
    trans.emplace_back();
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (int sym : alphabet) {
            std::set<int> next;
            for (int s : subsets[i])
                for (const auto& [es, t] : nfa.states[s].edges)
                    if (es == sym) next.insert(t);
            if (next.empty()) continue;
            eps_closure(nfa, next);
            auto it = ids.find(next);
            int id;
            if (it == ids.end()) {
                id = static_cast<int>(subsets.size());
                ids[next] = id;
                subsets.push_back(next);
                trans.emplace_back();
            } else {
                id = it->second;
            }
            trans[i][sym] = id;
        }
    }
    std::set<int> accepting;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (subsets[i].count(nfa.accept)) accepting.insert(static_cast<int>(i));
    return Dfa(std::move(alphabet), 0, std::move(trans), std::move(accepting));
}

bool language_included(const Dfa& a, const Dfa& b) {
    // product reachability; -1 in b is the sink
    std::set<int> alphabet(a.alphabet().begin(), a.alphabet().end());
    for (int s : b.alphabet()) alphabet.insert(s);
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> work;
    work.emplace_back(a.start(), b.start());
    seen.insert(work.front());
    while (!work.empty()) {
        auto [sa, sb] = work.front();
        work.pop_front();
        if (a.accepting(sa) && !b.accepting(sb)) return false;
        for (int sym : alphabet) {
            int na = a.step(sa, sym);
            if (na < 0) continue;
            int nb = b.step(sb, sym);
            if (seen.emplace(na, nb).second) work.emplace_back(na, nb);
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// state predicates
// ---------------------------------------------------------------------------

namespace {
std::atomic<int> g_pred_uid{0};
}

StatePredImpl::StatePredImpl(std::string name, std::function<bool(const State&)> eval, bool abort_absorbing)
    : name_(std::move(name)), eval_(std::move(eval)), abort_absorbing_(abort_absorbing), uid_(g_pred_uid++) {}

StatePredPtr make_pred(std::string name, std::function<bool(const State&)> eval, bool abort_absorbing) {
    return std::make_shared<StatePredImpl>(std::move(name), std::move(eval), abort_absorbing);
}

StatePredPtr pred_true() {
    static StatePredPtr p = make_pred("true", [](const State&) { return true; }, true);
    return p;
}

StatePredPtr pred_false() {
    static StatePredPtr p = make_pred("false", [](const State&) { return false; });
    return p;
}

StatePredPtr p_and(StatePredPtr a, StatePredPtr b) {
    return make_pred("(" + a->name() + " & " + b->name() + ")",
                     [a, b](const State& s) { return a->member(s) && b->member(s); },
                     a->abort_absorbing() && b->abort_absorbing());
}

StatePredPtr p_or(StatePredPtr a, StatePredPtr b) {
    return make_pred("(" + a->name() + " | " + b->name() + ")",
                     [a, b](const State& s) { return a->member(s) || b->member(s); },
                     a->abort_absorbing() || b->abort_absorbing());
}

StatePredPtr p_not(StatePredPtr a) {
    return make_pred("!" + a->name(), [a](const State& s) { return !a->member(s); }, !a->abort_absorbing());
}

StatePredPtr p_pts(Universe& u, const std::string& addr, Value v, int min_frac) {
    int a = u.gaddr_id(addr);
    int mf = min_frac == 0 ? 1 : min_frac;
    return make_pred(addr + "->" + to_string(v),
                     [a, v, mf](const State& s) {
                         return s.gheap.present(a) && s.gheap.at(a).val == v && s.gheap.at(a).frac >= mf;
                     });
}

StatePredPtr p_pts_exact_frac(Universe& u, const std::string& addr, Value v, int frac) {
    int a = u.gaddr_id(addr);
    return make_pred(addr + "-" + std::to_string(frac) + "->" + to_string(v),
                     [a, v, frac](const State& s) {
                         return s.gheap.present(a) && s.gheap.at(a).val == v && s.gheap.at(a).frac == frac;
                     });
}

namespace {

// Builds a carrier-indexed decision table, with a symbolic fallback for
// states outside the carrier.
StatePredPtr table_pred(Universe& u, std::string name, std::function<bool(std::size_t)> by_pos,
                        std::function<bool(const State&)> fallback) {
    u.ensure_tables();
    auto table = std::make_shared<std::vector<std::uint8_t>>(u.carrier_size(), 0);
    for (std::size_t i = 0; i < u.carrier_size(); ++i) (*table)[i] = by_pos(i) ? 1 : 0;
    const Universe* up = &u;
    return make_pred(std::move(name), [up, table, fallback](const State& s) {
        auto id = up->find(s);
        if (id) {
            auto pos = up->carrier_pos(*id);
            if (pos) return (*table)[*pos] != 0;
        }
        return fallback ? fallback(s) : false;
    });
}

}  // namespace

StatePredPtr p_star(Universe& u, StatePredPtr a, StatePredPtr b) {
    u.ensure_tables();
    const auto& carrier = u.all_states();
    std::vector<std::uint8_t> result(u.carrier_size(), 0);
    for (const auto& [x, y] : u.composable_pairs()) {
        if (!a->member(u.state(x)) || !b->member(u.state(y))) continue;
        std::int64_t c = u.compose_ids(x, y);
        if (c < 0) continue;
        auto pos = u.carrier_pos(static_cast<StateId>(c));
        if (pos) result[*pos] = 1;
    }
    (void)carrier;
    auto table = std::make_shared<std::vector<std::uint8_t>>(std::move(result));
    const Universe* up = &u;
    return make_pred("(" + a->name() + " * " + b->name() + ")", [up, table](const State& s) {
        auto id = up->find(s);
        if (!id) return false;
        auto pos = up->carrier_pos(*id);
        return pos && (*table)[*pos] != 0;
    });
}

StatePredPtr p_wand(Universe& u, StatePredPtr a, StatePredPtr b) {
    u.ensure_tables();
    std::vector<std::uint8_t> result(u.carrier_size(), 1);
    for (const auto& [x, y] : u.composable_pairs()) {
        // s in (a -* b) iff forall t in a with s#t: s*t in b
        if (!a->member(u.state(y))) continue;
        auto posx = u.carrier_pos(x);
        if (!posx) continue;
        std::int64_t c = u.compose_ids(x, y);
        if (c < 0 || !b->member(u.state(static_cast<StateId>(c)))) result[*posx] = 0;
    }
    auto table = std::make_shared<std::vector<std::uint8_t>>(std::move(result));
    const Universe* up = &u;
    return make_pred("(" + a->name() + " -* " + b->name() + ")", [up, table](const State& s) {
        auto id = up->find(s);
        if (!id) return false;
        auto pos = up->carrier_pos(*id);
        return pos && (*table)[*pos] != 0;
    });
}

bool is_intuitionistic(Universe& u, const StatePredPtr& p) {
    u.ensure_tables();
    for (const auto& [x, y] : u.composable_pairs()) {
        if (!p->member(u.state(x))) continue;
        std::int64_t c = u.compose_ids(x, y);
        if (c >= 0 && !p->member(u.state(static_cast<StateId>(c)))) return false;
    }
    return true;
}

bool state_subset(Universe& u, const StatePredPtr& p, const StatePredPtr& q) {
    for (StateId id : u.all_states())
        if (p->member(u.state(id)) && !q->member(u.state(id))) return false;
    return true;
}

bool state_equal(Universe& u, const StatePredPtr& p, const StatePredPtr& q) {
    return state_subset(u, p, q) && state_subset(u, q, p);
}

// ---------------------------------------------------------------------------
// temporal predicates
// ---------------------------------------------------------------------------

namespace {

TempExprPtr mk_expr(TempExpr::Op op, StatePredPtr p = nullptr, std::shared_ptr<const Dfa> lang = nullptr,
                    std::vector<TempExprPtr> kids = {}) {
    auto e = std::make_shared<TempExpr>();
    e->op = op;
    e->p = std::move(p);
    e->lang = std::move(lang);
    e->kids = std::move(kids);
    return e;
}

}  // namespace

TempPred tp_true() {
    TempPred t;
    t.name = "true";
    t.clauses.push_back(Clause{nullptr, {}, {}});
    t.expr = mk_expr(TempExpr::ETrue);
    return t;
}

TempPred tp_false() {
    TempPred t;
    t.name = "false";
    t.expr = mk_expr(TempExpr::EFalse);
    return t;
}

TempPred tp_now(StatePredPtr p) {
    TempPred t;
    t.name = "now(" + p->name() + ")";
    t.clauses.push_back(Clause{p, {}, {}});
    t.expr = mk_expr(TempExpr::ENow, p);
    return t;
}

TempPred tp_past(StatePredPtr p) {
    TempPred t;
    t.name = "past(" + p->name() + ")";
    t.clauses.push_back(Clause{nullptr, {p}, {}});
    t.expr = mk_expr(TempExpr::EPast, p);
    return t;
}

TempPred tp_wpast(StatePredPtr p) {
    TempPred t = tp_or(tp_now(p), tp_past(p));
    t.name = "wpast(" + p->name() + ")";
    return t;
}

TempPred tp_hist(StatePredPtr p, std::shared_ptr<const Dfa> lang, const std::string& label) {
    TempPred t;
    t.name = "hist(" + p->name() + "," + label + ")";
    t.clauses.push_back(Clause{nullptr, {}, {HistAtom{p, lang, label}}});
    if (lang->accepts_empty()) t.clauses.push_back(Clause{p, {}, {}});
    t.expr = mk_expr(TempExpr::EHist, p, lang);
    return t;
}

TempPred tp_and(const TempPred& a, const TempPred& b) {
    TempPred t;
    t.name = "(" + a.name + " & " + b.name + ")";
    t.nf_valid = a.nf_valid && b.nf_valid;
    for (const auto& ca : a.clauses)
        for (const auto& cb : b.clauses) {
            Clause c;
            c.now = !ca.now ? cb.now : (!cb.now ? ca.now : p_and(ca.now, cb.now));
            c.pasts = ca.pasts;
            c.pasts.insert(c.pasts.end(), cb.pasts.begin(), cb.pasts.end());
            c.hists = ca.hists;
            c.hists.insert(c.hists.end(), cb.hists.begin(), cb.hists.end());
            t.clauses.push_back(std::move(c));
        }
    t.expr = mk_expr(TempExpr::EAnd, nullptr, nullptr, {a.expr, b.expr});
    return t;
}

TempPred tp_or(const TempPred& a, const TempPred& b) {
    TempPred t;
    t.name = "(" + a.name + " | " + b.name + ")";
    t.nf_valid = a.nf_valid && b.nf_valid;
    t.clauses = a.clauses;
    t.clauses.insert(t.clauses.end(), b.clauses.begin(), b.clauses.end());
    t.expr = mk_expr(TempExpr::EOr, nullptr, nullptr, {a.expr, b.expr});
    return t;
}

TempPred tp_star(Universe& u, const TempPred& a, const TempPred& b) {
    TempPred t;
    t.name = "(" + a.name + " * " + b.name + ")";
    t.nf_valid = a.nf_valid && b.nf_valid;
    for (const auto& ca : a.clauses)
        for (const auto& cb : b.clauses) {
            Clause c;
            StatePredPtr na = ca.now ? ca.now : pred_true();
            StatePredPtr nb = cb.now ? cb.now : pred_true();
            c.now = p_star(u, na, nb);
            c.pasts = ca.pasts;
            c.pasts.insert(c.pasts.end(), cb.pasts.begin(), cb.pasts.end());
            c.hists = ca.hists;
            c.hists.insert(c.hists.end(), cb.hists.begin(), cb.hists.end());
            t.clauses.push_back(std::move(c));
        }
    t.expr = mk_expr(TempExpr::EStar, nullptr, nullptr, {a.expr, b.expr});
    return t;
}

TempPred tp_not(const TempPred& a) {
    TempPred t;
    t.name = "!" + a.name;
    t.nf_valid = false;
    t.expr = mk_expr(TempExpr::ENot, nullptr, nullptr, {a.expr});
    return t;
}

TempPred tp_wand(const TempPred& a, const TempPred& b) {
    TempPred t;
    t.name = "(" + a.name + " -* " + b.name + ")";
    t.nf_valid = false;
    t.expr = mk_expr(TempExpr::EWand, nullptr, nullptr, {a.expr, b.expr});
    return t;
}

TempPred tp_named(std::string name, TempPred a) {
    a.name = std::move(name);
    return a;
}

// ---------------------------------------------------------------------------
// oracle evaluation
// ---------------------------------------------------------------------------

namespace {

// word of recorded commands from gap position i (between state i and i+1)
// through the end of the sequence
bool hist_word_accepts(const Dfa& dfa, const SeqRef& seq, std::size_t from_state) {
    int s = dfa.start();
    for (std::size_t g = from_state; g + 1 < seq.length(); ++g) {
        int sym = seq.gap(g);
        if (sym == kNoCommand) continue;
        s = dfa.step(s, sym);
        if (s < 0) return false;
    }
    return dfa.accepting(s);
}

bool oracle_eval(Universe& u, const TempExprPtr& e, const std::vector<StateId>& states,
                 const std::vector<int>* gaps) {
    SeqRef seq(u, states, gaps);
    const std::size_t n = states.size();
    switch (e->op) {
        case TempExpr::ETrue:
            return true;
        case TempExpr::EFalse:
            return false;
        case TempExpr::ENow:
            return e->p->member(seq.state(n - 1));
        case TempExpr::EPast:
            for (std::size_t i = 0; i + 1 < n; ++i)
                if (e->p->member(seq.state(i))) return true;
            return false;
        case TempExpr::EHist:
            // some suffix starts in p and the commands recorded since then
            // form a word of the language (the current state counts with the
            // empty word)
            for (std::size_t i = 0; i < n; ++i)
                if (e->p->member(seq.state(i)) && hist_word_accepts(*e->lang, seq, i)) return true;
            return false;
        case TempExpr::EAnd:
            return oracle_eval(u, e->kids[0], states, gaps) && oracle_eval(u, e->kids[1], states, gaps);
        case TempExpr::EOr:
            return oracle_eval(u, e->kids[0], states, gaps) || oracle_eval(u, e->kids[1], states, gaps);
        case TempExpr::ENot:
            return !oracle_eval(u, e->kids[0], states, gaps);
        case TempExpr::EStar: {
            // split the last state, share the prefix
            auto pos = u.carrier_pos(states.back());
            if (!pos) return false;
            const auto& splits = u.decompositions()[*pos];
            std::vector<StateId> left = states, right = states;
            for (const auto& [x, y] : splits) {
                left.back() = x;
                right.back() = y;
                if (oracle_eval(u, e->kids[0], left, gaps) && oracle_eval(u, e->kids[1], right, gaps)) return true;
            }
            return false;
        }
        case TempExpr::EWand: {
            // extensions of the last state by members of the left argument
            std::vector<StateId> self = states;
            for (StateId t : u.all_states()) {
                std::vector<StateId> single{t};
                if (!oracle_eval(u, e->kids[0], single, nullptr)) continue;
                std::int64_t c = u.compose_ids(states.back(), t);
                if (c < 0) continue;
                self.back() = static_cast<StateId>(c);
                if (!oracle_eval(u, e->kids[1], self, gaps)) return false;
                self.back() = states.back();
            }
            return true;
        }
    }
    return false;
}

}  // namespace

bool oracle_member(Universe& u, const TempPred& a, const SeqRef& seq) {
    std::vector<StateId> states;
    states.reserve(seq.length());
    for (std::size_t i = 0; i < seq.length(); ++i) states.push_back(seq.state_id(i));
    if (seq.is_history()) {
        std::vector<int> gaps;
        for (std::size_t i = 0; i + 1 < seq.length(); ++i) gaps.push_back(seq.gap(i));
        return oracle_eval(u, a.expr, states, &gaps);
    }
    return oracle_eval(u, a.expr, states, nullptr);
}

bool nf_member(Universe& u, const TempPred& a, const SeqRef& seq) {
    assert(a.nf_valid);
    (void)u;
    const std::size_t n = seq.length();
    for (const auto& c : a.clauses) {
        if (c.now && !c.now->member(seq.state(n - 1))) continue;
        bool ok = true;
        for (const auto& p : c.pasts) {
            bool found = false;
            for (std::size_t i = 0; i + 1 < n && !found; ++i) found = p->member(seq.state(i));
            if (!found) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (const auto& h : c.hists) {
            bool found = false;
            for (std::size_t i = 0; i + 1 < n && !found; ++i)
                found = h.p->member(seq.state(i)) && hist_word_accepts(*h.lang, seq, i);
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// mask machine
// ---------------------------------------------------------------------------

void MaskMachine::register_atom(const StatePredPtr& p) {
    if (uid_to_idx_.count(p->uid())) return;
    const auto& carrier = u_.all_states();
    std::vector<std::uint8_t> table(carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i) table[i] = p->member(u_.state(carrier[i])) ? 1 : 0;
    for (std::size_t a = 0; a < atom_tables_.size(); ++a) {
        if (atom_tables_[a] == table) {
            uid_to_idx_.emplace(p->uid(), static_cast<int>(a));
            return;
        }
    }
    uid_to_idx_.emplace(p->uid(), static_cast<int>(atoms_.size()));
    atoms_.push_back(p);
    atom_tables_.push_back(std::move(table));
}

MaskMachine::MaskMachine(Universe& u, const std::vector<const TempPred*>& preds, int bound) : u_(u) {
    u.ensure_tables();
    // collect atoms from past positions of all clauses
    for (const TempPred* tp : preds) {
        for (const auto& c : tp->clauses)
            for (const auto& p : c.pasts) register_atom(p);
    }
    if (atoms_.size() > 62) {
        overflow_ = true;
        return;
    }
    const auto& carrier = u.all_states();
    sigs_.resize(carrier.size());
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        std::uint64_t s = 0;
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            if (atom_tables_[a][i]) s |= (1ULL << a);
        sigs_[i] = s;
    }
    // BFS over realizable masks; depth = number of prefix states used
    masks_.push_back(Pair{0, 0});
    std::unordered_map<std::uint64_t, int> seen;
    seen.emplace(0, 0);
    std::size_t head = 0;
    while (head < masks_.size()) {
        auto [m, d] = masks_[head++];
        if (d >= bound - 1) continue;
        for (std::size_t i = 0; i < carrier.size(); ++i) {
            std::uint64_t nm = m | sigs_[i];
            auto it = seen.find(nm);
            if (it == seen.end()) {
                seen.emplace(nm, d + 1);
                masks_.push_back(Pair{nm, d + 1});
                parent_.emplace(nm, std::make_pair(m, carrier[i]));
            }
        }
        if (masks_.size() > 500'000) {
            overflow_ = true;
            return;
        }
    }
}

int MaskMachine::atom_index(const StatePredPtr& p) const {
    auto it = uid_to_idx_.find(p->uid());
    if (it == uid_to_idx_.end()) throw std::logic_error("mask machine: unregistered atom " + p->name());
    return it->second;
}

std::uint64_t MaskMachine::sig(const State& s) const {
    std::uint64_t m = 0;
    for (std::size_t a = 0; a < atoms_.size(); ++a)
        if (atoms_[a]->member(s)) m |= (1ULL << a);
    return m;
}

bool MaskMachine::member(const TempPred& tp, std::uint64_t mask, const State& s) const {
    for (const auto& c : tp.clauses) {
        if (!c.hists.empty()) throw std::logic_error("mask machine: hist atom in " + tp.name);
        if (c.now && !c.now->member(s)) continue;
        bool ok = true;
        for (const auto& p : c.pasts) {
            int idx = atom_index(p);
            if (!(mask & (1ULL << idx))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool MaskMachine::member_union(const std::vector<TempPred>& instances, std::uint64_t mask, const State& s) const {
    for (const auto& tp : instances)
        if (member(tp, mask, s)) return true;
    return false;
}

std::vector<StateId> MaskMachine::realize(std::uint64_t mask) const {
    std::vector<StateId> prefix;
    std::uint64_t m = mask;
    while (m != 0) {
        auto it = parent_.find(m);
        if (it == parent_.end()) break;
        prefix.push_back(it->second.second);
        m = it->second.first;
    }
    std::reverse(prefix.begin(), prefix.end());
    return prefix;
}

// ---------------------------------------------------------------------------
// inclusion checking
// ---------------------------------------------------------------------------

namespace {

// Enumeration-based inclusion for Hist-carrying predicates: iterates over
// histories of length <= bound with gaps drawn from the predicates' command
// alphabets plus the interference gap.
InclusionReport includes_histories(Universe& u, const TempPred& a, const TempPred& b, int bound,
                                   std::uint64_t budget) {
    InclusionReport rep;
    rep.bound = bound;
    std::set<int> alpha{kNoCommand};
    for (const TempPred* tp : {&a, &b})
        for (const auto& c : tp->clauses)
            for (const auto& h : c.hists)
                for (int sym : h.lang->alphabet()) alpha.insert(sym);
    std::vector<int> gaps_alpha(alpha.begin(), alpha.end());
    const auto& carrier = u.all_states();
    std::uint64_t used = 0;

    std::vector<StateId> states;
    std::vector<int> gaps;
    std::function<bool(int)> rec = [&](int len) -> bool {
        if (++used > budget) {
            rep.budget_exceeded = true;
            return true;
        }
        if (!states.empty()) {
            SeqRef seq(u, states, &gaps);
            if (nf_member(u, a, seq) && !nf_member(u, b, seq)) {
                rep.holds = false;
                rep.witness_history = History{states, gaps};
                return true;
            }
        }
        if (len >= bound) return false;
        for (StateId s : carrier) {
            if (!states.empty()) {
                for (int g : gaps_alpha) {
                    gaps.push_back(g);
                    states.push_back(s);
                    if (rec(len + 1)) return true;
                    states.pop_back();
                    gaps.pop_back();
                }
            } else {
                states.push_back(s);
                if (rec(len + 1)) return true;
                states.pop_back();
            }
        }
        return false;
    };
    rec(0);
    return rep;
}

}  // namespace

InclusionReport includes(Universe& u, const TempPred& a, const TempPred& b, int bound, ExecMode mode) {
    InclusionReport rep;
    rep.bound = bound;
    if (!a.nf_valid || !b.nf_valid) {
        // oracle-only predicates: raw enumeration
        return includes_by_enumeration(u, a, b, bound);
    }
    if (a.has_hist() || b.has_hist()) return includes_histories(u, a, b, bound, 20'000'000);

    MaskMachine machine(u, {&a, &b}, bound);
    if (machine.alphabet_overflow()) {
        rep.budget_exceeded = true;
        rep.detail = "mask machine budget exceeded";
        return rep;
    }
    u.ensure_tables();
    const auto& carrier = u.all_states();
    const auto& masks = machine.masks();

    struct Hit {
        std::size_t mask_idx;
        std::size_t state_idx;
    };
    std::size_t n = masks.size();
    std::vector<std::int64_t> firsthit(n, -1);
    parallel_for(n, mode, [&](std::size_t mi) {
        for (std::size_t si = 0; si < carrier.size(); ++si) {
            const State& s = u.state(carrier[si]);
            if (machine.member(a, masks[mi].mask, s) && !machine.member(b, masks[mi].mask, s)) {
                firsthit[mi] = static_cast<std::int64_t>(si);
                return;
            }
        }
    });
    for (std::size_t mi = 0; mi < n; ++mi) {
        if (firsthit[mi] < 0) continue;
        rep.holds = false;
        Computation w;
        w.states = machine.realize(masks[mi].mask);
        w.states.push_back(carrier[static_cast<std::size_t>(firsthit[mi])]);
        rep.witness = std::move(w);
        break;
    }
    return rep;
}

InclusionReport includes_by_enumeration(Universe& u, const TempPred& a, const TempPred& b, int bound,
                                        std::uint64_t budget) {
    InclusionReport rep;
    rep.bound = bound;
    const auto& carrier = u.all_states();
    u.ensure_tables();
    std::vector<StateId> states;
    std::uint64_t used = 0;
    std::function<bool(int)> rec = [&](int len) -> bool {
        if (++used > budget) {
            rep.budget_exceeded = true;
            return true;
        }
        if (!states.empty()) {
            SeqRef seq(u, states, nullptr);
            if (oracle_member(u, a, seq) && !oracle_member(u, b, seq)) {
                rep.holds = false;
                rep.witness = Computation{states};
                return true;
            }
        }
        if (len >= bound) return false;
        for (StateId s : carrier) {
            states.push_back(s);
            if (rec(len + 1)) return true;
            states.pop_back();
        }
        return false;
    };
    rec(0);
    return rep;
}

bool is_intuitionistic_temp(Universe& u, const TempPred& a, int bound) {
    TempPred ext = tp_star(u, a, tp_now(pred_true()));
    return includes(u, ext, a, bound).holds;
}

bool is_frameable(Universe& u, const TempPred& a, int bound) {
    if (!a.nf_valid) return false;
    if (a.has_hist()) {
        // must survive a stutter that records any command
        std::set<int> alpha{kNoCommand};
        for (const auto& c : a.clauses)
            for (const auto& h : c.hists)
                for (int sym : h.lang->alphabet()) alpha.insert(sym);
        const auto& carrier = u.all_states();
        std::vector<StateId> states;
        std::vector<int> gaps;
        std::function<bool(int)> rec = [&](int len) -> bool {
            if (!states.empty()) {
                SeqRef seq(u, states, &gaps);
                if (nf_member(u, a, seq)) {
                    for (int g : alpha) {
                        gaps.push_back(g);
                        states.push_back(states.back());
                        SeqRef stuttered(u, states, &gaps);
                        bool still = nf_member(u, a, stuttered);
                        states.pop_back();
                        gaps.pop_back();
                        if (!still) return true;  // found a violation
                    }
                }
            }
            if (len >= bound) return false;
            for (StateId s : carrier) {
                if (!states.empty()) {
                    for (int g : alpha) {
                        gaps.push_back(g);
                        states.push_back(s);
                        if (rec(len + 1)) return true;
                        states.pop_back();
                        gaps.pop_back();
                    }
                } else {
                    states.push_back(s);
                    if (rec(len + 1)) return true;
                    states.pop_back();
                }
            }
            return false;
        };
        return !rec(0);
    }
    MaskMachine machine(u, {&a}, bound);
    if (machine.alphabet_overflow()) return false;
    const auto& carrier = u.all_states();
    for (const auto& [m, d] : machine.masks()) {
        for (StateId sid : carrier) {
            const State& s = u.state(sid);
            if (!machine.member(a, m, s)) continue;
            std::uint64_t stuttered = m | machine.sig(s);
            if (!machine.member(a, stuttered, s)) return false;
        }
    }
    return true;
}

}  // namespace tempo
