#include "tempo/universe.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tempo {

Universe::Universe(UniverseConfig cfg) : cfg_(std::move(cfg)) {
    pool_.push_back(abort_state());  // id 0
    index_.emplace(pool_[0], kAbortId);
}

State Universe::empty_state() const {
    State s;
    s.gheap.cells.resize(cfg_.gaddrs.size());
    s.lheap.cells.resize(cfg_.laddrs.size());
    s.lvars.vars.resize(cfg_.lvars.size());
    return s;
}

State Universe::abort_state() const {
    State s = empty_state();
    s.abort = true;
    return s;
}

StateId Universe::intern(const State& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    StateId id = static_cast<StateId>(pool_.size());
    pool_.push_back(s);
    index_.emplace(pool_.back(), id);
    return id;
}

std::optional<StateId> Universe::find(const State& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Universe::var_id(const std::string& name) const {
    for (std::size_t i = 0; i < cfg_.lvars.size(); ++i)
        if (cfg_.lvars[i].name == name) return static_cast<int>(i);
    throw std::runtime_error("unknown local variable: " + name);
}

int Universe::gaddr_id(const std::string& name) const {
    for (std::size_t i = 0; i < cfg_.gaddrs.size(); ++i)
        if (cfg_.gaddrs[i].name == name) return static_cast<int>(i);
    throw std::runtime_error("unknown global address: " + name);
}

int Universe::laddr_id(const std::string& name) const {
    for (std::size_t i = 0; i < cfg_.laddrs.size(); ++i)
        if (cfg_.laddrs[i].name == name) return static_cast<int>(i);
    throw std::runtime_error("unknown local address: " + name);
}

namespace {

// Enumerates one heap side as the product over address options.
void enum_heaps(const std::vector<AddrSpec>& specs, std::vector<Heap>& out) {
    out.clear();
    out.push_back(Heap{});
    out.back().cells.resize(specs.size());
    for (std::size_t a = 0; a < specs.size(); ++a) {
        const AddrSpec& spec = specs[a];
        std::vector<HeapCell> options;
        if (spec.policy == AddrPolicy::Optional) options.push_back(HeapCell{});
        for (std::uint8_t fr : spec.fractions)
            for (const Value& v : spec.domain) options.push_back(HeapCell{fr, v});
        std::vector<Heap> next;
        next.reserve(out.size() * options.size());
        for (const Heap& h : out)
            for (const HeapCell& c : options) {
                next.push_back(h);
                next.back().cells[a] = c;
            }
        out.swap(next);
    }
}

void enum_ghosts(const GhostSpec& spec, std::vector<Ghost>& out) {
    out.clear();
    out.push_back(Ghost{});
    if (spec.exclusive) {
        for (const TokenTag& t : spec.obligations) {
            Ghost g;
            g.add_obligation(t);
            out.push_back(std::move(g));
        }
        for (const auto& [slot, tag] : spec.receipts) {
            Ghost p;
            p.set_receipt(slot, true, tag);
            out.push_back(std::move(p));
            Ghost f;
            f.set_receipt(slot, false, tag);
            out.push_back(std::move(f));
        }
        return;
    }
    for (const TokenTag& t : spec.obligations) {
        std::vector<Ghost> next;
        for (const Ghost& g : out) {
            next.push_back(g);
            Ghost with = g;
            with.add_obligation(t);
            next.push_back(std::move(with));
        }
        out.swap(next);
    }
    for (const auto& [slot, tag] : spec.receipts) {
        std::vector<Ghost> next;
        for (const Ghost& g : out) {
            next.push_back(g);
            Ghost p = g;
            p.set_receipt(slot, true, tag);
            next.push_back(std::move(p));
            Ghost fu = g;
            fu.set_receipt(slot, false, tag);
            next.push_back(std::move(fu));
        }
        out.swap(next);
    }
}

void enum_vars(const std::vector<VarSpec>& specs, std::vector<VarMap>& out) {
    out.clear();
    out.push_back(VarMap{});
    out.back().vars.resize(specs.size());
    for (std::size_t v = 0; v < specs.size(); ++v) {
        std::vector<VarMap> next;
        for (const VarMap& m : out) {
            next.push_back(m);  // unset
            for (const Value& val : specs[v].domain) {
                next.push_back(m);
                next.back().vars[v] = val;
            }
        }
        out.swap(next);
    }
}

}  // namespace

void Universe::enumerate() {
    if (enumerated_) return;
    if (cfg_.state_provider) {
        std::vector<State> provided = cfg_.state_provider();
        if (provided.size() > cfg_.state_ceiling)
            throw std::runtime_error("universe " + cfg_.name + " exceeds state ceiling");
        for (const State& s : provided) carrier_.push_back(intern(s));
        enumerated_ = true;
        return;
    }
    std::vector<Heap> gheaps, lheaps;
    std::vector<Ghost> gghosts, lghosts;
    std::vector<VarMap> lvars;
    enum_heaps(cfg_.gaddrs, gheaps);
    enum_heaps(cfg_.laddrs, lheaps);
    enum_ghosts(cfg_.gghost, gghosts);
    enum_ghosts(cfg_.lghost, lghosts);
    enum_vars(cfg_.lvars, lvars);
    std::uint64_t count = static_cast<std::uint64_t>(gheaps.size()) * gghosts.size() * lheaps.size() *
                          lghosts.size() * lvars.size();
    if (count > cfg_.state_ceiling)
        throw std::runtime_error("universe " + cfg_.name + " exceeds state ceiling (" + std::to_string(count) +
                                 " states)");
    carrier_.reserve(count);
    for (const Heap& gh : gheaps)
        for (const Ghost& gg : gghosts)
            for (const Heap& lh : lheaps)
                for (const Ghost& lg : lghosts)
                    for (const VarMap& lv : lvars) {
                        State s;
                        s.gheap = gh;
                        s.gghost = gg;
                        s.lheap = lh;
                        s.lghost = lg;
                        s.lvars = lv;
                        carrier_.push_back(intern(s));
                    }
    enumerated_ = true;
}

const std::vector<StateId>& Universe::all_states() {
    enumerate();
    return carrier_;
}

void Universe::build_tables() {
    if (tables_built_) return;
    enumerate();
    const std::size_t n = carrier_.size();
    std::unordered_map<StateId, std::size_t> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(carrier_[i], i);
    pos_ = std::move(pos);

    // Fast path: when every carrier state fully owns a common resource (an
    // always-present cell or the freelist token), no two carrier states
    // compose and the composition structure is trivially empty.
    bool disjoint = false;
    for (std::size_t a = 0; a < cfg_.gaddrs.size() && !disjoint; ++a) {
        bool all_full = !carrier_.empty();
        for (StateId id : carrier_)
            if (!(state(id).gheap.present(static_cast<int>(a)) &&
                  state(id).gheap.at(static_cast<int>(a)).frac == cfg_.denominator)) {
                all_full = false;
                break;
            }
        disjoint = all_full;
    }
    if (!disjoint && !carrier_.empty()) {
        bool all_freelist = true;
        for (StateId id : carrier_)
            if (!state(id).gghost.has_freelist) {
                all_freelist = false;
                break;
            }
        disjoint = all_freelist;
    }

    units_.assign(n, kAbortId);
    for (std::size_t i = 0; i < n; ++i) units_[i] = intern(unit_of_state(state(carrier_[i])));

    if (disjoint) {
        decomp_.assign(n, {});
        tables_built_ = true;
        return;
    }
    if (n > 4096) throw std::runtime_error("universe " + cfg_.name + " too large for composition tables");

    compose_table_.assign(n * n, -1);
    decomp_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            auto c = compose_state(state(carrier_[i]), state(carrier_[j]), cfg_.denominator);
            if (!c) continue;
            StateId cid = intern(*c);
            compose_table_[i * n + j] = static_cast<std::int32_t>(cid);
            composable_.emplace_back(carrier_[i], carrier_[j]);
            auto at = pos_.find(cid);
            if (at != pos_.end()) decomp_[at->second].emplace_back(carrier_[i], carrier_[j]);
        }
    }
    tables_built_ = true;
}

std::int64_t Universe::compose_ids(StateId a, StateId b) {
    build_tables();
    if (!compose_table_.empty()) {
        auto ia = pos_.find(a);
        auto ib = pos_.find(b);
        if (ia != pos_.end() && ib != pos_.end())
            return compose_table_[ia->second * carrier_.size() + ib->second];
    }
    auto c = compose_state(state(a), state(b), cfg_.denominator);
    if (!c) return -1;
    return intern(*c);
}

const std::vector<std::pair<StateId, StateId>>& Universe::composable_pairs() {
    build_tables();
    return composable_;
}

const std::vector<std::vector<std::pair<StateId, StateId>>>& Universe::decompositions() {
    build_tables();
    return decomp_;
}

StateId Universe::unit_id(StateId s) {
    build_tables();
    auto it = pos_.find(s);
    if (it != pos_.end()) return units_[it->second];
    return intern(unit_of_state(state(s)));
}

namespace {

std::vector<Value> parse_domain(const std::string& text) {
    std::vector<Value> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part == "bool") {
            out.push_back(Value::boolean(false));
            out.push_back(Value::boolean(true));
        } else if (part == "-inf") {
            out.push_back(Value::neg_inf());
        } else if (part == "+inf") {
            out.push_back(Value::pos_inf());
        } else if (part.rfind("int:", 0) == 0 || part.rfind("node:", 0) == 0) {
            bool node = part[0] == 'n';
            std::string range = part.substr(part.find(':') + 1);
            auto dots = range.find("..");
            int lo = std::stoi(range.substr(0, dots));
            int hi = std::stoi(range.substr(dots + 2));
            for (int v = lo; v <= hi; ++v) out.push_back(node ? Value::node(v) : Value::intv(v));
        } else {
            throw std::runtime_error("bad domain spec: " + part);
        }
    }
    return out;
}

std::vector<std::uint8_t> parse_fractions(const std::string& text, int den) {
    std::vector<std::uint8_t> out;
    if (text == "full") {
        out.push_back(static_cast<std::uint8_t>(den));
    } else if (text == "halves") {
        out = {static_cast<std::uint8_t>(den / 2), static_cast<std::uint8_t>(den)};
    } else if (text == "thirds") {
        out = {static_cast<std::uint8_t>(den / 3), static_cast<std::uint8_t>(2 * den / 3),
               static_cast<std::uint8_t>(den)};
    } else if (text.rfind("list:", 0) == 0) {
        std::stringstream ss(text.substr(5));
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(static_cast<std::uint8_t>(std::stoi(part)));
    } else {
        throw std::runtime_error("bad fraction spec: " + text);
    }
    return out;
}

}  // namespace

UniverseConfig parse_universe_config(const std::string& text) {
    UniverseConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "name") {
            ls >> cfg.name;
        } else if (key == "denominator") {
            ls >> cfg.denominator;
        } else if (key == "ceiling") {
            ls >> cfg.state_ceiling;
        } else if (key == "gaddr" || key == "laddr") {
            AddrSpec spec;
            std::string policy, domain, fractions;
            ls >> spec.name >> policy >> domain >> fractions;
            spec.policy = policy == "always" ? AddrPolicy::Always : AddrPolicy::Optional;
            spec.domain = parse_domain(domain);
            spec.fractions = policy == "always" ? std::vector<std::uint8_t>{static_cast<std::uint8_t>(cfg.denominator)}
                                                : parse_fractions(fractions, cfg.denominator);
            (key == "gaddr" ? cfg.gaddrs : cfg.laddrs).push_back(std::move(spec));
        } else if (key == "lvar") {
            VarSpec spec;
            std::string domain;
            ls >> spec.name >> domain;
            spec.domain = parse_domain(domain);
            cfg.lvars.push_back(std::move(spec));
        } else if (key == "gobl" || key == "lobl") {
            TokenTag t;
            int op = 0, a0 = 0, a1 = 0;
            ls >> op >> a0 >> a1;
            t.op = static_cast<std::uint8_t>(op);
            t.args[0] = static_cast<std::int16_t>(a0);
            t.args[1] = static_cast<std::int16_t>(a1);
            (key == "gobl" ? cfg.gghost : cfg.lghost).obligations.push_back(t);
        } else if (key == "gexclusive" || key == "lexclusive") {
            (key == "gexclusive" ? cfg.gghost : cfg.lghost).exclusive = true;
        } else if (key == "grct" || key == "lrct") {
            int slot = -1, op = 0, a0 = 0;
            ls >> slot >> op >> a0;
            TokenTag t;
            t.op = static_cast<std::uint8_t>(op);
            t.args[0] = static_cast<std::int16_t>(a0);
            (key == "grct" ? cfg.gghost : cfg.lghost).receipts.emplace_back(slot, t);
        } else {
            throw std::runtime_error("unknown universe config key: " + key);
        }
    }
    return cfg;
}

UniverseConfig load_universe_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open universe config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_universe_config(buf.str());
}

}  // namespace tempo
