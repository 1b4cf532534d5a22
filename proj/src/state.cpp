#include "tempo/state.hpp"

#include <sstream>

namespace tempo {

std::string to_string(const Value& v) {
    switch (v.kind) {
        case Value::None: return "_";
        case Value::Int: return std::to_string(v.f[0]);
        case Value::Bool: return v.f[0] ? "true" : "false";
        case Value::Node: return "n" + std::to_string(v.f[0]);
        case Value::NegInf: return "-inf";
        case Value::PosInf: return "+inf";
        case Value::RdA: return "A(d" + std::to_string(v.f[0]) + ")";
        case Value::RdI: return "I(" + std::to_string(v.f[0]) + ")";
        case Value::Desc:
            return "D(l" + std::to_string(v.f[0]) + "," + std::to_string(v.f[1]) + "," +
                   std::to_string(v.f[2]) + "," + std::to_string(v.f[3]) + ")";
    }
    return "?";
}

std::optional<Ghost> compose_ghost(const Ghost& a, const Ghost& b) {
    Ghost out;
    // obligations: multiset union
    out.obligations.reserve(a.obligations.size() + b.obligations.size());
    std::merge(a.obligations.begin(), a.obligations.end(), b.obligations.begin(), b.obligations.end(),
               std::back_inserter(out.obligations));
    // receipts: per-slot unit laws
    {
        std::size_t i = 0, j = 0;
        while (i < a.receipts.size() || j < b.receipts.size()) {
            if (j == b.receipts.size() || (i < a.receipts.size() && a.receipts[i].slot < b.receipts[j].slot)) {
                out.receipts.push_back(a.receipts[i++]);
            } else if (i == a.receipts.size() || b.receipts[j].slot < a.receipts[i].slot) {
                out.receipts.push_back(b.receipts[j++]);
            } else {
                const ReceiptEntry& x = a.receipts[i++];
                const ReceiptEntry& y = b.receipts[j++];
                if (!(x.tag == y.tag)) return std::nullopt;
                if (!x.persistent && !y.persistent) return std::nullopt;  // RCT * RCT undefined
                ReceiptEntry m = x;
                m.persistent = x.persistent && y.persistent;  // oRCT * RCT = RCT
                out.receipts.push_back(m);
            }
        }
    }
    // clocks and contents: disjoint union
    {
        std::size_t i = 0, j = 0;
        while (i < a.clocks.size() || j < b.clocks.size()) {
            if (j == b.clocks.size() || (i < a.clocks.size() && a.clocks[i].first < b.clocks[j].first))
                out.clocks.push_back(a.clocks[i++]);
            else if (i == a.clocks.size() || b.clocks[j].first < a.clocks[i].first)
                out.clocks.push_back(b.clocks[j++]);
            else
                return std::nullopt;
        }
    }
    {
        std::size_t i = 0, j = 0;
        while (i < a.contents.size() || j < b.contents.size()) {
            if (j == b.contents.size() || (i < a.contents.size() && a.contents[i].first < b.contents[j].first))
                out.contents.push_back(a.contents[i++]);
            else if (i == a.contents.size() || b.contents[j].first < a.contents[i].first)
                out.contents.push_back(b.contents[j++]);
            else
                return std::nullopt;
        }
    }
    // freelist: exclusive token
    if (a.has_freelist && b.has_freelist) return std::nullopt;
    out.has_freelist = a.has_freelist || b.has_freelist;
    out.freelist = a.has_freelist ? a.freelist : b.freelist;
    return out;
}

// The designated unit of the map-lifted ghost algebra is the empty map; the
// snapshot-is-unit structure lives per receipt slot and is exercised through
// composition.
Ghost unit_of_ghost(const Ghost& g) {
    (void)g;
    return Ghost{};
}

std::optional<Heap> compose_heap(const Heap& a, const Heap& b, int denominator) {
    if (a.cells.size() != b.cells.size()) return std::nullopt;
    Heap out;
    out.cells.resize(a.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const HeapCell& x = a.cells[i];
        const HeapCell& y = b.cells[i];
        if (x.frac == 0) {
            out.cells[i] = y;
        } else if (y.frac == 0) {
            out.cells[i] = x;
        } else {
            if (!(x.val == y.val)) return std::nullopt;
            int sum = x.frac + y.frac;
            if (sum > denominator) return std::nullopt;
            out.cells[i] = HeapCell{static_cast<std::uint8_t>(sum), x.val};
        }
    }
    return out;
}

std::optional<VarMap> compose_vars(const VarMap& a, const VarMap& b) {
    if (a.vars.size() != b.vars.size()) return std::nullopt;
    VarMap out;
    out.vars.resize(a.vars.size());
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        if (a.vars[i].is_set() && b.vars[i].is_set()) return std::nullopt;
        out.vars[i] = a.vars[i].is_set() ? a.vars[i] : b.vars[i];
    }
    return out;
}

std::optional<State> compose_state(const State& a, const State& b, int denominator) {
    if (a.abort || b.abort) return std::nullopt;
    auto gh = compose_heap(a.gheap, b.gheap, denominator);
    if (!gh) return std::nullopt;
    auto gg = compose_ghost(a.gghost, b.gghost);
    if (!gg) return std::nullopt;
    auto lh = compose_heap(a.lheap, b.lheap, denominator);
    if (!lh) return std::nullopt;
    auto lg = compose_ghost(a.lghost, b.lghost);
    if (!lg) return std::nullopt;
    auto lv = compose_vars(a.lvars, b.lvars);
    if (!lv) return std::nullopt;
    State out;
    out.gheap = std::move(*gh);
    out.gghost = std::move(*gg);
    out.lheap = std::move(*lh);
    out.lghost = std::move(*lg);
    out.lvars = std::move(*lv);
    return out;
}

State unit_of_state(const State& s) {
    State u;
    u.gheap.cells.assign(s.gheap.cells.size(), HeapCell{});
    u.lheap.cells.assign(s.lheap.cells.size(), HeapCell{});
    u.lvars.vars.assign(s.lvars.vars.size(), Value::none());
    u.gghost = unit_of_ghost(s.gghost);
    u.lghost = unit_of_ghost(s.lghost);
    return u;
}

namespace {

inline void mix(std::uint64_t& h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

void hash_ghost(std::uint64_t& h, const Ghost& g) {
    mix(h, g.obligations.size());
    for (const auto& t : g.obligations) {
        mix(h, t.op);
        for (auto a : t.args) mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)));
    }
    mix(h, g.receipts.size());
    for (const auto& r : g.receipts) {
        mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(r.slot)));
        mix(h, r.persistent ? 7 : 3);
        mix(h, r.tag.op);
        for (auto a : r.tag.args) mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)));
    }
    mix(h, g.clocks.size());
    for (const auto& c : g.clocks) {
        mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(c.first)));
        mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(c.second)));
    }
    mix(h, g.contents.size());
    for (const auto& c : g.contents) {
        mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(c.first)));
        mix(h, c.second.kind);
        mix(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.second.payload)));
    }
    mix(h, g.has_freelist ? 11 : 5);
    for (auto a : g.freelist) mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)));
}

void hash_heap(std::uint64_t& h, const Heap& heap) {
    for (const auto& c : heap.cells) {
        mix(h, c.frac);
        mix(h, c.val.kind);
        for (auto a : c.val.f) mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)));
    }
}

}  // namespace

std::uint64_t hash_state(const State& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    if (s.abort) {
        mix(h, 0xabededULL);
        return h;
    }
    hash_heap(h, s.gheap);
    hash_ghost(h, s.gghost);
    hash_heap(h, s.lheap);
    hash_ghost(h, s.lghost);
    for (const auto& v : s.lvars.vars) {
        mix(h, v.kind);
        for (auto a : v.f) mix(h, static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)));
    }
    return h;
}

std::string to_string(const Ghost& g) {
    std::ostringstream os;
    bool any = false;
    for (const auto& t : g.obligations) {
        os << (any ? " " : "") << "OBL" << int(t.op) << "(" << t.args[0] << "," << t.args[1] << ")";
        any = true;
    }
    for (const auto& r : g.receipts) {
        os << (any ? " " : "") << (r.persistent ? "oRCT" : "RCT") << int(r.tag.op);
        if (r.slot >= 0) os << "@" << r.slot;
        os << "(" << r.tag.args[0] << "," << r.tag.args[1] << ")";
        any = true;
    }
    for (const auto& c : g.clocks) {
        os << (any ? " " : "") << "clk" << c.first << "=" << c.second;
        any = true;
    }
    for (const auto& c : g.contents) {
        os << (any ? " " : "") << "abs" << c.first << "="
           << (c.second.kind == AbstractVal::KeySet ? "set:" : "") << c.second.payload;
        any = true;
    }
    if (g.has_freelist) {
        os << (any ? " " : "") << "free{";
        for (std::size_t i = 0; i < g.freelist.size(); ++i) os << (i ? "," : "") << g.freelist[i];
        os << "}";
        any = true;
    }
    if (!any) os << "-";
    return os.str();
}

std::string to_string(const State& s) {
    if (s.abort) return "<abort>";
    std::ostringstream os;
    os << "g[";
    bool first = true;
    for (std::size_t a = 0; a < s.gheap.cells.size(); ++a) {
        if (s.gheap.cells[a].frac == 0) continue;
        if (!first) os << " ";
        os << a << ":" << to_string(s.gheap.cells[a].val);
        if (s.gheap.cells[a].frac != 24) os << "/" << int(s.gheap.cells[a].frac);
        first = false;
    }
    os << "; " << to_string(s.gghost) << "] l[";
    first = true;
    for (std::size_t a = 0; a < s.lheap.cells.size(); ++a) {
        if (s.lheap.cells[a].frac == 0) continue;
        if (!first) os << " ";
        os << a << ":" << to_string(s.lheap.cells[a].val);
        if (s.lheap.cells[a].frac != 24) os << "/" << int(s.lheap.cells[a].frac);
        first = false;
    }
    os << "; " << to_string(s.lghost) << ";";
    for (std::size_t v = 0; v < s.lvars.vars.size(); ++v) {
        if (s.lvars.vars[v].is_set()) os << " v" << v << "=" << to_string(s.lvars.vars[v]);
    }
    os << "]";
    return os.str();
}

}  // namespace tempo
