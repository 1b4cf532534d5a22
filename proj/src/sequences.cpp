#include "tempo/sequences.hpp"

#include <sstream>

namespace tempo {

std::optional<Computation> compose_computation(Universe& u, const Computation& a, const Computation& b) {
    if (a.states.size() != b.states.size()) return std::nullopt;
    for (std::size_t i = 0; i + 1 < a.states.size(); ++i)
        if (a.states[i] != b.states[i]) return std::nullopt;
    std::int64_t last = u.compose_ids(a.last(), b.last());
    if (last < 0) return std::nullopt;
    Computation out = a;
    out.states.back() = static_cast<StateId>(last);
    return out;
}

std::optional<History> compose_history(Universe& u, const History& a, const History& b) {
    if (a.states.size() != b.states.size() || a.gaps != b.gaps) return std::nullopt;
    for (std::size_t i = 0; i + 1 < a.states.size(); ++i)
        if (a.states[i] != b.states[i]) return std::nullopt;
    std::int64_t last = u.compose_ids(a.last(), b.last());
    if (last < 0) return std::nullopt;
    History out = a;
    out.states.back() = static_cast<StateId>(last);
    return out;
}

std::string to_string(const Universe& u, const Computation& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.states.size(); ++i) {
        if (i) os << " -> ";
        os << to_string(u.state(c.states[i]));
    }
    return os.str();
}

std::string to_string(const Universe& u, const History& h) {
    std::ostringstream os;
    for (std::size_t i = 0; i < h.states.size(); ++i) {
        if (i) {
            if (h.gaps[i - 1] == kNoCommand)
                os << " ~> ";
            else
                os << " -[" << h.gaps[i - 1] << "]-> ";
        }
        os << to_string(u.state(h.states[i]));
    }
    return os.str();
}

}  // namespace tempo
