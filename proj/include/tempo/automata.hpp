#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <vector>

namespace tempo {

// Deterministic finite automaton over command labels. Used to interpret the
// program argument of history predicates as a regular language.
class Dfa {
public:
    Dfa(std::vector<int> alphabet, int start, std::vector<std::map<int, int>> trans, std::set<int> accepting)
        : alphabet_(std::move(alphabet)), start_(start), trans_(std::move(trans)), accepting_(std::move(accepting)) {}

    const std::vector<int>& alphabet() const { return alphabet_; }
    int start() const { return start_; }
    int step(int state, int symbol) const {
        if (state < 0) return -1;
        auto it = trans_[state].find(symbol);
        return it == trans_[state].end() ? -1 : it->second;
    }
    bool accepting(int state) const { return state >= 0 && accepting_.count(state) > 0; }
    bool accepts_empty() const { return accepting(start_); }

    template <typename It>
    bool accepts(It begin, It end) const {
        int s = start_;
        for (It it = begin; it != end; ++it) {
            s = step(s, *it);
            if (s < 0) return false;
        }
        return accepting(s);
    }

    std::size_t state_count() const { return trans_.size(); }

private:
    std::vector<int> alphabet_;
    int start_;
    std::vector<std::map<int, int>> trans_;
    std::set<int> accepting_;
};

// Nondeterministic automaton with epsilon moves; builder for Thompson-style
// construction from programs.
struct Nfa {
    struct StateN {
        std::vector<std::pair<int, int>> edges;  // (symbol, target)
        std::vector<int> eps;
    };
    std::vector<StateN> states;
    int start = 0;
    int accept = 0;

    int add_state() {
        states.push_back({});
        return static_cast<int>(states.size()) - 1;
    }
};

Dfa determinize(const Nfa& nfa);

// L(a) subseteq L(b), via the product construction.
bool language_included(const Dfa& a, const Dfa& b);

}  // namespace tempo
