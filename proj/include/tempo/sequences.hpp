#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempo/universe.hpp"

namespace tempo {

// Non-empty sequence of states. Two computations compose iff they share the
// prefix (all but the last state) and the last states compose; the result
// keeps the shared prefix.
struct Computation {
    std::vector<StateId> states;

    StateId last() const { return states.back(); }
    std::size_t length() const { return states.size(); }

    friend bool operator==(const Computation& a, const Computation& b) { return a.states == b.states; }
};

constexpr int kNoCommand = -1;

// States interleaved with recorded command labels: gaps[i] sits between
// states[i] and states[i+1]; kNoCommand marks an interference step.
// Composition shares the entire past, including recorded commands.
struct History {
    std::vector<StateId> states;
    std::vector<int> gaps;

    StateId last() const { return states.back(); }
    std::size_t length() const { return states.size(); }

    friend bool operator==(const History& a, const History& b) { return a.states == b.states && a.gaps == b.gaps; }
};

std::optional<Computation> compose_computation(Universe& u, const Computation& a, const Computation& b);
std::optional<History> compose_history(Universe& u, const History& a, const History& b);

std::string to_string(const Universe& u, const Computation& c);
std::string to_string(const Universe& u, const History& h);

// Uniform read-only view over computations and histories so predicate
// evaluation does not care which one it gets.
class SeqRef {
public:
    SeqRef(const Universe& u, const Computation& c) : u_(&u), states_(&c.states), gaps_(nullptr) {}
    SeqRef(const Universe& u, const History& h) : u_(&u), states_(&h.states), gaps_(&h.gaps) {}
    SeqRef(const Universe& u, const std::vector<StateId>& states, const std::vector<int>* gaps = nullptr)
        : u_(&u), states_(&states), gaps_(gaps) {}

    const Universe& universe() const { return *u_; }
    std::size_t length() const { return states_->size(); }
    const State& state(std::size_t i) const { return u_->state((*states_)[i]); }
    StateId state_id(std::size_t i) const { return (*states_)[i]; }
    bool is_history() const { return gaps_ != nullptr; }
    // command recorded between state i and state i+1, or kNoCommand
    int gap(std::size_t i) const { return gaps_ ? (*gaps_)[i] : kNoCommand; }

private:
    const Universe* u_;
    const std::vector<StateId>* states_;
    const std::vector<int>* gaps_;
};

}  // namespace tempo
