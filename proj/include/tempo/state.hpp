#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempo/ghost.hpp"
#include "tempo/values.hpp"

namespace tempo {

// One heap cell: fractional permission plus value. frac 0 means absent.
struct HeapCell {
    std::uint8_t frac = 0;
    Value val;

    friend bool operator==(const HeapCell& a, const HeapCell& b) { return a.frac == b.frac && a.val == b.val; }
};

// Finite map from address to (fraction, value), represented densely over the
// universe's address space.
struct Heap {
    std::vector<HeapCell> cells;

    bool present(int addr) const {
        return addr >= 0 && addr < static_cast<int>(cells.size()) && cells[addr].frac > 0;
    }
    const HeapCell& at(int addr) const { return cells[addr]; }
    void set(int addr, std::uint8_t frac, Value v) { cells[addr] = HeapCell{frac, v}; }
    void clear(int addr) { cells[addr] = HeapCell{}; }

    friend bool operator==(const Heap& a, const Heap& b) { return a.cells == b.cells; }
};

// Map from local-variable id to value; Value::None means unset. Two var maps
// compose only if no variable is set on both sides.
struct VarMap {
    std::vector<Value> vars;

    const Value& get(int v) const { return vars[v]; }
    void set(int v, Value val) { vars[v] = val; }

    friend bool operator==(const VarMap& a, const VarMap& b) { return a.vars == b.vars; }
};

// A state is a pair of a global and a local part; the local part adds the
// variable map. abort is a reserved sentinel that composes with nothing.
struct State {
    bool abort = false;
    Heap gheap;
    Ghost gghost;
    Heap lheap;
    Ghost lghost;
    VarMap lvars;

    friend bool operator==(const State& a, const State& b) {
        if (a.abort != b.abort) return false;
        if (a.abort) return true;
        return a.gheap == b.gheap && a.gghost == b.gghost && a.lheap == b.lheap && a.lghost == b.lghost &&
               a.lvars == b.lvars;
    }
    friend bool operator!=(const State& a, const State& b) { return !(a == b); }
};

std::uint64_t hash_state(const State& s);

struct StateHash {
    std::size_t operator()(const State& s) const { return static_cast<std::size_t>(hash_state(s)); }
};

// Elementwise partial composition of heaps: same-address cells must agree on
// the value, fractions add up to at most the denominator.
std::optional<Heap> compose_heap(const Heap& a, const Heap& b, int denominator);
std::optional<VarMap> compose_vars(const VarMap& a, const VarMap& b);
std::optional<State> compose_state(const State& a, const State& b, int denominator);

// unit(s): empty heaps and variable maps, ghost units per component.
State unit_of_state(const State& s);

std::string to_string(const State& s);

}  // namespace tempo
