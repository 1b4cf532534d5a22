#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempo/state.hpp"

namespace tempo {

using StateId = std::uint32_t;
constexpr StateId kAbortId = 0;

// How an address behaves under enumeration.
enum class AddrPolicy {
    Optional,  // cell may be absent or present with any allowed fraction
    Always,    // cell always present with full permission
};

struct AddrSpec {
    std::string name;
    AddrPolicy policy = AddrPolicy::Optional;
    std::vector<Value> domain;
    std::vector<std::uint8_t> fractions;  // allowed numerators when present
};

struct VarSpec {
    std::string name;
    std::vector<Value> domain;  // None (unset) is always included in enumeration
};

// Ghost vocabulary for enumeration: each obligation may be present once;
// each receipt slot ranges over {absent, persistent, full}. With `exclusive`
// set, a state holds at most one token from the whole vocabulary.
struct GhostSpec {
    std::vector<TokenTag> obligations;
    std::vector<std::pair<int, TokenTag>> receipts;
    bool exclusive = false;
};

struct UniverseConfig {
    std::string name = "unnamed";
    int denominator = 24;
    std::uint64_t state_ceiling = 4'000'000;
    std::vector<AddrSpec> gaddrs;
    std::vector<AddrSpec> laddrs;
    std::vector<VarSpec> lvars;
    GhostSpec gghost;
    GhostSpec lghost;
    // When set, enumeration uses this instead of the product construction
    // (used by structure universes whose carrier is the reachable state set).
    std::function<std::vector<State>()> state_provider;
};

UniverseConfig parse_universe_config(const std::string& text);
UniverseConfig load_universe_config(const std::string& path);

// A universe owns the finite state carrier: configuration, an intern pool of
// states, the enumeration order, and composition tables. All post-enumeration
// queries are const and safe to call from parallel workers.
class Universe {
public:
    explicit Universe(UniverseConfig cfg);

    const UniverseConfig& config() const { return cfg_; }
    const std::string& name() const { return cfg_.name; }
    int denominator() const { return cfg_.denominator; }

    State empty_state() const;
    State abort_state() const;

    StateId intern(const State& s);
    std::optional<StateId> find(const State& s) const;
    const State& state(StateId id) const { return pool_[id]; }
    std::size_t pool_size() const { return pool_.size(); }

    // Enumerates every state of the universe exactly once, in a deterministic
    // order. Throws if the count exceeds the configured ceiling.
    const std::vector<StateId>& all_states();
    bool enumerated() const { return enumerated_; }
    std::size_t carrier_size() const { return carrier_.size(); }

    // Builds enumeration plus composition tables; call before entering
    // parallel regions, all later queries are read-only.
    void ensure_tables() { build_tables(); }
    std::optional<std::size_t> carrier_pos(StateId id) const {
        auto it = pos_.find(id);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }

    // Composition over interned states; returns -1 when undefined. Requires
    // enumeration for table-backed lookups but falls back to direct
    // composition for states outside the carrier.
    std::int64_t compose_ids(StateId a, StateId b);
    const std::vector<std::pair<StateId, StateId>>& composable_pairs();
    // For each carrier state, the list of (left, right) decompositions.
    const std::vector<std::vector<std::pair<StateId, StateId>>>& decompositions();
    StateId unit_id(StateId s);

    int var_id(const std::string& name) const;
    int gaddr_id(const std::string& name) const;
    int laddr_id(const std::string& name) const;

private:
    void enumerate();

    UniverseConfig cfg_;
    std::vector<State> pool_;
    std::unordered_map<State, StateId, StateHash> index_;
    std::vector<StateId> carrier_;
    bool enumerated_ = false;
    bool tables_built_ = false;
    std::vector<std::int32_t> compose_table_;  // carrier x carrier, -2 = not computed
    std::vector<std::pair<StateId, StateId>> composable_;
    std::vector<std::vector<std::pair<StateId, StateId>>> decomp_;
    std::vector<StateId> units_;
    std::unordered_map<StateId, std::size_t> pos_;
    void build_tables();
};

}  // namespace tempo
