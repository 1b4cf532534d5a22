#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tempo {

// Ghost token identifying one operation instance's duty or certificate.
// args carry operation parameters; for receipts the last used slot holds
// the result value.
struct TokenTag {
    std::uint8_t op = 0;
    std::array<std::int16_t, 4> args{0, 0, 0, 0};

    friend bool operator==(const TokenTag& a, const TokenTag& b) { return a.op == b.op && a.args == b.args; }
    friend bool operator<(const TokenTag& a, const TokenTag& b) {
        if (a.op != b.op) return a.op < b.op;
        return a.args < b.args;
    }
};

// Receipt entry: slot -1 is the unindexed slot, slots >= 0 are clock indices.
// A persistent snapshot is the unit of its receipt: oRCT * RCT = RCT and
// oRCT * oRCT = oRCT; all other same-slot compositions are undefined.
struct ReceiptEntry {
    std::int16_t slot = -1;
    bool persistent = false;
    TokenTag tag;

    friend bool operator==(const ReceiptEntry& a, const ReceiptEntry& b) {
        return a.slot == b.slot && a.persistent == b.persistent && a.tag == b.tag;
    }
    friend bool operator<(const ReceiptEntry& a, const ReceiptEntry& b) {
        if (a.slot != b.slot) return a.slot < b.slot;
        if (a.persistent != b.persistent) return a.persistent < b.persistent;
        return a.tag < b.tag;
    }
};

// Abstract contents of one structure root: either a key set (bitmask over
// the key domain) or a single integer value.
struct AbstractVal {
    enum Kind : std::uint8_t { KeySet, IntVal };
    Kind kind = IntVal;
    std::int32_t payload = 0;

    static AbstractVal key_set(std::uint32_t bits) { return AbstractVal{KeySet, static_cast<std::int32_t>(bits)}; }
    static AbstractVal int_val(int v) { return AbstractVal{IntVal, v}; }

    friend bool operator==(const AbstractVal& a, const AbstractVal& b) {
        return a.kind == b.kind && a.payload == b.payload;
    }
    friend bool operator<(const AbstractVal& a, const AbstractVal& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.payload < b.payload;
    }
};

// Ghost layer of a (sub)state: obligation multiset, receipt map, clock map,
// abstract-contents map, and the allocation free-list token.
struct Ghost {
    std::vector<TokenTag> obligations;                          // sorted multiset
    std::vector<ReceiptEntry> receipts;                         // sorted by slot, one entry per slot
    std::vector<std::pair<std::int16_t, std::int16_t>> clocks;  // root -> counter, sorted, disjoint union
    std::vector<std::pair<std::int16_t, AbstractVal>> contents; // root -> abstract value, sorted, disjoint union
    bool has_freelist = false;
    std::vector<std::int16_t> freelist;                         // sorted free addresses; exclusive token

    bool empty() const {
        return obligations.empty() && receipts.empty() && clocks.empty() && contents.empty() && !has_freelist;
    }

    void add_obligation(const TokenTag& t) {
        obligations.insert(std::upper_bound(obligations.begin(), obligations.end(), t), t);
    }
    bool remove_obligation(const TokenTag& t) {
        auto it = std::lower_bound(obligations.begin(), obligations.end(), t);
        if (it == obligations.end() || !(*it == t)) return false;
        obligations.erase(it);
        return true;
    }
    const ReceiptEntry* receipt_at(int slot) const {
        for (const auto& r : receipts)
            if (r.slot == slot) return &r;
        return nullptr;
    }
    void set_receipt(int slot, bool persistent, const TokenTag& tag) {
        ReceiptEntry e{static_cast<std::int16_t>(slot), persistent, tag};
        auto it = std::lower_bound(receipts.begin(), receipts.end(), e,
                                   [](const ReceiptEntry& a, const ReceiptEntry& b) { return a.slot < b.slot; });
        if (it != receipts.end() && it->slot == e.slot)
            *it = e;
        else
            receipts.insert(it, e);
    }
    std::optional<int> clock_of(int root) const {
        for (const auto& c : clocks)
            if (c.first == root) return c.second;
        return std::nullopt;
    }
    void set_clock(int root, int val) {
        for (auto& c : clocks)
            if (c.first == root) {
                c.second = static_cast<std::int16_t>(val);
                return;
            }
        clocks.emplace_back(static_cast<std::int16_t>(root), static_cast<std::int16_t>(val));
        std::sort(clocks.begin(), clocks.end());
    }
    std::optional<AbstractVal> contents_of(int root) const {
        for (const auto& c : contents)
            if (c.first == root) return c.second;
        return std::nullopt;
    }
    void set_contents(int root, AbstractVal v) {
        for (auto& c : contents)
            if (c.first == root) {
                c.second = v;
                return;
            }
        contents.emplace_back(static_cast<std::int16_t>(root), v);
        std::sort(contents.begin(), contents.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    friend bool operator==(const Ghost& a, const Ghost& b) {
        return a.obligations == b.obligations && a.receipts == b.receipts && a.clocks == b.clocks &&
               a.contents == b.contents && a.has_freelist == b.has_freelist && a.freelist == b.freelist;
    }
};

// Elementwise partial composition. Returns nullopt where undefined.
std::optional<Ghost> compose_ghost(const Ghost& a, const Ghost& b);

// The unit of a ghost: empty multisets/maps except that every receipt is
// replaced by its persistent snapshot.
Ghost unit_of_ghost(const Ghost& g);

std::string to_string(const Ghost& g);

}  // namespace tempo
