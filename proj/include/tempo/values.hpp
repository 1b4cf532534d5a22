#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>

namespace tempo {

// A value stored in a heap cell or a local variable. Everything is drawn
// from the finite domain declared by the active universe configuration.
struct Value {
    enum Kind : std::uint8_t {
        None,     // unset local variable
        Int,      // integer in a configured range
        Bool,     // boolean flag (marks, locks)
        Node,     // node identifier
        NegInf,   // -oo sentinel key
        PosInf,   // +oo sentinel key
        RdA,      // rdcss root in active mode: A(descriptor-id)
        RdI,      // rdcss root in inactive mode: I(n)
        Desc,     // descriptor record D(loc-id, n1, m1, n2)
    };

    Kind kind = None;
    std::array<std::int16_t, 4> f{0, 0, 0, 0};

    static Value none() { return Value{}; }
    static Value intv(int n) { return Value{Int, {static_cast<std::int16_t>(n), 0, 0, 0}}; }
    static Value boolean(bool b) { return Value{Bool, {static_cast<std::int16_t>(b ? 1 : 0), 0, 0, 0}}; }
    static Value node(int id) { return Value{Node, {static_cast<std::int16_t>(id), 0, 0, 0}}; }
    static Value neg_inf() { return Value{NegInf, {0, 0, 0, 0}}; }
    static Value pos_inf() { return Value{PosInf, {0, 0, 0, 0}}; }
    static Value rd_active(int desc) { return Value{RdA, {static_cast<std::int16_t>(desc), 0, 0, 0}}; }
    static Value rd_inactive(int n) { return Value{RdI, {static_cast<std::int16_t>(n), 0, 0, 0}}; }
    static Value descriptor(int loc, int n1, int m1, int n2) {
        return Value{Desc, {static_cast<std::int16_t>(loc), static_cast<std::int16_t>(n1),
                            static_cast<std::int16_t>(m1), static_cast<std::int16_t>(n2)}};
    }

    bool is_set() const { return kind != None; }
    int as_int() const { return f[0]; }
    bool as_bool() const { return f[0] != 0; }

    friend bool operator==(const Value& a, const Value& b) { return a.kind == b.kind && a.f == b.f; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    friend bool operator<(const Value& a, const Value& b) {
        return std::tie(a.kind, a.f) < std::tie(b.kind, b.f);
    }
};

// Total order on keys: -oo < any int < +oo. Only meaningful for key-like values.
inline bool key_less(const Value& a, const Value& b) {
    if (a.kind == Value::NegInf) return b.kind != Value::NegInf;
    if (a.kind == Value::PosInf) return false;
    if (b.kind == Value::PosInf) return true;
    if (b.kind == Value::NegInf) return false;
    return a.as_int() < b.as_int();
}

inline bool key_leq(const Value& a, const Value& b) { return !key_less(b, a); }

std::string to_string(const Value& v);

// Fractional permission: numerator over the universe's fixed denominator.
// Composition adds numerators and is undefined above the denominator.
struct Fraction {
    std::uint8_t num = 0;
};

}  // namespace tempo
