#pragma once

#include "qdual/rat.hpp"

#include <array>
#include <string>

namespace qdual {

// Variable order used everywhere: q first, then the three projective symbols,
// then the series variable z.
enum class Var : int { q = 0, B = 1, C = 2, D = 3, z = 4 };
inline constexpr int kNumVars = 5;
using Exps = std::array<int, kNumVars>;

inline const char* var_name(Var v) {
    switch (v) {
        case Var::q: return "q";
        case Var::B: return "B";
        case Var::C: return "C";
        case Var::D: return "D";
        case Var::z: return "z";
    }
    return "?";
}

inline Exps exps_add(const Exps& a, const Exps& b) {
    Exps r{};
    for (int i = 0; i < kNumVars; ++i) r[i] = a[i] + b[i];
    return r;
}

inline Exps exps_neg(const Exps& a) {
    Exps r{};
    for (int i = 0; i < kNumVars; ++i) r[i] = -a[i];
    return r;
}

// A monomial c * q^e0 * B^e1 * C^e2 * D^e3 * z^e4 with c a nonzero rational.
// Exponents may be negative.
struct Mono {
    Rat c = 1;
    Exps e{};

    static Mono one() { return Mono{}; }
    static Mono constant(const Rat& c) { return Mono{c, {}}; }
    static Mono var(Var v, int power = 1) {
        Mono m;
        m.e[static_cast<int>(v)] = power;
        return m;
    }

    Mono shifted_q(int dq) const {
        Mono m = *this;
        m.e[0] += dq;
        return m;
    }
    friend Mono operator*(const Mono& a, const Mono& b) { return Mono{a.c * b.c, exps_add(a.e, b.e)}; }
    Mono inverse() const {
        if (c == 0) throw QdualError("inverse of zero monomial");
        return Mono{Rat(1) / c, exps_neg(e)};
    }
    Mono pow(int n) const {
        Mono m{rat_pow(c, n), {}};
        for (int i = 0; i < kNumVars; ++i) m.e[i] = e[i] * n;
        return m;
    }
    bool operator==(const Mono& o) const { return c == o.c && e == o.e; }
    bool operator!=(const Mono& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = rat_str(c);
        for (int i = 0; i < kNumVars; ++i) {
            if (e[i] == 0) continue;
            s += "*";
            s += var_name(static_cast<Var>(i));
            if (e[i] != 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }
};

// Projective parameter value: 0, infinity, or a monomial. q-shifts act on the
// monomial exponent and are absorbed by the two degenerate values (the unique
// assignment for which t/(t-u) has a consistent limit).
struct Param {
    enum class Kind { Zero, Infinity, Finite } kind = Kind::Finite;
    Mono m;

    static Param zero() { return Param{Kind::Zero, Mono::one()}; }
    static Param infinity() { return Param{Kind::Infinity, Mono::one()}; }
    static Param finite(Mono mono) {
        if (mono.c == 0) throw QdualError("finite Param with zero coefficient; use Param::zero()");
        return Param{Kind::Finite, mono};
    }
    static Param unit() { return finite(Mono::one()); }
    static Param symbol(Var v) { return finite(Mono::var(v)); }

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_infinity() const { return kind == Kind::Infinity; }
    bool is_finite() const { return kind == Kind::Finite; }

    Param shifted_q(int dq) const {
        if (!is_finite()) return *this;
        return finite(m.shifted_q(dq));
    }

    std::string str() const {
        switch (kind) {
            case Kind::Zero: return "0";
            case Kind::Infinity: return "inf";
            case Kind::Finite: return m.str();
        }
        return "?";
    }
};

}  // namespace qdual
