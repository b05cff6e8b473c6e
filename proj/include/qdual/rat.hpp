#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdual {

// Exact rational arithmetic. mpq keeps values canonical (coprime, positive
// denominator) after every operation, so equality is plain comparison.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

struct QdualError : std::runtime_error {
    explicit QdualError(const std::string& what) : std::runtime_error(what) {}
};

struct PoleAtPoint : QdualError {
    explicit PoleAtPoint(const std::string& what = "denominator vanished at evaluation point")
        : QdualError(what) {}
};

struct MissingVariable : QdualError {
    explicit MissingVariable(const std::string& what = "evaluation point does not assign a free variable")
        : QdualError(what) {}
};

inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw PoleAtPoint("0 raised to a negative power");
        return Rat(0);
    }
    Rat base = e < 0 ? Rat(1) / x : x;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// "n" or "n/d"; both forms are accepted by rat_parse.
inline std::string rat_str(const Rat& x) {
    const Int& num = boost::multiprecision::numerator(x);
    const Int& den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rat rat_parse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw QdualError("cannot parse rational literal '" + s + "'");
    }
}

// Prime field element. Default modulus is the least prime above 2^61, so
// q-power exponents at desk scale never wrap around the group order.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693967ULL;

struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = kDefaultPrime;

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    static Fp from_int(std::int64_t value, std::uint64_t prime) {
        std::int64_t r = value % static_cast<std::int64_t>(prime);
        if (r < 0) r += static_cast<std::int64_t>(prime);
        return Fp(static_cast<std::uint64_t>(r), prime);
    }

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return Fp(s, a.p);
    }
    friend Fp operator-(Fp a, Fp b) {
        std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + a.p - b.v;
        return Fp(s, a.p);
    }
    friend Fp operator*(Fp a, Fp b) {
        unsigned __int128 prod = static_cast<unsigned __int128>(a.v) * b.v;
        return Fp(static_cast<std::uint64_t>(prod % a.p), a.p);
    }
    Fp operator-() const { return Fp(v == 0 ? 0 : p - v, p); }

    Fp pow(std::uint64_t e) const {
        Fp acc(1, p), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Fp inv() const {
        if (v == 0) throw PoleAtPoint("inversion of 0 in F_p");
        return pow(p - 2);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    Fp pow_signed(long e) const {
        if (e >= 0) return pow(static_cast<std::uint64_t>(e));
        return inv().pow(static_cast<std::uint64_t>(-e));
    }

    bool operator==(const Fp& o) const { return v == o.v && p == o.p; }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    bool is_zero() const { return v == 0; }
};

// Reduce an exact rational into F_p (fails on denominators divisible by p).
inline Fp fp_from_rat(const Rat& x, std::uint64_t p) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    Int pm(p);
    Int nr = num % pm;
    if (nr < 0) nr += pm;
    Int dr = den % pm;
    Fp n(static_cast<std::uint64_t>(nr), p);
    Fp d(static_cast<std::uint64_t>(dr), p);
    return n / d;
}

}  // namespace qdual
