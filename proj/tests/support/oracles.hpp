// Test-only oracles, kept independent of the library's evaluation paths:
// a dense-expansion sparse polynomial type used to decide expression
// equality by full multiplication, and a naive chain enumerator for the
// iterated q-integral sums.
#pragma once

#include "qdual/expr.hpp"
#include "qdual/qint.hpp"

#include <functional>
#include <map>
#include <unordered_map>

namespace qdual::testing {

struct SparsePoly {
    std::map<Exps, Rat> terms;

    static SparsePoly constant(const Rat& c) {
        SparsePoly p;
        if (c != 0) p.terms[{}] = c;
        return p;
    }
    static SparsePoly mono(const Rat& c, const Exps& e) {
        SparsePoly p;
        if (c != 0) p.terms[e] = c;
        return p;
    }

    void add_term(const Exps& e, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [e1, c1] : a.terms)
            for (const auto& [e2, c2] : b.terms) r.add_term(exps_add(e1, e2), c1 * c2);
        return r;
    }
    SparsePoly pow(int n) const {
        SparsePoly r = constant(Rat(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    bool is_zero() const { return terms.empty(); }
    int degree(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[var]);
        return d;
    }
};

// Structural (num, den) expansion with the same pairing rules the degree
// certificates describe; no denominator sharing, no cancellation beyond
// collecting like terms.
inline std::pair<SparsePoly, SparsePoly> expand_pair(const ExprPtr& e) {
    using Pair = std::pair<SparsePoly, SparsePoly>;
    std::unordered_map<const ExprNode*, Pair> memo;
    std::function<Pair(const ExprPtr&)> go = [&](const ExprPtr& x) -> Pair {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        Pair r;
        switch (x->op) {
            case ExprOp::Const:
                r = {SparsePoly::constant(x->value), SparsePoly::constant(Rat(1))};
                break;
            case ExprOp::Mono: {
                Exps num{}, den{};
                for (int i = 0; i < kNumVars; ++i) {
                    if (x->exps[i] > 0) num[i] = x->exps[i];
                    if (x->exps[i] < 0) den[i] = -x->exps[i];
                }
                r = {SparsePoly::mono(x->value, num), SparsePoly::mono(Rat(1), den)};
                break;
            }
            case ExprOp::Add: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {na * db + nb * da, da * db};
                break;
            }
            case ExprOp::Sub: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {na * db - nb * da, da * db};
                break;
            }
            case ExprOp::Mul: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {na * nb, da * db};
                break;
            }
            case ExprOp::Div: {
                auto [na, da] = go(x->a);
                auto [nb, db] = go(x->b);
                r = {na * db, da * nb};
                break;
            }
            case ExprOp::Neg: {
                auto [na, da] = go(x->a);
                r = {SparsePoly::constant(Rat(-1)) * na, da};
                break;
            }
            case ExprOp::Pow: {
                auto [na, da] = go(x->a);
                r = {na.pow(x->pw), da.pow(x->pw)};
                break;
            }
        }
        memo.emplace(x.get(), r);
        return r;
    };
    return go(e);
}

// Equality of rational expressions decided by full expansion and
// cross-multiplication.
inline bool equal_by_expansion(const ExprPtr& lhs, const ExprPtr& rhs) {
    auto [nl, dl] = expand_pair(lhs);
    auto [nr, dr] = expand_pair(rhs);
    return (nl * dr - nr * dl).is_zero();
}

// Naive chain enumeration for the iterated q-integral: recursion over all
// weakly increasing exponent vectors, factors multiplied term by term.
inline Rat iq_naive(const Param& x_scale, const std::vector<FactorSpec>& fs, int N, const RatDomain& dom) {
    const int k = static_cast<int>(fs.size());
    std::function<Rat(int, int)> rec = [&](int j, int n_min) -> Rat {
        if (j == k) return Rat(1);
        Rat total(0);
        for (int n = n_min; n <= N; ++n) {
            Mono t = x_scale.m.shifted_q(-n);
            const FactorSpec& f = fs[static_cast<std::size_t>(j)];
            Rat factor = f.is_bracket ? dom.bracket_factor(t, f.u, f.v) : dom.single_factor(t, f.u);
            total += factor * rec(j + 1, n);
        }
        return total;
    };
    return rec(0, 0);
}

}  // namespace qdual::testing
