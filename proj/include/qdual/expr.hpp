#pragma once

#include "qdual/param.hpp"
#include "qdual/rat.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdual {

struct GridTooLarge : QdualError {
    explicit GridTooLarge(const std::string& what = "grid cardinality exceeds budget") : QdualError(what) {}
};

struct PoleDetected : QdualError {
    explicit PoleDetected(const std::string& what = "parameter collides with a chain point") : QdualError(what) {}
};

// Per-variable degree bounds for numerator and denominator of the rational
// function an expression denotes. Maintained structurally at every node:
//   add: num <- max(n1+d2, n2+d1), den <- d1+d2
//   mul: componentwise sums; div: cross sums; pow: scalar multiples.
// Bounds never fall below the true degrees of the unreduced fraction.
struct DegCert {
    Exps num{};
    Exps den{};

    static DegCert add(const DegCert& a, const DegCert& b) {
        DegCert r;
        for (int i = 0; i < kNumVars; ++i) {
            int x = a.num[i] + b.den[i];
            int y = b.num[i] + a.den[i];
            r.num[i] = x > y ? x : y;
            r.den[i] = a.den[i] + b.den[i];
        }
        return r;
    }
    static DegCert mul(const DegCert& a, const DegCert& b) {
        DegCert r;
        for (int i = 0; i < kNumVars; ++i) {
            r.num[i] = a.num[i] + b.num[i];
            r.den[i] = a.den[i] + b.den[i];
        }
        return r;
    }
    static DegCert div(const DegCert& a, const DegCert& b) {
        DegCert r;
        for (int i = 0; i < kNumVars; ++i) {
            r.num[i] = a.num[i] + b.den[i];
            r.den[i] = a.den[i] + b.num[i];
        }
        return r;
    }
    static DegCert pow(const DegCert& a, int n) {
        DegCert r;
        for (int i = 0; i < kNumVars; ++i) {
            r.num[i] = a.num[i] * n;
            r.den[i] = a.den[i] * n;
        }
        return r;
    }
};

enum class ExprOp { Const, Mono, Add, Sub, Mul, Div, Neg, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression DAG node. Values of the function field are held
// unexpanded; equality is decided by evaluation, never by normalization.
struct ExprNode {
    ExprOp op;
    Rat value;      // Const payload or Mono coefficient
    Exps exps{};    // Mono payload
    ExprPtr a, b;
    int pw = 0;     // Pow payload
    DegCert cert;
    bool occurs[kNumVars] = {false, false, false, false, false};
};

ExprPtr ex_const(const Rat& c);
ExprPtr ex_mono(const Mono& m);
ExprPtr ex_var(Var v);
ExprPtr ex_add(ExprPtr a, ExprPtr b);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_mul(ExprPtr a, ExprPtr b);
ExprPtr ex_div(ExprPtr a, ExprPtr b);
ExprPtr ex_neg(ExprPtr a);
ExprPtr ex_pow(ExprPtr a, int n);

// Structural substitution q -> q^-1 (monomial exponents negate).
ExprPtr subst_q_inverse(const ExprPtr& e);

// Structural substitution v -> 1. Identities between expressions that are
// jointly scaling-invariant in (B, C, D) can be decided with one of the
// symbols pinned to 1.
ExprPtr subst_var_one(const ExprPtr& e, Var v);

// Splits e into a pair (num, den) of division-free expressions with
// nonnegative monomial exponents such that e = num/den structurally.
std::pair<ExprPtr, ExprPtr> fraction_split(const ExprPtr& e);

template <class T>
struct Point {
    std::array<std::optional<T>, kNumVars> v;
    Point& set(Var var, T value) {
        v[static_cast<int>(var)] = std::move(value);
        return *this;
    }
};

Rat eval_rat(const ExprPtr& e, const Point<Rat>& pt);
Fp eval_fp(const ExprPtr& e, const Point<Fp>& pt);

enum class Verdict { Equal, ProbablyEqual, NotEqual, Skipped };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "Equal";
        case Verdict::ProbablyEqual: return "ProbablyEqual";
        case Verdict::NotEqual: return "NotEqual";
        case Verdict::Skipped: return "Skipped";
    }
    return "?";
}

enum class EqMode { Grid, RandomExact, ModP };

inline const char* eq_mode_name(EqMode m) {
    switch (m) {
        case EqMode::Grid: return "grid";
        case EqMode::RandomExact: return "random-exact";
        case EqMode::ModP: return "modp";
    }
    return "?";
}

struct EqOptions {
    EqMode mode = EqMode::Grid;
    std::uint64_t seed = 12345;
    int trials = 3;
    std::uint64_t grid_budget = 20'000'000;
    std::uint64_t prime = kDefaultPrime;
    int threads = 0;  // 0 = library default
};

struct EqualityVerdict {
    Verdict verdict = Verdict::Equal;
    std::map<std::string, std::string> witness;  // variable -> value, on NotEqual
    std::uint64_t points_checked = 0;
    EqMode mode = EqMode::Grid;
};

// Decides lhs == rhs as elements of the function field. Grid mode evaluates
// the cross-multiplied difference num_l*den_r - num_r*den_l on an integer
// product grid with (bound_v + 1) points per variable, bound_v taken from the
// difference's numerator certificate; full vanishing is a proof by
// per-variable interpolation. Random modes sample points instead.
EqualityVerdict values_equal(const ExprPtr& lhs, const ExprPtr& rhs, const EqOptions& opt);

// True iff F(q^-1) == (-1)^s F(q) identically, for F univariate in q.
bool parity_class(const ExprPtr& f, int s, const EqOptions& opt = {});

// ---------------------------------------------------------------------------
// Least-common-denominator fractions. Sums of iterated q-integral terms share
// a small set of linear denominator atoms; tracking them as a multiset keeps
// the certified degrees of the assembled expression close to the true ones,
// which keeps deterministic grids small. An atom is a primitive binomial
// m1 - m2 (distinct monomials, no common monomial factor, leading coeff 1).
class AtomTable {
  public:
    struct Atom {
        Exps e1{};
        Rat c2;
        Exps e2{};
        ExprPtr expr;
    };

    int intern(const Exps& e1, const Rat& c2, const Exps& e2);
    const Atom& at(int id) const { return atoms_[id]; }

  private:
    std::vector<Atom> atoms_;
    std::map<std::string, int> index_;
};

// num / (q^... monomial * product of atoms). den_exps are nonnegative; the
// monomial coefficient is always folded into num.
struct FracVal {
    ExprPtr num;
    std::map<int, int> den_atoms;
    Exps den_exps{};
};

class FracField {
  public:
    explicit FracField(AtomTable& atoms) : atoms_(atoms) {}

    FracVal zero() const;
    FracVal one() const;
    FracVal from_rat(const Rat& c) const;
    FracVal from_mono(const Mono& m) const;
    FracVal add(const FracVal& a, const FracVal& b) const;
    FracVal sub(const FracVal& a, const FracVal& b) const;
    FracVal mul(const FracVal& a, const FracVal& b) const;
    FracVal neg(const FracVal& a) const;
    FracVal scale(const FracVal& a, const Rat& c) const;
    // a / (p - r); throws PoleDetected if p == r identically.
    FracVal div_by_diff(const FracVal& a, const Mono& p, const Mono& r) const;
    // q -> 1/q on the value; atoms renormalize to atoms, the numerator picks
    // up the compensating q-power.
    FracVal subst_q_inverse(const FracVal& a) const;
    ExprPtr to_expr(const FracVal& a) const;
    ExprPtr den_expr(const FracVal& a) const;

  private:
    // p - r = mono * atom (atom id, or -1 when the difference is a monomial)
    std::pair<Mono, int> normalize_diff(const Mono& p, const Mono& r) const;

    AtomTable& atoms_;
};

// Equality with the shared denominator content of the two fractions divided
// out first; identities whose sides live over a common atom set get much
// smaller grids this way.
EqualityVerdict values_equal(const FracVal& lhs, const FracVal& rhs, const FracField& ff, const EqOptions& opt);

// True iff F(q^-1) == (-1)^s F(q) for a fraction univariate in q.
bool parity_class(const FracVal& f, const FracField& ff, int s, const EqOptions& opt = {});

}  // namespace qdual
