#include "qdual/expr.hpp"
#include "qdual/qint.hpp"
#include "qdual/rat.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <random>

using namespace qdual;
using qdual::testing::equal_by_expansion;
using qdual::testing::expand_pair;

namespace {

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);
    return Rat(num(rng)) / Rat(den(rng));
}

Rat random_nonzero_rat(std::mt19937_64& rng) {
    Rat r;
    do {
        r = random_rat(rng);
    } while (r == 0);
    return r;
}

}  // namespace

TEST_CASE("field axioms on random rationals") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        Rat a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == 0);
        if (a != 0) CHECK(a * (Rat(1) / a) == 1);
    }
}

TEST_CASE("field axioms in F_p") {
    std::mt19937_64 rng(72);
    std::uniform_int_distribution<std::uint64_t> dist(0, kDefaultPrime - 1);
    for (int trial = 0; trial < 300; ++trial) {
        Fp a(dist(rng), kDefaultPrime), b(dist(rng), kDefaultPrime), c(dist(rng), kDefaultPrime);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK((a * a.inv()).v == 1);
    }
    CHECK_THROWS_AS(Fp(0, kDefaultPrime).inv(), PoleAtPoint);
}

TEST_CASE("expression evaluation") {
    // q/(1-q) at q = 1/2
    ExprPtr q = ex_var(Var::q);
    ExprPtr e = ex_div(q, ex_sub(ex_const(Rat(1)), q));
    Point<Rat> pt;
    pt.set(Var::q, Rat(1) / 2);
    CHECK(eval_rat(e, pt) == 1);

    // B/(B-D) at B = D = 3 hits a pole
    ExprPtr f = ex_div(ex_var(Var::B), ex_sub(ex_var(Var::B), ex_var(Var::D)));
    Point<Rat> pt2;
    pt2.set(Var::B, Rat(3)).set(Var::D, Rat(3));
    CHECK_THROWS_AS(eval_rat(f, pt2), PoleAtPoint);

    // missing assignment
    Point<Rat> pt3;
    CHECK_THROWS_AS(eval_rat(e, pt3), MissingVariable);
}

TEST_CASE("L_q expression evaluates like naive chain enumeration") {
    Word6 w = parse_word6("BD.AB");
    Assignment asg = Assignment::generic(0);
    ExprDomain dom;
    ExprPtr e = dom.to_expr(lq(w, asg, dom));

    Point<Rat> pt;
    pt.set(Var::q, Rat(2)).set(Var::B, Rat(3)).set(Var::D, Rat(1)).set(Var::C, Rat(5));
    Rat via_expr = eval_rat(e, pt);

    RatDomain rd = rat_domain_point(Rat(2), Rat(3), Rat(5), Rat(1));
    Rat via_naive = qdual::testing::iq_naive(asg.A(), lq_factors(w, asg), 0, rd);
    CHECK(via_expr == via_naive);
}

TEST_CASE("values_equal: algebraic identity in grid mode") {
    ExprPtr q = ex_var(Var::q);
    ExprPtr lhs = ex_div(q, ex_sub(ex_const(Rat(1)), q));
    ExprPtr rhs = ex_div(ex_const(Rat(1)), ex_sub(ex_mono(Mono::var(Var::q, -1)), ex_const(Rat(1))));
    EqOptions opt;
    EqualityVerdict v = values_equal(lhs, rhs, opt);
    CHECK(v.verdict == Verdict::Equal);
    CHECK(equal_by_expansion(lhs, rhs));
}

TEST_CASE("values_equal: distinct functions in random-exact mode") {
    ExprPtr one = ex_const(Rat(1));
    ExprPtr lhs = ex_div(one, ex_sub(one, ex_var(Var::q)));
    ExprPtr rhs = ex_div(one, ex_sub(one, ex_mono(Mono::var(Var::q, 2))));
    EqOptions opt;
    opt.mode = EqMode::RandomExact;
    opt.seed = 5;
    EqualityVerdict v = values_equal(lhs, rhs, opt);
    CHECK(v.verdict == Verdict::NotEqual);
    CHECK(!v.witness.empty());
    CHECK_FALSE(equal_by_expansion(lhs, rhs));
}

TEST_CASE("values_equal: duality instance at k=2, N=1 against full expansion") {
    Word6 w = parse_word6("BD.AB");
    Assignment asg = Assignment::generic(1);
    ExprDomain dom;
    ExprPtr lhs = dom.to_expr(lq(w, asg, dom));
    ExprPtr rhs = dom.to_expr(lq(tau(w), asg, dom));
    CHECK(equal_by_expansion(lhs, rhs));  // independent sparse expansion
    EqOptions opt;
    EqualityVerdict v = values_equal(lhs, rhs, opt);
    CHECK(v.verdict == Verdict::Equal);
    CHECK(v.mode == EqMode::Grid);
}

TEST_CASE("values_equal modp finds witnesses") {
    ExprPtr q = ex_var(Var::q);
    ExprPtr lhs = ex_add(ex_mul(q, q), ex_const(Rat(1)));
    ExprPtr rhs = ex_add(ex_mul(q, q), ex_const(Rat(2)));
    EqOptions opt;
    opt.mode = EqMode::ModP;
    EqualityVerdict v = values_equal(lhs, rhs, opt);
    CHECK(v.verdict == Verdict::NotEqual);
}

namespace {

// random expressions over small monomials; division denominators are checked
// against the expansion oracle so the fraction pair stays well defined
ExprPtr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> exp(-2, 2);
    std::uniform_int_distribution<int> var(0, kNumVars - 1);
    if (depth == 0 || pick(rng) == 0) {
        if (pick(rng) < 2) return ex_const(random_rat(rng));
        Mono m;
        m.c = random_nonzero_rat(rng);
        m.e[static_cast<std::size_t>(var(rng))] = exp(rng);
        m.e[static_cast<std::size_t>(var(rng))] = exp(rng);
        return ex_mono(m);
    }
    switch (pick(rng)) {
        case 1: return ex_add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: return ex_sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return ex_mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: {
            ExprPtr den;
            do {
                den = random_expr(rng, depth - 1);
            } while (expand_pair(den).first.is_zero());
            return ex_div(random_expr(rng, depth - 1), den);
        }
        default: return ex_neg(random_expr(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("degree certificates bound the expanded degrees") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        ExprPtr e = random_expr(rng, 1 + static_cast<int>(trial % 6));
        auto [num, den] = expand_pair(e);
        for (int v = 0; v < kNumVars; ++v) {
            CHECK(num.degree(v) <= e->cert.num[v]);
            CHECK(den.degree(v) <= e->cert.den[v]);
        }
    }
}

TEST_CASE("grid verdicts agree with full sparse expansion on small expressions") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 200) {
        ExprPtr a = random_expr(rng, 3);
        ExprPtr b = random_expr(rng, 3);
        auto [na, da] = fraction_split(a);
        auto [nb, db] = fraction_split(b);
        ExprPtr cross = ex_sub(ex_mul(na, db), ex_mul(nb, da));
        int total = 0;
        for (int v = 0; v < kNumVars; ++v) total += cross->cert.num[v];
        if (total > 8) continue;
        if (expand_pair(a).second.is_zero() || expand_pair(b).second.is_zero()) continue;
        ++done;
        bool oracle = equal_by_expansion(a, b);
        EqOptions opt;
        EqualityVerdict v = values_equal(a, b, opt);
        CHECK((v.verdict == Verdict::Equal) == oracle);
        if (done % 2 == 0) {
            ExprPtr twisted = ex_mul(ex_const(Rat(1)), a);
            CHECK(values_equal(a, twisted, opt).verdict == Verdict::Equal);
        }
    }
}

TEST_CASE("parity classification") {
    ExprPtr q = ex_var(Var::q);
    ExprPtr one = ex_const(Rat(1));
    // q/(1-q)^2 is fixed by q -> 1/q
    ExprPtr f = ex_div(q, ex_pow(ex_sub(one, q), 2));
    CHECK(parity_class(f, 0));
    CHECK_FALSE(parity_class(f, 1));
    // 1/(1-q) lies in neither eigenspace
    ExprPtr g = ex_div(one, ex_sub(one, q));
    CHECK_FALSE(parity_class(g, 1));
    CHECK_FALSE(parity_class(g, 0));
    CHECK_THROWS_AS(parity_class(ex_var(Var::B), 0), QdualError);
}

TEST_CASE("grid budget overflow raises GridTooLarge") {
    ExprPtr base = ex_add(ex_const(Rat(1)), ex_var(Var::q));
    ExprPtr big = ex_pow(base, 64);
    ExprPtr big2 = ex_mul(ex_pow(base, 63), base);
    for (Var v : {Var::B, Var::C, Var::D, Var::z}) {
        big = ex_mul(big, ex_pow(ex_add(ex_const(Rat(1)), ex_var(v)), 40));
        big2 = ex_mul(big2, ex_pow(ex_add(ex_const(Rat(1)), ex_var(v)), 40));
    }
    EqOptions opt;
    opt.grid_budget = 1000;
    CHECK_THROWS_AS(values_equal(big, big2, opt), GridTooLarge);
}
