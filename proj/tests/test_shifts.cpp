#include "qdual/shifts.hpp"

#include "doctest.h"

using namespace qdual;

namespace {

int used_exponent(const ShiftQuad& s, Mark m) {
    switch (m) {
        case Mark::A: return s.a;
        case Mark::B: return s.b;
        case Mark::C: return s.c;
        case Mark::D: return s.d;
    }
    return 0;
}

std::vector<Word6> all_words_of_length(int k) {
    std::vector<Word6> out;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        Word6 w;
        for (int i : idx) w.push_back(static_cast<Letter6>(i));
        out.push_back(w);
        int pos = k - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == 6) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

}  // namespace

TEST_CASE("shift table of BD.AB") {
    Word6 w = parse_word6("BD.AB");
    ShiftTable t = shift_table(w);
    CHECK(t.fwd[0] == ShiftQuad{1, 1, 2, -1});
    CHECK(t.fwd[1] == ShiftQuad{1, 2, 1, -1});

    // L_q uses [Bq, Dq^-1] then [Aq, Bq^2]
    Assignment asg = Assignment::generic(1);
    auto [u1, v1] = shifted_pair(w, 1, asg);
    CHECK(u1.m == Mono::var(Var::B).shifted_q(1));
    CHECK(v1.m == Mono::var(Var::D).shifted_q(-1));
    auto [u2, v2] = shifted_pair(w, 2, asg);
    CHECK(u2.m == Mono::var(Var::D).shifted_q(1 + 1));  // A = q^N D with N = 1, then shift 1
    CHECK(v2.m == Mono::var(Var::B).shifted_q(2));
}

TEST_CASE("shift table of BC and the empty word") {
    ShiftTable t = shift_table(parse_word6("BC"));
    CHECK(t.fwd[0] == ShiftQuad{1, 1, 1, -1});
    CHECK(shift_table({}).fwd.empty());
}

TEST_CASE("infinity absorbs shifts") {
    Word6 w = parse_word6("BD.AB");
    Assignment asg = Assignment::bc_infinity(2);
    auto [u1, v1] = shifted_pair(w, 1, asg);
    CHECK(u1.is_infinity());
    CHECK(v1.is_finite());
}

TEST_CASE("per-letter increments") {
    CHECK(increment_vector(Letter6::AD) == std::array<int, 4>{0, 0, 0, 0});
    CHECK(increment_vector(Letter6::BC) == std::array<int, 4>{1, 1, 1, 1});
    CHECK(increment_vector(Letter6::CD) == std::array<int, 4>{1, 0, 1, 0});
    CHECK(increment_vector(Letter6::AB) == std::array<int, 4>{0, 1, 0, 1});
    CHECK(increment_vector(Letter6::AC) == std::array<int, 4>{0, 0, 1, 1});
    CHECK(increment_vector(Letter6::BD) == std::array<int, 4>{1, 1, 0, 0});
}

TEST_CASE("increments accumulate to the closed-product table") {
    for (int k = 0; k <= 5; ++k) {
        for (const Word6& w : all_words_of_length(k)) {
            ShiftTable t = shift_table(w);
            ShiftQuad acc = t.prod[0];
            CHECK(acc.a == 0);
            for (int j = 1; j <= k; ++j) {
                auto inc = increment_vector(w[static_cast<std::size_t>(j - 1)]);
                acc.a += inc[0];
                acc.b += inc[1];
                acc.c += inc[2];
                acc.d += inc[3];
                CHECK(acc == t.prod[static_cast<std::size_t>(j)]);
            }
        }
        if (k >= 4) break;  // 6^5 words get slow in debug builds; length <= 4 plus spot checks below
    }
    // length-5 spot checks
    for (const char* text : {"BD.AD.BC.AB.AB", "CD.CD.AD.AC.BC", "BC.BD.CD.AB.AC"}) {
        Word6 w = parse_word6(text);
        ShiftTable t = shift_table(w);
        ShiftQuad acc = t.prod[0];
        for (int j = 1; j <= 5; ++j) {
            auto inc = increment_vector(w[static_cast<std::size_t>(j - 1)]);
            acc.a += inc[0];
            acc.b += inc[1];
            acc.c += inc[2];
            acc.d += inc[3];
            CHECK(acc == t.prod[static_cast<std::size_t>(j)]);
        }
    }
}

TEST_CASE("forward and closed-product tables agree at used positions") {
    for (int k = 0; k <= 4; ++k) {
        for (const Word6& w : all_words_of_length(k)) {
            ShiftTable t = shift_table(w);
            for (int j = 1; j <= k; ++j) {
                Letter6 l = w[static_cast<std::size_t>(j - 1)];
                for (Mark m : {letter_first(l), letter_second(l)}) {
                    CHECK(used_exponent(t.fwd[static_cast<std::size_t>(j - 1)], m) ==
                          used_exponent(t.prod[static_cast<std::size_t>(j)], m));
                }
            }
        }
    }
}

TEST_CASE("pole-freeness of admissible words") {
    for (int k = 1; k <= 5; ++k) {
        for (const Word6& w : enumerate_admissible(k)) {
            ShiftTable t = shift_table(w);
            for (int j = 0; j < k; ++j) {
                CHECK(t.fwd[static_cast<std::size_t>(j)].a >= 1);
                CHECK(t.fwd[static_cast<std::size_t>(j)].d <= -1);
                if (j > 0) CHECK(t.fwd[static_cast<std::size_t>(j)].a >= t.fwd[static_cast<std::size_t>(j - 1)].a);
            }
        }
    }
}

// The bracketed [j]-table drives the reversed evaluation of L_q(tau(w));
// against the forward table it satisfies integer mirror identities at every
// used position, with m(w) as the pivot.
TEST_CASE("mirror relations between forward and dual tables") {
    for (int k = 0; k <= 3; ++k) {
        for (const Word6& w : enumerate_admissible(k)) {
            ShiftTable t = shift_table(w);
            int m = m_of(w);
            for (int j = 1; j <= k; ++j) {
                const ShiftQuad& f = t.fwd[static_cast<std::size_t>(j - 1)];
                const ShiftQuad& d = t.dual[static_cast<std::size_t>(j - 1)];
                Letter6 l = w[static_cast<std::size_t>(j - 1)];
                for (Mark mk : {letter_first(l), letter_second(l)}) {
                    switch (mk) {
                        case Mark::A: CHECK(d.d == -f.a); break;   // AD / (A q^{a}) = D q^{-a}
                        case Mark::D: CHECK(d.a == -f.d); break;   // AD / (D q^{d}) = A q^{-d}
                        case Mark::B: CHECK(d.c == m - f.b); break;  // AD = BC q^m
                        case Mark::C: CHECK(d.b == m - f.c); break;
                    }
                }
            }
        }
    }
}

// tau(w)'s own forward table, read backwards, matches the affine images of
// w's closed-product table at used positions.
TEST_CASE("tau-side table relations") {
    for (int k = 0; k <= 4; ++k) {
        for (const Word6& w : enumerate_admissible(k)) {
            ShiftTable tw = shift_table(w);
            ShiftTable tt = shift_table(tau(w));
            for (int j = 1; j <= k; ++j) {
                const ShiftQuad& f = tw.prod[static_cast<std::size_t>(j)];
                const ShiftQuad& g = tt.fwd[static_cast<std::size_t>(k - j)];
                Letter6 l = tau(w)[static_cast<std::size_t>(k - j)];
                for (Mark mk : {letter_first(l), letter_second(l)}) {
                    switch (mk) {
                        case Mark::A: CHECK(g.a == -f.d); break;
                        case Mark::B: CHECK(g.b == 1 - f.a + f.b - f.d); break;
                        case Mark::C: CHECK(g.c == 1 - f.a + f.c - f.d); break;
                        case Mark::D: CHECK(g.d == -f.a); break;
                    }
                }
            }
        }
    }
}
