#include "qdual/words.hpp"

#include "doctest.h"

#include <random>

using namespace qdual;

TEST_CASE("letter parsing and canonical order") {
    CHECK(parse_word6("BD.AB") == Word6{Letter6::BD, Letter6::AB});
    CHECK(parse_word6("") == Word6{});
    CHECK(parse_word6("BD AB") == Word6{Letter6::BD, Letter6::AB});
    CHECK_THROWS_AS(parse_word6("BA.AB"), ParseError);
    CHECK_THROWS_AS(parse_word6("XY"), ParseError);
    CHECK(word6_str(parse_word6("CD.AD.AC")) == "CD.AD.AC");
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(parse_word6("BD.AB")));
    CHECK_FALSE(is_admissible(parse_word6("AB.BD")));  // begins with an A-letter
    CHECK_FALSE(is_admissible(parse_word6("BC.BD")));  // ends with a D-letter
    CHECK(is_admissible({}));
}

TEST_CASE("tau on letters and words") {
    CHECK(tau(parse_word6("BD.AB")) == parse_word6("CD.AC"));
    CHECK(tau(parse_word6("AD")) == parse_word6("AD"));
    CHECK(tau(parse_word6("BC")) == parse_word6("BC"));
}

TEST_CASE("tau is an involutive anti-automorphism") {
    for (int k = 0; k <= 6; ++k) {
        long checked = 0;
        for (const Word6& w : enumerate_admissible(std::min(k, 4))) {
            CHECK(tau(tau(w)) == w);
            ++checked;
        }
        CHECK(checked > 0);
    }
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 4), letter(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        Word6 a, b;
        for (int i = len(rng); i > 0; --i) a.push_back(static_cast<Letter6>(letter(rng)));
        for (int i = len(rng); i > 0; --i) b.push_back(static_cast<Letter6>(letter(rng)));
        Word6 ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        Word6 expected = tau(b);
        Word6 ta = tau(a);
        expected.insert(expected.end(), ta.begin(), ta.end());
        CHECK(tau(ab) == expected);
        CHECK(tau(tau(ab)) == ab);
    }
}

TEST_CASE("admissibility is tau-stable") {
    for (int k = 0; k <= 5; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k), 0);
        while (true) {
            Word6 w;
            for (int i : idx) w.push_back(static_cast<Letter6>(i));
            CHECK(is_admissible(w) == is_admissible(tau(w)));
            CHECK(m_of(tau(w)) == m_of(w));
            CHECK(kappa_of(tau(w)) == kappa_of(w));
            int pos = k - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == 6) idx[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
}

TEST_CASE("admissible counts") {
    CHECK(enumerate_admissible(0).size() == 1);
    CHECK(enumerate_admissible(1).size() == 1);  // only BC survives both constraints
    CHECK(enumerate_admissible(2).size() == 9);
    CHECK(enumerate_admissible(3).size() == 54);
}

TEST_CASE("m and kappa") {
    CHECK(m_of(parse_word6("BD.AB")) == 3);
    CHECK(kappa_of(parse_word6("BD.AB")) == 0);
    CHECK(m_of(parse_word6("BD.AD.AB")) == 3);
    CHECK(kappa_of(parse_word6("BD.AD.AB")) == 1);
    CHECK(m_of({}) == 1);
    CHECK(kappa_of({}) == 0);
}

TEST_CASE("collapse to the three-letter alphabet") {
    CHECK(collapse(parse_word6("BD.AB")) == parse_word3("y.x"));
    CHECK(collapse(parse_word6("BD.AD.AC")) == parse_word3("y.z.x"));
    CHECK_FALSE(collapse(parse_word6("BC")).has_value());
}

TEST_CASE("h0 membership") {
    CHECK(in_h0(parse_word3("y.x")));
    CHECK(in_h0({}));
    CHECK_FALSE(in_h0(parse_word3("x.y")));
    CHECK(enumerate_h0(4).size() == 9);
}

TEST_CASE("augmented indices and duals") {
    AugIndex k21 = {{2, 1}};
    CHECK(aug_to_word(k21) == parse_yam("y1.x"));
    CHECK(dual_index(k21) == k21);

    AugIndex k20 = {{2, 0}};
    CHECK(aug_to_word(k20) == parse_yam("y0.x"));
    CHECK(dual_index(k20) == AugIndex{{1, 1}, {1, 0}});

    AugIndex k10 = {{1, 0}};
    CHECK(aug_to_word(k10) == parse_yam("y0"));
    CHECK(dual_index(k10) == k10);

    CHECK_THROWS_AS(dual_index(AugIndex{{1, 1}}), NotAdmissible);
}

TEST_CASE("dual_index is an involution") {
    for (int wgt = 0; wgt <= 6; ++wgt) {
        for (const AugIndex& k : enumerate_aug(wgt)) {
            AugIndex d = dual_index(k);
            CHECK(aug_admissible(d));
            CHECK(aug_weight(d) == wgt);
            CHECK(dual_index(d) == k);
        }
    }
}

TEST_CASE("theta images") {
    LinComb x = theta(parse_yam("x"));
    CHECK(x.terms().size() == 2);
    CHECK(x.terms().at({Letter6::AC}) == 1);
    CHECK(x.terms().at({Letter6::BC}) == -1);

    LinComb y1x = theta(parse_yam("y1.x"));
    CHECK(y1x.terms().size() == 4);
    CHECK(y1x.terms().at({Letter6::BD, Letter6::AC}) == 1);
    CHECK(y1x.terms().at({Letter6::BD, Letter6::BC}) == -1);
    CHECK(y1x.terms().at({Letter6::BC, Letter6::AC}) == -1);
    CHECK(y1x.terms().at({Letter6::BC, Letter6::BC}) == 1);

    CHECK(theta({}).terms().at({}) == 1);
}

TEST_CASE("theta is multiplicative") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> len(0, 3), letter(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        YamWord a, b;
        for (int i = len(rng); i > 0; --i) a.push_back(static_cast<YamLetter>(letter(rng)));
        for (int i = len(rng); i > 0; --i) b.push_back(static_cast<YamLetter>(letter(rng)));
        YamWord ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK((theta(a) * theta(b)).terms() == theta(ab).terms());
    }
}
