#include "qdual/shifts.hpp"

namespace qdual {

namespace {

bool is_ytype(Letter6 l) { return l == Letter6::BC || l == Letter6::BD || l == Letter6::CD; }
bool is_xtype(Letter6 l) { return l == Letter6::AB || l == Letter6::AC || l == Letter6::BC; }

}  // namespace

ShiftTable shift_table(const Word6& w) {
    const int k = static_cast<int>(w.size());
    ShiftTable t;
    t.fwd.resize(static_cast<std::size_t>(k));
    t.dual.resize(static_cast<std::size_t>(k));
    t.prod.resize(static_cast<std::size_t>(k) + 1);

    auto count = [&](int lo, int hi, auto pred) {
        int n = 0;
        for (int h = lo; h <= hi; ++h)
            if (pred(w[static_cast<std::size_t>(h - 1)])) ++n;
        return n;
    };

    for (int j = 1; j <= k; ++j) {
        ShiftQuad& f = t.fwd[static_cast<std::size_t>(j - 1)];
        f.a = count(1, j, is_ytype);
        f.b = count(1, j, [](Letter6 l) { return l != Letter6::AC && l != Letter6::AD; }) +
              count(j, k, [](Letter6 l) { return l == Letter6::CD; });
        f.c = count(1, j, [](Letter6 l) { return l != Letter6::AB && l != Letter6::AD; }) +
              count(j, k, [](Letter6 l) { return l == Letter6::BD; });
        f.d = -count(j, k, is_xtype);

        ShiftQuad& d = t.dual[static_cast<std::size_t>(j - 1)];
        d.a = count(j, k, is_xtype);
        d.b = count(j, k, [](Letter6 l) { return l != Letter6::AD && l != Letter6::BD; }) +
              count(1, j, [](Letter6 l) { return l == Letter6::AB; });
        d.c = count(j, k, [](Letter6 l) { return l != Letter6::AD && l != Letter6::CD; }) +
              count(1, j, [](Letter6 l) { return l == Letter6::AC; });
        d.d = -count(1, j, is_ytype);
    }

    for (int j = 0; j <= k; ++j) {
        ShiftQuad& p = t.prod[static_cast<std::size_t>(j)];
        p.a = j >= 1 ? count(1, j, is_ytype) : 0;
        p.b = (j >= 1 ? count(1, j, [](Letter6 l) { return l != Letter6::AC && l != Letter6::AD; }) : 0) +
              (j + 1 <= k ? count(j + 1, k, [](Letter6 l) { return l == Letter6::CD; }) : 0);
        p.c = (j >= 1 ? count(1, j, [](Letter6 l) { return l != Letter6::AB && l != Letter6::AD; }) : 0) +
              (j + 1 <= k ? count(j + 1, k, [](Letter6 l) { return l == Letter6::BD; }) : 0);
        p.d = -(j + 1 <= k ? count(j + 1, k, is_xtype) : 0);
    }
    return t;
}

std::array<int, 4> increment_vector(Letter6 l) {
    switch (l) {
        case Letter6::AB: return {0, 1, 0, 1};
        case Letter6::AC: return {0, 0, 1, 1};
        case Letter6::AD: return {0, 0, 0, 0};
        case Letter6::BC: return {1, 1, 1, 1};
        case Letter6::BD: return {1, 1, 0, 0};
        case Letter6::CD: return {1, 0, 1, 0};
    }
    return {0, 0, 0, 0};
}

namespace {

int quad_exponent(const ShiftQuad& s, Mark m) {
    switch (m) {
        case Mark::A: return s.a;
        case Mark::B: return s.b;
        case Mark::C: return s.c;
        case Mark::D: return s.d;
    }
    return 0;
}

}  // namespace

std::pair<Param, Param> shifted_pair(const Word6& w, int j, const Assignment& asg) {
    if (j < 1 || j > static_cast<int>(w.size())) throw QdualError("position out of range");
    const ShiftQuad quad = shift_table(w).fwd[static_cast<std::size_t>(j - 1)];
    Letter6 l = w[static_cast<std::size_t>(j - 1)];
    Mark u = letter_first(l), v = letter_second(l);
    return {asg.of_mark(u).shifted_q(quad_exponent(quad, u)),
            asg.of_mark(v).shifted_q(quad_exponent(quad, v))};
}

std::pair<Param, Param> shifted_pair_dual(const Word6& w, int j, const Assignment& asg) {
    if (j < 1 || j > static_cast<int>(w.size())) throw QdualError("position out of range");
    const ShiftQuad quad = shift_table(w).dual[static_cast<std::size_t>(j - 1)];
    Letter6 l = w[static_cast<std::size_t>(j - 1)];
    // bracket [tau(v_j)^{[j]}, tau(u_j)^{[j]}]
    Mark tv = sigma(letter_second(l)), tu = sigma(letter_first(l));
    return {asg.of_mark(tv).shifted_q(quad_exponent(quad, tv)),
            asg.of_mark(tu).shifted_q(quad_exponent(quad, tu))};
}

}  // namespace qdual
