#include "qdual/qint.hpp"

namespace qdual {

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

std::vector<FactorSpec> lq_factors(const Word6& w, const Assignment& asg) {
    const ShiftTable table = shift_table(w);
    std::vector<FactorSpec> fs;
    fs.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        const ShiftQuad& s = table.fwd[j];
        Mark u = letter_first(w[j]), v = letter_second(w[j]);
        fs.push_back(FactorSpec::bracket(asg.of_mark(u).shifted_q(quad_exponent(s, u)),
                                         asg.of_mark(v).shifted_q(quad_exponent(s, v))));
    }
    return fs;
}

std::vector<FactorSpec> lq_factors_tau_dual(const Word6& w, const Assignment& asg) {
    const ShiftTable table = shift_table(w);
    const int k = static_cast<int>(w.size());
    std::vector<FactorSpec> fs;
    fs.reserve(w.size());
    // position i of the bracket list uses j = k+1-i with sigma-swapped marks
    for (int i = 1; i <= k; ++i) {
        int j = k + 1 - i;
        const ShiftQuad& s = table.dual[static_cast<std::size_t>(j - 1)];
        Letter6 l = w[static_cast<std::size_t>(j - 1)];
        Mark tv = sigma(letter_second(l)), tu = sigma(letter_first(l));
        fs.push_back(FactorSpec::bracket(asg.of_mark(tv).shifted_q(quad_exponent(s, tv)),
                                         asg.of_mark(tu).shifted_q(quad_exponent(s, tu))));
    }
    return fs;
}

std::vector<FactorSpec> inversion_transform(const std::vector<FactorSpec>& fs, const Param& x_scale, int N) {
    if (!x_scale.is_finite()) throw ZeroParameter("base point must be a finite monomial");
    Mono xy = (x_scale.m * x_scale.m).shifted_q(-N);
    auto invert = [&](const Param& p) {
        if (p.is_zero()) throw ZeroParameter("cannot invert a zero parameter");
        if (p.is_infinity()) return Param::zero();
        return Param::finite(xy * p.m.inverse());
    };
    std::vector<FactorSpec> out;
    out.reserve(fs.size());
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        if (!it->is_bracket) throw QdualError("inversion transform expects bracket factors");
        out.push_back(FactorSpec::bracket(invert(it->v), invert(it->u)));
    }
    return out;
}

std::vector<Chain> enumerate_chains(int k, int N) {
    std::vector<Chain> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> n(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(Chain{n});
        int pos = k - 1;
        while (pos >= 0 && n[static_cast<std::size_t>(pos)] == N) --pos;
        if (pos < 0) break;
        int v = ++n[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i) n[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

}  // namespace qdual
