#include "qdual/qseries.hpp"

#include "qdual/shifts.hpp"

#include <functional>

namespace qdual {

namespace {

constexpr int kHardCutoff = 1 << 14;

// Doubles the cutoff until two consecutive rounds agree on every stored
// coefficient.
BiSeries stabilize(const std::function<BiSeries(int)>& compute, int initial, const char* what) {
    int cutoff = std::max(initial, 1);
    BiSeries prev = compute(cutoff);
    while (true) {
        if (cutoff > kHardCutoff) throw StabilizationFailure(std::string(what) + ": cutoff budget exhausted");
        cutoff *= 2;
        BiSeries next = compute(cutoff);
        if (next == prev) return next;
        prev = std::move(next);
    }
}

}  // namespace

BiSeries pow_inv_one_minus_qpow(int m, int k, int mq, int mz) {
    if (m < 1 || k < 0) throw QdualError("pow_inv_one_minus_qpow needs m >= 1, k >= 0");
    BiSeries s(mq, mz);
    // (1-x)^{-k} = sum_j C(j+k-1, k-1) x^j at x = q^m
    Rat binom(1);
    for (int j = 0; static_cast<long>(j) * m <= mq; ++j) {
        if (j > 0) binom = binom * Rat(j + k - 1) / Rat(j);
        s.at(j * m, 0) = k == 0 ? (j == 0 ? Rat(1) : Rat(0)) : binom;
    }
    return s;
}

BiSeries iq_zero_series(const std::vector<FactorSpec>& factors, int mq, int mz) {
    if (factors.empty()) return BiSeries::one(mq, mz);
    const int k = static_cast<int>(factors.size());

    auto compute = [&](int cutoff) {
        // A_j(m): chains for positions j..k with m_j = m <= cutoff
        std::vector<BiSeries> next(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, mz));
        for (int j = k; j >= 1; --j) {
            std::vector<BiSeries> cur;
            cur.reserve(static_cast<std::size_t>(cutoff) + 1);
            BiSeries prefix(mq, mz);  // sum_{m' <= m} A_{j+1}(m')
            for (int m = 0; m <= cutoff; ++m) {
                const FactorSpec& f = factors[static_cast<std::size_t>(j - 1)];
                Mono t = Mono::var(Var::q, m);
                BiSeries fac = f.is_bracket
                                   ? factor_single_series(t, f.u, mq, mz) - factor_single_series(t, f.v, mq, mz)
                                   : factor_single_series(t, f.u, mq, mz);
                if (j == k) {
                    cur.push_back(fac);
                } else {
                    prefix += next[static_cast<std::size_t>(m)];
                    cur.push_back(fac * prefix);
                }
            }
            next = std::move(cur);
        }
        BiSeries total(mq, mz);
        for (const BiSeries& s : next) total += s;
        return total;
    };
    return stabilize(compute, mq + mz + 4, "iq_zero_series");
}

BiSeries li_q(const Index& ks, const std::vector<Mono>& zs, int mq, int mz) {
    const int d = static_cast<int>(ks.size());
    if (static_cast<int>(zs.size()) != d) throw QdualError("index and argument lengths differ");
    if (d == 0) return BiSeries::one(mq, mz);
    for (int i = 0; i < d; ++i) {
        if (ks[static_cast<std::size_t>(i)] < 1) throw QdualError("polylog index entries must be positive");
        const Mono& m = zs[static_cast<std::size_t>(i)];
        for (int v = 1; v < kNumVars - 1; ++v)
            if (m.e[v] != 0) throw QdualError("polylog arguments must be monomials in q and z");
        if (m.e[0] < 0 || m.e[static_cast<int>(Var::z)] < 0)
            throw NonconvergentSpec("polylog argument with negative q/z exponent");
        if (m.c == 0) throw QdualError("polylog argument must be nonzero");
    }

    // const_from[i]: every argument from level i on is a plain rational, so
    // the tail over n > cutoff is an exact geometric sum with ratio rho_i.
    std::vector<bool> is_const(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        is_const[static_cast<std::size_t>(i)] =
            zs[static_cast<std::size_t>(i)].e[0] == 0 && zs[static_cast<std::size_t>(i)].e[static_cast<int>(Var::z)] == 0;
    std::vector<bool> const_from(static_cast<std::size_t>(d) + 1, true);
    for (int i = d - 1; i >= 0; --i)
        const_from[static_cast<std::size_t>(i)] =
            const_from[static_cast<std::size_t>(i) + 1] && is_const[static_cast<std::size_t>(i)];
    std::vector<Rat> rho(static_cast<std::size_t>(d) + 1, Rat(1));
    std::vector<Rat> tail_scale(static_cast<std::size_t>(d) + 1, Rat(1));  // K_i
    for (int i = d - 1; i >= 0; --i) {
        if (!const_from[static_cast<std::size_t>(i)]) continue;
        rho[static_cast<std::size_t>(i)] = rho[static_cast<std::size_t>(i) + 1] * zs[static_cast<std::size_t>(i)].c;
        if (rho[static_cast<std::size_t>(i)] == 1)
            throw NonconvergentSpec("geometric tail with ratio 1 (argument suffix product is 1)");
        tail_scale[static_cast<std::size_t>(i)] =
            tail_scale[static_cast<std::size_t>(i) + 1] * rho[static_cast<std::size_t>(i)] /
            (Rat(1) - rho[static_cast<std::size_t>(i)]);
    }

    auto compute = [&](int cutoff) {
        // A_i(m) = sum_{n > m} F_i(n) A_{i+1}(n), bounded part plus tail
        std::vector<BiSeries> next(static_cast<std::size_t>(cutoff) + 1, BiSeries::one(mq, mz));
        for (int i = d; i >= 1; --i) {
            const Mono& zi = zs[static_cast<std::size_t>(i - 1)];
            int ki = ks[static_cast<std::size_t>(i - 1)];
            std::vector<BiSeries> fn;  // F_i(n) A_{i+1}(n) for n in [0, cutoff]
            fn.reserve(static_cast<std::size_t>(cutoff) + 1);
            Rat cpow(1);
            for (int n = 0; n <= cutoff; ++n) {
                if (n == 0) {
                    fn.push_back(BiSeries(mq, mz));
                    continue;
                }
                cpow = n == 1 ? zi.c : cpow * zi.c;
                long qo = static_cast<long>(zi.e[0]) * n;
                long zo = static_cast<long>(zi.e[static_cast<int>(Var::z)]) * n;
                if (qo > mq || zo > mz) {
                    fn.push_back(BiSeries(mq, mz));
                    continue;
                }
                BiSeries f = pow_inv_one_minus_qpow(n, ki, mq, mz).shifted(cpow, static_cast<int>(qo), static_cast<int>(zo));
                fn.push_back(f * next[static_cast<std::size_t>(n)]);
            }
            std::vector<BiSeries> cur(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, mz));
            BiSeries suffix(mq, mz);
            if (const_from[static_cast<std::size_t>(i - 1)]) {
                // sum_{n > cutoff} rho^n * K_{i+1} lands in the constant slot
                Rat tail = tail_scale[static_cast<std::size_t>(i)] *
                           rat_pow(rho[static_cast<std::size_t>(i - 1)], cutoff + 1) /
                           (Rat(1) - rho[static_cast<std::size_t>(i - 1)]);
                // note rho_i (this level's c folded in) drives the tail
                suffix.at(0, 0) = tail;
            }
            for (int m = cutoff; m >= 0; --m) {
                if (m < cutoff) suffix += fn[static_cast<std::size_t>(m) + 1];
                cur[static_cast<std::size_t>(m)] = suffix;
            }
            next = std::move(cur);
        }
        return next[0];
    };
    return stabilize(compute, mq + mz + 4, "li_q");
}

BiSeries li1_aug(const AugIndex& k, int mq, int mz) {
    const int r = static_cast<int>(k.size());
    if (r == 0) return BiSeries::one(mq, mz);
    for (const AugEntry& e : k)
        if (e.k < 1 || (e.mu != 0 && e.mu != 1)) throw QdualError("bad augmented index entry");

    auto compute = [&](int cutoff) {
        // S_i(m): partial sums with m_i = m; P1 and P2 carry the two parts of
        // the factor mu_i + (-1)^{mu_i} q^{m_{i-1}} z^{m_i - m_{i-1}}.
        std::vector<BiSeries> prev(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, mz));
        prev[0] = BiSeries::one(mq, mz);
        for (int i = 1; i <= r; ++i) {
            const AugEntry& e = k[static_cast<std::size_t>(i - 1)];
            std::vector<BiSeries> cur(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, mz));
            BiSeries p1(mq, mz);  // sum_{m' < m} S_{i-1}(m')
            BiSeries p2(mq, mz);  // sum_{m' < m} S_{i-1}(m') q^{m'} z^{m-m'}
            for (int m = 1; m <= cutoff; ++m) {
                p1 += prev[static_cast<std::size_t>(m - 1)];
                p2 = p2.shifted(Rat(1), 0, 1) + prev[static_cast<std::size_t>(m - 1)].shifted(Rat(1), m - 1, 1);
                BiSeries bracket = e.mu == 1 ? p1 - p2 : p2;
                long qo = static_cast<long>(e.k - 1) * m;
                if (qo > mq) continue;
                BiSeries weight = pow_inv_one_minus_qpow(m, e.k, mq, mz).shifted(Rat(1), static_cast<int>(qo), 0);
                cur[static_cast<std::size_t>(m)] = bracket * weight;
            }
            prev = std::move(cur);
        }
        BiSeries total(mq, mz);
        for (const BiSeries& s : prev) total += s;
        return total;
    };
    return stabilize(compute, mq + mz + 4, "li1_aug");
}

namespace {

BiSeries zeta_like(const std::vector<int>& ks, int mq, bool sz_model) {
    const int r = static_cast<int>(ks.size());
    if (r == 0) return BiSeries::one(mq, 0);
    for (int kk : ks)
        if (kk < (sz_model ? 0 : 1)) throw QdualError("bad zeta index entry");

    auto compute = [&](int cutoff) {
        std::vector<BiSeries> prev(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, 0));
        prev[0] = BiSeries::one(mq, 0);
        for (int i = 1; i <= r; ++i) {
            int ki = ks[static_cast<std::size_t>(i - 1)];
            int qshift = sz_model ? ki : ki - 1;  // q^{k m} vs q^{(k-1) m}
            std::vector<BiSeries> cur(static_cast<std::size_t>(cutoff) + 1, BiSeries(mq, 0));
            BiSeries p(mq, 0);
            for (int m = 1; m <= cutoff; ++m) {
                p += prev[static_cast<std::size_t>(m - 1)];
                long qo = static_cast<long>(qshift) * m;
                if (qo > mq) continue;
                BiSeries weight = pow_inv_one_minus_qpow(m, ki, mq, 0).shifted(Rat(1), static_cast<int>(qo), 0);
                cur[static_cast<std::size_t>(m)] = p * weight;
            }
            prev = std::move(cur);
        }
        BiSeries total(mq, 0);
        for (const BiSeries& s : prev) total += s;
        return total;
    };

    int tail = ks.back();
    bool bounded = sz_model ? tail >= 1 : tail >= 2;
    if (bounded) return compute(mq);  // tail order grows at least linearly in m_r
    return stabilize(compute, mq + 4, sz_model ? "zeta_sz" : "zeta_bz");
}

}  // namespace

BiSeries zeta_bz(const Index& ks, int mq) { return zeta_like(ks, mq, false); }
BiSeries zeta_sz(const SZIndex& ks, int mq) { return zeta_like(ks, mq, true); }

BiSeries f_series(const Word6& w, int mq) {
    if (!is_admissible(w)) throw NotAdmissible(word6_str(w));
    const ShiftTable table = shift_table(w);
    std::vector<FactorSpec> fs;
    fs.reserve(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        auto param_of = [&](Mark m) {
            switch (m) {
                case Mark::A: return Param::zero();
                case Mark::B:
                case Mark::C: return Param::infinity();
                case Mark::D: return Param::finite(Mono::var(Var::q, table.fwd[j].d));
            }
            throw QdualError("bad mark");
        };
        fs.push_back(FactorSpec::bracket(param_of(letter_first(w[j])), param_of(letter_second(w[j]))));
    }
    return iq_zero_series(fs, mq, 0);
}

BiSeries f_series(const LinComb& lc, int mq) {
    BiSeries total(mq, 0);
    for (const auto& [w, c] : lc.terms()) total += f_series(w, mq).scaled(c);
    return total;
}

BiSeries lq_prop34(const AugIndex& k, int mq, int mz) {
    const int weight = aug_weight(k);
    LinComb image = theta(aug_to_word(k));
    BiSeries total(mq, mz);
    for (const auto& [w, c] : image.terms()) {
        const ShiftTable table = shift_table(w);
        std::vector<FactorSpec> fs;
        fs.reserve(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) {
            auto param_of = [&](Mark m) {
                switch (m) {
                    case Mark::A: return Param::zero();
                    case Mark::B: return Param::infinity();
                    case Mark::C: {
                        Mono mono = Mono::var(Var::q, table.fwd[j].c - weight);
                        mono.e[static_cast<int>(Var::z)] = -1;
                        return Param::finite(mono);
                    }
                    case Mark::D: return Param::finite(Mono::var(Var::q, table.fwd[j].d));
                }
                throw QdualError("bad mark");
            };
            fs.push_back(FactorSpec::bracket(param_of(letter_first(w[j])), param_of(letter_second(w[j]))));
        }
        total += iq_zero_series(fs, mq, mz).scaled(c);
    }
    return total;
}

}  // namespace qdual
