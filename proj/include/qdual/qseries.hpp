#pragma once

#include "qdual/qint.hpp"
#include "qdual/series.hpp"
#include "qdual/words.hpp"

#include <vector>

namespace qdual {

using Index = std::vector<int>;    // entries >= 1
using SZIndex = std::vector<int>;  // entries >= 0

// Multiple q-polylogarithm with monomial arguments z_i = c q^e z^f (e,f >= 0).
// Sums over 0 < n_1 < ... < n_d; runs of constant arguments are summed in
// closed geometric form, everything else under an adaptive cutoff.
BiSeries li_q(const Index& ks, const std::vector<Mono>& zs, int mq, int mz);

// Iterated q-integral from 0: chains t_1 |<= ... |<= t_k |<= 1 over all
// exponents m_1 >= ... >= m_k >= 0, each factor expanded in Q[[q,z]].
BiSeries iq_zero_series(const std::vector<FactorSpec>& factors, int mq, int mz);

// Yamamoto's one-variable multiple q-polylogarithm on augmented indices.
BiSeries li1_aug(const AugIndex& k, int mq, int mz);

// Bradley--Zhao and Schlesinger--Zudilin q-MZV models (pure q series).
BiSeries zeta_bz(const Index& ks, int mq);
BiSeries zeta_sz(const SZIndex& ks, int mq);

// f(w): the A=0, B=C=infinity, D=1 limit of L_q(w), as a series in q.
BiSeries f_series(const Word6& w, int mq);
BiSeries f_series(const LinComb& lc, int mq);

// L_q(theta(w(k))) at A=0, B=infinity, C=z^-1 q^-k, D=1, in series form.
BiSeries lq_prop34(const AugIndex& k, int mq, int mz);

// (1-q^m)^{-k} truncated, m >= 1, via the binomial expansion.
BiSeries pow_inv_one_minus_qpow(int m, int k, int mq, int mz);

}  // namespace qdual
