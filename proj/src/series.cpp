#include "qdual/series.hpp"

namespace qdual {

BiSeries& BiSeries::operator+=(const BiSeries& o) {
    if (mq_ != o.mq_ || mz_ != o.mz_) throw OrderMismatch();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o) {
    if (mq_ != o.mq_ || mz_ != o.mz_) throw OrderMismatch();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    if (a.mq_ != b.mq_ || a.mz_ != b.mz_) throw OrderMismatch();
    BiSeries r(a.mq_, a.mz_);
    for (int i1 = 0; i1 <= a.mq_; ++i1) {
        for (int j1 = 0; j1 <= a.mz_; ++j1) {
            const Rat& x = a.at(i1, j1);
            if (x == 0) continue;
            for (int i2 = 0; i1 + i2 <= a.mq_; ++i2) {
                for (int j2 = 0; j1 + j2 <= a.mz_; ++j2) {
                    const Rat& y = b.at(i2, j2);
                    if (y == 0) continue;
                    r.at(i1 + i2, j1 + j2) += x * y;
                }
            }
        }
    }
    return r;
}

BiSeries BiSeries::operator-() const {
    BiSeries r(mq_, mz_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

BiSeries BiSeries::scaled(const Rat& c) const {
    BiSeries r(mq_, mz_);
    if (c == 0) return r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * c;
    return r;
}

BiSeries BiSeries::shifted(const Rat& c, int dq, int dz) const {
    BiSeries r(mq_, mz_);
    if (c == 0) return r;
    for (int i = 0; i <= mq_; ++i) {
        int ti = i + dq;
        if (ti < 0 || ti > mq_) continue;
        for (int j = 0; j <= mz_; ++j) {
            int tj = j + dz;
            if (tj < 0 || tj > mz_) continue;
            if (at(i, j) == 0) continue;
            r.at(ti, tj) += at(i, j) * c;
        }
    }
    return r;
}

BiSeries BiSeries::truncated(int mq, int mz) const {
    BiSeries r(mq, mz);
    for (int i = 0; i <= std::min(mq, mq_); ++i)
        for (int j = 0; j <= std::min(mz, mz_); ++j) r.at(i, j) = at(i, j);
    return r;
}

BiSeries series_geom(const Mono& ratio, int mq, int mz) {
    for (int v = 1; v < kNumVars - 1; ++v)
        if (ratio.e[v] != 0) throw QdualError("series ratio must involve only q and z");
    int e = ratio.e[0], f = ratio.e[static_cast<int>(Var::z)];
    if (e < 0 || f < 0 || (e == 0 && f == 0)) throw NonpositiveOrder();
    BiSeries r(mq, mz);
    Rat coeff = ratio.c;
    for (int i = 1;; ++i) {
        long qo = static_cast<long>(e) * i;
        long zo = static_cast<long>(f) * i;
        if (qo > mq || zo > mz) break;
        r.at(static_cast<int>(qo), static_cast<int>(zo)) += coeff;
        coeff *= ratio.c;
    }
    return r;
}

BiSeries factor_single_series(const Mono& t, const Param& u, int mq, int mz) {
    if (u.is_zero()) return BiSeries::one(mq, mz);
    if (u.is_infinity()) return BiSeries::zero(mq, mz);
    Mono r = u.m * t.inverse();
    int e = r.e[0], f = r.e[static_cast<int>(Var::z)];
    for (int v = 1; v < kNumVars - 1; ++v)
        if (r.e[v] != 0) throw QdualError("factor ratio must involve only q and z");
    if (e == 0 && f == 0) {
        if (r.c == 1) throw PoleAtPoint("factor t/(t-u) with u = t");
        return BiSeries::constant(Rat(1) / (Rat(1) - r.c), mq, mz);
    }
    if (e >= 0 && f >= 0) {
        // 1/(1 - u/t) = 1 + sum_{i>=1} (u/t)^i
        BiSeries s = series_geom(r, mq, mz);
        s.at(0, 0) += 1;
        return s;
    }
    Mono rp = r.inverse();  // t/u
    int ep = rp.e[0], fp = rp.e[static_cast<int>(Var::z)];
    if (ep >= 0 && fp >= 0 && (ep > 0 || fp > 0)) {
        // t/(t-u) = -(t/u)/(1 - t/u)
        return -series_geom(rp, mq, mz);
    }
    throw NonconvergentSpec("factor t/(t-u) has no expansion in Q[[q,z]] for t=" + t.str() + ", u=" + u.str());
}

}  // namespace qdual
