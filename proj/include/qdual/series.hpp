#pragma once

#include "qdual/param.hpp"
#include "qdual/rat.hpp"

#include <vector>

namespace qdual {

struct OrderMismatch : QdualError {
    explicit OrderMismatch(const std::string& what = "series truncation orders differ") : QdualError(what) {}
};

struct NonpositiveOrder : QdualError {
    explicit NonpositiveOrder(const std::string& what = "geometric ratio must have positive (q,z)-order")
        : QdualError(what) {}
};

struct StabilizationFailure : QdualError {
    explicit StabilizationFailure(const std::string& what = "adaptive cutoff exceeded budget without stabilizing")
        : QdualError(what) {}
};

struct NonconvergentSpec : QdualError {
    explicit NonconvergentSpec(const std::string& what = "summand order does not grow; sum leaves Q[[q,z]]")
        : QdualError(what) {}
};

// Element of Q[[q,z]] / (q^{mq+1}, z^{mz+1}). Coefficients are exact
// rationals; no floating point anywhere.
class BiSeries {
  public:
    BiSeries(int mq, int mz) : mq_(mq), mz_(mz), c_(static_cast<std::size_t>(mq + 1) * (mz + 1)) {}

    static BiSeries constant(const Rat& value, int mq, int mz) {
        BiSeries s(mq, mz);
        s.at(0, 0) = value;
        return s;
    }
    static BiSeries zero(int mq, int mz) { return BiSeries(mq, mz); }
    static BiSeries one(int mq, int mz) { return constant(Rat(1), mq, mz); }

    int mq() const { return mq_; }
    int mz() const { return mz_; }

    Rat& at(int i, int j) { return c_[static_cast<std::size_t>(i) * (mz_ + 1) + j]; }
    const Rat& at(int i, int j) const { return c_[static_cast<std::size_t>(i) * (mz_ + 1) + j]; }

    bool operator==(const BiSeries& o) const { return mq_ == o.mq_ && mz_ == o.mz_ && c_ == o.c_; }
    bool operator!=(const BiSeries& o) const { return !(*this == o); }

    BiSeries& operator+=(const BiSeries& o);
    BiSeries& operator-=(const BiSeries& o);
    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
    BiSeries operator-() const;
    BiSeries scaled(const Rat& c) const;

    // multiply by c * q^dq * z^dz; terms leaving the truncation box drop out
    BiSeries shifted(const Rat& c, int dq, int dz) const;

    bool is_zero() const {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }

    // restrict to a smaller truncation box
    BiSeries truncated(int mq, int mz) const;

  private:
    int mq_, mz_;
    std::vector<Rat> c_;
};

// sum_{i >= 1} ratio^i, truncated. The ratio must be a monomial in q and z
// with nonnegative exponents, at least one positive.
BiSeries series_geom(const Mono& ratio, int mq, int mz);

// t/(t-u) expanded in Q[[q,z]]: geometric branch in u/t or t/u, whichever
// has nonnegative growing order; exact constant 1/(1-c) when the ratio is a
// constant c != 1.
BiSeries factor_single_series(const Mono& t, const Param& u, int mq, int mz);

}  // namespace qdual
