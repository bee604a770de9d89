#pragma once

#include "core.hpp"

#include <cmath>
#include <cstddef>

namespace smpforge {

// Streaming mean / standard-error accumulator.  Merging two accumulators is
// exact bookkeeping of sums, so block-wise reduction in a fixed block order
// gives the same result at any thread count.
class MeanAccumulator {
public:
    void add(double x) {
        ++count_;
        sum_ += x;
        sum_sq_ += x * x;
    }
    void merge(const MeanAccumulator& o) {
        count_ += o.count_;
        sum_ += o.sum_;
        sum_sq_ += o.sum_sq_;
    }
    std::size_t count() const { return count_; }
    double mean() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
    double variance() const {
        if (count_ < 2) return 0.0;
        const double n = static_cast<double>(count_);
        const double v = (sum_sq_ - sum_ * sum_ / n) / (n - 1.0);
        return v > 0.0 ? v : 0.0;
    }
    double std_error() const {
        return count_ ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    std::size_t count_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

// Componentwise mean/SE for vector-valued samples.
class VectorMeanAccumulator {
public:
    explicit VectorMeanAccumulator(int dim = 0) { reset(dim); }
    void reset(int dim) {
        sum_ = Vec::Zero(dim);
        sum_sq_ = Vec::Zero(dim);
        count_ = 0;
    }
    void add(const Vec& x) {
        sum_ += x;
        sum_sq_ += x.cwiseProduct(x);
        ++count_;
    }
    void merge(const VectorMeanAccumulator& o) {
        sum_ += o.sum_;
        sum_sq_ += o.sum_sq_;
        count_ += o.count_;
    }
    std::size_t count() const { return count_; }
    Vec mean() const {
        return count_ ? Vec(sum_ / static_cast<double>(count_))
                      : Vec(Vec::Zero(sum_.size()));
    }
    Vec std_error() const {
        Vec se = Vec::Zero(sum_.size());
        if (count_ < 2) return se;
        const double n = static_cast<double>(count_);
        for (Eigen::Index k = 0; k < se.size(); ++k) {
            double v = (sum_sq_[k] - sum_[k] * sum_[k] / n) / (n - 1.0);
            se[k] = v > 0.0 ? std::sqrt(v / n) : 0.0;
        }
        return se;
    }

private:
    Vec sum_, sum_sq_;
    std::size_t count_ = 0;
};

struct MeanWithError {
    double value = 0.0;
    double std_error = 0.0;
};

inline MeanWithError summarize(const MeanAccumulator& acc) {
    return {acc.mean(), acc.std_error()};
}

// Least-squares slope of log(y) against log(x); the standard order-of-
// convergence estimate.  Requires positive inputs.
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, "log_log_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        require(x[k] > 0.0 && y[k] > 0.0, "log_log_slope: inputs must be positive");
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double denom = sxx - sx * sx / n;
    require(denom > 0.0, "log_log_slope: degenerate abscissae");
    return (sxy - sx * sy / n) / denom;
}

} // namespace smpforge
