#pragma once

#include <cmath>
#include <vector>

#include "bri/rng.hpp"
#include "bri/types.hpp"

namespace testsup {

/// Ascending nodes with a guaranteed fraction of the mean gap between
/// neighbours (clustered nodes would turn rounding into the dominant error).
inline std::vector<double> jittered_nodes(bri::Rng& rng, int n, double lo, double hi,
                                          double jitter = 0.25) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double gap = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = lo + gap * i + rng.uniform(-jitter, jitter) * gap;
    return xs;
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_err(const bri::Block& got, const bri::Block& want) {
    const double denom = want.norm();
    return denom > 0 ? (got - want).norm() / denom : (got - want).norm();
}

inline bri::Block random_block(bri::Rng& rng, int rows, int cols, double lo = -1.0,
                               double hi = 1.0) {
    bri::Block b(rows, cols);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = rng.uniform(lo, hi);
    return b;
}

inline bool bitwise_equal(const bri::Block& a, const bri::Block& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

/// Least-squares slope of y over x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsup
