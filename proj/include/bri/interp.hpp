#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bri/types.hpp"

namespace bri {

/// Multiply counters for the reference (blended-form) evaluation path.
/// `block_mul` counts value-times-scalar products; multiply by the entry
/// count to convert to flops.
struct EvalCounters {
    std::uint64_t scalar_mul = 0;
    std::uint64_t block_mul = 0;
};

/// Barycentric weights of the blended rational family with local degree d:
///
///   w_k = sum_{i in J_k} (-1)^i  prod_{j=i..i+d, j != k} 1/(x_k - x_j),
///   J_k = { i in [0, n-d] : k-d <= i <= k }
///
/// d = 0 gives the alternating-sign weights (-1)^k; d = n gives the classical
/// Lagrange barycentric weights.
std::vector<double> fh_barycentric_weights(std::span<const double> nodes, int d);

/// Upper bound on the sup-norm interpolation error of the degree-d blended
/// rational interpolant for f in C^{d+2}[a,b]:
///
///   n - d odd :  lambda^{d+1} (b-a) ||f^{(d+2)}|| / (d+2)
///   n - d even:  lambda^{d+1} [ (b-a) ||f^{(d+2)}|| / (d+2) + ||f^{(d+1)}|| / (d+1) ]
///
/// where n = n_points - 1 is the highest node index and lambda the largest
/// node spacing. Requires d >= 1.
double theorem1_bound(int d, int n_points, double a, double b, double max_spacing,
                      double deriv_norm_d1, double deriv_norm_d2);

namespace detail {

void validate_nodes(std::span<const double> nodes, int d);
double node_guard_eps(std::span<const double> nodes);
std::optional<std::size_t> nearest_node_within(std::span<const double> nodes, double x,
                                               double eps);
std::vector<long double> fh_weights_ld(std::span<const double> nodes, int d);
/// phi_i(x) for i = 0..n-d, rescaled by a common positive factor so the
/// largest magnitude is 1 (the rescale cancels in the quotient).
std::vector<long double> phi_values_scaled(std::span<const double> nodes, int d, double x,
                                           EvalCounters* counters);
long double phi_sum_unscaled(std::span<const double> nodes, int d, double x);

}  // namespace detail

/// Pole-free rational interpolant blending overlapping local Lagrange pieces
/// of degree d over ascending nodes:
///
///   r(x) = sum_{i=0}^{n-d} phi_i(x) l_i(x) / sum_{j=0}^{n-d} phi_j(x)
///   phi_i(x) = prod_{j<i} (x - x_j) * prod_{k>i+d} (x_k - x),
///   l_i = Lagrange polynomial through (x_i, y_i)..(x_{i+d}, y_{i+d}).
///
/// r interpolates the data, reproduces polynomials of degree <= d, and its
/// denominator has no real zeros. Values may be scalars or matrix blocks; the
/// rational weights are scalar and are applied entrywise.
template <class Value>
class FhInterpolant {
public:
    /// Nodes are sorted ascending (values co-permuted). Throws on non-finite
    /// or near-duplicate nodes, shape-mismatched values, or d outside [0, n].
    FhInterpolant(std::vector<double> nodes, std::vector<Value> values, int d)
        : nodes_(std::move(nodes)), values_(std::move(values)), d_(d) {
        if (nodes_.empty() || nodes_.size() != values_.size())
            throw std::invalid_argument("interpolant needs matching, non-empty nodes/values");
        sort_by_node();
        detail::validate_nodes(nodes_, d_);
        check_value_shapes();
        eps_ = detail::node_guard_eps(nodes_);
        weights_ = detail::fh_weights_ld(nodes_, d_);
    }

    int degree() const { return d_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<Value>& values() const { return values_; }
    double guard_eps() const { return eps_; }

    /// Fast path: single-sum barycentric form, O(n) per point.
    Value eval(double x) const {
        require_finite(x);
        if (nodes_.size() == 1) return values_[0];
        if (auto j = detail::nearest_node_within(nodes_, x, eps_)) return values_[*j];
        const std::size_t n = nodes_.size();
        std::vector<long double> q(n);
        long double den = 0.0L;
        for (std::size_t k = 0; k < n; ++k) {
            q[k] = weights_[k] / (static_cast<long double>(x) - nodes_[k]);
            den += q[k];
        }
        if constexpr (std::is_same_v<Value, double>) {
            long double acc = 0.0L;
            for (std::size_t k = 0; k < n; ++k) acc += values_[k] * (q[k] / den);
            return static_cast<double>(acc);
        } else {
            Value acc = values_[0] * static_cast<double>(q[0] / den);
            for (std::size_t k = 1; k < n; ++k) acc += values_[k] * static_cast<double>(q[k] / den);
            return acc;
        }
    }

    /// Reference path: evaluates the blended two-sum form literally, forming
    /// each local Lagrange piece. Identical to eval() up to rounding; used as
    /// the cross-check and for operation counting.
    Value eval_blended(double x, EvalCounters* counters = nullptr) const {
        require_finite(x);
        if (nodes_.size() == 1) return values_[0];
        if (auto j = detail::nearest_node_within(nodes_, x, eps_)) return values_[*j];
        const int n = static_cast<int>(nodes_.size()) - 1;
        const auto phi = detail::phi_values_scaled(nodes_, d_, x, counters);
        long double den = std::accumulate(phi.begin(), phi.end(), 0.0L);
        Value num = zero_like();
        for (int i = 0; i + d_ <= n; ++i) {
            // l_i(x) = sum_k [prod_{j != k} (x-x_j)/(x_k-x_j)] y_k over the window i..i+d
            Value li = zero_like();
            for (int k = i; k <= i + d_; ++k) {
                long double c = 1.0L;
                for (int j = i; j <= i + d_; ++j) {
                    if (j == k) continue;
                    c *= (static_cast<long double>(x) - nodes_[j]) / (nodes_[k] - nodes_[j]);
                    if (counters) counters->scalar_mul += 2;  // one product, one quotient
                }
                li += values_[k] * static_cast<double>(c);
                if (counters) ++counters->block_mul;
            }
            num += li * static_cast<double>(phi[i] / den);
            if (counters) ++counters->block_mul;
        }
        return num;
    }

    /// Denominator sum of phi_j(x); nonzero for every real x. Refuses points
    /// inside the near-node guard band (callers use eval() there).
    double denominator(double x) const {
        require_finite(x);
        if (nodes_.size() > 1 && detail::nearest_node_within(nodes_, x, eps_))
            throw std::invalid_argument("denominator requested within the near-node guard band");
        return static_cast<double>(detail::phi_sum_unscaled(nodes_, d_, x));
    }

    /// Denominator of the single-sum form, sum of w_j/(x - x_j). Differs from
    /// denominator() by the factor (-1)^{n-d} prod_j (x - x_j).
    double barycentric_denominator(double x) const {
        require_finite(x);
        if (detail::nearest_node_within(nodes_, x, eps_))
            throw std::invalid_argument("denominator requested within the near-node guard band");
        long double den = 0.0L;
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            den += weights_[k] / (static_cast<long double>(x) - nodes_[k]);
        return static_cast<double>(den);
    }

private:
    static void require_finite(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    }

    Value zero_like() const {
        Value z = values_[0];
        z *= 0.0;
        return z;
    }

    void sort_by_node() {
        std::vector<std::size_t> idx(nodes_.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return nodes_[a] < nodes_[b]; });
        std::vector<double> xs(nodes_.size());
        std::vector<Value> ys;
        ys.reserve(values_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            xs[i] = nodes_[idx[i]];
            ys.push_back(std::move(values_[idx[i]]));
        }
        nodes_ = std::move(xs);
        values_ = std::move(ys);
    }

    void check_value_shapes() const {
        if constexpr (std::is_same_v<Value, Block>) {
            for (const auto& v : values_)
                if (v.rows() != values_[0].rows() || v.cols() != values_[0].cols())
                    throw ShapeError("all value blocks must share one shape");
        }
    }

    std::vector<double> nodes_;
    std::vector<Value> values_;
    int d_;
    double eps_ = 0.0;
    std::vector<long double> weights_;
};

}  // namespace bri
