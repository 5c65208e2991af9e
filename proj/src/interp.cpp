#include "bri/interp.hpp"

#include <cmath>

namespace bri {
namespace detail {

double node_guard_eps(std::span<const double> nodes) {
    if (nodes.size() < 2) return 0.0;
    return 1e-13 * (nodes.back() - nodes.front());
}

void validate_nodes(std::span<const double> nodes, int d) {
    const int n = static_cast<int>(nodes.size()) - 1;
    if (d < 0 || d > n)
        throw std::invalid_argument("blending degree d must satisfy 0 <= d <= n");
    const double eps = node_guard_eps(nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i])) throw std::invalid_argument("nodes must be finite");
        if (i > 0 && !(nodes[i] - nodes[i - 1] > eps))
            throw NodeCollisionError("duplicate or near-duplicate interpolation nodes");
    }
}

std::optional<std::size_t> nearest_node_within(std::span<const double> nodes, double x,
                                               double eps) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    std::size_t best = 0;
    if (it == nodes.end()) {
        best = nodes.size() - 1;
    } else {
        best = static_cast<std::size_t>(it - nodes.begin());
        if (best > 0 && x - nodes[best - 1] < nodes[best] - x) --best;
    }
    if (std::abs(x - nodes[best]) <= eps) return best;
    return std::nullopt;
}

std::vector<long double> phi_values_scaled(std::span<const double> nodes, int d, double x,
                                           EvalCounters* counters) {
    const int n = static_cast<int>(nodes.size()) - 1;
    std::vector<long double> phi(static_cast<std::size_t>(n - d) + 1);
    long double biggest = 0.0L;
    for (int i = 0; i + d <= n; ++i) {
        long double p = 1.0L;
        for (int j = 0; j < i; ++j) {
            p *= static_cast<long double>(x) - nodes[j];
            if (counters) ++counters->scalar_mul;
        }
        for (int k = i + d + 1; k <= n; ++k) {
            p *= static_cast<long double>(nodes[k]) - x;
            if (counters) ++counters->scalar_mul;
        }
        phi[static_cast<std::size_t>(i)] = p;
        biggest = std::max(biggest, std::abs(p));
    }
    if (biggest > 0.0L)
        for (auto& p : phi) p /= biggest;
    return phi;
}

long double phi_sum_unscaled(std::span<const double> nodes, int d, double x) {
    const int n = static_cast<int>(nodes.size()) - 1;
    long double sum = 0.0L;
    for (int i = 0; i + d <= n; ++i) {
        long double p = 1.0L;
        for (int j = 0; j < i; ++j) p *= static_cast<long double>(x) - nodes[j];
        for (int k = i + d + 1; k <= n; ++k) p *= static_cast<long double>(nodes[k]) - x;
        sum += p;
    }
    return sum;
}

}  // namespace detail

namespace detail {

std::vector<long double> fh_weights_ld(std::span<const double> nodes, int d) {
    validate_nodes(nodes, d);
    const int n = static_cast<int>(nodes.size()) - 1;
    std::vector<long double> w(nodes.size());
    for (int k = 0; k <= n; ++k) {
        long double sum = 0.0L;
        const int lo = std::max(0, k - d);
        const int hi = std::min(k, n - d);
        for (int i = lo; i <= hi; ++i) {
            long double p = 1.0L;
            for (int j = i; j <= i + d; ++j) {
                if (j == k) continue;
                p /= static_cast<long double>(nodes[k]) - nodes[j];
            }
            sum += (i % 2 == 0) ? p : -p;
        }
        w[static_cast<std::size_t>(k)] = sum;
    }
    return w;
}

}  // namespace detail

std::vector<double> fh_barycentric_weights(std::span<const double> nodes, int d) {
    auto ld = detail::fh_weights_ld(nodes, d);
    return {ld.begin(), ld.end()};
}

double theorem1_bound(int d, int n_points, double a, double b, double max_spacing,
                      double deriv_norm_d1, double deriv_norm_d2) {
    if (d < 1) throw UnsupportedRegimeError("error bound requires blending degree d >= 1");
    const int n = n_points - 1;
    if (n < d) throw std::invalid_argument("need n_points - 1 >= d");
    if (!(max_spacing > 0.0)) throw std::invalid_argument("max_spacing must be positive");
    if (deriv_norm_d1 < 0.0 || deriv_norm_d2 < 0.0)
        throw std::invalid_argument("derivative norms must be non-negative");
    const double lam = std::pow(max_spacing, d + 1);
    const double lead = (b - a) * deriv_norm_d2 / (d + 2);
    if ((n - d) % 2 != 0) return lam * lead;
    return lam * (lead + deriv_norm_d1 / (d + 1));
}

}  // namespace bri
