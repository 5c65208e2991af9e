#include "bri/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bri/interp.hpp"

namespace bri::analysis {
namespace {

std::vector<double> experiment_nodes(int n, double a, double b, NodeScheme scheme) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = n == 1 ? 0.0
                       : scheme == NodeScheme::chebyshev2
                           ? -std::cos(i * std::numbers::pi / (n - 1))
                           : -1.0 + 2.0 * i / (n - 1);
        xs[static_cast<std::size_t>(i)] = a + (u + 1.0) * (b - a) / 2.0;
    }
    return xs;
}

const char* scheme_label(NodeScheme s) {
    switch (s) {
        case NodeScheme::chebyshev2: return "chebyshev2";
        case NodeScheme::equispaced: return "equispaced";
        case NodeScheme::custom: return "custom";
    }
    return "?";
}

}  // namespace

ErrorReport sin_experiment(int n, int d, double a, double b, int grid, NodeScheme scheme) {
    if (n < 1 || d < 0 || d > n - 1)
        throw std::invalid_argument("sin experiment needs 0 <= d <= n-1");
    if (grid < 100) throw std::invalid_argument("evaluation grid too small");
    auto xs = experiment_nodes(n, a, b, scheme);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::sin(xs[i]);
    FhInterpolant<double> h(xs, ys, d);
    long double sq = 0.0L;
    double max_abs = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = a + (b - a) * i / (grid - 1);
        const double e = h.eval(x) - std::sin(x);
        sq += static_cast<long double>(e) * e;
        max_abs = std::max(max_abs, std::abs(e));
    }
    return {n, d, static_cast<double>(sq / grid), max_abs, scheme_label(scheme), a, b, grid};
}

std::vector<ErrorReport> sin_experiment_grid(const std::vector<int>& ns, const std::vector<int>& ds,
                                             double a, double b, int grid, NodeScheme scheme) {
    std::vector<ErrorReport> out;
    for (int n : ns)
        for (int d : ds)
            if (d <= n - 1) out.push_back(sin_experiment(n, d, a, b, grid, scheme));
    return out;
}

std::string format_mse_table(const std::vector<ErrorReport>& reports) {
    std::map<int, std::map<int, double>> by_n;
    for (const auto& r : reports) by_n[r.n][r.d] = r.mse;
    std::string out;
    char buf[64];
    for (const auto& [n, _] : by_n) {
        std::snprintf(buf, sizeof(buf), "|  n=%-3d MSE      ", n);
        out += buf;
    }
    out += "|\n";
    int max_d = 0;
    for (const auto& [n, col] : by_n)
        for (const auto& [d, _] : col) max_d = std::max(max_d, d);
    for (int d = 0; d <= max_d; ++d) {
        for (const auto& [n, col] : by_n) {
            auto it = col.find(d);
            if (it == col.end())
                std::snprintf(buf, sizeof(buf), "| d=%-2d     --     ", d);
            else
                std::snprintf(buf, sizeof(buf), "| d=%-2d %.6e ", d, it->second);
            out += buf;
        }
        out += "|\n";
    }
    return out;
}

ComplexityCounts complexity_counts(int m, int d, int s, int t, int N, int k) {
    if (m < 0 || d < 0 || s <= 0 || t <= 0 || N <= 0 || k <= 0)
        throw std::invalid_argument("complexity parameters must be positive");
    if (d > m || d > k) throw std::invalid_argument("need d <= m and d <= k");
    ComplexityCounts c;
    const double st = static_cast<double>(s) * t;
    c.encode_per_worker = (m - d + 1.0) * (d + 1.0) * st;
    c.decode_master = (k - d + 1.0) * (d + 1.0) * st;
    c.comm_to_worker = st;
    c.comm_from_workers = static_cast<double>(k) * t * t;
    return c;
}

double mse(const Block& estimate, const Block& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw ShapeError("mse operands must share one shape");
    const Block diff = estimate - truth;
    return diff.squaredNorm() / static_cast<double>(diff.size());
}

double mse(const std::vector<double>& estimate, const std::vector<double>& truth) {
    if (estimate.size() != truth.size() || estimate.empty())
        throw ShapeError("mse operands must share one shape");
    long double sq = 0.0L;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        const long double e = static_cast<long double>(estimate[i]) - truth[i];
        sq += e * e;
    }
    return static_cast<double>(sq / estimate.size());
}

double derivative_sup_norm(const std::function<double(double)>& f, double a, double b, int order,
                           int samples) {
    if (order < 0 || samples < order + 2) throw std::invalid_argument("derivative sample too small");
    const double h = (b - a) / (samples - 1);
    std::vector<double> g(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) g[static_cast<std::size_t>(i)] = f(a + i * h);
    for (int k = 0; k < order; ++k)
        for (std::size_t i = 0; i + 1 < g.size() - static_cast<std::size_t>(k); ++i)
            g[i] = g[i + 1] - g[i];
    g.resize(g.size() - static_cast<std::size_t>(order));
    double sup = 0.0;
    const double hk = std::pow(h, order);
    for (double v : g) sup = std::max(sup, std::abs(v / hk));
    return sup;
}

}  // namespace bri::analysis
