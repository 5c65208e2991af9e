#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bri/codec.hpp"
#include "bri/types.hpp"

namespace bri::analysis {

/// One cell of the interpolation-error sweep.
struct ErrorReport {
    int n = 0;  // number of interpolation points
    int d = 0;
    double mse = 0.0;
    double max_abs = 0.0;
    std::string node_scheme;
    double a = 0.0, b = 0.0;
    int grid = 0;
};

/// Interpolates sin over n nodes on [a,b] with blending degree d and reports
/// MSE and max error over a uniform evaluation grid (endpoints included).
ErrorReport sin_experiment(int n, int d, double a, double b, int grid,
                           NodeScheme scheme = NodeScheme::equispaced);

/// Full (n, d) sweep; each report is one CSV row.
std::vector<ErrorReport> sin_experiment_grid(const std::vector<int>& ns, const std::vector<int>& ds,
                                             double a, double b, int grid,
                                             NodeScheme scheme = NodeScheme::equispaced);

/// Renders the sweep as side-by-side n-columns of d/MSE pairs.
std::string format_mse_table(const std::vector<ErrorReport>& reports);

/// Closed-form operation-count estimates; unit-constant convention is one
/// count per scalar multiply, (d+1)(m-d+1) block combinations of st entries.
struct ComplexityCounts {
    double encode_per_worker = 0.0;      // (m-d+1)(d+1) s t
    double decode_master = 0.0;          // (k-d+1)(d+1) s t
    double comm_to_worker = 0.0;         // s t per worker
    double comm_from_workers = 0.0;      // k t^2 total
};

ComplexityCounts complexity_counts(int m, int d, int s, int t, int N, int k);

double mse(const Block& estimate, const Block& truth);
double mse(const std::vector<double>& estimate, const std::vector<double>& truth);

/// Sup-norm estimate of the order-th derivative by differences of order-th
/// degree on a uniform sample of [a,b] (O(h^2) midpoint attribution).
double derivative_sup_norm(const std::function<double(double)>& f, double a, double b, int order,
                           int samples = 401);

}  // namespace bri::analysis
