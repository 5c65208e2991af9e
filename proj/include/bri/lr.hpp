#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bri/codec.hpp"
#include "bri/sim.hpp"
#include "bri/types.hpp"

namespace bri::lr {

enum class LrScheme { bri, bacc, uncoded, lcc, ep };

std::string lr_scheme_name(LrScheme s);
std::optional<LrScheme> parse_lr_scheme(const std::string& name);

struct LrConfig {
    int parts = 10;       // number of row blocks, m+1
    int d = 2;            // blending degree (encoder clamped to m)
    double eta = 0.0;     // learning rate; 0 derives 1/lambda_max by power iteration
    int iterations = 100;
    std::uint64_t seed = 1;
    int N = 20;
    int S = 0;
    sim::DelayModel delay;
    LrScheme scheme = LrScheme::bri;
    bool coded_aty = false;       // recover A^T y through one coded round
    bool exact_gradient = false;  // oracle mode: centralized gradient in the same loop
};

struct LrState {
    Vector w;
    int iteration = 0;
    std::vector<double> loss_history;
    Vector aty;  // computed once at setup
};

/// Everything the iteration loop needs: the one-time encoding, the node set,
/// the cached A^T y, and the (small) Gram matrix used for the learning rate,
/// oracle mode and error tracking.
struct LrSetup {
    NodeSet nodes;
    std::vector<Share> shares;
    LrState state;
    double eta = 0.0;
    Block A;
    Vector y;
    Block gram;  // A^T A
};

/// Partitions and encodes the data (performed once), computes A^T y, picks
/// the learning rate, and initializes the weights to zero.
LrSetup lr_setup(const Block& A, const Vector& y, const LrConfig& config);

struct LrIterationInfo {
    int k_used = 0;
    double grad_error_rel = 0.0;
    double loss = 0.0;
};

/// One gradient-descent step. Non-straggling workers apply
/// R_j = A~_j^T (A~_j w); the master interpolates the returned values,
/// evaluates at the source nodes (clamped to the returned-node hull) and sums
/// into the gradient. With exact_gradient set, the centralized gradient is
/// used instead (isolates coding error from optimization error).
LrIterationInfo lr_iteration(LrState& state, const LrSetup& setup, const LrConfig& config,
                             const std::vector<int>& stragglers);

struct LrLogRow {
    int iteration = 0;
    double loss = 0.0;
    double grad_error_rel = 0.0;
    int k_used = 0;
    double time_s = 0.0;  // cumulative virtual time
};

struct LrRun {
    LrState state;
    std::vector<LrLogRow> log;
    double total_time_s = 0.0;
};

/// Full training loop with per-iteration straggler draws and virtual timing.
/// Coded schemes (bri, bacc) decode real worker results; uncoded/lcc/ep are
/// exact-gradient with threshold-modeled waiting (uncoded waits for all N).
LrRun train(const Block& A, const Vector& y, const LrConfig& config);

/// Approximation-error bound of the coded-gradient decode for S stragglers
/// among N workers at Chebyshev evaluation points (requires S < N-2, d >= 1):
///
///   N - S odd :  sin((S+1)pi/2N)^{d+1} ||f^{(d+2)}||
///   N - S even:  sin((S+1)pi/2N)^{d+1} [ ||f^{(d+2)}|| + ||f^{(d+1)}||/(d+1) ]
double theorem2_bound(int N, int S, int d, double deriv_norm_d1, double deriv_norm_d2);

struct Theorem2Sweep {
    int draws = 0;
    int violations = 0;
    double bound = 0.0;
    double max_error = 0.0;
    double max_ratio = 0.0;  // max_error / bound
};

/// Empirical soundness sweep on a scalar-block instance: encodes random
/// scalars, applies the gram task, decodes from random non-straggler subsets
/// and compares the sup decode error over the returned-node hull against the
/// bound with numerically estimated derivative norms.
Theorem2Sweep run_theorem2_sweep(int N, int S, int d, int draws, std::uint64_t seed, int m = 9);

struct Dataset {
    Block A;
    Vector y;
};

/// Headerless CSV, one sample per row, last column the label. Malformed rows
/// are reported with their line number.
Dataset load_csv_dataset(const std::string& path);

/// Row blocks share a common base with per-block perturbation of relative
/// size `block_similarity` (smaller = more similar); labels are a noisy
/// linear response. Well-conditioned by construction.
Dataset make_synthetic(int rows, int cols, int parts, double block_similarity, double noise,
                       std::uint64_t seed);

}  // namespace bri::lr
