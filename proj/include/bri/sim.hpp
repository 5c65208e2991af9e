#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bri/codec.hpp"
#include "bri/tasks.hpp"
#include "bri/types.hpp"

namespace bri::sim {

enum class ExtraDist { fixed, uniform, exponential };

/// Worker completion-time model. Every worker takes base*(1 + U[0,jitter]);
/// stragglers additionally pay base * extra, with extra drawn from the
/// configured distribution (uniform(a,b) multiples of base, a fixed multiple,
/// or exponential with rate 1/a in base units).
struct DelayModel {
    double base_compute = 0.0;  // seconds per task; 0 derives 1e-9 * rows * cols^2
    double jitter = 0.1;
    ExtraDist extra_dist = ExtraDist::uniform;
    double extra_a = 5.0;
    double extra_b = 15.0;

    double base_for(int rows, int cols) const {
        return base_compute > 0.0 ? base_compute
                                  : 1e-9 * rows * static_cast<double>(cols) * cols;
    }
};

/// When a flexible (any-k) scheme stops collecting results.
struct KPolicy {
    enum class Kind { first_k, deadline, all_nonstragglers };
    Kind kind = Kind::all_nonstragglers;
    int k = 0;            // first_k
    double deadline_s = 0.0;  // deadline (waits for at least one result)
};

struct SchemeSpec {
    SchemeId id = SchemeId::BRI;
    std::optional<int> threshold;  // resolved model; nullopt = flexible
};

struct SimScenario {
    int N = 20;
    int m = 9;
    int S = 3;
    std::vector<SchemeSpec> schemes;
    int trials = 50;
    std::uint64_t seed = 1;
    KPolicy k_policy;
    DelayModel delay;
    TaskSpec task = TaskSpec::gram();
    int block_rows = 100;
    int block_cols = 100;
    int d_encode = 2;
    int d_decode = 2;
};

struct TrialRecord {
    std::string scheme;
    int trial = 0;
    double waiting_time = 0.0;  // +inf when the threshold exceeds N
    int k_used = 0;
    double decode_error = std::numeric_limits<double>::quiet_NaN();  // flexible schemes only
};

/// Fills scheme thresholds from the standard models (task degree taken from
/// the scenario task) where not already overridden.
SchemeSpec resolve_scheme(SchemeId id, const SimScenario& scenario,
                          std::optional<int> override_threshold = std::nullopt);

/// Precomputed per-scenario state: source data, encodings and worker outputs
/// for the flexible schemes, and the directly computed reference outputs.
/// Completion-time draws never change block values, so trials reuse it.
struct ScenarioWorkspace {
    NodeSet nodes;
    std::vector<Block> truth;                  // f(X_i) per source block
    std::vector<Block> bri_outputs;            // f applied to d_encode shares
    std::vector<Block> bacc_outputs;           // f applied to degree-0 shares
};

ScenarioWorkspace build_workspace(const SimScenario& scenario);

/// One seeded trial: draws a worker permutation (stragglers = first S), the
/// jitters and candidate extras for all N workers, then scores every scheme
/// on the same arrival vector. Flexible schemes actually decode and report
/// the aggregate Frobenius relative error against the reference outputs.
std::vector<TrialRecord> run_trial(const SimScenario& scenario, const ScenarioWorkspace& ws,
                                   int trial_index);

std::vector<TrialRecord> run_scenario(const SimScenario& scenario);

/// Same scenario executed with real threads sleeping scaled delays; results
/// travel through the wire format. Wall-clock timing, so not reproducible.
std::vector<TrialRecord> run_scenario_wallclock(const SimScenario& scenario, double time_scale);

/// Right-continuous empirical CDF steps (time, probability) for one scheme.
std::vector<std::pair<double, double>> waiting_time_cdf(const std::vector<TrialRecord>& records,
                                                        const std::string& scheme);

double cdf_at(const std::vector<std::pair<double, double>>& cdf, double t);

/// Smallest recorded time whose CDF reaches the quantile.
double time_at_quantile(const std::vector<TrialRecord>& records, const std::string& scheme,
                        double quantile);

/// (t_b - t_a) / t_b at the given CDF level.
double relative_improvement(const std::vector<TrialRecord>& records, const std::string& scheme_a,
                            const std::string& scheme_b, double quantile);

}  // namespace bri::sim
