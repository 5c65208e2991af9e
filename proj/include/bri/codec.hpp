#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bri/interp.hpp"
#include "bri/types.hpp"

namespace bri {

enum class NodeScheme { chebyshev2, equispaced, custom };

/// Interpolation abscissas: source nodes (one per input block) and worker
/// evaluation nodes, pairwise distinct with a metric gap between the sets.
struct NodeSet {
    std::vector<double> alphas;  // m+1 source nodes
    std::vector<double> zs;      // N worker nodes

    int m() const { return static_cast<int>(alphas.size()) - 1; }
    int workers() const { return static_cast<int>(zs.size()); }
};

/// Minimum |alpha - z| separation enforced between the two node families.
inline constexpr double kNodeGap = 1e-9;

struct CodecConfig {
    int m = 0;           // block count minus one
    int N = 1;           // worker count
    int d_encode = 0;    // blending degree of the encoder, 0 <= d <= m
    int d_decode = 0;    // blending degree of the decoder (clamped to k-1 at decode time)
    NodeScheme node_scheme = NodeScheme::chebyshev2;
};

/// Encoded block headed to one worker.
struct Share {
    int worker_id = 0;
    double z = 0.0;
    Block block;
};

/// A worker's computed result as collected by the master.
struct WorkerResult {
    int worker_id = 0;
    double z = 0.0;
    Block block;
    double arrival_time = 0.0;
};

/// Builds the node families for a configuration.
///
/// chebyshev2: z_i = -cos(i pi / (N-1)) spanning [-1,1]; alphas at the
/// midpoint angles -cos((i+1/2) pi / mhat), interleaved with the zs.
/// equispaced: zs uniform on [-1,1], alphas on the offset midpoint grid.
/// Throws NodeCollisionError when the separation gap cannot be met.
NodeSet make_nodes(const CodecConfig& config);

/// Evaluates the blended rational encoder through (alpha_i, X_i) at every
/// worker node. The interpolant hits each X_i exactly at alpha_i.
std::vector<Share> encode(const std::vector<Block>& blocks, const NodeSet& nodes, int d);

/// Flexible decoder: interpolates the k returned (z, Y~) pairs with blending
/// degree min(d, k-1) and evaluates at the targets. Any k >= 1 decodes; more
/// results sharpen the approximation.
std::vector<Block> decode(const std::vector<WorkerResult>& results, const NodeSet& nodes, int d,
                          const std::vector<double>& targets);

/// Independent alternating-sign (degree-0) decoder, kept as a cross-check for
/// decode(..., d=0, ...). Does not share the interpolant code path.
std::vector<Block> bacc_decode(const std::vector<WorkerResult>& results, const NodeSet& nodes,
                               const std::vector<double>& targets);

/// Polynomial (Lagrange) encoder: Share[i] = sum_j X_j ell_j(z_i) with ell_j
/// the Lagrange basis on the alphas.
std::vector<Share> lcc_encode(const std::vector<Block>& blocks, const NodeSet& nodes);

/// Exact fixed-threshold decoder: Lagrange interpolation of the returned
/// results, valid once k >= f_degree*m + 1. Throws InsufficientResultsError
/// below the threshold.
std::vector<Block> lcc_decode(const std::vector<WorkerResult>& results, const NodeSet& nodes,
                              const std::vector<double>& targets, int f_degree);

enum class SchemeId { BRI, BACC, LCC, MatDot, EP };

std::string scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(const std::string& name);

/// Recovery-threshold model used by the waiting-time simulator. nullopt means
/// flexible (any k >= 1): BRI and BACC. Fixed models: LCC = f_degree*m + 1,
/// EP = (m+1)^2, MatDot = 2(m+1) - 1.
std::optional<int> scheme_threshold(SchemeId scheme, int m, int f_degree);

/// Wire format shared by shares and results: little-endian
/// int64 worker_id | f64 z | int64 rows | int64 cols | rows*cols f64 row-major.
std::vector<std::uint8_t> serialize_result(const WorkerResult& r);
WorkerResult deserialize_result(const std::uint8_t* data, std::size_t size);
inline WorkerResult deserialize_result(const std::vector<std::uint8_t>& bytes) {
    return deserialize_result(bytes.data(), bytes.size());
}

}  // namespace bri
