#include "bri/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

namespace bri {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> chebyshev2_points(int N) {
    std::vector<double> zs(static_cast<std::size_t>(N));
    if (N == 1) {
        zs[0] = 0.0;
        return zs;
    }
    for (int i = 0; i < N; ++i) zs[static_cast<std::size_t>(i)] = -std::cos(i * kPi / (N - 1));
    return zs;
}

double min_gap(const std::vector<double>& as, const std::vector<double>& zs) {
    double g = std::numeric_limits<double>::infinity();
    for (double a : as)
        for (double z : zs) g = std::min(g, std::abs(a - z));
    return g;
}

void validate_node_set(const NodeSet& nodes) {
    if (nodes.alphas.empty() || nodes.zs.empty())
        throw std::invalid_argument("node set needs alphas and worker nodes");
    auto distinct = [](const std::vector<double>& v) {
        auto s = v;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!(s[i] - s[i - 1] > 0)) return false;
        return true;
    };
    if (!distinct(nodes.alphas) || !distinct(nodes.zs))
        throw NodeCollisionError("node families must be pairwise distinct");
    if (min_gap(nodes.alphas, nodes.zs) <= kNodeGap)
        throw NodeCollisionError("source and worker nodes closer than the separation gap");
}

void check_blocks(const std::vector<Block>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("no input blocks");
    for (const auto& b : blocks)
        if (b.rows() != blocks[0].rows() || b.cols() != blocks[0].cols())
            throw ShapeError("input blocks must share one shape");
}

/// Results sorted ascending by node, with duplicate detection.
std::vector<const WorkerResult*> sorted_results(const std::vector<WorkerResult>& results) {
    if (results.empty()) throw std::invalid_argument("decode needs at least one result");
    std::vector<const WorkerResult*> ptrs;
    ptrs.reserve(results.size());
    for (const auto& r : results) ptrs.push_back(&r);
    std::sort(ptrs.begin(), ptrs.end(),
              [](const WorkerResult* a, const WorkerResult* b) { return a->z < b->z; });
    for (std::size_t i = 1; i < ptrs.size(); ++i)
        if (!(ptrs[i]->z > ptrs[i - 1]->z))
            throw NodeCollisionError("duplicate worker node among results");
    return ptrs;
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void append_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    append_u64(out, bits);
}

std::uint64_t read_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

double read_f64(const std::uint8_t* p) {
    const std::uint64_t bits = read_u64(p);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

NodeSet make_nodes(const CodecConfig& config) {
    if (config.m < 0 || config.N < 1) throw std::invalid_argument("need m >= 0 and N >= 1");
    if (config.d_encode < 0 || config.d_encode > config.m)
        throw std::invalid_argument("encoder degree must satisfy 0 <= d <= m");
    if (config.d_decode < 0) throw std::invalid_argument("decoder degree must be >= 0");
    NodeSet nodes;
    nodes.zs = config.node_scheme == NodeScheme::equispaced
                   ? [&] {
                         std::vector<double> zs(static_cast<std::size_t>(config.N));
                         if (config.N == 1) { zs[0] = 0.0; return zs; }
                         for (int i = 0; i < config.N; ++i)
                             zs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (config.N - 1);
                         return zs;
                     }()
                   : chebyshev2_points(config.N);

    const int want = config.m + 1;
    // Midpoint grids interleave with the worker nodes. Some (m, N) pairs put
    // midpoints exactly on worker nodes (shared cosine arguments); a small
    // rotation of the midpoint angles clears them while keeping the span.
    for (int attempt = 0; attempt <= 40; ++attempt) {
        std::vector<double> alphas(static_cast<std::size_t>(want));
        for (int i = 0; i < want; ++i) {
            const double frac = (i + 0.5 + 0.01 * attempt) / want;
            alphas[static_cast<std::size_t>(i)] = config.node_scheme == NodeScheme::equispaced
                                                      ? -1.0 + 2.0 * frac
                                                      : -std::cos(frac * kPi);
        }
        if (min_gap(alphas, nodes.zs) > kNodeGap) {
            nodes.alphas = std::move(alphas);
            validate_node_set(nodes);
            return nodes;
        }
    }
    throw NodeCollisionError("could not place source nodes clear of the worker nodes");
}

std::vector<Share> encode(const std::vector<Block>& blocks, const NodeSet& nodes, int d) {
    check_blocks(blocks);
    validate_node_set(nodes);
    const int m = nodes.m();
    if (static_cast<int>(blocks.size()) != m + 1)
        throw std::invalid_argument("need one block per source node");
    if (d < 0 || d > m) throw std::invalid_argument("encoder degree must satisfy 0 <= d <= m");
    FhInterpolant<Block> r(nodes.alphas, blocks, d);
    std::vector<Share> shares;
    shares.reserve(nodes.zs.size());
    for (int i = 0; i < nodes.workers(); ++i) {
        shares.push_back({i, nodes.zs[static_cast<std::size_t>(i)],
                          r.eval(nodes.zs[static_cast<std::size_t>(i)])});
    }
    return shares;
}

std::vector<Block> decode(const std::vector<WorkerResult>& results, const NodeSet& nodes, int d,
                          const std::vector<double>& targets) {
    if (d < 0) throw std::invalid_argument("decoder degree must be >= 0");
    auto ptrs = sorted_results(results);
    (void)nodes;
    const int k = static_cast<int>(ptrs.size());
    const int d_eff = std::min(d, k - 1);
    std::vector<double> zs(ptrs.size());
    std::vector<Block> ys;
    ys.reserve(ptrs.size());
    for (std::size_t i = 0; i < ptrs.size(); ++i) {
        zs[i] = ptrs[i]->z;
        ys.push_back(ptrs[i]->block);
    }
    FhInterpolant<Block> h(std::move(zs), std::move(ys), d_eff);
    std::vector<Block> out;
    out.reserve(targets.size());
    for (double t : targets) out.push_back(h.eval(t));
    return out;
}

std::vector<Block> bacc_decode(const std::vector<WorkerResult>& results, const NodeSet& nodes,
                               const std::vector<double>& targets) {
    (void)nodes;
    auto ptrs = sorted_results(results);
    const std::size_t k = ptrs.size();
    const double eps =
        k > 1 ? 1e-13 * (ptrs.back()->z - ptrs.front()->z) : 0.0;
    std::vector<Block> out;
    out.reserve(targets.size());
    for (double t : targets) {
        if (k == 1) {
            out.push_back(ptrs[0]->block);
            continue;
        }
        bool guarded = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (std::abs(t - ptrs[i]->z) <= eps) {
                out.push_back(ptrs[i]->block);
                guarded = true;
                break;
            }
        }
        if (guarded) continue;
        long double den = 0.0L;
        std::vector<long double> q(k);
        for (std::size_t i = 0; i < k; ++i) {
            const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
            q[i] = sign / (static_cast<long double>(t) - ptrs[i]->z);
            den += q[i];
        }
        Block acc = ptrs[0]->block * static_cast<double>(q[0] / den);
        for (std::size_t i = 1; i < k; ++i)
            acc += ptrs[i]->block * static_cast<double>(q[i] / den);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<Share> lcc_encode(const std::vector<Block>& blocks, const NodeSet& nodes) {
    check_blocks(blocks);
    validate_node_set(nodes);
    const int m = nodes.m();
    if (static_cast<int>(blocks.size()) != m + 1)
        throw std::invalid_argument("need one block per source node");
    std::vector<Share> shares;
    shares.reserve(nodes.zs.size());
    for (int i = 0; i < nodes.workers(); ++i) {
        const double z = nodes.zs[static_cast<std::size_t>(i)];
        Block acc = Block::Zero(blocks[0].rows(), blocks[0].cols());
        for (int j = 0; j <= m; ++j) {
            long double ell = 1.0L;
            for (int t = 0; t <= m; ++t) {
                if (t == j) continue;
                ell *= (static_cast<long double>(z) - nodes.alphas[static_cast<std::size_t>(t)]) /
                       (nodes.alphas[static_cast<std::size_t>(j)] -
                        nodes.alphas[static_cast<std::size_t>(t)]);
            }
            acc += blocks[static_cast<std::size_t>(j)] * static_cast<double>(ell);
        }
        shares.push_back({i, z, std::move(acc)});
    }
    return shares;
}

std::vector<Block> lcc_decode(const std::vector<WorkerResult>& results, const NodeSet& nodes,
                              const std::vector<double>& targets, int f_degree) {
    if (f_degree < 1) throw std::invalid_argument("task degree must be >= 1");
    const int threshold = f_degree * nodes.m() + 1;
    auto ptrs = sorted_results(results);
    const int k = static_cast<int>(ptrs.size());
    if (k < threshold)
        throw InsufficientResultsError("fixed-threshold decode needs " + std::to_string(threshold) +
                                       " results, got " + std::to_string(k));
    std::vector<Block> out;
    out.reserve(targets.size());
    for (double t : targets) {
        Block acc = Block::Zero(ptrs[0]->block.rows(), ptrs[0]->block.cols());
        for (int j = 0; j < k; ++j) {
            long double ell = 1.0L;
            for (int i = 0; i < k; ++i) {
                if (i == j) continue;
                ell *= (static_cast<long double>(t) - ptrs[static_cast<std::size_t>(i)]->z) /
                       (ptrs[static_cast<std::size_t>(j)]->z - ptrs[static_cast<std::size_t>(i)]->z);
            }
            acc += ptrs[static_cast<std::size_t>(j)]->block * static_cast<double>(ell);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::BRI: return "BRI";
        case SchemeId::BACC: return "BACC";
        case SchemeId::LCC: return "LCC";
        case SchemeId::MatDot: return "MatDot";
        case SchemeId::EP: return "EP";
    }
    return "?";
}

std::optional<SchemeId> parse_scheme(const std::string& name) {
    for (auto id : {SchemeId::BRI, SchemeId::BACC, SchemeId::LCC, SchemeId::MatDot, SchemeId::EP})
        if (scheme_name(id) == name) return id;
    return std::nullopt;
}

std::optional<int> scheme_threshold(SchemeId scheme, int m, int f_degree) {
    if (m < 0 || f_degree < 1) throw std::invalid_argument("need m >= 0, f_degree >= 1");
    switch (scheme) {
        case SchemeId::BRI:
        case SchemeId::BACC:
            return std::nullopt;  // flexible, any k >= 1
        case SchemeId::LCC:
            return f_degree * m + 1;
        case SchemeId::EP:
            return (m + 1) * (m + 1);
        case SchemeId::MatDot:
            return 2 * (m + 1) - 1;
    }
    throw std::logic_error("unreachable scheme");
}

std::vector<std::uint8_t> serialize_result(const WorkerResult& r) {
    std::vector<std::uint8_t> out;
    out.reserve(32 + static_cast<std::size_t>(r.block.size()) * 8);
    append_u64(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(r.worker_id)));
    append_f64(out, r.z);
    append_u64(out, static_cast<std::uint64_t>(r.block.rows()));
    append_u64(out, static_cast<std::uint64_t>(r.block.cols()));
    for (Eigen::Index i = 0; i < r.block.rows(); ++i)
        for (Eigen::Index j = 0; j < r.block.cols(); ++j) append_f64(out, r.block(i, j));
    return out;
}

WorkerResult deserialize_result(const std::uint8_t* data, std::size_t size) {
    if (size < 32) throw std::invalid_argument("result record truncated");
    WorkerResult r;
    r.worker_id = static_cast<int>(static_cast<std::int64_t>(read_u64(data)));
    r.z = read_f64(data + 8);
    const auto rows = static_cast<Eigen::Index>(read_u64(data + 16));
    const auto cols = static_cast<Eigen::Index>(read_u64(data + 24));
    if (rows < 0 || cols < 0 ||
        size != 32 + static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * 8)
        throw std::invalid_argument("result record has inconsistent payload size");
    r.block.resize(rows, cols);
    const std::uint8_t* p = data + 32;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j, p += 8) r.block(i, j) = read_f64(p);
    return r;
}

}  // namespace bri
