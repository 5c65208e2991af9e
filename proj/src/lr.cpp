#include "bri/lr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bri/analysis.hpp"
#include "bri/interp.hpp"
#include "bri/rng.hpp"
#include "bri/tasks.hpp"

namespace bri::lr {
namespace {

double power_iteration_lambda_max(const Block& gram, std::uint64_t seed) {
    Rng rng = stream_rng(seed, "power");
    Vector v(gram.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-1.0, 1.0);
    v.normalize();
    double lambda = 1.0;
    for (int it = 0; it < 20; ++it) {
        Vector next = gram * v;
        lambda = next.norm();
        if (lambda == 0.0) return 1.0;
        v = next / lambda;
    }
    return lambda;
}

/// Decoded sum over the source nodes, each target clamped to the hull of the
/// returned nodes (rational extrapolation outside the hull is unbounded and
/// would inject gradient spikes).
Vector decode_gradient_sum(const std::vector<double>& kept_z, const std::vector<Vector>& kept_r,
                           const std::vector<double>& alphas, int d) {
    const int k = static_cast<int>(kept_z.size());
    const int d_eff = std::min(d, k - 1);
    FhInterpolant<Vector> psi(kept_z, kept_r, d_eff);
    const double lo = psi.nodes().front();
    const double hi = psi.nodes().back();
    Vector sum = Vector::Zero(kept_r.front().size());
    for (double a : alphas) sum += psi.eval(std::clamp(a, lo, hi));
    return sum;
}

struct IterationDraw {
    std::vector<int> stragglers;
    std::vector<double> arrival;
};

IterationDraw draw_iteration(const LrConfig& cfg, int iteration, int rows_per_part, int cols) {
    Rng rng = stream_rng(cfg.seed, "lr-iter", static_cast<std::uint64_t>(iteration));
    IterationDraw d;
    auto perm = rng.permutation(cfg.N);
    d.stragglers.assign(perm.begin(), perm.begin() + cfg.S);
    const double base = cfg.delay.base_for(rows_per_part, cols);
    d.arrival.resize(static_cast<std::size_t>(cfg.N));
    std::vector<double> extra(static_cast<std::size_t>(cfg.N));
    for (int i = 0; i < cfg.N; ++i)
        d.arrival[static_cast<std::size_t>(i)] = base * (1.0 + rng.uniform(0.0, cfg.delay.jitter));
    for (auto& e : extra) {
        switch (cfg.delay.extra_dist) {
            case sim::ExtraDist::fixed: e = cfg.delay.extra_a; break;
            case sim::ExtraDist::uniform: e = rng.uniform(cfg.delay.extra_a, cfg.delay.extra_b); break;
            case sim::ExtraDist::exponential: e = rng.exponential(cfg.delay.extra_a); break;
        }
    }
    for (int i : d.stragglers) d.arrival[static_cast<std::size_t>(i)] += base * extra[static_cast<std::size_t>(i)];
    return d;
}

int lr_wait_threshold(const LrConfig& cfg) {
    const int m = cfg.parts - 1;
    switch (cfg.scheme) {
        case LrScheme::uncoded: return cfg.N;
        case LrScheme::lcc: return std::min(2 * m + 1, cfg.N);
        case LrScheme::ep: return std::min((m + 1) * (m + 1), cfg.N);
        default: return 0;  // flexible
    }
}

void validate_config(const LrConfig& cfg) {
    if (cfg.parts < 1) throw std::invalid_argument("need at least one part");
    if (cfg.d < 0 || cfg.d > cfg.parts - 1)
        throw std::invalid_argument("need 0 <= d <= m");
    if (cfg.iterations < 1) throw std::invalid_argument("need iterations >= 1");
    if (cfg.eta < 0.0) throw std::invalid_argument("learning rate must be positive (or 0 = auto)");
    if (cfg.N < 1 || cfg.S < 0 || cfg.S >= cfg.N)
        throw std::invalid_argument("need 0 <= S < N");
}

}  // namespace

std::string lr_scheme_name(LrScheme s) {
    switch (s) {
        case LrScheme::bri: return "bri";
        case LrScheme::bacc: return "bacc";
        case LrScheme::uncoded: return "uncoded";
        case LrScheme::lcc: return "lcc";
        case LrScheme::ep: return "ep";
    }
    return "?";
}

std::optional<LrScheme> parse_lr_scheme(const std::string& name) {
    for (auto s : {LrScheme::bri, LrScheme::bacc, LrScheme::uncoded, LrScheme::lcc, LrScheme::ep})
        if (lr_scheme_name(s) == name) return s;
    return std::nullopt;
}

LrSetup lr_setup(const Block& A, const Vector& y, const LrConfig& config) {
    validate_config(config);
    if (A.rows() < config.parts)
        throw ShapeError("matrix must have at least one row per part");
    if (y.size() != A.rows()) throw ShapeError("label vector length must match row count");

    LrSetup setup;
    const int m = config.parts - 1;
    const int d_enc = std::min(config.d, m);
    CodecConfig cc{m, config.N, d_enc, config.d, NodeScheme::chebyshev2};
    setup.nodes = make_nodes(cc);
    auto parts = partition_rows(A, config.parts);
    setup.shares = encode(parts.blocks, setup.nodes, d_enc);
    setup.A = A;
    setup.y = y;
    setup.gram = A.transpose() * A;
    setup.eta = config.eta > 0.0
                    ? config.eta
                    : 1.0 / power_iteration_lambda_max(setup.gram, config.seed);
    setup.state.w = Vector::Zero(A.cols());
    setup.state.iteration = 0;

    if (!config.coded_aty) {
        setup.state.aty = A.transpose() * y;
    } else {
        // One coded round: encode the label slices alongside the data slices
        // and recover each A_i^T y_i the same way the gradient is recovered.
        Block ymat = Block::Zero(y.size(), 1);
        ymat.col(0) = y;
        auto yparts = partition_rows(ymat, config.parts);
        auto yshares = encode(yparts.blocks, setup.nodes, d_enc);
        std::vector<double> zs;
        std::vector<Vector> outs;
        for (int j = 0; j < config.N; ++j) {
            zs.push_back(setup.nodes.zs[static_cast<std::size_t>(j)]);
            outs.push_back(setup.shares[static_cast<std::size_t>(j)].block.transpose() *
                           yshares[static_cast<std::size_t>(j)].block.col(0));
        }
        setup.state.aty = decode_gradient_sum(zs, outs, setup.nodes.alphas, config.d);
    }
    return setup;
}

LrIterationInfo lr_iteration(LrState& state, const LrSetup& setup, const LrConfig& config,
                             const std::vector<int>& stragglers) {
    LrIterationInfo info;
    const Vector true_grad = setup.gram * state.w - state.aty;
    Vector grad;
    if (config.exact_gradient) {
        info.k_used = config.N;
        grad = true_grad;
    } else {
        std::vector<double> kept_z;
        std::vector<Vector> kept_r;
        for (int j = 0; j < config.N; ++j) {
            if (std::find(stragglers.begin(), stragglers.end(), j) != stragglers.end()) continue;
            const Block& share = setup.shares[static_cast<std::size_t>(j)].block;
            kept_z.push_back(setup.nodes.zs[static_cast<std::size_t>(j)]);
            kept_r.push_back(share.transpose() * (share * state.w));
        }
        if (kept_z.empty()) throw InsufficientResultsError("every worker straggled this iteration");
        info.k_used = static_cast<int>(kept_z.size());
        grad = decode_gradient_sum(kept_z, kept_r, setup.nodes.alphas, config.d) - state.aty;
    }
    const double tg = true_grad.norm();
    info.grad_error_rel = tg > 0.0 ? (grad - true_grad).norm() / tg : (grad - true_grad).norm();
    state.w -= setup.eta * grad;
    state.iteration += 1;
    info.loss = 0.5 * (setup.A * state.w - setup.y).squaredNorm();
    state.loss_history.push_back(info.loss);
    return info;
}

LrRun train(const Block& A, const Vector& y, const LrConfig& config) {
    LrConfig cfg = config;
    if (cfg.scheme == LrScheme::uncoded || cfg.scheme == LrScheme::lcc || cfg.scheme == LrScheme::ep)
        cfg.exact_gradient = true;
    LrSetup setup = lr_setup(A, y, cfg);
    LrRun run;
    const int rows_per_part =
        static_cast<int>((A.rows() + cfg.parts - 1) / cfg.parts);
    const int wait_threshold = lr_wait_threshold(cfg);
    double clock = 0.0;
    for (int t = 0; t < cfg.iterations; ++t) {
        auto draw = draw_iteration(cfg, t, rows_per_part, static_cast<int>(A.cols()));
        double wait;
        if (wait_threshold > 0) {
            auto sorted = draw.arrival;
            std::sort(sorted.begin(), sorted.end());
            wait = sorted[static_cast<std::size_t>(wait_threshold - 1)];
        } else {
            wait = 0.0;
            for (int j = 0; j < cfg.N; ++j)
                if (std::find(draw.stragglers.begin(), draw.stragglers.end(), j) ==
                    draw.stragglers.end())
                    wait = std::max(wait, draw.arrival[static_cast<std::size_t>(j)]);
        }
        auto info = lr_iteration(setup.state, setup, cfg, draw.stragglers);
        clock += wait;
        run.log.push_back({setup.state.iteration, info.loss, info.grad_error_rel, info.k_used, clock});
    }
    run.total_time_s = clock;
    run.state = std::move(setup.state);
    return run;
}

double theorem2_bound(int N, int S, int d, double deriv_norm_d1, double deriv_norm_d2) {
    if (N < 1 || S < 0) throw std::invalid_argument("need N >= 1 and S >= 0");
    if (!(S < N - 2)) throw UnsupportedRegimeError("bound requires S < N - 2");
    if (d < 1) throw UnsupportedRegimeError("bound requires blending degree d >= 1");
    if (deriv_norm_d1 < 0.0 || deriv_norm_d2 < 0.0)
        throw std::invalid_argument("derivative norms must be non-negative");
    const double lam = std::pow(std::sin((S + 1) * std::numbers::pi / (2.0 * N)), d + 1);
    if ((N - S) % 2 != 0) return lam * deriv_norm_d2;
    return lam * (deriv_norm_d2 + deriv_norm_d1 / (d + 1));
}

Theorem2Sweep run_theorem2_sweep(int N, int S, int d, int draws, std::uint64_t seed, int m) {
    if (draws < 1) throw std::invalid_argument("need draws >= 1");
    Theorem2Sweep sweep;
    sweep.draws = draws;

    CodecConfig cc{m, N, std::min(d, m), d, NodeScheme::chebyshev2};
    auto nodes = make_nodes(cc);
    Rng data_rng = stream_rng(seed, "th2-data");
    std::vector<double> data(static_cast<std::size_t>(m) + 1);
    for (auto& v : data) v = data_rng.uniform(-1.0, 1.0);
    FhInterpolant<double> u(nodes.alphas, data, std::min(d, m));
    // Scalar gram with unit weight: the decode target along the node axis.
    auto varpi = [&](double x) {
        const double ux = u.eval(x);
        return ux * ux;
    };
    std::vector<double> outputs(nodes.zs.size());
    for (std::size_t j = 0; j < nodes.zs.size(); ++j) outputs[j] = varpi(nodes.zs[j]);

    const double lo = std::min(nodes.alphas.front(), nodes.zs.front());
    const double hi = std::max(nodes.alphas.back(), nodes.zs.back());
    const double n2 = analysis::derivative_sup_norm(varpi, lo, hi, d + 2);
    const double n1 = analysis::derivative_sup_norm(varpi, lo, hi, d + 1);
    sweep.bound = theorem2_bound(N, S, d, n1, n2);

    Rng draw_rng = stream_rng(seed, "th2-draws");
    for (int t = 0; t < draws; ++t) {
        auto strag = draw_rng.sample_without_replacement(N, S);
        std::vector<double> kz;
        std::vector<double> ky;
        for (int j = 0; j < N; ++j) {
            if (std::find(strag.begin(), strag.end(), j) != strag.end()) continue;
            kz.push_back(nodes.zs[static_cast<std::size_t>(j)]);
            ky.push_back(outputs[static_cast<std::size_t>(j)]);
        }
        const int k = static_cast<int>(kz.size());
        FhInterpolant<double> psi(kz, ky, std::min(d, k - 1));
        // Theorems bound the error on the interpolation interval, so measure
        // the sup over the returned-node hull plus any in-hull source nodes.
        double err = 0.0;
        const double a = kz.front(), b = kz.back();
        constexpr int kGrid = 400;
        for (int g = 0; g < kGrid; ++g) {
            const double x = a + (b - a) * g / (kGrid - 1);
            err = std::max(err, std::abs(psi.eval(x) - varpi(x)));
        }
        for (double alpha : nodes.alphas)
            if (alpha >= a && alpha <= b)
                err = std::max(err, std::abs(psi.eval(alpha) - varpi(alpha)));
        sweep.max_error = std::max(sweep.max_error, err);
        if (err > sweep.bound) ++sweep.violations;
    }
    sweep.max_ratio = sweep.bound > 0.0 ? sweep.max_error / sweep.bound
                                        : std::numeric_limits<double>::infinity();
    return sweep;
}

Dataset load_csv_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
                if (pos != cell.size() && cell.find_first_not_of(" \t\r", pos) != std::string::npos)
                    throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("malformed CSV value at line " + std::to_string(lineno) +
                                         ": '" + cell + "'");
            }
        }
        if (row.size() < 2)
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     " needs at least one feature and a label");
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     " has inconsistent column count");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("dataset is empty: " + path);
    Dataset ds;
    const auto cols = rows.front().size() - 1;
    ds.A.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    ds.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            ds.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        ds.y(static_cast<Eigen::Index>(i)) = rows[i][cols];
    }
    return ds;
}

Dataset make_synthetic(int rows, int cols, int parts, double block_similarity, double noise,
                       std::uint64_t seed) {
    if (rows < parts || cols < 1) throw std::invalid_argument("bad synthetic shape");
    Rng rng = stream_rng(seed, "synthetic");
    const int per = (rows + parts - 1) / parts;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    auto gaussian = [&rng] {
        // Box-Muller.
        const double u1 = std::max(rng.uniform01(), 1e-12);
        const double u2 = rng.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Block base(per, cols);
    for (Eigen::Index i = 0; i < base.rows(); ++i)
        for (Eigen::Index j = 0; j < base.cols(); ++j) base(i, j) = gaussian() * scale;
    Dataset ds;
    ds.A.resize(rows, cols);
    for (int p = 0; p < parts; ++p) {
        for (int r = 0; r < per; ++r) {
            const int row = p * per + r;
            if (row >= rows) break;
            for (int c = 0; c < cols; ++c)
                ds.A(row, c) = base(r, c) + block_similarity * gaussian() * scale;
        }
    }
    Vector wstar(cols);
    for (Eigen::Index j = 0; j < wstar.size(); ++j) wstar(j) = gaussian();
    ds.y = ds.A * wstar;
    for (Eigen::Index i = 0; i < ds.y.size(); ++i) ds.y(i) += noise * gaussian();
    return ds;
}

}  // namespace bri::lr
