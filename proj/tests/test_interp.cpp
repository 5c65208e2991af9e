#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bri/interp.hpp"
#include "test_support.hpp"

using bri::Block;
using bri::EvalCounters;
using bri::FhInterpolant;
using bri::Rng;
using namespace testsup;

namespace {

FhInterpolant<double> scalar_interp(std::vector<double> xs, std::vector<double> ys, int d) {
    return FhInterpolant<double>(std::move(xs), std::move(ys), d);
}

}  // namespace

TEST_CASE("constant blocks reproduce through both evaluation forms") {
    Rng rng(101);
    Block c = random_block(rng, 3, 2);
    FhInterpolant<Block> r({-1.0, 0.0, 1.0}, {c, c, c}, 0);
    CHECK(rel_err(r.eval(0.5), c) < 1e-14);
    CHECK(rel_err(r.eval_blended(0.5), c) < 1e-14);
}

TEST_CASE("degree-0 alternating form matches the hand-evaluated quotient") {
    // (1/3 - 2/2 + 3/1) / (1/3 - 1/2 + 1/1) = 14/5
    auto r = scalar_interp({-1.0, 0.0, 1.0}, {1.0, 2.0, 3.0}, 0);
    CHECK(r.eval(2.0) == doctest::Approx(2.8).epsilon(1e-13));
    CHECK(r.eval_blended(2.0) == doctest::Approx(2.8).epsilon(1e-13));
}

TEST_CASE("d=1 reproduces linear data") {
    auto r = scalar_interp({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, 1);
    CHECK(r.eval(0.5) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.eval_blended(0.5) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("evaluation at a node returns the stored block bit for bit") {
    Rng rng(7);
    for (int d : {0, 1, 2}) {
        std::vector<Block> blocks{random_block(rng, 2, 2), random_block(rng, 2, 2),
                                  random_block(rng, 2, 2)};
        FhInterpolant<Block> r({-1.0, 0.0, 1.0}, blocks, d);
        CHECK(bitwise_equal(r.eval(0.0), blocks[1]));
        CHECK(bitwise_equal(r.eval_blended(-1.0), blocks[0]));
    }
}

TEST_CASE("node exactness holds for random instances") {
    Rng rng(40);
    for (int inst = 0; inst < 25; ++inst) {
        const int m = 1 + static_cast<int>(rng.below(20));
        const int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(m) + 1));
        auto xs = jittered_nodes(rng, m + 1, -1.0, 1.0);
        std::vector<double> ys(xs.size());
        for (auto& y : ys) y = rng.uniform(-5.0, 5.0);
        FhInterpolant<double> r(xs, ys, d);
        for (std::size_t i = 0; i < r.nodes().size(); ++i) {
            CHECK(r.eval(r.nodes()[i]) == r.values()[i]);
        }
    }
}

TEST_CASE("unsorted construction sorts nodes and keeps pairing") {
    auto r = scalar_interp({1.0, -1.0, 0.0}, {30.0, 10.0, 20.0}, 1);
    CHECK(r.nodes() == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(r.eval(-1.0) == 10.0);
    CHECK(r.eval(1.0) == 30.0);
}

TEST_CASE("partition of unity over the node interval and one span beyond") {
    // Deeper extrapolation is structurally ill-conditioned (the blending
    // weights alternate and nearly cancel), so the 1e-12 contract is checked
    // where the codec actually evaluates: the hull plus mild extrapolation.
    Rng rng(11);
    for (int inst = 0; inst < 10; ++inst) {
        const int n = 3 + static_cast<int>(rng.below(20));
        const int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n - 1, 9)) + 1));
        auto xs = jittered_nodes(rng, n, -1.0, 1.0);
        std::vector<double> ys(xs.size(), 3.25);
        FhInterpolant<double> r(xs, ys, d);
        const double span = xs.back() - xs.front();
        for (int g = 0; g < 60; ++g) {
            const double x = xs.front() - span + rng.uniform01() * 3 * span;
            CHECK(rel_diff(r.eval(x), 3.25) < 1e-12);
        }
    }
    // Matrix values follow the same scalar weights.
    Rng mrng(12);
    Block c = random_block(mrng, 4, 3);
    auto xs = jittered_nodes(mrng, 12, -1.0, 1.0);
    FhInterpolant<Block> r(xs, std::vector<Block>(12, c), 3);
    for (int g = 0; g < 40; ++g) {
        const double x = mrng.uniform(-3.0, 3.0);
        CHECK(rel_err(r.eval(x), c) < 1e-12);
    }
}

TEST_CASE("blended and weights forms agree to 1e-12 on random instances") {
    Rng rng(13);
    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const int n = 3 + static_cast<int>(rng.below(48));
        const int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n - 1, 9)) + 1));
        auto xs = jittered_nodes(rng, n, -1.0, 1.0);
        std::vector<double> ys(xs.size());
        for (auto& y : ys) y = rng.uniform(-1.0, 1.0);
        FhInterpolant<double> r(xs, ys, d);
        for (int g = 0; g < 10; ++g) {
            const double x = rng.uniform(xs.front(), xs.back());
            worst = std::max(worst, rel_diff(r.eval(x), r.eval_blended(x)));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("weights form matches the blended oracle on the n=10 d=3 example family") {
    Rng rng(17);
    auto xs = jittered_nodes(rng, 11, -2.0, 2.0);
    std::vector<double> ys(xs.size());
    for (auto& y : ys) y = rng.uniform(-3.0, 3.0);
    FhInterpolant<double> r(xs, ys, 3);
    double worst = 0.0;
    for (int g = 0; g < 100; ++g) {
        const double x = rng.uniform(xs.front(), xs.back());
        worst = std::max(worst, rel_diff(r.eval(x), r.eval_blended(x)));
    }
    CHECK(worst < 1e-12);
    CHECK(scalar_interp({-1.0, 0.0, 1.0}, {1.0, 2.0, 3.0}, 0).eval(2.0) ==
          doctest::Approx(2.8).epsilon(1e-13));
}

TEST_CASE("polynomial data of degree <= d is reproduced") {
    Rng rng(19);
    for (int inst = 0; inst < 12; ++inst) {
        const int n = 6 + static_cast<int>(rng.below(25));
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n - 2, 8)) + 1));
        const int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(d) + 1));
        std::vector<double> coeff(static_cast<std::size_t>(deg) + 1);
        for (auto& c : coeff) c = rng.uniform(-2.0, 2.0);
        auto poly = [&](double x) {
            double acc = 0.0;
            for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
            return acc;
        };
        auto xs = jittered_nodes(rng, n, -1.0, 1.0);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = poly(xs[i]);
        FhInterpolant<double> r(xs, ys, d);
        for (int g = 0; g < 100; ++g) {
            const double x = rng.uniform(xs.front(), xs.back());
            CHECK(rel_diff(r.eval(x), poly(x)) < 1e-10);
        }
    }
}

TEST_CASE("denominator forms") {
    SUBCASE("single-sum denominator matches the alternating quotient value") {
        auto r = scalar_interp({-1.0, 0.0, 1.0}, {1.0, 2.0, 3.0}, 0);
        CHECK(r.barycentric_denominator(2.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
    }
    SUBCASE("n = d degenerates to one normalized piece") {
        auto r = scalar_interp({0.0, 1.0}, {4.0, 9.0}, 1);
        for (double x : {-2.0, 0.4, 3.5}) CHECK(r.denominator(x) == doctest::Approx(1.0));
    }
    SUBCASE("no real zeros on a dense grid straddling the node interval") {
        std::vector<double> xs(11);
        for (int i = 0; i < 11; ++i) xs[static_cast<std::size_t>(i)] = -1.0 + 0.2 * i;
        for (int d = 0; d <= 5; ++d) {
            std::vector<double> ys(xs.size(), 1.0);
            FhInterpolant<double> r(xs, ys, d);
            double min_abs = std::numeric_limits<double>::infinity();
            for (int g = 0; g < 10000; ++g) {
                const double x = -1.5 + 3.0 * g / 9999.0;
                bool near_node = false;
                for (double xn : xs) near_node |= std::abs(x - xn) <= r.guard_eps();
                if (near_node) continue;
                min_abs = std::min(min_abs, std::abs(r.denominator(x)));
            }
            CHECK(min_abs > 0.0);
        }
    }
    SUBCASE("refuses points inside the guard band") {
        auto r = scalar_interp({-1.0, 0.0, 1.0}, {1.0, 2.0, 3.0}, 0);
        CHECK_THROWS_AS(r.denominator(0.0), std::invalid_argument);
    }
}

TEST_CASE("error-bound formula") {
    SUBCASE("zero derivative norms give a zero bound") {
        CHECK(bri::theorem1_bound(2, 11, -8.0, 8.0, 1.6, 0.0, 0.0) == 0.0);
    }
    SUBCASE("even branch matches direct substitution") {
        // 11 points on [-8,8]: n - d = 8 even; unit derivative norms.
        const double want = std::pow(1.6, 3) * (16.0 * 1.0 / 4.0 + 1.0 / 3.0);
        CHECK(bri::theorem1_bound(2, 11, -8.0, 8.0, 1.6, 1.0, 1.0) ==
              doctest::Approx(want).epsilon(1e-15));
        CHECK(bri::theorem1_bound(2, 11, -8.0, 8.0, 1.6, 1.0, 1.0) ==
              doctest::Approx(17.749333333333333).epsilon(1e-12));
    }
    SUBCASE("empirical sin error stays below the bound (unit norms)") {
        for (int d : {1, 2, 3}) {
            for (int n : {11, 21, 41}) {
                std::vector<double> xs(static_cast<std::size_t>(n));
                std::vector<double> ys(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) {
                    xs[static_cast<std::size_t>(i)] = -8.0 + 16.0 * i / (n - 1);
                    ys[static_cast<std::size_t>(i)] = std::sin(xs[static_cast<std::size_t>(i)]);
                }
                FhInterpolant<double> r(xs, ys, d);
                double sup = 0.0;
                for (int g = 0; g < 2000; ++g) {
                    const double x = -8.0 + 16.0 * g / 1999.0;
                    sup = std::max(sup, std::abs(r.eval(x) - std::sin(x)));
                }
                const double lambda = 16.0 / (n - 1);
                CHECK(sup <= bri::theorem1_bound(d, n, -8.0, 8.0, lambda, 1.0, 1.0));
            }
        }
    }
    SUBCASE("d = 0 is outside the hypotheses") {
        CHECK_THROWS_AS(bri::theorem1_bound(0, 11, -8.0, 8.0, 1.6, 1.0, 1.0),
                        bri::UnsupportedRegimeError);
    }
}

TEST_CASE("blended-path multiply counter tracks the closed-form count") {
    Rng rng(23);
    const int m = 20, d = 3, s = 50, t = 50;
    std::vector<Block> blocks;
    std::vector<double> xs = jittered_nodes(rng, m + 1, -1.0, 1.0);
    for (int i = 0; i <= m; ++i) blocks.push_back(random_block(rng, s, t));
    FhInterpolant<Block> r(xs, blocks, d);
    EvalCounters counters;
    (void)r.eval_blended(1.7, &counters);
    const double measured =
        static_cast<double>(counters.scalar_mul) + static_cast<double>(counters.block_mul) * s * t;
    const double formula = (m - d + 1.0) * (d + 1.0) * s * t;
    CHECK(measured > formula / 2.0);
    CHECK(measured < formula * 2.0);
}

TEST_CASE("single-node interpolant is the constant map") {
    Block c(1, 1);
    c << 42.0;
    FhInterpolant<Block> r({0.3}, {c}, 0);
    CHECK(bitwise_equal(r.eval(100.0), c));
    CHECK(bitwise_equal(r.eval(-5.0), c));
}

TEST_CASE("construction and evaluation reject contract violations") {
    CHECK_THROWS_AS(scalar_interp({}, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS(scalar_interp({0.0, 1.0}, {1.0, 2.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(scalar_interp({0.0, 1e-16, 1.0}, {1.0, 2.0, 3.0}, 0),
                    bri::NodeCollisionError);
    CHECK_THROWS_AS(scalar_interp({0.0, std::nan(""), 1.0}, {1.0, 2.0, 3.0}, 0),
                    std::invalid_argument);
    auto r = scalar_interp({0.0, 1.0}, {1.0, 2.0}, 0);
    CHECK_THROWS_AS(r.eval(std::numeric_limits<double>::infinity()), std::invalid_argument);
    Rng rng(3);
    Block a = random_block(rng, 2, 2), b = random_block(rng, 3, 2);
    CHECK_THROWS_AS(FhInterpolant<Block>({0.0, 1.0}, {a, b}, 0), bri::ShapeError);
}
