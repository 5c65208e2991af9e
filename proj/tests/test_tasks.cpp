#include <doctest.h>

#include "bri/tasks.hpp"
#include "test_support.hpp"

using namespace bri;
using namespace testsup;

TEST_CASE("gram task basics") {
    CHECK(apply_task(TaskSpec::gram(), Block::Zero(4, 3)).isZero(0.0));
    CHECK(bitwise_equal(apply_task(TaskSpec::gram(), Block::Identity(2, 2)),
                        Block::Identity(2, 2)));
    Rng rng(5);
    Block x = random_block(rng, 5, 3);
    CHECK(rel_err(apply_task(TaskSpec::gram(), x), Block(x.transpose() * x)) == 0.0);
}

TEST_CASE("matvec task equals the two-step computation") {
    Rng rng(6);
    Block x = random_block(rng, 3, 2);
    Vector w(2);
    w << 0.3, -1.2;
    Block two_step = (x.transpose() * x) * w;
    Block got = apply_task(TaskSpec::matvec(), x, w);
    CHECK(got.rows() == 2);
    CHECK(got.cols() == 1);
    CHECK(rel_err(got, two_step) < 1e-14);
    CHECK_THROWS_AS(apply_task(TaskSpec::matvec(), x), std::invalid_argument);
    Vector bad(3);
    bad.setZero();
    CHECK_THROWS_AS(apply_task(TaskSpec::matvec(), x, bad), ShapeError);
}

TEST_CASE("poly task uses Horner over matrix powers") {
    Rng rng(7);
    Block x = random_block(rng, 3, 3);
    auto spec = TaskSpec::poly({1.0, -2.0, 0.5});  // 1 - 2X + 0.5 X^2
    Block want = Block::Identity(3, 3) - 2.0 * x + 0.5 * (x * x);
    CHECK(rel_err(apply_task(spec, x), want) < 1e-14);
    CHECK(spec.degree == 2);
    CHECK_THROWS_AS(apply_task(spec, random_block(rng, 3, 2)), ShapeError);
}

TEST_CASE("partition splits evenly and zero-pads the tail") {
    Block m(4, 2);
    m << 1, 2, 3, 4, 5, 6, 7, 8;
    auto even = partition_rows(m, 2);
    REQUIRE(even.blocks.size() == 2);
    CHECK(even.padding_rows == 0);
    CHECK(!even.degenerate);
    Block recon(4, 2);
    recon << even.blocks[0], even.blocks[1];
    CHECK(bitwise_equal(recon, m));

    Block odd(5, 2);
    odd << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10;
    auto padded = partition_rows(odd, 2);
    REQUIRE(padded.blocks.size() == 2);
    CHECK(padded.blocks[0].rows() == 3);
    CHECK(padded.padding_rows == 1);
    CHECK(padded.blocks[1].row(2).isZero(0.0));
    Block top(5, 2);
    top << padded.blocks[0], padded.blocks[1].topRows(2);
    CHECK(bitwise_equal(top, odd));
}

TEST_CASE("partition flags the all-padding regime") {
    Block m(2, 2);
    m.setOnes();
    auto r = partition_rows(m, 5);
    CHECK(r.degenerate);
    CHECK(r.blocks.size() == 5);
    CHECK_THROWS_AS(partition_rows(m, 0), std::invalid_argument);
}

TEST_CASE("gram additivity over partitions") {
    Rng rng(8);
    for (int parts = 1; parts <= 10; ++parts) {
        Block a = random_block(rng, 23, 4);
        Block direct = a.transpose() * a;
        Block sum = Block::Zero(4, 4);
        for (const auto& blk : partition_rows(a, parts).blocks)
            sum += apply_task(TaskSpec::gram(), blk);
        CHECK(rel_err(sum, direct) < 1e-10);
    }
}
