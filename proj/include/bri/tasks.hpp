#pragma once

#include <optional>
#include <vector>

#include "bri/types.hpp"

namespace bri {

enum class TaskKind {
    gram,    // X^T X
    matvec,  // X^T X w
    poly,    // sum_j c_j X^j, square blocks
};

/// The polynomial computation each worker applies to its encoded block.
struct TaskSpec {
    TaskKind kind = TaskKind::gram;
    int degree = 2;                  // total degree of f
    std::vector<double> coeffs{};    // poly kind only, c_0..c_degree

    static TaskSpec gram() { return {TaskKind::gram, 2, {}}; }
    static TaskSpec matvec() { return {TaskKind::matvec, 2, {}}; }
    static TaskSpec poly(std::vector<double> c);
};

/// Applies the task to one block. `aux` is the weight vector, required for
/// (and only for) the matvec kind.
Block apply_task(const TaskSpec& spec, const Block& block,
                 const std::optional<Vector>& aux = std::nullopt);

struct PartitionResult {
    std::vector<Block> blocks;
    int padding_rows = 0;
    /// Set when parts exceed the row count, i.e. some blocks are all padding.
    bool degenerate = false;
};

/// Splits a matrix into `parts` equal-height row blocks, zero-padding the
/// tail. Vertical concatenation minus padding reproduces the input.
PartitionResult partition_rows(const Block& matrix, int parts);

}  // namespace bri
