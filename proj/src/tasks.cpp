#include "bri/tasks.hpp"

#include <stdexcept>

namespace bri {

TaskSpec TaskSpec::poly(std::vector<double> c) {
    if (c.empty()) throw std::invalid_argument("poly task needs coefficients");
    TaskSpec s;
    s.kind = TaskKind::poly;
    s.degree = static_cast<int>(c.size()) - 1;
    s.coeffs = std::move(c);
    if (s.degree < 1) throw std::invalid_argument("task degree must be >= 1");
    return s;
}

Block apply_task(const TaskSpec& spec, const Block& block, const std::optional<Vector>& aux) {
    switch (spec.kind) {
        case TaskKind::gram:
            return block.transpose() * block;
        case TaskKind::matvec: {
            if (!aux) throw std::invalid_argument("matvec task requires the weight vector");
            if (aux->size() != block.cols())
                throw ShapeError("weight vector length must match block columns");
            return block.transpose() * (block * *aux);
        }
        case TaskKind::poly: {
            if (block.rows() != block.cols()) throw ShapeError("poly task requires square blocks");
            // Horner over matrix powers.
            Block acc = spec.coeffs.back() * Block::Identity(block.rows(), block.cols());
            for (int j = static_cast<int>(spec.coeffs.size()) - 2; j >= 0; --j) {
                acc = acc * block;
                acc += spec.coeffs[static_cast<std::size_t>(j)] *
                       Block::Identity(block.rows(), block.cols());
            }
            return acc;
        }
    }
    throw std::logic_error("unreachable task kind");
}

PartitionResult partition_rows(const Block& matrix, int parts) {
    if (parts < 1) throw std::invalid_argument("parts must be >= 1");
    const auto rows = matrix.rows();
    const auto per = (rows + parts - 1) / parts;
    PartitionResult out;
    out.padding_rows = static_cast<int>(per * parts - rows);
    out.degenerate = parts > rows;
    out.blocks.reserve(static_cast<std::size_t>(parts));
    for (int i = 0; i < parts; ++i) {
        Block b = Block::Zero(per, matrix.cols());
        const auto lo = static_cast<Eigen::Index>(i) * per;
        const auto take = std::max<Eigen::Index>(0, std::min(per, rows - lo));
        if (take > 0) b.topRows(take) = matrix.middleRows(lo, take);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

}  // namespace bri
