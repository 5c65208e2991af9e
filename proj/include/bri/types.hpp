#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace bri {

/// Dense real matrix block, the unit of encoded/decoded data.
using Block = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Interpolation abscissas or worker evaluation points cannot satisfy the
/// pairwise-distance requirements.
struct NodeCollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A fixed-threshold decoder was handed fewer results than its recovery
/// threshold.
struct InsufficientResultsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A bound was requested outside its hypotheses (e.g. S >= N-2, or d = 0 where
/// d >= 1 is required).
struct UnsupportedRegimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Matrix dimensions do not line up.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace bri
