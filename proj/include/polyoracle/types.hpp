#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace polyoracle {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Eigen::Index;

/// Numeric failure: infeasible/unbounded programs, degenerate geometry,
/// iteration caps. Maps to CLI exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// File format / filesystem failure. Maps to CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polyoracle
