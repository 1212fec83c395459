#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace mphase {

using Index = Eigen::Index;

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N x P data matrix, one row per frame. Frame indices exposed by the API are 1-based.
using FrameMatrix = RowMatrix<double>;

/// Raised when a caller violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed or insufficient data (bad files, too few frames, singular geometry).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}
}  // namespace detail

}  // namespace mphase
