#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mphase/neighbors.hpp"
#include "mphase/types.hpp"

namespace mphase {

struct SpectraOptions {
  /// Subtract the column mean of each neighborhood before the decomposition. Centered
  /// alpha-row neighborhoods have rank <= alpha - 1, so sigma_alpha is then identically
  /// zero; the detection pipeline therefore runs uncentered by default.
  bool center = false;
};

/// Singular values, descending, of the rows of `rows` (optionally column-centered).
///
/// The spectrum is taken from the alpha x alpha Gram matrix G = X X^T through its
/// triangular factor R (G = R^T R, R from a Householder QR of X^T), which keeps the work at
/// O(P alpha^2) for wide X while retaining full relative accuracy in the small singular
/// values. When P < alpha the transposed problem is solved instead and the spectrum padded
/// with zeros. Centered input yields an exactly zero sigma_alpha.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> gram_singular_values(
    const Eigen::MatrixBase<Derived>& rows, bool center) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Index count = rows.rows();
  Vector out = Vector::Zero(count);
  if (count == 0) return out;

  Matrix x = rows;
  if (center) {
    bool constant = true;
    for (Index i = 1; i < count && constant; ++i) constant = (x.row(i) == x.row(0));
    if (constant) return out;
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> mean = x.colwise().mean();
    x.rowwise() -= mean;
  }

  const Index rank_bound = std::min<Index>(count, x.cols());
  Matrix r;
  if (x.cols() >= count) {
    Eigen::HouseholderQR<Matrix> qr(x.transpose());
    r = qr.matrixQR().topRows(count).template triangularView<Eigen::Upper>();
  } else {
    Eigen::HouseholderQR<Matrix> qr(x);
    r = qr.matrixQR().topRows(x.cols()).template triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<Matrix> svd(r);
  out.head(rank_bound) = svd.singularValues().head(rank_bound);
  if (center && rank_bound == count) out(count - 1) = Scalar(0);
  return out;
}

/// Singular values of the neighborhood's member rows.
Eigen::VectorXd neighborhood_singular_values(const FrameMatrix& data, const NeighborSet& set,
                                             const SpectraOptions& options = {});

/// Per-frame sigma_alpha / sigma_1 (entry n-1 belongs to frame n).
struct RatioSeries {
  Index alpha = 0;
  Eigen::VectorXd ratios;
  std::vector<bool> degenerate;  ///< sigma_1 == 0; the ratio is then reported as 0

  Index size() const { return ratios.size(); }
};

RatioSeries ratio_series(const FrameMatrix& data, Index alpha,
                         const SpectraOptions& options = {});

/// Same, from precomputed neighborhoods.
RatioSeries ratio_series(const FrameMatrix& data, const std::vector<NeighborSet>& neighborhoods,
                         const SpectraOptions& options = {});

}  // namespace mphase
