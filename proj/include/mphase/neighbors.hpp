#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mphase/types.hpp"

namespace mphase {

/// The alpha nearest frames of `center`, closest first. members[0] == center.
/// All indices are 1-based frame numbers.
struct NeighborSet {
  Index center = 0;
  std::vector<Index> members;
  std::vector<double> distances;
};

/// Euclidean distance between rows n and m (1-based).
double row_distance(const FrameMatrix& data, Index n, Index m);

/// Exact k-nearest-neighbor search over the rows of a matrix with a vantage-point tree.
///
/// Results are ordered by (squared distance, not-the-query-row, row index), so the query
/// row comes first even when other rows duplicate it, and remaining ties go to the lower
/// index. The matrix is referenced, not copied, and must outlive the tree.
class VpTree {
 public:
  explicit VpTree(const FrameMatrix& data);

  /// (squared distance, 0-based row) pairs for the k nearest rows to `row` (0-based).
  std::vector<std::pair<double, Index>> query(Index row, Index k) const;

  Index size() const { return data_->rows(); }

 private:
  struct Node {
    Index vantage = -1;
    double radius = 0.0;  // median distance from the vantage point
    int inside = -1;      // rows with distance <= radius
    int outside = -1;     // rows with distance >= radius
  };

  int build(std::vector<Index>& rows, std::size_t lo, std::size_t hi);
  double squared_distance(Index a, Index b) const;

  const FrameMatrix* data_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// NeighborSet for every frame, ordered by frame.
std::vector<NeighborSet> knn_all(const FrameMatrix& data, Index alpha);

}  // namespace mphase
