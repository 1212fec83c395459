#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mphase/types.hpp"

namespace mphase {

struct GraphEdge {
  Index to = 0;  ///< 0-based row within the graph
  double weight = 0.0;
};

/// Symmetric kNN graph on the rows: i and j are joined when either lists the other among
/// its alpha nearest rows (excluding itself). Edge weights are Euclidean row distances.
std::vector<std::vector<GraphEdge>> knn_graph(const FrameMatrix& points, Index alpha);

struct GeodesicResult {
  Eigen::MatrixXd distances;  ///< over the retained rows only
  std::vector<Index> rows;    ///< 1-based indices (into the input range) of retained rows
  bool disconnected = false;
  Index dropped = 0;          ///< rows outside the largest connected component
};

/// Graph geodesics between all rows of `points` (Dijkstra from every source). If the
/// graph is disconnected, only its largest component is kept and the result is flagged.
GeodesicResult geodesic_distances(const FrameMatrix& points, Index alpha);

/// Same, for the frames first..last (1-based, inclusive) of a frame matrix.
GeodesicResult geodesic_distances(const FrameMatrix& data, Index first, Index last, Index alpha);

struct ResidualOptions {
  Index max_dimension = 10;
  double elbow_tolerance = 0.05;  ///< tau
};

struct ResidualCurve {
  Eigen::VectorXd residual;  ///< entry d-1: 1 - rho^2 at embedding dimension d
  Eigen::VectorXd scaled;    ///< residual / max residual
  Index elbow = 1;
};

/// Classical MDS on the geodesic matrix, residual variance for d = 1..max_dimension, and
/// the elbow: the smallest d with scaled(d) - scaled(d+1) < tau.
ResidualCurve residual_curve(const Eigen::MatrixXd& geodesics, const ResidualOptions& options = {});

/// Pearson correlation of two equally sized vectors.
double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace mphase
