#include "mphase/dimest.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "mphase/neighbors.hpp"

namespace mphase {

std::vector<std::vector<GraphEdge>> knn_graph(const FrameMatrix& points, Index alpha) {
  const Index n = points.rows();
  detail::require(alpha >= 1 && n >= alpha + 1,
                  "knn_graph: need at least alpha + 1 rows (alpha = " + std::to_string(alpha) +
                      ", rows = " + std::to_string(n) + ")");
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> linked =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  for (const NeighborSet& set : knn_all(points, alpha + 1)) {
    for (std::size_t m = 1; m < set.members.size(); ++m) {
      linked(set.center - 1, set.members[m] - 1) = true;
      linked(set.members[m] - 1, set.center - 1) = true;
    }
  }
  std::vector<std::vector<GraphEdge>> graph(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (linked(i, j) && i != j)
        graph[static_cast<std::size_t>(i)].push_back({j, (points.row(i) - points.row(j)).norm()});
  return graph;
}

namespace {

Eigen::VectorXd dijkstra(const std::vector<std::vector<GraphEdge>>& graph, Index source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(static_cast<Index>(graph.size()), inf);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist(source) = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist(u)) continue;
    for (const GraphEdge& e : graph[static_cast<std::size_t>(u)]) {
      const double candidate = d + e.weight;
      if (candidate < dist(e.to)) {
        dist(e.to) = candidate;
        queue.emplace(candidate, e.to);
      }
    }
  }
  return dist;
}

// Component id per vertex; ids are assigned in order of each component's lowest vertex.
std::vector<Index> components(const std::vector<std::vector<GraphEdge>>& graph, Index& count) {
  std::vector<Index> id(graph.size(), -1);
  count = 0;
  for (std::size_t start = 0; start < graph.size(); ++start) {
    if (id[start] >= 0) continue;
    std::vector<Index> stack{static_cast<Index>(start)};
    id[start] = count;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (const GraphEdge& e : graph[static_cast<std::size_t>(u)]) {
        if (id[static_cast<std::size_t>(e.to)] < 0) {
          id[static_cast<std::size_t>(e.to)] = count;
          stack.push_back(e.to);
        }
      }
    }
    ++count;
  }
  return id;
}

}  // namespace

GeodesicResult geodesic_distances(const FrameMatrix& points, Index alpha) {
  const auto graph = knn_graph(points, alpha);
  Index count = 0;
  const std::vector<Index> component = components(graph, count);

  std::vector<Index> sizes(static_cast<std::size_t>(count), 0);
  for (Index c : component) ++sizes[static_cast<std::size_t>(c)];
  Index largest = 0;
  for (Index c = 1; c < count; ++c)
    if (sizes[static_cast<std::size_t>(c)] > sizes[static_cast<std::size_t>(largest)]) largest = c;

  GeodesicResult out;
  for (Index i = 0; i < points.rows(); ++i)
    if (component[static_cast<std::size_t>(i)] == largest) out.rows.push_back(i + 1);
  out.disconnected = count > 1;
  out.dropped = points.rows() - static_cast<Index>(out.rows.size());

  const Index kept = static_cast<Index>(out.rows.size());
  out.distances.resize(kept, kept);
  for (Index a = 0; a < kept; ++a) {
    const Eigen::VectorXd dist = dijkstra(graph, out.rows[static_cast<std::size_t>(a)] - 1);
    for (Index b = 0; b < kept; ++b) out.distances(a, b) = dist(out.rows[static_cast<std::size_t>(b)] - 1);
  }
  return out;
}

GeodesicResult geodesic_distances(const FrameMatrix& data, Index first, Index last, Index alpha) {
  detail::require(first >= 1 && last <= data.rows() && first <= last,
                  "frame range must lie within [1, " + std::to_string(data.rows()) + "]");
  detail::require(last - first + 1 >= alpha + 1,
                  "frame range " + std::to_string(first) + "-" + std::to_string(last) +
                      " is too small for alpha = " + std::to_string(alpha));
  return geodesic_distances(FrameMatrix(data.middleRows(first - 1, last - first + 1)), alpha);
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd x = a.array() - a.mean();
  const Eigen::ArrayXd y = b.array() - b.mean();
  const double denom = std::sqrt((x * x).sum() * (y * y).sum());
  if (denom == 0.0) return 0.0;
  return (x * y).sum() / denom;
}

ResidualCurve residual_curve(const Eigen::MatrixXd& geodesics, const ResidualOptions& options) {
  const Index n = geodesics.rows();
  detail::require(n >= 3 && geodesics.cols() == n, "residual_curve: need a square matrix, n >= 3");
  detail::require(options.max_dimension >= 1, "residual_curve: max_dimension must be >= 1");
  if (!geodesics.allFinite()) throw DataError("geodesic matrix contains non-finite entries");

  // B = -1/2 J D^2 J
  const Eigen::MatrixXd sq = geodesics.array().square().matrix();
  const Eigen::RowVectorXd col_mean = sq.colwise().mean();
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const double grand = sq.mean();
  Eigen::MatrixXd b = -0.5 * ((sq.rowwise() - col_mean).colwise() - row_mean);
  b.array() -= 0.5 * grand;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite())
    throw DataError("MDS eigendecomposition failed");

  const Index pairs = n * (n - 1) / 2;
  Eigen::VectorXd reference(pairs);
  for (Index i = 0, p = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) reference(p++) = geodesics(i, j);

  const Index dmax = std::min(options.max_dimension, n);
  ResidualCurve out;
  out.residual.resize(dmax);
  Eigen::MatrixXd embedding(n, dmax);
  for (Index d = 0; d < dmax; ++d) {
    // Eigenvalues are ascending; take the largest first, clamping negatives to zero.
    const Index k = n - 1 - d;
    embedding.col(d) = eig.eigenvectors().col(k) * std::sqrt(std::max(0.0, eig.eigenvalues()(k)));
  }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);  // running squared distances
  for (Index d = 0; d < dmax; ++d) {
    const Eigen::VectorXd& y = embedding.col(d);
    Eigen::VectorXd embedded(pairs);
    for (Index i = 0, p = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const double diff = y(i) - y(j);
        gram(i, j) += diff * diff;
        embedded(p++) = std::sqrt(gram(i, j));
      }
    const double rho = pearson(reference, embedded);
    out.residual(d) = std::max(0.0, 1.0 - rho * rho);  // rho can round past 1
  }

  const double peak = out.residual.maxCoeff();
  out.scaled = peak > 0.0 ? Eigen::VectorXd(out.residual / peak) : out.residual;
  out.elbow = dmax;
  if (peak < 1e-12) {
    out.elbow = 1;
  } else {
    for (Index d = 0; d + 1 < dmax; ++d)
      if (out.scaled(d) - out.scaled(d + 1) < options.elbow_tolerance) {
        out.elbow = d + 1;
        break;
      }
  }
  return out;
}

}  // namespace mphase
