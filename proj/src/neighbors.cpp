#include "mphase/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

namespace mphase {

double row_distance(const FrameMatrix& data, Index n, Index m) {
  const Index rows = data.rows();
  if (n < 1 || n > rows || m < 1 || m > rows)
    throw std::out_of_range("row_distance: frame index out of range [1, " +
                            std::to_string(rows) + "]");
  return (data.row(n - 1) - data.row(m - 1)).norm();
}

VpTree::VpTree(const FrameMatrix& data) : data_(&data) {
  std::vector<Index> rows(static_cast<std::size_t>(data.rows()));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<Index>(i);
  nodes_.reserve(rows.size());
  root_ = build(rows, 0, rows.size());
}

double VpTree::squared_distance(Index a, Index b) const {
  return (data_->row(a) - data_->row(b)).squaredNorm();
}

int VpTree::build(std::vector<Index>& rows, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return -1;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{rows[lo]});
  if (hi - lo == 1) return id;

  const Index vantage = rows[lo];
  std::vector<std::pair<double, Index>> keyed;
  keyed.reserve(hi - lo - 1);
  for (std::size_t i = lo + 1; i < hi; ++i)
    keyed.emplace_back(std::sqrt(squared_distance(vantage, rows[i])), rows[i]);
  const std::size_t mid = keyed.size() / 2;
  std::nth_element(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(mid), keyed.end());
  for (std::size_t i = 0; i < keyed.size(); ++i) rows[lo + 1 + i] = keyed[i].second;

  const double radius = keyed[mid].first;
  const std::size_t split = lo + 1 + mid;
  const int inside = build(rows, lo + 1, split);
  const int outside = build(rows, split, hi);
  nodes_[id].radius = radius;
  nodes_[id].inside = inside;
  nodes_[id].outside = outside;
  return id;
}

std::vector<std::pair<double, Index>> VpTree::query(Index row, Index k) const {
  using Key = std::tuple<double, bool, Index>;  // (squared distance, not self, row)
  std::priority_queue<Key> best;                // max-heap: worst candidate on top
  const auto k_size = static_cast<std::size_t>(k);

  auto bound = [&]() {
    if (best.size() < k_size) return std::numeric_limits<double>::infinity();
    return std::sqrt(std::get<0>(best.top()));
  };

  // Each pending subtree carries a lower bound on the distance from the query to any row
  // inside it; the bound is re-checked when the subtree is popped.
  std::vector<std::pair<int, double>> stack;
  if (root_ >= 0) stack.emplace_back(root_, 0.0);
  while (!stack.empty()) {
    const auto [id, lower] = stack.back();
    stack.pop_back();
    const double tau = bound();
    // Slack keeps rounding in sqrt from discarding a row tied with the current worst.
    if (lower > tau + 1e-9 * (lower + tau)) continue;

    const Node& node = nodes_[static_cast<std::size_t>(id)];
    const double d2 = squared_distance(row, node.vantage);
    const Key key{d2, node.vantage != row, node.vantage};
    if (best.size() < k_size) {
      best.push(key);
    } else if (key < best.top()) {
      best.pop();
      best.push(key);
    }
    const double d = std::sqrt(d2);
    const bool near_side = d <= node.radius;
    const int first = near_side ? node.inside : node.outside;
    const int second = near_side ? node.outside : node.inside;
    if (second >= 0) stack.emplace_back(second, std::abs(node.radius - d));
    if (first >= 0) stack.emplace_back(first, 0.0);
  }

  std::vector<std::pair<double, Index>> out(best.size());
  for (std::size_t i = best.size(); i-- > 0;) {
    out[i] = {std::get<0>(best.top()), std::get<2>(best.top())};
    best.pop();
  }
  return out;
}

std::vector<NeighborSet> knn_all(const FrameMatrix& data, Index alpha) {
  const Index n = data.rows();
  detail::require(alpha >= 2 && alpha <= n,
                  "knn_all: alpha must lie in [2, N] (N = " + std::to_string(n) + ")");
  const VpTree tree(data);
  std::vector<NeighborSet> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    NeighborSet& set = out[static_cast<std::size_t>(i)];
    set.center = i + 1;
    for (const auto& [d2, row] : tree.query(i, alpha)) {
      set.members.push_back(row + 1);
      set.distances.push_back(std::sqrt(d2));
    }
  }
  return out;
}

}  // namespace mphase
