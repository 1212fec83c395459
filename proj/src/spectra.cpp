#include "mphase/spectra.hpp"

#include <string>

namespace mphase {

Eigen::VectorXd neighborhood_singular_values(const FrameMatrix& data, const NeighborSet& set,
                                             const SpectraOptions& options) {
  FrameMatrix rows(static_cast<Index>(set.members.size()), data.cols());
  for (Index i = 0; i < rows.rows(); ++i) {
    const Index frame = set.members[static_cast<std::size_t>(i)];
    if (frame < 1 || frame > data.rows())
      throw std::out_of_range("neighborhood member " + std::to_string(frame) + " out of range");
    rows.row(i) = data.row(frame - 1);
  }
  return gram_singular_values(rows, options.center);
}

RatioSeries ratio_series(const FrameMatrix& data, const std::vector<NeighborSet>& neighborhoods,
                         const SpectraOptions& options) {
  detail::require(static_cast<Index>(neighborhoods.size()) == data.rows(),
                  "ratio_series: one neighborhood per frame is required");
  RatioSeries out;
  out.alpha = neighborhoods.empty() ? 0 : static_cast<Index>(neighborhoods.front().members.size());
  out.ratios.resize(data.rows());
  out.degenerate.assign(static_cast<std::size_t>(data.rows()), false);
  for (Index n = 0; n < data.rows(); ++n) {
    const Eigen::VectorXd sigma =
        neighborhood_singular_values(data, neighborhoods[static_cast<std::size_t>(n)], options);
    if (sigma(0) == 0.0) {
      out.ratios(n) = 0.0;
      out.degenerate[static_cast<std::size_t>(n)] = true;
    } else {
      out.ratios(n) = sigma(sigma.size() - 1) / sigma(0);
    }
  }
  return out;
}

RatioSeries ratio_series(const FrameMatrix& data, Index alpha, const SpectraOptions& options) {
  detail::require(alpha >= 2 && alpha <= data.rows(),
                  "ratio_series: alpha must lie in [2, N] (N = " + std::to_string(data.rows()) +
                      ")");
  return ratio_series(data, knn_all(data, alpha), options);
}

}  // namespace mphase
