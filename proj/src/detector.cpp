#include "mphase/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mphase {

DiffSeries moving_abs_diff(const RatioSeries& ratios) {
  const Index n = ratios.size();
  detail::require(n >= 2, "moving_abs_diff: need at least two frames");
  return DiffSeries{(ratios.ratios.tail(n - 1) - ratios.ratios.head(n - 1)).cwiseAbs()};
}

SumSeries moving_sum(const DiffSeries& diffs, Index alpha) {
  detail::require(alpha >= 1, "moving_sum: alpha must be positive");
  const Index count = diffs.values.size();  // N - 1
  const Index w = half_window(alpha);
  if (count <= 2 * w)
    throw DataError("series too short for alpha = " + std::to_string(alpha) + ": need more than " +
                    std::to_string(2 * w + 1) + " frames, have " + std::to_string(count + 1));

  // t is 1-based below: t(i) == diffs.values(i - 1).
  auto t = [&](Index i) { return diffs.values(i - 1); };
  SumSeries out;
  out.window = w;
  out.first = w;
  out.values.resize(count - 2 * w + 1);

  // Window for frame n is [max(1, n - w), n + w]; only the first frame (n = w) is clipped.
  double running = 0.0;
  for (Index i = 1; i <= 2 * w; ++i) running += t(i);
  out.values(0) = running;
  for (Index n = w + 1; n <= count - w; ++n) {
    running += t(n + w);
    if (n - w - 1 >= 1) running -= t(n - w - 1);
    out.values(n - w) = running;
  }
  return out;
}

TransitionReport rank_transitions(const SumSeries& sums, Index k, Index suppression_window,
                                  Index top_count) {
  detail::require(k >= 1, "rank_transitions: k must be at least 1");
  detail::require(suppression_window >= 0, "rank_transitions: suppression window must be >= 0");

  std::vector<Candidate> all;
  all.reserve(static_cast<std::size_t>(sums.values.size()));
  for (Index j = 0; j < sums.values.size(); ++j) all.push_back({sums.first + j, sums.values(j)});
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return a.magnitude > b.magnitude;
  });

  TransitionReport report;
  const auto keep = std::min<std::size_t>(all.size(), static_cast<std::size_t>(top_count));
  report.top.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep));

  for (const Candidate& c : report.top) {
    if (static_cast<Index>(report.selected.size()) == k) break;
    if (!(c.magnitude > 0.0)) break;
    const bool clear = std::none_of(report.selected.begin(), report.selected.end(),
                                    [&](const Candidate& s) {
                                      return std::abs(s.frame - c.frame) <= suppression_window;
                                    });
    if (clear) report.selected.push_back(c);
  }
  report.short_selection = static_cast<Index>(report.selected.size()) < k;
  return report;
}

Detection detect(const FrameMatrix& data, const DetectOptions& options) {
  detail::require(options.alpha >= 2 && options.alpha <= data.rows(),
                  "detect: alpha must lie in [2, N] (N = " + std::to_string(data.rows()) + ")");
  detail::require(options.k >= 1, "detect: k must be at least 1");
  // Check the window before the expensive stages.
  if (data.rows() - 1 <= 2 * half_window(options.alpha))
    throw DataError("too few frames (" + std::to_string(data.rows()) + ") for alpha = " +
                    std::to_string(options.alpha) + "; need at least " +
                    std::to_string(2 * half_window(options.alpha) + 2));

  Detection out;
  out.ratios = ratio_series(data, options.alpha, options.spectra);
  out.diffs = moving_abs_diff(out.ratios);
  out.sums = moving_sum(out.diffs, options.alpha);
  out.report = rank_transitions(out.sums, options.k,
                                options.suppression_window.value_or(options.alpha));
  out.report.alpha = options.alpha;
  return out;
}

}  // namespace mphase
