#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mphase/spectra.hpp"
#include "mphase/types.hpp"

namespace mphase {

/// t_n = |r_{n+1} - r_n| for n = 1..N-1; values(i) holds t_{i+1}.
struct DiffSeries {
  Eigen::VectorXd values;
};

/// Windowed sums of t over [n - w, n + w] clipped to [1, N-1], for frames
/// n in [w, N-1-w] with w = ceil(alpha / 2). values(j) belongs to frame first + j.
struct SumSeries {
  Index window = 0;
  Index first = 0;
  Eigen::VectorXd values;

  Index last() const { return first + values.size() - 1; }
  double at(Index frame) const { return values(frame - first); }
};

struct Candidate {
  Index frame = 0;
  double magnitude = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct TransitionReport {
  Index alpha = 0;
  std::vector<Candidate> top;       ///< largest sums, magnitude descending, ties by frame
  std::vector<Candidate> selected;  ///< suppressed picks from `top`, same order
  bool short_selection = false;     ///< fewer than k peaks survived suppression
};

inline constexpr Index kTopCount = 20;

/// ceil(alpha / 2)
constexpr Index half_window(Index alpha) { return (alpha + 1) / 2; }

DiffSeries moving_abs_diff(const RatioSeries& ratios);

/// Sliding-window sums; throws DataError if N - 1 <= 2 ceil(alpha / 2).
SumSeries moving_sum(const DiffSeries& diffs, Index alpha);

/// Top-`top_count` sums, then a greedy pick of up to k of them in descending order,
/// skipping any frame within `suppression_window` of an earlier pick. Zero sums are never
/// selected.
TransitionReport rank_transitions(const SumSeries& sums, Index k, Index suppression_window,
                                  Index top_count = kTopCount);

struct DetectOptions {
  Index alpha = 4;
  Index k = 3;
  std::optional<Index> suppression_window;  ///< defaults to alpha
  SpectraOptions spectra;
};

/// Every intermediate series of one detection run.
struct Detection {
  RatioSeries ratios;
  DiffSeries diffs;
  SumSeries sums;
  TransitionReport report;
};

/// knn_all -> ratio_series -> moving_abs_diff -> moving_sum -> rank_transitions.
Detection detect(const FrameMatrix& data, const DetectOptions& options);

}  // namespace mphase
