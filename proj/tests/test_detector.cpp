#include "doctest.h"
#include "mphase/detector.hpp"
#include "oracles.hpp"

using namespace mphase;

namespace {

RatioSeries series_of(std::initializer_list<double> values) {
  RatioSeries out;
  out.ratios = Eigen::VectorXd::Map(values.begin(), static_cast<Index>(values.size()));
  out.degenerate.assign(values.size(), false);
  return out;
}

SumSeries sums_of(const Eigen::VectorXd& values, Index first = 2) {
  SumSeries out;
  out.first = first;
  out.window = first;
  out.values = values;
  return out;
}

}  // namespace

TEST_CASE("half_window is the ceiling of alpha / 2") {
  CHECK(half_window(2) == 1);
  CHECK(half_window(3) == 2);
  CHECK(half_window(4) == 2);
  CHECK(half_window(9) == 5);
}

TEST_CASE("moving_abs_diff: arithmetic") {
  const auto t = moving_abs_diff(series_of({0.1, 0.4, 0.2}));
  REQUIRE(t.values.size() == 2);
  CHECK(t.values(0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(t.values(1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(moving_abs_diff(series_of({0.5, 0.5, 0.5, 0.5})).values.isZero(0.0));
  CHECK_THROWS_AS(moving_abs_diff(series_of({0.5})), PreconditionError);
}

TEST_CASE("property: diff series sums to the total variation") {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    RatioSeries r;
    r.ratios = gen.vector(gen.integer(2, 300));
    CHECK(std::abs(moving_abs_diff(r).values.sum() - oracle::total_variation(r.ratios)) <= 1e-12);
  }
}

TEST_CASE("moving_sum: ones and impulses") {
  DiffSeries ones{Eigen::VectorXd::Ones(30)};
  const auto s = moving_sum(ones, 4);
  CHECK(s.window == 2);
  CHECK(s.first == 2);
  CHECK(s.last() == 28);  // 31 frames: n in [w, N - 1 - w]
  CHECK(s.at(2) == 4.0);  // window [0, 4] clipped to [1, 4]
  for (Index n = 3; n <= s.last(); ++n) CHECK(s.at(n) == 5.0);

  DiffSeries impulse{Eigen::VectorXd::Zero(30)};
  const Index k = 12;
  impulse.values(k - 1) = 1.0;
  const auto p = moving_sum(impulse, 4);
  for (Index n = p.first; n <= p.last(); ++n) CHECK(p.at(n) == (std::abs(n - k) <= 2 ? 1.0 : 0.0));
}

TEST_CASE("moving_sum: too short") {
  DiffSeries two{Eigen::VectorXd::Ones(2)};
  CHECK_THROWS_AS(moving_sum(two, 2), DataError);
  DiffSeries three{Eigen::VectorXd::Ones(3)};
  CHECK(moving_sum(three, 2).values.size() == 2);
}

TEST_CASE("property: moving_sum equals the double loop") {
  oracle::Gen gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const Index alpha = trial == 0 ? 6 : gen.integer(1, 12);
    const Index w = half_window(alpha);
    DiffSeries t{gen.vector(gen.integer(2 * w + 1, 400))};
    const auto fast = moving_sum(t, alpha);
    const auto slow = oracle::brute_moving_sum(t.values, alpha);
    REQUIRE(fast.values.size() == slow.size());
    CHECK((fast.values - slow).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("rank_transitions: single impulse") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(40);
  v(17) = 2.5;
  for (Index k : {1, 2, 5}) {
    const auto r = rank_transitions(sums_of(v), k, 4);
    REQUIRE(!r.selected.empty());
    CHECK(r.selected.size() == 1);
    CHECK(r.selected[0].frame == 19);
    CHECK(r.short_selection == (k > 1));
  }
}

TEST_CASE("rank_transitions: equal peaks are ordered by frame") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(60);
  v(40) = 1.0;
  v(10) = 1.0;
  const auto r = rank_transitions(sums_of(v), 2, 4);
  REQUIRE(r.selected.size() == 2);
  CHECK(r.selected[0].frame == 12);
  CHECK(r.selected[1].frame == 42);
  CHECK_FALSE(r.short_selection);
}

TEST_CASE("rank_transitions: suppression and top list") {
  Eigen::VectorXd v(10);
  v << 1, 5, 4.9, 4.8, 0, 0, 3, 0, 0, 2;
  const auto r = rank_transitions(sums_of(v, 1), 3, 2, 4);
  REQUIRE(r.top.size() == 4);
  CHECK(r.top[0] == Candidate{2, 5});
  CHECK(r.top[3] == Candidate{7, 3});
  // Frames 3 and 4 are within 2 of frame 2; frame 10 is outside the top 4.
  REQUIRE(r.selected.size() == 2);
  CHECK(r.selected[1].frame == 7);
  CHECK(r.short_selection);
  CHECK_THROWS_AS(rank_transitions(sums_of(v), 0, 2), PreconditionError);
}

TEST_CASE("property: selection respects suppression and is a subsequence of top") {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd v = gen.vector(gen.integer(1, 120));
    for (Index i = 0; i < v.size(); ++i)
      if (gen.coin(0.3)) v(i) = 0.0;
    const Index window = gen.integer(0, 10), k = gen.integer(1, 6);
    const auto r = rank_transitions(sums_of(v), k, window);
    for (std::size_t i = 1; i < r.top.size(); ++i) CHECK(r.top[i - 1].magnitude >= r.top[i].magnitude);
    for (std::size_t i = 0; i < r.selected.size(); ++i)
      for (std::size_t j = i + 1; j < r.selected.size(); ++j)
        CHECK(std::abs(r.selected[i].frame - r.selected[j].frame) > window);
    std::size_t pos = 0;
    for (const auto& s : r.selected) {
      while (pos < r.top.size() && !(r.top[pos] == s)) ++pos;
      CHECK(pos < r.top.size());
      CHECK(s.magnitude > 0.0);
    }
    CHECK(r.short_selection == (static_cast<Index>(r.selected.size()) < k));
  }
}

TEST_CASE("detect: block boundaries show up in the top list") {
  // 20 identical frames, 3 distinct far-away frames, then the first block again. Only
  // neighbourhoods touching the middle block have full rank, so t is nonzero only there.
  oracle::Gen gen(24);
  const Eigen::RowVectorXd a = gen.matrix(1, 16);
  FrameMatrix d(43, 16);
  for (Index n = 0; n < 43; ++n) d.row(n) = a;
  d.middleRows(20, 3) = gen.matrix(3, 16, 5.0, 9.0);
  const auto result = detect(d, {4, 2, std::nullopt, {}});
  std::vector<Index> top;
  for (const auto& c : result.report.top) top.push_back(c.frame);
  CHECK(std::find(top.begin(), top.end(), 20) != top.end());
  CHECK(std::find(top.begin(), top.end(), 23) != top.end());
  for (const auto& c : result.report.selected) CHECK((c.frame >= 18 && c.frame <= 25));
  for (Index n = 0; n < result.diffs.values.size(); ++n)
    if (n + 1 < 20 || n + 1 > 23) CHECK(result.diffs.values(n) < 1e-12);
}

TEST_CASE("detect: constant data") {
  const FrameMatrix d = FrameMatrix::Constant(20, 6, 3.0);
  const auto result = detect(d, {4, 3, std::nullopt, {true}});
  for (bool flag : result.ratios.degenerate) CHECK(flag);
  CHECK(result.sums.values.isZero(0.0));
  CHECK(result.report.selected.empty());
  CHECK(result.report.short_selection);
  CHECK(result.report.alpha == 4);
}

TEST_CASE("detect: window and alpha errors") {
  const FrameMatrix three = FrameMatrix::Random(3, 5);
  CHECK_THROWS_AS(detect(three, {2, 3, std::nullopt, {}}), DataError);
  try {
    detect(three, {2, 3, std::nullopt, {}});
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("need at least 4") != std::string::npos);
  }
  CHECK_THROWS_AS(detect(three, {1, 3, std::nullopt, {}}), PreconditionError);
  CHECK_THROWS_AS(detect(three, {4, 3, std::nullopt, {}}), PreconditionError);
}

TEST_CASE("property: detection is invariant under positive scaling") {
  oracle::Gen gen(25);
  for (int trial = 0; trial < 20; ++trial) {
    const FrameMatrix d = gen.matrix(gen.integer(12, 60), gen.integer(2, 30));
    const DetectOptions opts{gen.integer(2, 5), 3, std::nullopt, {gen.coin()}};
    const auto base = detect(d, opts);
    for (double c : {0.5, 3.0, 255.0}) {
      const auto scaled = detect(FrameMatrix(c * d), opts);
      REQUIRE(scaled.report.selected.size() == base.report.selected.size());
      for (std::size_t i = 0; i < base.report.selected.size(); ++i) {
        CHECK(scaled.report.selected[i].frame == base.report.selected[i].frame);
        CHECK(std::abs(scaled.report.selected[i].magnitude - base.report.selected[i].magnitude) <= 1e-10);
      }
    }
  }
}
