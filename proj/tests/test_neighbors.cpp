#include "doctest.h"
#include "mphase/neighbors.hpp"
#include "oracles.hpp"

using namespace mphase;

TEST_CASE("row_distance: small cases") {
  FrameMatrix d(3, 4);
  d << 0, 0, 0, 0,
       3, 4, 0, 0,
       0, 0, 0, 0;
  CHECK(row_distance(d, 1, 3) == 0.0);
  CHECK(row_distance(d, 1, 2) == 5.0);
  CHECK(row_distance(d, 2, 1) == 5.0);
  CHECK_THROWS_AS(row_distance(d, 0, 1), std::out_of_range);
  CHECK_THROWS_AS(row_distance(d, 1, 4), std::out_of_range);
}

TEST_CASE("row_distance: brute-force sum of squares") {
  oracle::Gen gen(5);
  const FrameMatrix d = gen.matrix(5, 8);
  for (Index a = 1; a <= 5; ++a)
    for (Index b = 1; b <= 5; ++b)
      CHECK(std::abs(row_distance(d, a, b) - std::sqrt(oracle::sum_of_squares(d, a - 1, b - 1))) < 1e-12);
}

TEST_CASE("property: triangle inequality") {
  oracle::Gen gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    const FrameMatrix d = gen.mixed(3, gen.integer(1, 12));
    CHECK(row_distance(d, 1, 3) <= row_distance(d, 1, 2) + row_distance(d, 2, 3) + 1e-9);
  }
}

TEST_CASE("knn_all: collinear rows") {
  FrameMatrix d(5, 1);
  d << 0, 1, 2, 3, 4;
  const auto sets = knn_all(d, 3);
  REQUIRE(sets.size() == 5);
  CHECK(sets[2].center == 3);
  CHECK(sets[2].members == std::vector<Index>{3, 2, 4});
  CHECK(sets[2].distances == std::vector<double>{0.0, 1.0, 1.0});
  // Boundary frame: 1's neighbours are 2 and 3.
  CHECK(sets[0].members == std::vector<Index>{1, 2, 3});
}

TEST_CASE("knn_all: self first even with duplicate rows") {
  FrameMatrix d = FrameMatrix::Zero(4, 3);
  for (const auto& set : knn_all(d, 4)) {
    CHECK(set.members[0] == set.center);
    CHECK(set.distances[0] == 0.0);
  }
  const auto sets = knn_all(d, 2);
  CHECK(sets[3].members == std::vector<Index>{4, 1});
}

TEST_CASE("knn_all: alpha range") {
  FrameMatrix d = FrameMatrix::Zero(4, 2);
  CHECK_THROWS_AS(knn_all(d, 1), PreconditionError);
  CHECK_THROWS_AS(knn_all(d, 5), PreconditionError);
  CHECK_NOTHROW(knn_all(d, 4));
}

TEST_CASE("knn_all: random 50x20 against brute force") {
  oracle::Gen gen(7);
  const FrameMatrix d = gen.matrix(50, 20);
  const auto sets = knn_all(d, 6);
  for (Index n = 1; n <= 50; ++n) CHECK(sets[n - 1].members == oracle::brute_knn(d, n, 6));
}

TEST_CASE("property: vp-tree equals brute force on random instances") {
  oracle::Gen gen(8);
  for (int trial = 0; trial < 250; ++trial) {
    const Index rows = gen.integer(2, 60);
    const FrameMatrix d = gen.mixed(rows, gen.integer(1, 10));
    const Index alpha = gen.integer(2, rows);
    const auto sets = knn_all(d, alpha);
    for (Index n = 1; n <= rows; ++n) {
      const auto expected = oracle::brute_knn(d, n, alpha);
      REQUIRE(sets[n - 1].members == expected);
      for (Index m = 0; m < alpha; ++m)
        CHECK(std::abs(sets[n - 1].distances[m] - row_distance(d, n, expected[m])) < 1e-12);
    }
  }
}

TEST_CASE("property: knn is invariant under positive scaling") {
  oracle::Gen gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const FrameMatrix d = gen.matrix(gen.integer(5, 30), 4);
    const double c = gen.real(0.01, 100.0);
    const FrameMatrix scaled = c * d;
    const auto a = knn_all(d, 4), b = knn_all(scaled, 4);
    for (std::size_t n = 0; n < a.size(); ++n) {
      CHECK(a[n].members == b[n].members);
      for (std::size_t m = 0; m < a[n].distances.size(); ++m)
        CHECK(b[n].distances[m] == doctest::Approx(c * a[n].distances[m]).epsilon(1e-12));
    }
  }
}

TEST_CASE("VpTree::query returns squared distances in order") {
  oracle::Gen gen(10);
  const FrameMatrix d = gen.matrix(40, 3);
  const VpTree tree(d);
  CHECK(tree.size() == 40);
  const auto hits = tree.query(5, 10);
  REQUIRE(hits.size() == 10);
  CHECK(hits[0].second == 5);
  for (std::size_t i = 1; i < hits.size(); ++i) CHECK(hits[i - 1].first <= hits[i].first);
  CHECK(hits[3].first == doctest::Approx(oracle::sum_of_squares(d, 5, hits[3].second)));
}
