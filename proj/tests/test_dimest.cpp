#include "doctest.h"
#include "mphase/dimest.hpp"
#include "mphase/geometry.hpp"
#include "oracles.hpp"

using namespace mphase;

TEST_CASE("knn_graph: symmetric, no self loops, Euclidean weights") {
  oracle::Gen gen(51);
  const FrameMatrix p = gen.matrix(30, 3);
  const auto g = knn_graph(p, 4);
  for (Index i = 0; i < 30; ++i) {
    CHECK(g[static_cast<std::size_t>(i)].size() >= 4);
    for (const auto& e : g[static_cast<std::size_t>(i)]) {
      CHECK(e.to != i);
      CHECK(e.weight == (p.row(i) - p.row(e.to)).norm());
      const auto& back = g[static_cast<std::size_t>(e.to)];
      CHECK(std::any_of(back.begin(), back.end(), [&](const GraphEdge& b) { return b.to == i; }));
    }
  }
  CHECK_THROWS_AS(knn_graph(p, 30), PreconditionError);
}

TEST_CASE("geodesics: dense line is nearly Euclidean") {
  FrameMatrix p(200, 2);
  for (Index i = 0; i < 200; ++i) p.row(i) << 0.01 * i, 0.02 * i;
  const auto geo = geodesic_distances(p, 4);
  CHECK_FALSE(geo.disconnected);
  for (Index a = 0; a < 200; a += 7)
    for (Index b = 0; b < 200; b += 11) {
      const double euclid = (p.row(a) - p.row(b)).norm();
      CHECK(std::abs(geo.distances(a, b) - euclid) <= 0.01 * euclid + 1e-12);
    }
}

TEST_CASE("geodesics: far clusters are flagged and the largest is kept") {
  oracle::Gen gen(52);
  FrameMatrix p(25, 2);
  p.topRows(15) = gen.matrix(15, 2);
  p.bottomRows(10) = gen.matrix(10, 2, 100.0, 101.0);
  const auto geo = geodesic_distances(p, 3);
  CHECK(geo.disconnected);
  CHECK(geo.dropped == 10);
  REQUIRE(geo.rows.size() == 15);
  CHECK(geo.rows.front() == 1);
  CHECK(geo.rows.back() == 15);
  CHECK(geo.distances.allFinite());
}

TEST_CASE("geodesics: frame range overload and errors") {
  oracle::Gen gen(53);
  const FrameMatrix p = gen.matrix(40, 3);
  const auto a = geodesic_distances(p, 11, 30, 4);
  const auto b = geodesic_distances(FrameMatrix(p.middleRows(10, 20)), 4);
  CHECK(a.distances == b.distances);
  CHECK_THROWS_AS(geodesic_distances(p, 11, 14, 4), PreconditionError);
  CHECK_THROWS_AS(geodesic_distances(p, 0, 14, 4), PreconditionError);
  CHECK_THROWS_AS(geodesic_distances(p, 30, 41, 4), PreconditionError);
}

TEST_CASE("property: geodesics equal Bellman-Ford exactly") {
  oracle::Gen gen(54);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = gen.integer(4, 30);
    const Index alpha = gen.integer(1, std::min<Index>(n - 1, 4));
    FrameMatrix p = gen.mixed(n, gen.integer(1, 4));
    if (gen.coin(0.2)) p.bottomRows(n / 2).array() += 50.0;
    const auto geo = geodesic_distances(p, alpha);
    const Eigen::MatrixXd ref = oracle::bellman_ford(knn_graph(p, alpha));
    for (std::size_t a = 0; a < geo.rows.size(); ++a)
      for (std::size_t b = 0; b < geo.rows.size(); ++b)
        REQUIRE(geo.distances(static_cast<Index>(a), static_cast<Index>(b)) ==
                ref(geo.rows[a] - 1, geo.rows[b] - 1));
    // Retained rows are exactly one connected component, and it is a largest one.
    for (std::size_t a = 0; a < geo.rows.size(); ++a)
      for (Index m = 0; m < n; ++m) {
        const bool kept = std::find(geo.rows.begin(), geo.rows.end(), m + 1) != geo.rows.end();
        CHECK(std::isfinite(ref(geo.rows[a] - 1, m)) == kept);
      }
    CHECK(geo.dropped == n - static_cast<Index>(geo.rows.size()));
    CHECK(geo.disconnected == (geo.dropped > 0));
  }
}

TEST_CASE("residual_curve: flat plane sample") {
  oracle::Gen gen(55);
  const Eigen::Vector3d u(1, 2, 0.5), v(-0.3, 0.4, 1.0);
  // Graph paths zig-zag; the sample must be dense for geodesics to be near-Euclidean.
  FrameMatrix p(600, 3);
  for (Index i = 0; i < 600; ++i) p.row(i) = gen.real(0, 3) * u.transpose() + gen.real(0, 3) * v.transpose();
  const auto geo = geodesic_distances(p, 14);
  const auto curve = residual_curve(geo.distances);
  REQUIRE(curve.residual.size() == 10);
  CHECK(curve.residual(1) < 0.01 * curve.residual(0));
  CHECK(curve.elbow == 2);
  CHECK(curve.scaled.maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("residual_curve: exactly flat data has rho close to one at its rank") {
  oracle::Gen gen(56);
  const FrameMatrix p = gen.matrix(60, 2);
  Eigen::MatrixXd d(60, 60);
  for (Index a = 0; a < 60; ++a)
    for (Index b = 0; b < 60; ++b) d(a, b) = (p.row(a) - p.row(b)).norm();
  const auto curve = residual_curve(d, {4, 0.05});
  CHECK(1.0 - curve.residual(1) >= 0.999 * 0.999);
  CHECK(curve.residual(1) < 1e-12);
}

TEST_CASE("property: residual curves are bounded and scaled to one") {
  // Not monotone in general: MDS on graph geodesics drops negative eigenvalues.
  oracle::Gen gen(57);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = gen.integer(12, 60);
    const FrameMatrix p = gen.matrix(n, gen.integer(1, 6));
    const auto geo = geodesic_distances(p, gen.integer(3, 6));
    if (geo.rows.size() < 3) continue;
    const auto curve = residual_curve(geo.distances, {8, 0.05});
    CHECK(curve.residual.minCoeff() >= 0.0);
    CHECK(curve.residual.maxCoeff() <= 1.0 + 1e-12);
    if (curve.residual.maxCoeff() > 0) CHECK(curve.scaled.maxCoeff() == doctest::Approx(1.0));
    CHECK(curve.elbow >= 1);
    CHECK(curve.elbow <= 8);
  }
}

TEST_CASE("property: exact Euclidean distances vanish from the true dimension on") {
  oracle::Gen gen(58);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = gen.integer(10, 50), k = gen.integer(1, 4);
    const FrameMatrix p = gen.matrix(n, k);
    Eigen::MatrixXd d(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) d(a, b) = (p.row(a) - p.row(b)).norm();
    const auto curve = residual_curve(d, {6, 0.05});
    for (Index dim = k; dim <= 6; ++dim) CHECK(curve.residual(dim - 1) < 1e-10);
  }
}

TEST_CASE("residual_curve: errors") {
  CHECK_THROWS_AS(residual_curve(Eigen::MatrixXd::Zero(2, 2)), PreconditionError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(4, 4);
  bad(1, 2) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(residual_curve(bad), DataError);
}

TEST_CASE("pearson") {
  Eigen::VectorXd a(4), b(4);
  a << 1, 2, 3, 4;
  b << 2, 4, 6, 8;
  CHECK(pearson(a, b) == doctest::Approx(1.0));
  CHECK(pearson(a, -b) == doctest::Approx(-1.0));
  CHECK(pearson(a, Eigen::VectorXd::Ones(4)) == 0.0);
}

TEST_CASE("sombrero crown sub-cloud is two dimensional") {
  const auto cloud = generate_sombrero(2000, 7);
  const auto crown = cloud.select(PointLabel::crown);
  const auto curve = residual_curve(geodesic_distances(crown, 6).distances);
  CHECK(curve.elbow == 2);
}
