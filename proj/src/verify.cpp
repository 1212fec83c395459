#include "mphase/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mphase/geometry.hpp"

namespace mphase {

bool VerificationReport::passed() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

Check at_most(std::string name, double measured, double tolerance, std::string detail = {}) {
  return Check{std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

double relative(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

VerificationReport verify_theorem() {
  VerificationReport report{"theorem", {}};
  double worst_leading = 0.0, worst_taylor = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    for (double T : {0.05, 0.1, 0.2}) {
      const double ratio = empirical_ratio(sample_arc({r, T, 2001}).points);
      worst_leading = std::max(worst_leading, relative(ratio, ratio_leading(T)));
      worst_taylor = std::max(worst_taylor, relative(ratio, ratio_taylor(T)));
    }
  }
  report.checks.push_back(at_most("sampled ratio vs T/sqrt(15), max relative error",
                                  worst_leading, 0.02));
  report.checks.push_back(at_most("sampled ratio vs T/sqrt(3(5-T^2)), max relative error",
                                  worst_taylor, 0.005));

  const auto circle = sample_arc({1.0, std::numbers::pi, 2001});
  const Eigen::MatrixXd cov = empirical_covariance(circle.points);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double sampled = eig.eigenvalues()(0) / eig.eigenvalues()(1);
  report.checks.push_back(at_most("full circle sampled |lambda2/lambda1 - 1|",
                                  std::abs(sampled - 1.0), 1e-3));
  const auto exact = analytic_arc_covariance(1.0, std::numbers::pi);
  report.checks.push_back(at_most("full circle analytic |lambda2/lambda1 - 1|",
                                  std::abs(exact.lambda2 / exact.lambda1 - 1.0), 1e-12));

  double worst_cov = 0.0;
  for (double T : {0.05, 0.5, 1.5, std::numbers::pi}) {
    const Eigen::MatrixXd c = empirical_covariance(sample_arc({2.0, T, 1001}).points);
    const auto a = analytic_arc_covariance(2.0, T);
    worst_cov = std::max({worst_cov, relative(c(0, 0), a.c11), relative(c(1, 1), a.c22)});
  }
  report.checks.push_back(at_most("sampled vs analytic covariance, max relative error",
                                  worst_cov, 0.01));
  return report;
}

VerificationReport verify_shape() {
  VerificationReport report{"shape", {}};
  const auto saddle = shape_operator(saddle_surface(), 1.0, 0.0);
  Eigen::Matrix2d expected = Eigen::Matrix2d::Zero();
  expected(0, 0) = 3.0 / 5.0;
  expected(1, 1) = -6.0 / std::sqrt(10.0);
  std::ostringstream shown;
  shown << "S = [[" << saddle.shape(0, 0) << ", " << saddle.shape(0, 1) << "], ["
        << saddle.shape(1, 0) << ", " << saddle.shape(1, 1) << "]] vs diag(3/5, -6/sqrt(10))";
  report.checks.push_back(at_most("saddle S at (1,0,1), max entry error",
                                  (saddle.shape - expected).cwiseAbs().maxCoeff(), 1e-4,
                                  shown.str()));
  const double eig_err = std::max(std::abs(saddle.curvatures(0) - expected(0, 0)),
                                  std::abs(saddle.curvatures(1) - expected(1, 1)));
  report.checks.push_back(at_most("saddle principal curvatures error", eig_err, 1e-4));
  const double dir_err = (saddle.directions - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  report.checks.push_back(at_most("saddle principal directions vs (1,0), (0,1)", dir_err, 1e-4));
  const Eigen::Vector3d normal = Eigen::Vector3d(-3.0, 0.0, 1.0) / std::sqrt(10.0);
  report.checks.push_back(at_most("saddle normal vs (-3,0,1)/sqrt(10)",
                                  (saddle.normal - normal).norm(), 1e-10));

  const auto plane = shape_operator(plane_surface(), 0.3, -0.7);
  report.checks.push_back(at_most("plane |S|", plane.shape.cwiseAbs().maxCoeff(), 1e-8));

  const auto sphere = shape_operator(sphere_surface(), std::numbers::pi / 2, 0.4);
  const double sphere_err = (sphere.curvatures.array() + 1.0).abs().maxCoeff();
  report.checks.push_back(at_most("unit sphere equator curvatures vs -1", sphere_err, 1e-4));
  return report;
}

VerificationReport verify_sombrero(int points, std::uint64_t seed) {
  VerificationReport report{"sombrero", {}};
  const PointCloud cloud = generate_sombrero(points, seed);
  double worst = 0.0, band = 0.0, height = 0.0;
  int counts[4] = {0, 0, 0, 0};
  for (Index i = 0; i < cloud.size(); ++i) {
    const double radius = std::hypot(cloud.points(i, 0), cloud.points(i, 1));
    worst = std::max(worst, std::abs(cloud.points(i, 2) - std::max(0.0, 4.0 - radius * radius)));
    const PointLabel label = cloud.labels[static_cast<std::size_t>(i)];
    ++counts[static_cast<int>(label)];
    if (label == PointLabel::locus) {
      band = std::max(band, std::abs(radius - 2.0));
      height = std::max(height, cloud.points(i, 2));
    }
  }
  report.checks.push_back(at_most("max |x3 - max(0, 4 - R^2)|", worst, 1e-12));
  char detail[128];
  std::snprintf(detail, sizeof detail, "crown=%d locus=%d brim=%d unlabelled=%d", counts[2],
                counts[3], counts[1], counts[0]);
  report.checks.push_back(at_most("unlabelled points", counts[0], 0.0, detail));
  report.checks.push_back(at_most("locus max |R - 2|", band, 0.1 + 1e-12));
  report.checks.push_back(at_most("locus max x3", height, 0.41));
  return report;
}

void print(std::ostream& out, const VerificationReport& report) {
  char buf[256];
  for (const Check& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%s  %-55s measured=%.3e tol=%.1e", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.tolerance);
    out << buf;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  out << "suite " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["passed"] = report.passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : report.checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["measured"] = c.measured;
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    if (!c.detail.empty()) item["detail"] = c.detail;
    doc["checks"].push_back(std::move(item));
  }
  return doc;
}

}  // namespace mphase
