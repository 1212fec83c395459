#include "mphase/geometry.hpp"

#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "mphase/random.hpp"

namespace mphase {

const char* to_string(PointLabel label) {
  switch (label) {
    case PointLabel::brim: return "brim";
    case PointLabel::crown: return "crown";
    case PointLabel::locus: return "locus";
    case PointLabel::none: break;
  }
  return "none";
}

PointLabel label_from_string(const std::string& text) {
  if (text == "brim") return PointLabel::brim;
  if (text == "crown") return PointLabel::crown;
  if (text == "locus") return PointLabel::locus;
  if (text == "none" || text.empty()) return PointLabel::none;
  throw DataError("unknown point label '" + text + "'");
}

FrameMatrix PointCloud::select(PointLabel label) const {
  std::vector<Index> keep;
  for (Index i = 0; i < static_cast<Index>(labels.size()); ++i)
    if (labels[i] == label) keep.push_back(i);
  FrameMatrix out(static_cast<Index>(keep.size()), points.cols());
  for (Index i = 0; i < out.rows(); ++i) out.row(i) = points.row(keep[i]);
  return out;
}

namespace detail {
void check_arc_domain(double radius, double half_angle) {
  require(radius > 0.0 && std::isfinite(radius), "arc radius must be positive");
  require(half_angle > 0.0 && half_angle <= std::numbers::pi,
          "arc half-angle must lie in (0, pi]");
}
}  // namespace detail

PointCloud sample_arc(const ArcSpec& spec) {
  detail::check_arc_domain(spec.radius, spec.half_angle);
  detail::require(spec.count >= 3, "arc sample count must be at least 3");
  PointCloud cloud;
  cloud.points.resize(spec.count, 2);
  const double T = spec.half_angle;
  for (int k = 0; k < spec.count; ++k) {
    const double t = -T + 2.0 * T * (k + 0.5) / spec.count;
    cloud.points(k, 0) = spec.radius * std::cos(t);
    cloud.points(k, 1) = spec.radius * std::sin(t);
  }
  return cloud;
}

Eigen::MatrixXd empirical_covariance(const FrameMatrix& points) {
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(points.rows());
}

double empirical_ratio(const FrameMatrix& points) {
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  const auto& s = svd.singularValues();
  if (s.size() < 2 || s(0) == 0.0) return 0.0;
  return s(1) / s(0);
}

// ---------------------------------------------------------------------------

Eigen::Vector3d ParametricSurface::tangent_u(double u, double v) const {
  if (du) return du(u, v);
  return (point(u + h, v) - point(u - h, v)) / (2.0 * h);
}

Eigen::Vector3d ParametricSurface::tangent_v(double u, double v) const {
  if (dv) return dv(u, v);
  return (point(u, v + h) - point(u, v - h)) / (2.0 * h);
}

ParametricSurface saddle_surface() {
  ParametricSurface s;
  s.point = [](double x1, double x2) {
    return Eigen::Vector3d(x1, x2, x1 * x1 * x1 - 3.0 * x1 * x2 * x2);
  };
  s.du = [](double x1, double x2) {
    return Eigen::Vector3d(1.0, 0.0, 3.0 * (x1 * x1 - x2 * x2));
  };
  s.dv = [](double x1, double x2) { return Eigen::Vector3d(0.0, 1.0, -6.0 * x1 * x2); };
  return s;
}

ParametricSurface plane_surface() {
  ParametricSurface s;
  s.point = [](double x1, double x2) { return Eigen::Vector3d(x1, x2, 0.0); };
  s.du = [](double, double) { return Eigen::Vector3d(1.0, 0.0, 0.0); };
  s.dv = [](double, double) { return Eigen::Vector3d(0.0, 1.0, 0.0); };
  return s;
}

ParametricSurface sphere_surface() {
  ParametricSurface s;
  s.point = [](double theta, double phi) {
    return Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                           std::cos(theta));
  };
  s.du = [](double theta, double phi) {
    return Eigen::Vector3d(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                           -std::sin(theta));
  };
  s.dv = [](double theta, double phi) {
    return Eigen::Vector3d(-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi),
                           0.0);
  };
  return s;
}

namespace {

constexpr double kMinCrossNorm = 1e-10;
constexpr double kUmbilicTolerance = 1e-7;

Eigen::Vector3d unit_normal(const ParametricSurface& surface, double u, double v) {
  const Eigen::Vector3d n = surface.tangent_u(u, v).cross(surface.tangent_v(u, v));
  const double norm = n.norm();
  if (!(norm > kMinCrossNorm))
    throw DataError("singular surface: tangent vectors are linearly dependent");
  return n / norm;
}

// Eigenvector of the 2x2 matrix s for eigenvalue k, or a zero vector if s - kI vanishes.
Eigen::Vector2d eigenvector_2x2(const Eigen::Matrix2d& s, double k) {
  const Eigen::Vector2d a(s(0, 1), k - s(0, 0));
  const Eigen::Vector2d b(k - s(1, 1), s(1, 0));
  const Eigen::Vector2d& pick = a.squaredNorm() >= b.squaredNorm() ? a : b;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (pick.norm() <= 1e-12 * scale) return Eigen::Vector2d::Zero();
  Eigen::Vector2d out = pick.normalized();
  Index i;
  out.cwiseAbs().maxCoeff(&i);
  if (out(i) < 0.0) out = -out;
  return out;
}

}  // namespace

ShapeOperatorResult shape_operator(const ParametricSurface& surface, double u, double v,
                                   const ShapeOperatorOptions& options) {
  detail::require(options.h > 0.0, "shape_operator: finite-difference step must be positive");
  const Eigen::Vector3d t1 = surface.tangent_u(u, v);
  const Eigen::Vector3d t2 = surface.tangent_v(u, v);
  if (!(t1.cross(t2).norm() > kMinCrossNorm))
    throw DataError("singular surface: tangent vectors are linearly dependent");

  ShapeOperatorResult out;
  out.normal = unit_normal(surface, u, v);

  const double h = options.h;
  const Eigen::Vector3d dn_u =
      (unit_normal(surface, u + h, v) - unit_normal(surface, u - h, v)) / (2.0 * h);
  const Eigen::Vector3d dn_v =
      (unit_normal(surface, u, v + h) - unit_normal(surface, u, v - h)) / (2.0 * h);
  const Eigen::Vector3d e1 = t1.normalized();
  const Eigen::Vector3d e2 = t2.normalized();

  Eigen::Matrix2d& s = out.shape;
  s << -dn_u.dot(e1), -dn_u.dot(e2),
       -dn_v.dot(e1), -dn_v.dot(e2);

  const double half_trace = 0.5 * s.trace();
  const double diff = 0.5 * (s(0, 0) - s(1, 1));
  double disc = diff * diff + s(0, 1) * s(1, 0);
  if (disc < 0.0) {
    if (std::sqrt(-disc) > options.imaginary_tolerance)
      throw DataError("shape operator has complex eigenvalues; parametrization is inconsistent");
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  out.curvatures << half_trace + root, half_trace - root;

  // Eigenvalues closer than finite-difference noise are treated as an umbilic point,
  // where every tangent direction is principal.
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  const bool umbilic = root <= kUmbilicTolerance * scale;
  Eigen::Vector2d d1 = umbilic ? Eigen::Vector2d::Zero() : eigenvector_2x2(s, out.curvatures(0));
  Eigen::Vector2d d2 = umbilic ? Eigen::Vector2d::Zero() : eigenvector_2x2(s, out.curvatures(1));
  if (d1.isZero() && d2.isZero()) {
    d1 = Eigen::Vector2d::UnitX();
    d2 = Eigen::Vector2d::UnitY();
  } else if (d1.isZero()) {
    d1 = Eigen::Vector2d(-d2(1), d2(0));
  } else if (d2.isZero()) {
    d2 = Eigen::Vector2d(-d1(1), d1(0));
  }
  out.directions.col(0) = d1;
  out.directions.col(1) = d2;

  for (int j = 0; j < 2; ++j) {
    const Eigen::Vector2d& c = out.directions.col(j);
    out.sections[j].direction = (c(0) * e1 + c(1) * e2).normalized();
    out.sections[j].normal = out.normal;
  }
  return out;
}

// ---------------------------------------------------------------------------

PointCloud generate_sombrero(int n, std::uint64_t seed, const SombreroOptions& options) {
  detail::require(n >= 10, "generate_sombrero: need at least 10 points");
  detail::require(options.locus_half_width > 0.0, "locus half-width must be positive");
  UniformStream rng(seed);
  PointCloud cloud;
  cloud.points.resize(n, 3);
  cloud.labels.resize(n);
  const double w = options.locus_half_width;
  for (int i = 0; i < n; ++i) {
    const double radius = rng.next(0.0, 4.0);
    const double theta = rng.next(0.0, std::numbers::pi);
    cloud.points(i, 0) = radius * std::cos(theta);
    cloud.points(i, 1) = radius * std::sin(theta);
    cloud.points(i, 2) = radius <= 2.0 ? 4.0 - radius * radius : 0.0;
    if (radius < 2.0 - w)
      cloud.labels[i] = PointLabel::crown;
    else if (radius > 2.0 + w)
      cloud.labels[i] = PointLabel::brim;
    else
      cloud.labels[i] = PointLabel::locus;
  }
  return cloud;
}

// ---------------------------------------------------------------------------

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  const Index dim = cloud.dimension();
  detail::require(dim == 2 || dim == 3, "point cloud CSV supports 2 or 3 coordinates");
  out << (dim == 2 ? "x1,x2,label\n" : "x1,x2,x3,label\n");
  char buf[32];
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index j = 0; j < dim; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cloud.points(i, j));
      out << buf << ',';
    }
    const PointLabel label =
        cloud.labels.empty() ? PointLabel::none : cloud.labels[static_cast<std::size_t>(i)];
    out << to_string(label) << '\n';
  }
}

PointCloud read_point_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("point cloud CSV is empty");
  Index dim;
  if (line == "x1,x2,label")
    dim = 2;
  else if (line == "x1,x2,x3,label")
    dim = 3;
  else
    throw DataError("unexpected point cloud CSV header: " + line);

  std::vector<double> coords;
  PointCloud cloud;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    for (Index j = 0; j < dim; ++j) {
      if (!std::getline(row, field, ',')) throw DataError("short point cloud row: " + line);
      const double value = std::stod(field);
      if (!std::isfinite(value)) throw DataError("non-finite coordinate: " + line);
      coords.push_back(value);
    }
    std::getline(row, field);
    cloud.labels.push_back(label_from_string(field));
  }
  const Index n = static_cast<Index>(cloud.labels.size());
  cloud.points = Eigen::Map<FrameMatrix>(coords.data(), n, dim);
  return cloud;
}

}  // namespace mphase
