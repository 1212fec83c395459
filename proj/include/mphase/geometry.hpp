#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "mphase/types.hpp"

namespace mphase {

// ---------------------------------------------------------------------------
// Circular arcs
// ---------------------------------------------------------------------------

/// Uniformly sampled arc of a circle centered at the origin, symmetric about the x1 axis.
struct ArcSpec {
  double radius = 1.0;      ///< r > 0
  double half_angle = 0.1;  ///< T in (0, pi]
  int count = 1001;         ///< number of samples, >= 3

  /// Samples per unit arc length, count / (2 T r).
  double density() const { return count / (2.0 * half_angle * radius); }
  /// Curvature of the underlying circle.
  double curvature() const { return 1.0 / radius; }
};

template <typename Scalar>
struct CovariancePair {
  Scalar c11;      ///< variance along the bisector axis (x1)
  Scalar c22;      ///< variance along the chord direction (x2)
  Scalar lambda1;  ///< max(c11, c22)
  Scalar lambda2;  ///< min(c11, c22)
};

enum class PointLabel { none, brim, crown, locus };

const char* to_string(PointLabel label);
PointLabel label_from_string(const std::string& text);

/// Points stored one per row. `labels` is either empty or has one entry per point.
struct PointCloud {
  FrameMatrix points;
  std::vector<PointLabel> labels;

  Index size() const { return points.rows(); }
  Index dimension() const { return points.cols(); }
  /// Rows carrying `label`, in original order.
  FrameMatrix select(PointLabel label) const;
};

/// Midpoint grid on [-T, T]: t_k = -T + 2T (k + 1/2) / count. Deterministic.
PointCloud sample_arc(const ArcSpec& spec);

namespace detail {
void check_arc_domain(double radius, double half_angle);
}

/// Exact population covariance of x = (r cos t, r sin t), t ~ U[-T, T]:
///   c11 = r^2 (1/2 + sin 2T / 4T) - r^2 sin^2 T / T^2
///   c22 = r^2 (2T - sin 2T) / 4T
/// Below T = 0.1 the Taylor series is used instead; the closed form of c11 loses all of
/// its digits to cancellation as T -> 0.
template <typename Scalar>
CovariancePair<Scalar> analytic_arc_covariance(Scalar r, Scalar T) {
  detail::check_arc_domain(static_cast<double>(r), static_cast<double>(T));
  using std::sin;
  Scalar u11, u22;  // unit-radius variances
  if (T < Scalar(0.1)) {
    const Scalar T2 = T * T;
    u11 = T2 * T2 *
          (Scalar(1) / 45 +
           T2 * (Scalar(-1) / 315 +
                 T2 * (Scalar(1) / 4725 + T2 * (Scalar(-4) / 467775 + T2 * Scalar(2) / 8513505))));
    u22 = T2 * (Scalar(1) / 3 +
                T2 * (Scalar(-1) / 15 +
                      T2 * (Scalar(2) / 315 +
                            T2 * (Scalar(-1) / 2835 +
                                  T2 * (Scalar(2) / 155925 + T2 * Scalar(-2) / 6081075)))));
  } else {
    const Scalar s = sin(T);
    u11 = Scalar(0.5) + sin(2 * T) / (4 * T) - s * s / (T * T);
    u22 = (2 * T - sin(2 * T)) / (4 * T);
  }
  const Scalar r2 = r * r;
  CovariancePair<Scalar> out{r2 * u11, r2 * u22, Scalar(0), Scalar(0)};
  out.lambda1 = std::max(out.c11, out.c22);
  out.lambda2 = std::min(out.c11, out.c22);
  return out;
}

/// Exact sigma2/sigma1 = sqrt(lambda2/lambda1) for an arc of half-angle T in (0, 1).
/// The radius cancels; it is validated but does not enter the computation.
template <typename Scalar>
Scalar theorem_ratio(Scalar r, Scalar T) {
  detail::require(T > Scalar(0) && T < Scalar(1),
                  "theorem_ratio: half-angle must lie in (0, 1) for the small-angle regime");
  detail::require(r > Scalar(0), "theorem_ratio: radius must be positive");
  const auto unit = analytic_arc_covariance<Scalar>(Scalar(1), T);
  using std::sqrt;
  return sqrt(unit.lambda2 / unit.lambda1);
}

/// T / sqrt(3 (5 - T^2)), the fourth-order Taylor approximation of the ratio.
template <typename Scalar>
Scalar ratio_taylor(Scalar T) {
  using std::sqrt;
  return T / sqrt(3 * (5 - T * T));
}

/// T / sqrt(15), the leading-order approximation of the ratio.
template <typename Scalar>
Scalar ratio_leading(Scalar T) {
  using std::sqrt;
  return T / sqrt(Scalar(15));
}

/// sigma2 / sigma1 of the mean-centered sample, by direct SVD.
double empirical_ratio(const FrameMatrix& points);

/// Population covariance (divide by n) of the rows.
Eigen::MatrixXd empirical_covariance(const FrameMatrix& points);

// ---------------------------------------------------------------------------
// Surfaces in R^3
// ---------------------------------------------------------------------------

/// Parametric 2-surface x(u, v) in R^3. Partial-derivative evaluators are optional;
/// when absent, central differences with step `h` are used.
struct ParametricSurface {
  using Evaluator = std::function<Eigen::Vector3d(double, double)>;

  Evaluator point;
  Evaluator du;
  Evaluator dv;
  double h = 1e-5;

  Eigen::Vector3d tangent_u(double u, double v) const;
  Eigen::Vector3d tangent_v(double u, double v) const;
};

/// (x1, x2, x1^3 - 3 x1 x2^2) with analytic partials.
ParametricSurface saddle_surface();
/// The plane x3 = 0.
ParametricSurface plane_surface();
/// Unit sphere in polar/azimuthal angles (theta, phi); singular at the poles.
ParametricSurface sphere_surface();

struct PrincipalSection {
  Eigen::Vector3d direction;  ///< unit principal direction in R^3
  Eigen::Vector3d normal;     ///< unit surface normal
};

struct ShapeOperatorResult {
  Eigen::Matrix2d shape;               ///< S(j1, j2) = -dN/dx_j1 . v_hat_j2
  Eigen::Vector3d normal;              ///< (v1 x v2) / |v1 x v2|
  Eigen::Vector2d curvatures;          ///< eigenvalues, descending
  Eigen::Matrix2d directions;          ///< column j = unit eigenvector for curvatures(j)
  PrincipalSection sections[2];
};

struct ShapeOperatorOptions {
  double h = 1e-5;                 ///< step for the normal's central differences
  double imaginary_tolerance = 1e-6;
};

/// Shape operator at (u, v), with entries taken against the unit coordinate tangents.
/// Throws DataError if the tangents are dependent or if the eigenvalues are complex
/// beyond `imaginary_tolerance`.
ShapeOperatorResult shape_operator(const ParametricSurface& surface, double u, double v,
                                   const ShapeOperatorOptions& options = {});

// ---------------------------------------------------------------------------
// Sombrero hat
// ---------------------------------------------------------------------------

struct SombreroOptions {
  double locus_half_width = 0.1;
};

/// x = (R cos th, R sin th, max(0, 4 - R^2)) with R ~ U[0, 4], th ~ U[0, pi].
/// Labelled crown (R < 2 - w), brim (R > 2 + w) or locus.
PointCloud generate_sombrero(int n, std::uint64_t seed, const SombreroOptions& options = {});

// ---------------------------------------------------------------------------
// CSV: header `x1,x2[,x3],label`, 17 significant digits.
// ---------------------------------------------------------------------------

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_point_cloud_csv(std::istream& in);

}  // namespace mphase
