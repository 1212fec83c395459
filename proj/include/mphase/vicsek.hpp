#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mphase/random.hpp"
#include "mphase/types.hpp"

namespace mphase {

/// Gaussian heading-noise standard deviation applied on steps [first, last].
struct NoiseRegime {
  int first = 1;
  int last = 1;
  double sigma = 0.0;

  friend bool operator==(const NoiseRegime&, const NoiseRegime&) = default;
};

/// 0.25 on [1, 50], 1 on [51, 99], 0.05 on [100, 149], 0.75 on [150, 200].
std::vector<NoiseRegime> default_noise_schedule();

struct SwarmConfig {
  int particles = 50;
  int steps = 200;
  double dt = 0.05;
  double speed = 0.1;
  double radius = 1.0;
  double box_side = 5.0;
  std::vector<NoiseRegime> noise_schedule = default_noise_schedule();
  std::uint64_t seed = 42;

  /// Throws PreconditionError on non-positive parameters or a schedule that does not
  /// partition [1, steps].
  void validate() const;
  double noise_at(int step) const;
};

/// Flat `key = value` form using the field names above; the schedule is written as
/// `first-last:sigma` items joined by ';'.
std::map<std::string, std::string> to_key_values(const SwarmConfig& config);
SwarmConfig swarm_config_from_key_values(const std::map<std::string, std::string>& values);

struct SwarmState {
  int step = 0;                              ///< 0 is the initial condition
  Eigen::Matrix<double, Eigen::Dynamic, 2> positions;  ///< in [0, L)^2
  Eigen::VectorXd headings;                  ///< radians in (-pi, pi]
};

/// Shortest displacement between two points on the L-periodic square.
double torus_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double box_side);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

/// Uniform positions in the box and uniform headings, drawn from `uniforms`.
SwarmState initial_state(const SwarmConfig& config, UniformStream& uniforms);

/// One synchronous update to step `state.step + 1`. Each particle's new heading is the
/// direction of the mean unit heading over all particles within `radius` (itself
/// included) plus one Gaussian draw; a vanishing mean keeps the previous heading. The
/// position advances along the previous heading by speed * dt and wraps into the box.
SwarmState step(const SwarmState& state, const SwarmConfig& config, NormalStream& noise);

struct SwarmTrajectory {
  double box_side = 5.0;
  std::vector<SwarmState> frames;  ///< frames[k] is step k + 1

  int steps() const { return static_cast<int>(frames.size()); }
  int particles() const { return frames.empty() ? 0 : static_cast<int>(frames[0].headings.size()); }
};

SwarmTrajectory simulate(const SwarmConfig& config);

/// Length of the mean unit heading vector, in [0, 1].
double polar_order(const SwarmState& state);

/// CSV with header `n,i,x,y,theta`, n and i 1-based, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const SwarmTrajectory& trajectory);
SwarmTrajectory read_trajectory_csv(std::istream& in, double box_side);

}  // namespace mphase
