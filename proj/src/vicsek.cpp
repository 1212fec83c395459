#include "mphase/vicsek.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mphase/config.hpp"

namespace mphase {

std::vector<NoiseRegime> default_noise_schedule() {
  return {{1, 50, 0.25}, {51, 99, 1.0}, {100, 149, 0.05}, {150, 200, 0.75}};
}

void SwarmConfig::validate() const {
  detail::require(particles > 0, "particles must be positive");
  detail::require(steps > 0, "steps must be positive");
  detail::require(dt > 0.0, "dt must be positive");
  detail::require(speed > 0.0, "speed must be positive");
  detail::require(radius > 0.0, "radius must be positive");
  detail::require(box_side > 0.0, "box_side must be positive");
  detail::require(!noise_schedule.empty(), "noise_schedule must not be empty");
  int expected = 1;
  for (const NoiseRegime& regime : noise_schedule) {
    detail::require(regime.first == expected && regime.last >= regime.first,
                    "noise_schedule ranges must partition [1, steps] in order");
    detail::require(regime.sigma >= 0.0, "noise standard deviations must be non-negative");
    expected = regime.last + 1;
  }
  detail::require(expected == steps + 1, "noise_schedule must end at step " +
                                             std::to_string(steps));
}

double SwarmConfig::noise_at(int step) const {
  for (const NoiseRegime& regime : noise_schedule)
    if (step >= regime.first && step <= regime.last) return regime.sigma;
  throw PreconditionError("no noise regime covers step " + std::to_string(step));
}

namespace {

const std::set<std::string> kSwarmKeys = {"particles", "steps",    "dt",
                                          "speed",     "radius",   "box_side",
                                          "noise_schedule", "seed"};

std::string schedule_to_string(const std::vector<NoiseRegime>& schedule) {
  std::string out;
  for (const NoiseRegime& regime : schedule) {
    if (!out.empty()) out += ';';
    out += std::to_string(regime.first) + '-' + std::to_string(regime.last) + ':' +
           format_double(regime.sigma);
  }
  return out;
}

std::vector<NoiseRegime> schedule_from_string(const std::string& text) {
  std::vector<NoiseRegime> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto dash = item.find('-');
    const auto colon = item.find(':');
    if (dash == std::string::npos || colon == std::string::npos || colon < dash)
      throw PreconditionError("noise_schedule item '" + item + "' is not first-last:sigma");
    out.push_back({parse_int("noise_schedule", item.substr(0, dash)),
                   parse_int("noise_schedule", item.substr(dash + 1, colon - dash - 1)),
                   parse_double("noise_schedule", item.substr(colon + 1))});
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> to_key_values(const SwarmConfig& config) {
  return {{"particles", std::to_string(config.particles)},
          {"steps", std::to_string(config.steps)},
          {"dt", format_double(config.dt)},
          {"speed", format_double(config.speed)},
          {"radius", format_double(config.radius)},
          {"box_side", format_double(config.box_side)},
          {"noise_schedule", schedule_to_string(config.noise_schedule)},
          {"seed", std::to_string(config.seed)}};
}

SwarmConfig swarm_config_from_key_values(const std::map<std::string, std::string>& values) {
  check_known_keys(values, kSwarmKeys, "swarm config");
  SwarmConfig config;
  for (const auto& [key, value] : values) {
    if (key == "particles") config.particles = parse_int(key, value);
    else if (key == "steps") config.steps = parse_int(key, value);
    else if (key == "dt") config.dt = parse_double(key, value);
    else if (key == "speed") config.speed = parse_double(key, value);
    else if (key == "radius") config.radius = parse_double(key, value);
    else if (key == "box_side") config.box_side = parse_double(key, value);
    else if (key == "noise_schedule") config.noise_schedule = schedule_from_string(value);
    else if (key == "seed") config.seed = parse_u64(key, value);
  }
  config.validate();
  return config;
}

// ---------------------------------------------------------------------------

double torus_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double box_side) {
  Eigen::Vector2d d = (a - b).cwiseAbs();
  for (int k = 0; k < 2; ++k) d(k) = std::min(d(k), box_side - d(k));
  return d.norm();
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double out = std::fmod(theta, two_pi);
  if (out <= -std::numbers::pi) out += two_pi;
  if (out > std::numbers::pi) out -= two_pi;
  return out;
}

namespace {

double wrap_coordinate(double x, double box_side) {
  double out = std::fmod(x, box_side);
  if (out < 0.0) out += box_side;
  if (out >= box_side) out = 0.0;  // -tiny + L rounds up to L
  return out;
}

}  // namespace

SwarmState initial_state(const SwarmConfig& config, UniformStream& uniforms) {
  config.validate();
  SwarmState state;
  state.positions.resize(config.particles, 2);
  state.headings.resize(config.particles);
  for (int i = 0; i < config.particles; ++i) {
    state.positions(i, 0) = uniforms.next(0.0, config.box_side);
    state.positions(i, 1) = uniforms.next(0.0, config.box_side);
    state.headings(i) = wrap_angle(uniforms.next(-std::numbers::pi, std::numbers::pi));
  }
  return state;
}

SwarmState step(const SwarmState& state, const SwarmConfig& config, NormalStream& noise) {
  const Index count = state.headings.size();
  const double sigma = config.noise_at(state.step + 1);
  const double reach = config.radius;

  // Draws are taken up front in particle order so the stream position is independent of
  // how the per-particle work below is scheduled.
  Eigen::VectorXd eps(count);
  for (Index i = 0; i < count; ++i) eps(i) = noise.next(sigma);

  const Eigen::ArrayXd cos_h = state.headings.array().cos();
  const Eigen::ArrayXd sin_h = state.headings.array().sin();

  SwarmState next;
  next.step = state.step + 1;
  next.positions.resize(count, 2);
  next.headings.resize(count);
  for (Index i = 0; i < count; ++i) {
    const Eigen::Vector2d here = state.positions.row(i).transpose();
    double vx = 0.0, vy = 0.0;
    for (Index j = 0; j < count; ++j) {
      if (torus_distance(here, state.positions.row(j).transpose(), config.box_side) <= reach) {
        vx += cos_h(j);
        vy += sin_h(j);
      }
    }
    const double mean_heading = (vx == 0.0 && vy == 0.0) ? state.headings(i) : std::atan2(vy, vx);
    next.headings(i) = wrap_angle(mean_heading + eps(i));

    const double travel = config.speed * config.dt;
    next.positions(i, 0) = wrap_coordinate(here(0) + travel * cos_h(i), config.box_side);
    next.positions(i, 1) = wrap_coordinate(here(1) + travel * sin_h(i), config.box_side);
  }
  return next;
}

SwarmTrajectory simulate(const SwarmConfig& config) {
  config.validate();
  UniformStream uniforms(config.seed);
  SwarmState state = initial_state(config, uniforms);
  NormalStream noise(uniforms);
  SwarmTrajectory out;
  out.box_side = config.box_side;
  out.frames.reserve(static_cast<std::size_t>(config.steps));
  for (int n = 1; n <= config.steps; ++n) {
    state = step(state, config, noise);
    out.frames.push_back(state);
  }
  return out;
}

double polar_order(const SwarmState& state) {
  const Index count = state.headings.size();
  if (count == 0) return 0.0;
  const double vx = state.headings.array().cos().sum();
  const double vy = state.headings.array().sin().sum();
  return std::hypot(vx, vy) / static_cast<double>(count);
}

// ---------------------------------------------------------------------------

void write_trajectory_csv(std::ostream& out, const SwarmTrajectory& trajectory) {
  out << "n,i,x,y,theta\n";
  char buf[128];
  for (const SwarmState& state : trajectory.frames) {
    for (Index i = 0; i < state.headings.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%ld,%.17g,%.17g,%.17g\n", state.step,
                    static_cast<long>(i + 1), state.positions(i, 0), state.positions(i, 1),
                    state.headings(i));
      out << buf;
    }
  }
}

SwarmTrajectory read_trajectory_csv(std::istream& in, double box_side) {
  std::string line;
  if (!std::getline(in, line) || line != "n,i,x,y,theta")
    throw DataError("trajectory CSV must start with header n,i,x,y,theta");
  struct Row {
    long n, i;
    double x, y, theta;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r{};
    if (std::sscanf(line.c_str(), "%ld,%ld,%lf,%lf,%lf", &r.n, &r.i, &r.x, &r.y, &r.theta) != 5)
      throw DataError("malformed trajectory row: " + line);
    rows.push_back(r);
  }
  if (rows.empty()) throw DataError("trajectory CSV has no rows");

  long particles = 0;
  while (static_cast<std::size_t>(particles) < rows.size() && rows[particles].n == rows[0].n)
    ++particles;
  if (rows.size() % static_cast<std::size_t>(particles) != 0)
    throw DataError("trajectory rows do not form complete frames");

  SwarmTrajectory out;
  out.box_side = box_side;
  const std::size_t frames = rows.size() / static_cast<std::size_t>(particles);
  for (std::size_t f = 0; f < frames; ++f) {
    SwarmState state;
    state.step = static_cast<int>(rows[f * particles].n);
    state.positions.resize(particles, 2);
    state.headings.resize(particles);
    for (long i = 0; i < particles; ++i) {
      const Row& r = rows[f * particles + static_cast<std::size_t>(i)];
      if (r.n != state.step || r.i != i + 1)
        throw DataError("trajectory rows out of order at n=" + std::to_string(r.n));
      if (!(r.x >= 0.0 && r.x < box_side && r.y >= 0.0 && r.y < box_side))
        throw DataError("particle position outside the box at n=" + std::to_string(r.n));
      state.positions(i, 0) = r.x;
      state.positions(i, 1) = r.y;
      state.headings(i) = r.theta;
    }
    out.frames.push_back(std::move(state));
  }
  return out;
}

}  // namespace mphase
