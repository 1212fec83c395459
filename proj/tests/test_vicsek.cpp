#include <cstring>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "mphase/vicsek.hpp"
#include "oracles.hpp"

using namespace mphase;
using doctest::Approx;

namespace {

SwarmConfig quiet(int particles, int steps) {
  SwarmConfig c;
  c.particles = particles;
  c.steps = steps;
  c.noise_schedule = {{1, steps, 0.0}};
  return c;
}

bool same_bits(const SwarmTrajectory& a, const SwarmTrajectory& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t n = 0; n < a.frames.size(); ++n) {
    const auto& x = a.frames[n];
    const auto& y = b.frames[n];
    if (x.step != y.step || x.headings.size() != y.headings.size()) return false;
    if (std::memcmp(x.positions.data(), y.positions.data(), sizeof(double) * x.positions.size()) ||
        std::memcmp(x.headings.data(), y.headings.data(), sizeof(double) * x.headings.size()))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("noise schedule lookup") {
  const SwarmConfig c;
  CHECK(c.noise_at(1) == 0.25);
  CHECK(c.noise_at(50) == 0.25);
  CHECK(c.noise_at(51) == 1.0);
  CHECK(c.noise_at(75) == 1.0);
  CHECK(c.noise_at(100) == 0.05);
  CHECK(c.noise_at(120) == 0.05);
  CHECK(c.noise_at(150) == 0.75);
  CHECK(c.noise_at(200) == 0.75);
  CHECK_THROWS_AS(c.noise_at(201), PreconditionError);
}

TEST_CASE("config validation") {
  SwarmConfig c;
  c.speed = 0.0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = SwarmConfig{};
  c.noise_schedule = {{1, 100, 0.1}, {102, 200, 0.1}};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c.noise_schedule = {{1, 199, 0.1}};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c.noise_schedule = {{1, 200, -0.1}};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
}

TEST_CASE("config key-value round trip and unknown keys") {
  SwarmConfig c;
  c.seed = 99;
  c.dt = 0.1 / 3;
  c.noise_schedule = {{1, 120, 0.3}, {121, 200, 1.0 / 7}};
  const auto kv = to_key_values(c);
  const SwarmConfig back = swarm_config_from_key_values(kv);
  CHECK(back.seed == 99);
  CHECK(back.dt == c.dt);
  CHECK(back.noise_schedule == c.noise_schedule);
  CHECK(swarm_config_from_key_values({}).particles == 50);
  try {
    swarm_config_from_key_values({{"spedd", "0.1"}});
    FAIL("expected an error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("spedd") != std::string::npos);
  }
  CHECK_THROWS_AS(swarm_config_from_key_values({{"noise_schedule", "1-200"}}), PreconditionError);
  CHECK_THROWS_AS(swarm_config_from_key_values({{"particles", "many"}}), PreconditionError);
}

TEST_CASE("wrap_angle and torus_distance") {
  CHECK(wrap_angle(std::numbers::pi) == Approx(std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi) == Approx(std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == Approx(-std::numbers::pi / 2));
  CHECK(torus_distance({0.1, 0.1}, {4.9, 4.9}, 5.0) == Approx(std::sqrt(0.08)));
}

TEST_CASE("property: torus distance is symmetric and at most Euclidean") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 500; ++trial) {
    const double L = gen.real(0.5, 10.0);
    const Eigen::Vector2d a(gen.real(0, L), gen.real(0, L)), b(gen.real(0, L), gen.real(0, L));
    CHECK(torus_distance(a, b, L) == torus_distance(b, a, L));
    CHECK(torus_distance(a, b, L) <= (a - b).norm());
    CHECK(torus_distance(a, b, L) <= L * std::sqrt(2.0) / 2 + 1e-12);
  }
}

TEST_CASE("step: lone particle moves straight") {
  SwarmConfig c = quiet(1, 10);
  SwarmState s;
  s.positions.resize(1, 2);
  s.positions << 1.0, 2.0;
  s.headings = Eigen::VectorXd::Constant(1, 0.3);
  UniformStream u(1);
  NormalStream noise(u);
  for (int n = 1; n <= 10; ++n) {
    const SwarmState next = step(s, c, noise);
    CHECK(next.step == n);
    CHECK(next.headings(0) == Approx(0.3).epsilon(1e-15));
    CHECK((next.positions.row(0) - s.positions.row(0)).norm() == Approx(0.005).epsilon(1e-12));
    s = next;
  }
  CHECK(noise.draws() == 10);
}

TEST_CASE("step: two opposed headings average to zero") {
  SwarmConfig c = quiet(2, 1);
  SwarmState s;
  s.positions.resize(2, 2);
  s.positions << 2.0, 2.0, 2.0, 2.0;
  s.headings.resize(2);
  s.headings << 0.7, -0.7;
  UniformStream u(1);
  NormalStream noise(u);
  const SwarmState next = step(s, c, noise);
  CHECK(std::abs(next.headings(0)) < 1e-15);
  CHECK(std::abs(next.headings(1)) < 1e-15);
}

TEST_CASE("property: zero-noise update is the neighbourhood circular mean") {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 30; ++trial) {
    SwarmConfig c = quiet(static_cast<int>(gen.integer(1, 40)), 1);
    c.radius = gen.real(0.2, 2.0);
    UniformStream u(static_cast<std::uint64_t>(trial));
    const SwarmState s = initial_state(c, u);
    NormalStream noise(u);
    const SwarmState next = step(s, c, noise);
    for (Index i = 0; i < s.headings.size(); ++i) {
      double vx = 0, vy = 0;
      for (Index j = 0; j < s.headings.size(); ++j) {
        const Eigen::Vector2d d = (s.positions.row(i) - s.positions.row(j)).transpose().cwiseAbs();
        const double dx = std::min(d(0), c.box_side - d(0)), dy = std::min(d(1), c.box_side - d(1));
        if (std::sqrt(dx * dx + dy * dy) <= c.radius) {
          vx += std::cos(s.headings(j));
          vy += std::sin(s.headings(j));
        }
      }
      CHECK(next.headings(i) == Approx(std::atan2(vy, vx)).epsilon(1e-12));
    }
  }
}

TEST_CASE("simulate: shape, bounds, draw count and determinism") {
  const SwarmConfig c;
  const auto a = simulate(c);
  REQUIRE(a.steps() == 200);
  CHECK(a.particles() == 50);
  CHECK(a.frames.front().step == 1);
  CHECK(a.frames.back().step == 200);
  for (const auto& f : a.frames) {
    CHECK(f.positions.minCoeff() >= 0.0);
    CHECK(f.positions.maxCoeff() < c.box_side);
    CHECK(f.headings.minCoeff() > -std::numbers::pi);
    CHECK(f.headings.maxCoeff() <= std::numbers::pi);
  }
  CHECK(same_bits(a, simulate(c)));
  SwarmConfig other = c;
  other.seed = 43;
  CHECK_FALSE(same_bits(a, simulate(other)));

  // No hidden draws: replaying the stream by hand reproduces the run.
  UniformStream u(c.seed);
  SwarmState s = initial_state(c, u);
  NormalStream noise(u);
  for (int n = 0; n < 200; ++n) s = step(s, c, noise);
  CHECK(noise.draws() == 200u * 50u);
  CHECK(s.positions == a.frames.back().positions);
}

TEST_CASE("simulate: zero noise flocks") {
  const auto run = simulate(quiet(50, 500));
  CHECK(polar_order(run.frames.back()) >= 0.99);
}

TEST_CASE("simulate: heading volatility is ordered like the noise levels") {
  // Regimes [1,50]=0.25, [51,99]=1, [100,149]=0.05, [150,200]=0.75.
  double change[4] = {0, 0, 0, 0};
  int counts[4] = {0, 0, 0, 0};
  auto regime = [](int step) { return step <= 50 ? 0 : step <= 99 ? 1 : step <= 149 ? 2 : 3; };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SwarmConfig c;
    c.seed = seed;
    const auto run = simulate(c);
    for (std::size_t n = 1; n < run.frames.size(); ++n) {
      const int r = regime(run.frames[n].step);
      for (Index i = 0; i < 50; ++i) {
        change[r] += std::abs(wrap_angle(run.frames[n].headings(i) - run.frames[n - 1].headings(i)));
        ++counts[r];
      }
    }
  }
  for (int r = 0; r < 4; ++r) change[r] /= counts[r];
  CHECK(change[2] < change[0]);
  CHECK(change[0] < change[3]);
  CHECK(change[3] < change[1]);
}

TEST_CASE("trajectory CSV round trip") {
  SwarmConfig c;
  c.steps = 5;
  c.particles = 7;
  c.noise_schedule = {{1, 5, 0.3}};
  const auto run = simulate(c);
  std::stringstream buf;
  write_trajectory_csv(buf, run);
  CHECK(buf.str().rfind("n,i,x,y,theta\n", 0) == 0);
  const auto back = read_trajectory_csv(buf, c.box_side);
  CHECK(same_bits(run, back));

  std::stringstream bad("n,i,x,y\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad, 5.0), DataError);
  std::stringstream outside("n,i,x,y,theta\n1,1,6.0,1.0,0.0\n");
  CHECK_THROWS_AS(read_trajectory_csv(outside, 5.0), DataError);
}
