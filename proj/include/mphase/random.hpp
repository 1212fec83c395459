#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mphase {

/// Seeded uniform stream. std::mt19937_64 has a fully specified output sequence, and the
/// conversion to [0, 1) is done here rather than through std::uniform_real_distribution,
/// whose algorithm is implementation-defined.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

/// Standard normal draws by Box-Muller. Each draw consumes exactly two uniforms and the
/// sine partner is discarded, so the stream position depends only on the number of draws.
class NormalStream {
 public:
  explicit NormalStream(UniformStream& uniforms) : uniforms_(&uniforms) {}

  double next() {
    ++draws_;
    const double u1 = uniforms_->next();
    const double u2 = uniforms_->next();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double next(double stddev) { return stddev * next(); }

  std::uint64_t draws() const { return draws_; }

 private:
  UniformStream* uniforms_;
  std::uint64_t draws_ = 0;
};

}  // namespace mphase
