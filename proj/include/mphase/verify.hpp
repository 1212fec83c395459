#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace mphase {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

/// Arc ratios against the small-angle closed forms, full-circle symmetry, and sampled vs
/// analytic covariance.
VerificationReport verify_theorem();

/// Shape operator on the saddle at (1, 0, 1), the plane, and the sphere's equator.
VerificationReport verify_shape();

/// Sombrero sampling constraint, label partition and locus band bounds.
VerificationReport verify_sombrero(int points = 2000, std::uint64_t seed = 7);

void print(std::ostream& out, const VerificationReport& report);
nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace mphase
