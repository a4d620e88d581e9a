#pragma once

// Cross-checks between the closed-form fast paths and their independent
// numerical routes. Used by `nmd verify`; each check reports the largest
// discrepancy it saw against a fixed tolerance.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nmd/state.hpp"

namespace nmd {

/// Uniform sample from the tetrahedron of physical Bell-diagonal states.
BellCoefficients random_bell_state(std::mt19937_64& rng);

/// The Bell weights with the opposite c_y sign on (Phi-, Psi-). Fault
/// injection only: this is not the spectrum of bell_to_density(c).
BellSpectrum flipped_cy_bell_eigenvalues(const BellCoefficients& c);

struct VerifyOptions {
  double ode_step = 0.005;           // units of 1/a
  double convolution_step = 0.0025;  // units of 1/a
  std::size_t channel_states = 1000;
  std::size_t correlation_states = 500;
  std::uint64_t seed = 20110101;
  bool inject_flipped_spectrum = false;
  unsigned threads = 1;
};

struct CheckResult {
  std::string name;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace nmd
