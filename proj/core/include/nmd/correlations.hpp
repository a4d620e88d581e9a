#pragma once

// Correlation measures of two-qubit states, in bits:
//   I  mutual information S(A) + S(B) - S(AB)
//   C  classical correlation, S(A) minus the minimal conditional entropy of A
//      over rank-1 projective measurements on B
//   D  quantum discord I - C
// For Bell-diagonal states everything has a closed form in the coefficient
// triple; the density-matrix routines here are the general (and slower) path
// used to cross-check those closed forms.

#include <array>

#include <Eigen/Dense>

#include "nmd/state.hpp"

namespace nmd {

struct CorrelationReport {
  double mutual_information = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  double lambda_max = 0.0;
  Axis dominant_axis = Axis::x;
};

/// Projective measurement {(I + n.sigma)/2, (I - n.sigma)/2} on qubit B with
/// n = (sin t cos f, sin t sin f, cos t).
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d direction() const;
  QubitMatrix projector(int sign) const;

  static MeasurementBasis along(Axis axis);
};

struct ClassicalCorrelation {
  double value = 0.0;
  double lambda_max = 0.0;
  Axis dominant_axis = Axis::x;
};

/// argmax |c_a|, ties resolved in the order x, y, z.
Axis dominant_axis(const BellCoefficients& c);

/// 2 + sum_i lambda_i log2 lambda_i over the Bell spectrum.
double mutual_information(const BellCoefficients& c);
/// S(rho_A) + S(rho_B) - S(rho).
double mutual_information(const DensityMatrix& rho);

/// sum_{s=+-1} (1 + s L)/2 log2(1 + s L) with L = max_a |c_a|.
ClassicalCorrelation classical_correlation_analytic(const BellCoefficients& c);

/// sum_i p_i S(rho_A^(i)) for the measurement on B; zero-probability outcomes
/// contribute nothing.
double conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis);

struct BruteForceOptions {
  int theta_cells = 64;
  int phi_cells = 128;
  double angular_tolerance = 1e-8;
  unsigned threads = 1;
};

struct BruteForceResult {
  double classical = 0.0;
  double min_conditional_entropy = 0.0;
  MeasurementBasis argmin;
};

/// Grid search over the Bloch sphere followed by coordinate-descent
/// refinement. The grid reduction is deterministic for any thread count.
BruteForceResult classical_correlation_bruteforce(const DensityMatrix& rho,
                                                  const BruteForceOptions& options = {});

/// Closed-form I, C, D for a physical Bell-diagonal state.
CorrelationReport discord(const BellCoefficients& c);

/// I from entropies, C by brute force, D = I - C. Lambda/axis are filled from
/// the Bell projection of rho and are only meaningful for Bell-diagonal input.
CorrelationReport general_correlations(const DensityMatrix& rho, const BruteForceOptions& options = {});

/// Keeps the dominant coefficient and zeroes the other two.
BellCoefficients dephase(const BellCoefficients& c, Axis axis);
BellCoefficients closest_classical_state(const BellCoefficients& c);

struct RelativeEntropyDiscord {
  double value = 0.0;
  Axis axis = Axis::x;
  std::array<double, 3> per_axis{};  // D(rho || dephased along x, y, z)
};

/// Minimum of the relative entropy to the three axis dephasings. Throws
/// std::logic_error if the result differs from discord(c).discord by > 1e-8.
RelativeEntropyDiscord relative_entropy_discord(const BellCoefficients& c);

}  // namespace nmd
