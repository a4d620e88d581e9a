#pragma once

// Scalar decay function p(t) of the post-Markovian Pauli channel with the
// exponential memory kernel k(t) = A exp(-gamma t).
//
// With the Markovian Liouvillian of rate a, the Bloch components orthogonal to
// the channel axis obey
//     dp/dt = -2a * integral_0^t k(s) exp(-2a s) p(t - s) ds,
// which for the exponential kernel is equivalent to the damped oscillator
//     p'' + (2a + gamma) p' + 2aA p = 0,   p(0) = 1, p'(0) = 0.

#include <functional>
#include <span>
#include <vector>

namespace nmd {

struct KernelParams {
  double a = 1.0;      // Markovian decay rate
  double A = 1.0;      // kernel amplitude
  double gamma = 1.0;  // kernel decay rate

  /// Throws std::invalid_argument unless a > 0, A > 0, gamma >= 0.
  void validate() const;

  friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

/// Kernel with A = a = gamma.
KernelParams equal_rate_kernel(double a = 1.0);
/// Kernel with A = 10a and gamma = a/100 (strong memory, oscillatory).
KernelParams strong_memory_kernel(double a = 1.0);
/// Kernel exactly on the critical-damping boundary: gamma = 0, A = a/2.
KernelParams critical_kernel(double a = 1.0);

enum class DampingRegime { oscillatory, critical, overdamped };

const char* regime_name(DampingRegime regime);

struct RegimeInfo {
  double omega0_squared = 0.0;
  DampingRegime regime = DampingRegime::oscillatory;
};

/// omega0^2 = 2aA - ((2a + gamma)/2)^2 and its regime classification.
RegimeInfo omega0_squared(const KernelParams& k);

/// Closed form of p(t) in all three damping regimes.
double p_analytic(const KernelParams& k, double t);

/// Markovian baseline exp(-2at).
double p_markovian(double a, double t);

/// Uniform grid t_i = i * t_max / (points - 1), i = 0 .. points-1.
struct TimeGrid {
  double t_max = 10.0;
  std::size_t points = 2000;

  double step() const;
  double at(std::size_t i) const;
  std::vector<double> values() const;
  void validate() const;
};

/// RK4 integration of the oscillator ODE. Requires step <= 0.01/a, otherwise
/// throws AccuracyError.
std::vector<double> p_oracle_ode(const KernelParams& k, const TimeGrid& grid);

/// Direct integration of the integro-differential equation with trapezoidal
/// convolution and predictor-corrector stepping. Requires step <= 0.005/a.
std::vector<double> p_oracle_convolution(const KernelParams& k, const TimeGrid& grid);

/// Same integrator for an arbitrary kernel function k(s), s >= 0.
std::vector<double> p_oracle_convolution(const std::function<double(double)>& kernel,
                                         double a, const TimeGrid& grid);

/// Decay law selector: post-Markovian closed form or the Markovian baseline.
struct DecayModel {
  KernelParams kernel;
  bool markovian = false;

  double operator()(double t) const;
};

/// Smallest t > 0 with |p(t)| = target, 0 < target < 1. Scans for a sign
/// change of |p| - target (resolution pi/(8 omega0) when oscillatory), then
/// bisects. Throws NotFoundError if no crossing exists in [0, 50/a].
double solve_p_equals(const DecayModel& model, double target);
double solve_p_equals(const KernelParams& k, double target);

}  // namespace nmd
