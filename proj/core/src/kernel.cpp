#include "nmd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nmd/errors.hpp"

namespace nmd {

namespace {

constexpr double kCriticalBand = 1e-12;
constexpr double kOdeMaxStep = 0.01;           // in units of 1/a
constexpr double kConvolutionMaxStep = 0.005;  // in units of 1/a
constexpr double kStepSlack = 1e-9;
constexpr double kSearchHorizon = 50.0;        // in units of 1/a
constexpr double kBaseScanStep = 0.01;         // in units of 1/a

void check_step(double step, double max_step, double a, const char* what) {
  if (step > max_step / a * (1.0 + kStepSlack)) {
    std::ostringstream os;
    os << what << ": step " << step << " exceeds the accuracy bound " << max_step / a;
    throw AccuracyError(os.str());
  }
}

}  // namespace

void KernelParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("kernel: decay rate a must be positive");
  if (!(A > 0.0) || !std::isfinite(A))
    throw std::invalid_argument("kernel: amplitude A must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("kernel: gamma must be non-negative");
}

KernelParams equal_rate_kernel(double a) { return {a, a, a}; }
KernelParams strong_memory_kernel(double a) { return {a, 10.0 * a, a / 100.0}; }
KernelParams critical_kernel(double a) { return {a, a / 2.0, 0.0}; }

const char* regime_name(DampingRegime regime) {
  switch (regime) {
    case DampingRegime::oscillatory: return "oscillatory";
    case DampingRegime::critical: return "critical";
    case DampingRegime::overdamped: return "overdamped";
  }
  return "unknown";
}

RegimeInfo omega0_squared(const KernelParams& k) {
  const double half_damping = (2.0 * k.a + k.gamma) / 2.0;
  RegimeInfo info;
  info.omega0_squared = 2.0 * k.a * k.A - half_damping * half_damping;
  const double band = kCriticalBand * k.a * k.a;
  if (info.omega0_squared > band)
    info.regime = DampingRegime::oscillatory;
  else if (info.omega0_squared >= -band)
    info.regime = DampingRegime::critical;
  else
    info.regime = DampingRegime::overdamped;
  return info;
}

double p_analytic(const KernelParams& k, double t) {
  const double b = (2.0 * k.a + k.gamma) / 2.0;
  const RegimeInfo info = omega0_squared(k);
  switch (info.regime) {
    case DampingRegime::oscillatory: {
      const double w = std::sqrt(info.omega0_squared);
      return std::exp(-b * t) * (std::cos(w * t) + b / w * std::sin(w * t));
    }
    case DampingRegime::critical:
      return std::exp(-b * t) * (1.0 + b * t);
    case DampingRegime::overdamped: {
      const double w = std::sqrt(-info.omega0_squared);
      if (w * t < 1.0) return std::exp(-b * t) * (std::cosh(w * t) + b / w * std::sinh(w * t));
      // exp(-bt) cosh(wt) and exp(-bt) sinh(wt) split into decaying exponentials
      const double slow = std::exp(-(b - w) * t);
      const double fast = std::exp(-(b + w) * t);
      return 0.5 * (slow + fast) + b / w * 0.5 * (slow - fast);
    }
  }
  return 0.0;
}

double p_markovian(double a, double t) { return std::exp(-2.0 * a * t); }

double TimeGrid::step() const { return t_max / static_cast<double>(points - 1); }

double TimeGrid::at(std::size_t i) const {
  return i + 1 == points ? t_max : static_cast<double>(i) * step();
}

std::vector<double> TimeGrid::values() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = at(i);
  return out;
}

void TimeGrid::validate() const {
  if (points < 2) throw std::invalid_argument("time grid needs at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("time grid: t_max must be positive");
}

std::vector<double> p_oracle_ode(const KernelParams& k, const TimeGrid& grid) {
  k.validate();
  grid.validate();
  const double h = grid.step();
  check_step(h, kOdeMaxStep, k.a, "ODE oracle");

  const double damping = 2.0 * k.a + k.gamma;
  const double stiffness = 2.0 * k.a * k.A;
  auto accel = [&](double p, double v) { return -damping * v - stiffness * p; };

  std::vector<double> out(grid.points);
  double p = 1.0, v = 0.0;
  out[0] = p;
  for (std::size_t i = 1; i < grid.points; ++i) {
    const double k1p = v, k1v = accel(p, v);
    const double k2p = v + 0.5 * h * k1v, k2v = accel(p + 0.5 * h * k1p, v + 0.5 * h * k1v);
    const double k3p = v + 0.5 * h * k2v, k3v = accel(p + 0.5 * h * k2p, v + 0.5 * h * k2v);
    const double k4p = v + h * k3v, k4v = accel(p + h * k3p, v + h * k3v);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out[i] = p;
  }
  return out;
}

std::vector<double> p_oracle_convolution(const KernelParams& k, const TimeGrid& grid) {
  k.validate();
  const double A = k.A, gamma = k.gamma;
  return p_oracle_convolution([A, gamma](double s) { return A * std::exp(-gamma * s); },
                              k.a, grid);
}

std::vector<double> p_oracle_convolution(const std::function<double(double)>& kernel,
                                         double a, const TimeGrid& grid) {
  if (!(a > 0.0)) throw std::invalid_argument("convolution oracle: a must be positive");
  grid.validate();
  const double h = grid.step();
  check_step(h, kConvolutionMaxStep, a, "convolution oracle");

  const std::size_t n_points = grid.points;
  // g(s) = k(s) exp(-2as): the memory weight seen through the Markovian propagator.
  std::vector<double> g(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double s = static_cast<double>(j) * h;
    g[j] = kernel(s) * std::exp(-2.0 * a * s);
  }

  std::vector<double> p(n_points, 0.0), dp(n_points, 0.0);
  p[0] = 1.0;
  // dp/dt at step m with trapezoidal weights on [0, t_m]:
  //   -2a h [ g_0 p_m / 2 + sum_{j=1}^{m-1} g_j p_{m-j} + g_m p_0 / 2 ]
  for (std::size_t n = 0; n + 1 < n_points; ++n) {
    const std::size_t m = n + 1;
    double history = 0.0;
    for (std::size_t j = 1; j < m; ++j) history += g[j] * p[m - j];
    history += 0.5 * g[m] * p[0];

    auto derivative = [&](double p_m) { return -2.0 * a * h * (0.5 * g[0] * p_m + history); };

    double next = p[n] + h * dp[n];  // predictor
    for (int corr = 0; corr < 2; ++corr) next = p[n] + 0.5 * h * (dp[n] + derivative(next));
    p[m] = next;
    dp[m] = derivative(next);
  }
  return p;
}

double DecayModel::operator()(double t) const {
  return markovian ? p_markovian(kernel.a, t) : p_analytic(kernel, t);
}

double solve_p_equals(const DecayModel& model, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("solve_p_equals: target must lie in (0, 1)");
  model.kernel.validate();
  const double a = model.kernel.a;

  double scan = kBaseScanStep / a;
  if (!model.markovian) {
    const RegimeInfo info = omega0_squared(model.kernel);
    if (info.regime == DampingRegime::oscillatory)
      scan = std::min(scan, std::numbers::pi / (8.0 * std::sqrt(info.omega0_squared)));
  }

  auto excess = [&](double t) { return std::abs(model(t)) - target; };
  const double horizon = kSearchHorizon / a;

  double lo = 0.0;
  for (std::size_t i = 1;; ++i) {
    const double hi = std::min(static_cast<double>(i) * scan, horizon);
    if (excess(hi) <= 0.0) {
      double left = lo, right = hi;
      for (int iter = 0; iter < 200 && right - left > 1e-12 * right; ++iter) {
        const double mid = 0.5 * (left + right);
        (excess(mid) > 0.0 ? left : right) = mid;
      }
      return 0.5 * (left + right);
    }
    if (hi >= horizon) break;
    lo = hi;
  }
  std::ostringstream os;
  os << "|p(t)| never reaches " << target << " within a*t <= " << kSearchHorizon;
  throw NotFoundError(os.str());
}

double solve_p_equals(const KernelParams& k, double target) {
  return solve_p_equals(DecayModel{k, false}, target);
}

}  // namespace nmd
