#include "nmd/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nmd/errors.hpp"
#include "nmd/parallel.hpp"

namespace nmd {

namespace {

constexpr double kZeroProbability = 1e-12;
constexpr double kIdentityTolerance = 1e-8;
constexpr int kMaxRefineIterations = 100000;

double xlog2x(double x) { return x > kZeroEigenvalue ? x * std::log2(x) : 0.0; }

// Unnormalized Tr_B[(I (x) P) rho (I (x) P)] = Tr_B[(I (x) P) rho].
QubitMatrix conditioned_reduction(const TwoQubitMatrix& rho, const QubitMatrix& proj) {
  QubitMatrix out = QubitMatrix::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(i, j) += proj(k, l) * rho(2 * i + l, 2 * j + k);
  return out;
}

struct Candidate {
  double value;
  double theta;
  double phi;

  bool better_than(const Candidate& o) const {
    if (value != o.value) return value < o.value;
    if (theta != o.theta) return theta < o.theta;
    return phi < o.phi;
  }
};

MeasurementBasis canonical(double theta, double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return {theta, phi};
}

}  // namespace

Eigen::Vector3d MeasurementBasis::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

QubitMatrix MeasurementBasis::projector(int sign) const {
  const Eigen::Vector3d n = direction();
  QubitMatrix m = QubitMatrix::Identity();
  for (Axis a : kAxes) m += static_cast<double>(sign) * n(static_cast<int>(a)) * pauli(a);
  return 0.5 * m;
}

MeasurementBasis MeasurementBasis::along(Axis axis) {
  switch (axis) {
    case Axis::x: return {std::numbers::pi / 2.0, 0.0};
    case Axis::y: return {std::numbers::pi / 2.0, std::numbers::pi / 2.0};
    case Axis::z: return {0.0, 0.0};
  }
  return {};
}

Axis dominant_axis(const BellCoefficients& c) {
  Axis best = Axis::x;
  for (Axis a : {Axis::y, Axis::z})
    if (std::abs(c[a]) > std::abs(c[best])) best = a;
  return best;
}

double mutual_information(const BellCoefficients& c) {
  require_physical(c);
  double sum = 0.0;
  for (double l : bell_eigenvalues(c)) sum += xlog2x(std::clamp(l, 0.0, 1.0));
  return 2.0 + sum;
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace(rho, Qubit::B)) +
         von_neumann_entropy(partial_trace(rho, Qubit::A)) - von_neumann_entropy(rho);
}

ClassicalCorrelation classical_correlation_analytic(const BellCoefficients& c) {
  ClassicalCorrelation out;
  out.dominant_axis = dominant_axis(c);
  out.lambda_max = std::min(1.0, std::abs(c[out.dominant_axis]));
  const double l = out.lambda_max;
  out.value = 0.5 * (xlog2x(1.0 - l) + xlog2x(1.0 + l));
  return out;
}

double conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis) {
  double s = 0.0;
  for (int sign : {+1, -1}) {
    const QubitMatrix reduced = conditioned_reduction(rho.matrix(), basis.projector(sign));
    const double p = reduced.trace().real();
    if (p <= kZeroProbability) continue;
    s += p * von_neumann_entropy(QubitMatrix(reduced / p));
  }
  return s;
}

BruteForceResult classical_correlation_bruteforce(const DensityMatrix& rho,
                                                  const BruteForceOptions& options) {
  if (options.theta_cells < 2 || options.phi_cells < 1)
    throw std::invalid_argument("brute-force search needs at least 2x1 grid cells");
  const double pi = std::numbers::pi;
  const double d_theta = pi / (options.theta_cells - 1);
  const double d_phi = 2.0 * pi / options.phi_cells;

  auto objective = [&](double theta, double phi) {
    return conditional_entropy(rho, MeasurementBasis{theta, phi});
  };

  std::vector<Candidate> row_best(static_cast<std::size_t>(options.theta_cells));
  parallel_for(row_best.size(), options.threads, [&](std::size_t i) {
    const double theta = static_cast<double>(i) * d_theta;
    Candidate best{objective(theta, 0.0), theta, 0.0};
    for (int j = 1; j < options.phi_cells; ++j) {
      const Candidate c{objective(theta, j * d_phi), theta, j * d_phi};
      if (c.better_than(best)) best = c;
    }
    row_best[i] = best;
  });
  Candidate best = row_best.front();
  for (const auto& c : row_best)
    if (c.better_than(best)) best = c;

  // Coordinate descent with step halving.
  double step_theta = d_theta, step_phi = d_phi;
  for (int iter = 0; iter < kMaxRefineIterations &&
                     (step_theta > options.angular_tolerance || step_phi > options.angular_tolerance);
       ++iter) {
    bool moved = false;
    const std::array<std::pair<double, double>, 4> moves{{{step_theta, 0.0},
                                                          {-step_theta, 0.0},
                                                          {0.0, step_phi},
                                                          {0.0, -step_phi}}};
    for (const auto& [dt, dp] : moves) {
      const Candidate c{objective(best.theta + dt, best.phi + dp), best.theta + dt, best.phi + dp};
      if (c.value < best.value) {
        best = c;
        moved = true;
      }
    }
    if (!moved) {
      step_theta *= 0.5;
      step_phi *= 0.5;
    }
  }

  BruteForceResult out;
  out.min_conditional_entropy = best.value;
  out.argmin = canonical(best.theta, best.phi);
  out.classical = von_neumann_entropy(partial_trace(rho, Qubit::B)) - best.value;
  return out;
}

CorrelationReport discord(const BellCoefficients& c) {
  CorrelationReport r;
  r.mutual_information = mutual_information(c);
  const ClassicalCorrelation cc = classical_correlation_analytic(c);
  r.classical = cc.value;
  r.lambda_max = cc.lambda_max;
  r.dominant_axis = cc.dominant_axis;
  r.discord = r.mutual_information - r.classical;
  return r;
}

CorrelationReport general_correlations(const DensityMatrix& rho, const BruteForceOptions& options) {
  const StateDiagnostics diag = validate_state(rho);
  if (!diag.valid()) throw StateError("invalid state: " + diag.describe());
  CorrelationReport r;
  r.mutual_information = mutual_information(rho);
  r.classical = classical_correlation_bruteforce(rho, options).classical;
  r.discord = r.mutual_information - r.classical;
  const BellCoefficients c = density_to_bell(rho).coefficients;
  r.dominant_axis = dominant_axis(c);
  r.lambda_max = std::abs(c[r.dominant_axis]);
  return r;
}

BellCoefficients dephase(const BellCoefficients& c, Axis axis) {
  BellCoefficients out;
  out[axis] = c[axis];
  return out;
}

BellCoefficients closest_classical_state(const BellCoefficients& c) {
  require_physical(c);
  return dephase(c, dominant_axis(c));
}

RelativeEntropyDiscord relative_entropy_discord(const BellCoefficients& c) {
  require_physical(c);
  const DensityMatrix rho = bell_to_density(c);
  RelativeEntropyDiscord out;
  for (Axis a : kAxes)
    out.per_axis[static_cast<int>(a)] = relative_entropy(rho, bell_to_density(dephase(c, a)));
  out.axis = Axis::x;
  for (Axis a : {Axis::y, Axis::z})
    if (out.per_axis[static_cast<int>(a)] < out.per_axis[static_cast<int>(out.axis)]) out.axis = a;
  out.value = out.per_axis[static_cast<int>(out.axis)];

  const double d = discord(c).discord;
  if (std::abs(out.value - d) > kIdentityTolerance) {
    std::ostringstream os;
    os << "relative-entropy discord " << out.value << " disagrees with I - C = " << d;
    throw std::logic_error(os.str());
  }
  return out;
}

}  // namespace nmd
