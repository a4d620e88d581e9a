#include "nmd/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nmd/errors.hpp"

namespace nmd {

namespace {

constexpr double kSupportCutoff = 1e-13;
constexpr double kSupportLeakTolerance = 1e-9;

inline int index_of(int a, int b) { return 2 * a + b; }

}  // namespace

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

double BellCoefficients::operator[](Axis axis) const {
  switch (axis) {
    case Axis::x: return cx;
    case Axis::y: return cy;
    case Axis::z: return cz;
  }
  return 0.0;
}

double& BellCoefficients::operator[](Axis axis) {
  switch (axis) {
    case Axis::x: return cx;
    case Axis::y: return cy;
    default: return cz;
  }
}

DensityMatrix::DensityMatrix() : m_(TwoQubitMatrix::Zero()) {}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(TwoQubitMatrix::Identity() / 4.0);
}

DensityMatrix DensityMatrix::diagonal(const std::array<double, 4>& populations) {
  TwoQubitMatrix m = TwoQubitMatrix::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = populations[i];
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector4cd& psi) {
  const Eigen::Vector4cd v = psi.normalized();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::product(const QubitMatrix& a, const QubitMatrix& b) {
  return DensityMatrix(kron(a, b));
}

double DensityMatrix::max_abs_difference(const DensityMatrix& other) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool StateDiagnostics::valid() const {
  return hermiticity_deviation <= kHermiticityTolerance &&
         trace_deviation <= kTraceTolerance &&
         min_eigenvalue >= -kNegativeEigenvalueTolerance;
}

std::string StateDiagnostics::describe() const {
  std::ostringstream os;
  os << "hermiticity deviation " << hermiticity_deviation << ", trace deviation "
     << trace_deviation << ", min eigenvalue " << min_eigenvalue;
  return os.str();
}

QubitMatrix pauli(Axis axis) {
  const Complex i{0.0, 1.0};
  QubitMatrix s;
  switch (axis) {
    case Axis::x: s << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::y: s << 0.0, -i, i, 0.0; break;
    case Axis::z: s << 1.0, 0.0, 0.0, -1.0; break;
  }
  return s;
}

TwoQubitMatrix kron(const QubitMatrix& a, const QubitMatrix& b) {
  TwoQubitMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

TwoQubitMatrix pauli_pair(Axis axis) { return kron(pauli(axis), pauli(axis)); }

TwoQubitMatrix bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  TwoQubitMatrix b = TwoQubitMatrix::Zero();
  // Psi+ = (|eg> + |ge>)/sqrt2, Phi+ = (|ee> + |gg>)/sqrt2, Phi-, Psi-
  b(1, 0) = r;  b(2, 0) = r;
  b(0, 1) = r;  b(3, 1) = r;
  b(0, 2) = r;  b(3, 2) = -r;
  b(1, 3) = r;  b(2, 3) = -r;
  return b;
}

DensityMatrix bell_to_density(const BellCoefficients& c) {
  TwoQubitMatrix m = TwoQubitMatrix::Identity();
  for (Axis a : kAxes) m += c[a] * pauli_pair(a);
  return DensityMatrix(m / 4.0);
}

BellSpectrum bell_eigenvalues(const BellCoefficients& c) {
  return {0.25 * (1.0 + c.cx + c.cy - c.cz), 0.25 * (1.0 + c.cx - c.cy + c.cz),
          0.25 * (1.0 - c.cx + c.cy + c.cz), 0.25 * (1.0 - c.cx - c.cy - c.cz)};
}

bool is_physical(const BellCoefficients& c, double tolerance) {
  for (Axis a : kAxes)
    if (!std::isfinite(c[a]) || std::abs(c[a]) > 1.0 + tolerance) return false;
  const auto lambda = bell_eigenvalues(c);
  return std::all_of(lambda.begin(), lambda.end(),
                     [&](double l) { return l >= -tolerance; });
}

void require_physical(const BellCoefficients& c) {
  if (is_physical(c)) return;
  const auto l = bell_eigenvalues(c);
  std::ostringstream os;
  os << "unphysical Bell coefficients (" << c.cx << ", " << c.cy << ", " << c.cz
     << "): Bell weights " << l[0] << ", " << l[1] << ", " << l[2] << ", " << l[3];
  throw StateError(os.str());
}

BellProjection density_to_bell(const DensityMatrix& rho) {
  BellProjection out;
  for (Axis a : kAxes) out.coefficients[a] = (rho.matrix() * pauli_pair(a)).trace().real();
  out.residual = rho.max_abs_difference(bell_to_density(out.coefficients));
  return out;
}

BellSpectrum bell_diagonal(const DensityMatrix& rho) {
  const TwoQubitMatrix b = bell_basis();
  const TwoQubitMatrix d = b.adjoint() * rho.matrix() * b;
  return {d(0, 0).real(), d(1, 1).real(), d(2, 2).real(), d(3, 3).real()};
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho) {
  const TwoQubitMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<TwoQubitMatrix> solver(h);
  SpectralDecomposition out;
  // Eigen returns ascending order.
  for (int k = 0; k < 4; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(3 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(3 - k);
  }
  return out;
}

StateDiagnostics validate_state(const DensityMatrix& rho) {
  StateDiagnostics d;
  const TwoQubitMatrix& m = rho.matrix();
  d.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace_deviation = std::abs(m.trace() - Complex{1.0, 0.0});
  d.min_eigenvalue = spectral_decomposition(rho).eigenvalues[3];
  return d;
}

std::array<double, 4> state_eigenvalues(const DensityMatrix& rho) {
  auto lambda = spectral_decomposition(rho).eigenvalues;
  if (lambda[3] < -kNegativeEigenvalueTolerance) {
    std::ostringstream os;
    os << "invalid state: negative eigenvalue " << lambda[3];
    throw StateError(os.str());
  }
  for (double& l : lambda) l = std::clamp(l, 0.0, 1.0);
  return lambda;
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p < -kNegativeEigenvalueTolerance) {
      std::ostringstream os;
      os << "invalid state: negative probability " << p;
      throw StateError(os.str());
    }
    if (p > kZeroEigenvalue) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto lambda = state_eigenvalues(rho);
  return shannon_entropy(lambda);
}

double von_neumann_entropy(const QubitMatrix& rho) {
  // Closed-form spectrum of the Hermitian part of a 2x2 matrix.
  const double a = rho(0, 0).real(), d = rho(1, 1).real();
  const Complex b = 0.5 * (rho(0, 1) + std::conj(rho(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  std::array<double, 2> lambda{mean - radius, mean + radius};
  if (lambda[0] < -kNegativeEigenvalueTolerance) {
    std::ostringstream os;
    os << "invalid qubit state: negative eigenvalue " << lambda[0];
    throw StateError(os.str());
  }
  for (double& l : lambda) l = std::clamp(l, 0.0, 1.0);
  return shannon_entropy(lambda);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto rho_spectrum = state_eigenvalues(rho);
  double tr_rho_log_rho = 0.0;
  for (double l : rho_spectrum)
    if (l > kZeroEigenvalue) tr_rho_log_rho += l * std::log2(l);

  const auto sigma_spec = spectral_decomposition(sigma);
  if (sigma_spec.eigenvalues[3] < -kNegativeEigenvalueTolerance)
    throw StateError("relative entropy: reference state has a negative eigenvalue");

  double tr_rho_log_sigma = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd v = sigma_spec.eigenvectors.col(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double mu = sigma_spec.eigenvalues[k];
    if (mu <= kSupportCutoff) {
      if (weight > kSupportLeakTolerance) {
        std::ostringstream os;
        os << "relative entropy diverges: weight " << weight
           << " outside the support of the reference state";
        throw DivergenceError(os.str());
      }
      continue;
    }
    tr_rho_log_sigma += weight * std::log2(mu);
  }
  return std::max(0.0, tr_rho_log_rho - tr_rho_log_sigma);
}

QubitMatrix partial_trace(const DensityMatrix& rho, Qubit traced) {
  QubitMatrix out = QubitMatrix::Zero();
  const TwoQubitMatrix& m = rho.matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (traced == Qubit::B)
          out(i, j) += m(index_of(i, k), index_of(j, k));
        else
          out(i, j) += m(index_of(k, i), index_of(k, j));
      }
  return out;
}

}  // namespace nmd
