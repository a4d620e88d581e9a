#pragma once

// Two-qubit states: the Bell-diagonal coefficient representation, the general
// 4x4 density matrix, and the spectral quantities (entropies, relative entropy)
// built on top of them.
//
// Basis order is (|ee>, |eg>, |ge>, |gg>) where |e>, |g> are the +1 / -1
// eigenstates of sigma_z. Qubit A is the left tensor factor.

#include <array>
#include <complex>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace nmd {

using Complex = std::complex<double>;
using QubitMatrix = Eigen::Matrix2cd;
using TwoQubitMatrix = Eigen::Matrix4cd;

enum class Axis { x = 0, y = 1, z = 2 };
inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

enum class Qubit { A, B };

char axis_name(Axis axis);

/// Tolerances of the DensityMatrix invariants.
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kNegativeEigenvalueTolerance = 1e-10;
/// Eigenvalues below this contribute 0 to entropies (0 log 0 = 0).
inline constexpr double kZeroEigenvalue = 1e-15;

/// Correlation triple (c_x, c_y, c_z) of a Bell-diagonal state
/// rho = (I + sum_a c_a sigma_a (x) sigma_a) / 4.
struct BellCoefficients {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;

  double operator[](Axis axis) const;
  double& operator[](Axis axis);

  friend bool operator==(const BellCoefficients&, const BellCoefficients&) = default;
};

/// Bell-basis weights ordered (Psi+, Phi+, Phi-, Psi-).
using BellSpectrum = std::array<double, 4>;

/// 4x4 complex matrix interpreted as a two-qubit state. Construction does not
/// enforce the state invariants; use validate_state() to check them.
class DensityMatrix {
 public:
  DensityMatrix();
  explicit DensityMatrix(const TwoQubitMatrix& m) : m_(m) {}

  static DensityMatrix maximally_mixed();
  static DensityMatrix diagonal(const std::array<double, 4>& populations);
  static DensityMatrix pure(const Eigen::Vector4cd& psi);
  static DensityMatrix product(const QubitMatrix& a, const QubitMatrix& b);

  const TwoQubitMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double max_abs_difference(const DensityMatrix& other) const;

 private:
  TwoQubitMatrix m_;
};

struct SpectralDecomposition {
  std::array<double, 4> eigenvalues;  // descending
  TwoQubitMatrix eigenvectors;        // column k belongs to eigenvalues[k]
};

struct StateDiagnostics {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;

  bool valid() const;
  std::string describe() const;
};

// Pauli matrices and the Bell basis ---------------------------------------

QubitMatrix pauli(Axis axis);
TwoQubitMatrix pauli_pair(Axis axis);  // sigma_a (x) sigma_a
TwoQubitMatrix kron(const QubitMatrix& a, const QubitMatrix& b);

/// Columns are |Psi+>, |Phi+>, |Phi->, |Psi->.
TwoQubitMatrix bell_basis();

// Bell-diagonal fast path ----------------------------------------------------

DensityMatrix bell_to_density(const BellCoefficients& c);

/// (lambda_Psi+, lambda_Phi+, lambda_Phi-, lambda_Psi-)
///   = 1/4 (1+cx+cy-cz, 1+cx-cy+cz, 1-cx+cy+cz, 1-cx-cy-cz)
BellSpectrum bell_eigenvalues(const BellCoefficients& c);

bool is_physical(const BellCoefficients& c, double tolerance = 1e-12);

/// Throws StateError when c is outside the Bell tetrahedron.
void require_physical(const BellCoefficients& c);

struct BellProjection {
  BellCoefficients coefficients;
  /// Max entry-wise modulus of rho - bell_to_density(coefficients).
  double residual = 0.0;
};

BellProjection density_to_bell(const DensityMatrix& rho);

/// <B_k| rho |B_k> for the Bell basis in bell_basis() order.
BellSpectrum bell_diagonal(const DensityMatrix& rho);

// General path ---------------------------------------------------------------

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho);
StateDiagnostics validate_state(const DensityMatrix& rho);

/// Eigenvalues of a validated state, clamped to [0, 1]. Throws StateError
/// when an eigenvalue is below -kNegativeEigenvalueTolerance.
std::array<double, 4> state_eigenvalues(const DensityMatrix& rho);

/// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const QubitMatrix& rho);

/// Tr(rho log2 rho) - Tr(rho log2 sigma). Throws DivergenceError if rho puts
/// weight > 1e-9 outside the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Reduced state after tracing out `traced`.
QubitMatrix partial_trace(const DensityMatrix& rho, Qubit traced);

}  // namespace nmd
