#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "nmd/errors.hpp"
#include "nmd/state.hpp"
#include "oracles/oracles.hpp"

namespace nmd {
namespace {

using test::random_state;
using test::to_density;

TEST(BellToDensity, MaximallyMixedAtOrigin) {
  const DensityMatrix rho = bell_to_density({0.0, 0.0, 0.0});
  EXPECT_LE(rho.max_abs_difference(DensityMatrix::maximally_mixed()), 1e-15);
}

TEST(BellToDensity, SingletAtMinusOne) {
  Eigen::Vector4cd psi_minus(0.0, 1.0, -1.0, 0.0);
  const DensityMatrix singlet = DensityMatrix::pure(psi_minus);
  EXPECT_LE(bell_to_density({-1.0, -1.0, -1.0}).max_abs_difference(singlet), 1e-15);
}

TEST(BellToDensity, MatchesExplicitKroneckerConstruction) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const BellCoefficients c = random_state(rng);
    const DensityMatrix ref = to_density(oracle::bell_state(c.cx, c.cy, c.cz));
    EXPECT_LE(bell_to_density(c).max_abs_difference(ref), 1e-15);
  }
}

TEST(BellToDensity, BellBasisDiagonalOfSynchronizedState) {
  const auto w = bell_diagonal(bell_to_density({0.6, 0.36, -0.6}));
  const std::array<double, 4> expected{0.64, 0.16, 0.04, 0.16};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(w[i], expected[i], 1e-14);
}

TEST(BellEigenvalues, FrozenValues) {
  const auto origin = bell_eigenvalues({0.0, 0.0, 0.0});
  for (double l : origin) EXPECT_DOUBLE_EQ(l, 0.25);

  const auto sync = bell_eigenvalues({0.6, 0.36, -0.6});
  const std::array<double, 4> sync_expected{0.64, 0.16, 0.04, 0.16};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sync[i], sync_expected[i], 1e-15);

  const auto prop = bell_eigenvalues({0.6, 0.6, -1.0});
  const std::array<double, 4> prop_expected{0.8, 0.0, 0.0, 0.2};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(prop[i], prop_expected[i], 1e-15);
}

// Each Bell projector has a definite sign pattern under sigma_a (x) sigma_a.
TEST(BellEigenvalues, MatchBellProjections) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 200; ++n) {
    const BellCoefficients c = random_state(rng);
    const auto lambda = bell_eigenvalues(c);
    const auto weights = bell_diagonal(bell_to_density(c));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(lambda[i], weights[i], 1e-14);
  }
}

TEST(BellEigenvalues, SortedSpectrumAgreesWithDiagonalization) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 1000; ++n) {
    const BellCoefficients c = random_state(rng);
    auto lambda = bell_eigenvalues(c);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    const auto numeric = spectral_decomposition(bell_to_density(c)).eigenvalues;
    for (int i = 0; i < 4; ++i) ASSERT_NEAR(lambda[i], numeric[i], 1e-10) << "sample " << n;
  }
}

TEST(DensityToBell, FrozenValues) {
  const auto mixed = density_to_bell(DensityMatrix::maximally_mixed());
  EXPECT_NEAR(mixed.coefficients.cx, 0.0, 1e-15);
  EXPECT_NEAR(mixed.coefficients.cy, 0.0, 1e-15);
  EXPECT_NEAR(mixed.coefficients.cz, 0.0, 1e-15);

  const auto round = density_to_bell(bell_to_density({0.1, 0.16, 0.1}));
  EXPECT_NEAR(round.coefficients.cx, 0.1, 1e-15);
  EXPECT_NEAR(round.coefficients.cy, 0.16, 1e-15);
  EXPECT_NEAR(round.coefficients.cz, 0.1, 1e-15);
  EXPECT_LE(round.residual, 1e-15);

  const auto singlet = density_to_bell(DensityMatrix::pure(Eigen::Vector4cd(0.0, 1.0, -1.0, 0.0)));
  EXPECT_NEAR(singlet.coefficients.cx, -1.0, 1e-15);
  EXPECT_NEAR(singlet.coefficients.cy, -1.0, 1e-15);
  EXPECT_NEAR(singlet.coefficients.cz, -1.0, 1e-15);
}

TEST(DensityToBell, RoundTripProperty) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // Round trip holds for any triple, physical or not.
  for (int n = 0; n < 1000; ++n) {
    const BellCoefficients c{u(rng), u(rng), u(rng)};
    const auto back = density_to_bell(bell_to_density(c));
    ASSERT_NEAR(back.coefficients.cx, c.cx, 1e-12);
    ASSERT_NEAR(back.coefficients.cy, c.cy, 1e-12);
    ASSERT_NEAR(back.coefficients.cz, c.cz, 1e-12);
    ASSERT_LE(back.residual, 1e-12);
  }
}

TEST(DensityToBell, ReportsResidualOutsideFamily) {
  const auto proj = density_to_bell(DensityMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
  // |ee><ee| has c_z = 1 but also local polarization sigma_z (x) I.
  EXPECT_NEAR(proj.coefficients.cz, 1.0, 1e-15);
  EXPECT_NEAR(proj.residual, 0.5, 1e-15);
}

TEST(Entropy, PureAndMaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(bell_to_density({-1.0, -1.0, -1.0})), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed()), 2.0, 1e-14);
}

TEST(Entropy, ProportionalInitialSpectrum) {
  const std::array<double, 4> spectrum{0.8, 0.0, 0.0, 0.2};
  EXPECT_NEAR(shannon_entropy(spectrum), 0.7219280948873623, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(bell_to_density({0.6, 0.6, -1.0})), 0.7219280948873623, 1e-12);
}

TEST(Entropy, NegativeEigenvalueRejected) {
  EXPECT_THROW(von_neumann_entropy(DensityMatrix::diagonal({0.7, 0.7, -0.2, -0.2})), StateError);
  const std::array<double, 2> bad{1.2, -0.2};
  EXPECT_THROW(shannon_entropy(bad), StateError);
}

TEST(Entropy, AdditiveOnProducts) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_qubit = [&] {
    Eigen::Vector3d r(u(rng), u(rng), u(rng));
    if (r.norm() > 1.0) r /= (r.norm() * 1.0001);
    QubitMatrix m = 0.5 * (QubitMatrix::Identity() + r(0) * pauli(Axis::x) + r(1) * pauli(Axis::y) +
                           r(2) * pauli(Axis::z));
    return m;
  };
  for (int n = 0; n < 300; ++n) {
    const QubitMatrix a = random_qubit(), b = random_qubit();
    const double joint = von_neumann_entropy(DensityMatrix::product(a, b));
    ASSERT_NEAR(joint, von_neumann_entropy(a) + von_neumann_entropy(b), 1e-10);
  }
}

TEST(RelativeEntropy, FrozenValues) {
  const DensityMatrix rho = bell_to_density({0.1, 0.16, 0.1});
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-14);

  const DensityMatrix singlet = bell_to_density({-1.0, -1.0, -1.0});
  EXPECT_NEAR(relative_entropy(singlet, DensityMatrix::maximally_mixed()), 2.0, 1e-12);

  // Equals I - C of the state: dephasing along its dominant axis y.
  EXPECT_NEAR(relative_entropy(rho, bell_to_density({0.0, 0.16, 0.0})), 0.01734100914960454, 1e-12);
}

TEST(RelativeEntropy, SupportViolationDiverges) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed();
  const DensityMatrix singlet = bell_to_density({-1.0, -1.0, -1.0});
  EXPECT_THROW(relative_entropy(mixed, singlet), DivergenceError);
}

TEST(RelativeEntropy, NonNegativeWithEqualityOnlyAtIdentity) {
  std::mt19937_64 rng(16);
  for (int n = 0; n < 500; ++n) {
    const BellCoefficients c = random_state(rng);
    const BellCoefficients d = random_state(rng);
    // Full-rank reference avoids divergence.
    const BellCoefficients mixed{0.9 * d.cx, 0.9 * d.cy, 0.9 * d.cz};
    const DensityMatrix rho = bell_to_density(c), sigma = bell_to_density(mixed);
    const double value = relative_entropy(rho, sigma);
    ASSERT_GE(value, 0.0);
    if (rho.max_abs_difference(sigma) > 1e-9) ASSERT_GT(value, 0.0);
    ASSERT_NEAR(relative_entropy(sigma, sigma), 0.0, 1e-12);
  }
}

TEST(PartialTrace, BellDiagonalMarginalsAreMaximallyMixed) {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 100; ++n) {
    const DensityMatrix rho = bell_to_density(random_state(rng));
    for (Qubit q : {Qubit::A, Qubit::B})
      ASSERT_LE((partial_trace(rho, q) - 0.5 * QubitMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(PartialTrace, ProductStates) {
  QubitMatrix ee = QubitMatrix::Zero();
  ee(0, 0) = 1.0;
  EXPECT_LE((partial_trace(DensityMatrix::diagonal({1.0, 0.0, 0.0, 0.0}), Qubit::B) - ee).cwiseAbs().maxCoeff(),
            1e-15);

  QubitMatrix a;
  a << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  QubitMatrix b;
  b << 0.4, Complex(-0.2, 0.05), Complex(-0.2, -0.05), 0.6;
  const DensityMatrix rho = DensityMatrix::product(a, b);
  EXPECT_LE((partial_trace(rho, Qubit::B) - a).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((partial_trace(rho, Qubit::A) - b).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ValidateState, Diagnostics) {
  EXPECT_TRUE(validate_state(DensityMatrix::maximally_mixed()).valid());

  const auto negative = validate_state(DensityMatrix::diagonal({0.7, 0.7, -0.2, -0.2}));
  EXPECT_FALSE(negative.valid());
  EXPECT_NEAR(negative.min_eigenvalue, -0.2, 1e-14);

  const auto unphysical = validate_state(bell_to_density({1.0, 1.0, 1.0}));
  EXPECT_FALSE(unphysical.valid());
  EXPECT_NEAR(unphysical.min_eigenvalue, -0.5, 1e-14);
  EXPECT_NEAR(bell_eigenvalues({1.0, 1.0, 1.0})[3], -0.5, 1e-15);

  TwoQubitMatrix skew = TwoQubitMatrix::Identity() / 4.0;
  skew(0, 1) = 0.1;
  EXPECT_FALSE(validate_state(DensityMatrix(skew)).valid());
  EXPECT_FALSE(validate_state(DensityMatrix::diagonal({0.5, 0.5, 0.5, 0.0})).valid());
}

TEST(Physicality, TetrahedronVertices) {
  EXPECT_TRUE(is_physical({-1.0, -1.0, -1.0}));
  EXPECT_TRUE(is_physical({1.0, -1.0, 1.0}));
  EXPECT_FALSE(is_physical({1.0, 1.0, 1.0}));
  EXPECT_FALSE(is_physical({0.0, 0.0, 1.1}));
  EXPECT_THROW(require_physical({1.0, 1.0, 1.0}), StateError);
}

}  // namespace
}  // namespace nmd
