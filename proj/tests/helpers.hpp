#pragma once

#include <random>

#include "nmd/state.hpp"
#include "oracles/oracles.hpp"

namespace nmd::test {

inline DensityMatrix to_density(const oracle::Mat4& m) {
  TwoQubitMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m[i][j];
  return DensityMatrix(out);
}

inline BellCoefficients random_state(std::mt19937_64& rng) {
  const auto t = oracle::random_physical_triple(rng);
  return {t[0], t[1], t[2]};
}

}  // namespace nmd::test
