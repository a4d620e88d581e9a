#pragma once

// Local Pauli channels rho -> (1+p)/2 rho + (1-p)/2 sigma rho sigma on one
// qubit, and the induced diagonal action on Bell correlation coefficients.

#include <array>
#include <string_view>

#include "nmd/state.hpp"

namespace nmd {

/// Pauli axis of a flip channel: x = bit flip, y = bit-phase flip, z = phase flip.
using PauliAxis = Axis;

/// Parses "bitflip" | "bitphase" | "phaseflip" (also "x", "y", "z").
PauliAxis parse_channel(std::string_view name);
const char* channel_name(PauliAxis axis);

struct LocalChannel {
  PauliAxis axis = Axis::x;
  double p = 1.0;  // retention of the Bloch components orthogonal to `axis`
};

/// Throws ChannelError if |p| > 1, StateError if rho is not a valid state.
DensityMatrix apply_local_channel(const DensityMatrix& rho, Qubit qubit, const LocalChannel& channel);

/// Bit flip on A and phase flip on B with a shared p: (p cx, p^2 cy, p cz).
BellCoefficients evolve_bell_bfpf(const BellCoefficients& c0, double p);

/// Multipliers (m_x, m_y, m_z) with c_a(t) = m_a c_a for axisA on qubit A with
/// retention pA and axisB on qubit B with retention pB.
std::array<double, 3> bloch_correlation_transfer(PauliAxis axis_a, PauliAxis axis_b, double p);
std::array<double, 3> bloch_correlation_transfer(PauliAxis axis_a, double p_a,
                                                 PauliAxis axis_b, double p_b);

BellCoefficients evolve_bell(const BellCoefficients& c0, PauliAxis axis_a, PauliAxis axis_b, double p);

}  // namespace nmd
