#include "nmd/channels.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "nmd/errors.hpp"

namespace nmd {

namespace {

constexpr double kRetentionSlack = 1e-12;

void check_retention(double p) {
  if (!std::isfinite(p) || std::abs(p) > 1.0 + kRetentionSlack) {
    std::ostringstream os;
    os << "channel retention p = " << p << " is outside [-1, 1]; map is not CPTP";
    throw ChannelError(os.str());
  }
}

// A local axis-k channel keeps component k and scales the other two by p.
double axis_factor(PauliAxis channel_axis, Axis component, double p) {
  return channel_axis == component ? 1.0 : p;
}

}  // namespace

PauliAxis parse_channel(std::string_view name) {
  if (name == "bitflip" || name == "x") return Axis::x;
  if (name == "bitphase" || name == "y") return Axis::y;
  if (name == "phaseflip" || name == "z") return Axis::z;
  throw std::invalid_argument("unknown channel '" + std::string(name) +
                              "' (expected bitflip, bitphase or phaseflip)");
}

const char* channel_name(PauliAxis axis) {
  switch (axis) {
    case Axis::x: return "bitflip";
    case Axis::y: return "bitphase";
    case Axis::z: return "phaseflip";
  }
  return "unknown";
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, Qubit qubit, const LocalChannel& channel) {
  check_retention(channel.p);
  const StateDiagnostics diag = validate_state(rho);
  if (!diag.valid()) throw StateError("apply_local_channel: invalid input state (" + diag.describe() + ")");

  const QubitMatrix id = QubitMatrix::Identity();
  const QubitMatrix s = pauli(channel.axis);
  const TwoQubitMatrix flip = qubit == Qubit::A ? kron(s, id) : kron(id, s);
  const TwoQubitMatrix out = 0.5 * (1.0 + channel.p) * rho.matrix() +
                             0.5 * (1.0 - channel.p) * (flip * rho.matrix() * flip);
  return DensityMatrix(out);
}

std::array<double, 3> bloch_correlation_transfer(PauliAxis axis_a, double p_a,
                                                 PauliAxis axis_b, double p_b) {
  check_retention(p_a);
  check_retention(p_b);
  std::array<double, 3> m{};
  for (Axis c : kAxes)
    m[static_cast<int>(c)] = axis_factor(axis_a, c, p_a) * axis_factor(axis_b, c, p_b);
  return m;
}

std::array<double, 3> bloch_correlation_transfer(PauliAxis axis_a, PauliAxis axis_b, double p) {
  return bloch_correlation_transfer(axis_a, p, axis_b, p);
}

BellCoefficients evolve_bell(const BellCoefficients& c0, PauliAxis axis_a, PauliAxis axis_b, double p) {
  const auto m = bloch_correlation_transfer(axis_a, axis_b, p);
  return {m[0] * c0.cx, m[1] * c0.cy, m[2] * c0.cz};
}

BellCoefficients evolve_bell_bfpf(const BellCoefficients& c0, double p) {
  check_retention(p);
  return {p * c0.cx, p * p * c0.cy, p * c0.cz};
}

}  // namespace nmd
