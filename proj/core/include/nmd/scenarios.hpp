#pragma once

// Initial-state families, time trajectories under the local channel pair,
// sudden-change analysis and the tables behind the three correlation figures.

#include <optional>
#include <string>
#include <vector>

#include "nmd/channels.hpp"
#include "nmd/correlations.hpp"
#include "nmd/io.hpp"
#include "nmd/kernel.hpp"
#include "nmd/state.hpp"

namespace nmd {

enum class FamilyKind { synchronized, proportional, sudden_change };

FamilyKind parse_family(const std::string& name);
const char* family_name(FamilyKind kind);

/// synchronized:  (s x, x^2, -s x)
/// proportional:  (x, s x, -s)
/// sudden_change: (x, y, s x)
struct InitialFamily {
  FamilyKind kind = FamilyKind::synchronized;
  double x = 0.0;
  double y = 0.0;  // c_y, sudden_change only
  int sign = +1;
};

/// Throws std::domain_error for parameters outside the physical set.
BellCoefficients make_family_state(const InitialFamily& family);

struct TrajectoryPoint {
  double t = 0.0;
  double p = 1.0;
  BellCoefficients c;
  CorrelationReport report;
  double p_markov = 1.0;
  BellCoefficients c_markov;
  CorrelationReport markov;
};

using Trajectory = std::vector<TrajectoryPoint>;

struct TrajectoryOptions {
  PauliAxis channel_a = Axis::x;
  PauliAxis channel_b = Axis::z;
  unsigned threads = 1;
};

/// Evaluates p(t), c(t) and the correlation report at every grid time, with
/// the Markovian baseline alongside.
Trajectory trajectory(const BellCoefficients& c0, const KernelParams& k, const TimeGrid& grid,
                      const TrajectoryOptions& options = {});

/// Time where the dominant axis switches from y to x: the smallest t with
/// |p(t)| = |c_x|/|c_y|. Empty when |c_x| >= |c_y| (no switch). Requires
/// |c_z| = |c_x|. For A = a = gamma the root is checked against
/// a t_c = ln[(1 + sqrt(1 - r))/r].
std::optional<double> characteristic_time(const BellCoefficients& c0, const KernelParams& k);

/// Closed form a t_c for the equal-rate kernel.
double characteristic_time_equal_rate(double ratio);

/// First kink of C(t): a grid point whose second difference exceeds 5x the
/// median second-difference magnitude of its neighborhood. Empty when none.
std::optional<double> detect_kink(const Trajectory& traj);

enum class FigurePanel { a, b, c };

using FigureTable = Table;

/// Default grid for a panel: 2000 points over a t in [0, 10] (a), [0, 3] (b).
TimeGrid default_figure_grid(FigurePanel panel, double a = 1.0);

/// Throws std::invalid_argument for an unknown figure/panel combination.
FigureTable figure_data(int id, FigurePanel panel, std::optional<TimeGrid> grid = std::nullopt,
                        unsigned threads = 1);

}  // namespace nmd
