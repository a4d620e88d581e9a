#include "nmd/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "nmd/errors.hpp"
#include "nmd/parallel.hpp"

namespace nmd {

namespace {

constexpr double kFamilyTolerance = 1e-12;
constexpr double kClosedFormAgreement = 1e-8;
constexpr std::size_t kMinKinkPoints = 100;
constexpr std::size_t kKinkWindow = 10;
constexpr std::size_t kKinkExclusion = 2;
constexpr double kKinkThreshold = 5.0;

bool is_equal_rate(const KernelParams& k) {
  const double tol = 1e-12 * k.a;
  return std::abs(k.A - k.a) <= tol && std::abs(k.gamma - k.a) <= tol;
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("family sign must be +1 or -1");
}

std::vector<std::string> state_meta(const BellCoefficients& c, const KernelParams& k,
                                    const TimeGrid& grid) {
  return {"c=" + format_number(c.cx) + "," + format_number(c.cy) + "," + format_number(c.cz),
          "a=" + format_number(k.a),
          "A=" + format_number(k.A),
          "gamma=" + format_number(k.gamma),
          "t_max=" + format_number(grid.t_max),
          "t_steps=" + std::to_string(grid.points),
          "channel_a=bitflip",
          "channel_b=phaseflip"};
}

}  // namespace

FamilyKind parse_family(const std::string& name) {
  if (name == "synchronized") return FamilyKind::synchronized;
  if (name == "proportional") return FamilyKind::proportional;
  if (name == "sudden_change" || name == "sudden-change") return FamilyKind::sudden_change;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected synchronized, proportional or sudden_change)");
}

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::synchronized: return "synchronized";
    case FamilyKind::proportional: return "proportional";
    case FamilyKind::sudden_change: return "sudden_change";
  }
  return "unknown";
}

BellCoefficients make_family_state(const InitialFamily& f) {
  check_sign(f.sign);
  const double s = f.sign;
  BellCoefficients c;
  switch (f.kind) {
    case FamilyKind::synchronized:
      if (!(std::abs(f.x) <= 1.0)) throw std::domain_error("synchronized family requires |x| <= 1");
      c = {s * f.x, f.x * f.x, -s * f.x};
      break;
    case FamilyKind::proportional:
      if (!(std::abs(f.x) <= 1.0)) throw std::domain_error("proportional family requires |x| <= 1");
      c = {f.x, s * f.x, -s};
      break;
    case FamilyKind::sudden_change:
      c = {f.x, f.y, s * f.x};
      break;
  }
  if (!is_physical(c, kFamilyTolerance)) {
    std::ostringstream os;
    os << family_name(f.kind) << " family state (" << c.cx << ", " << c.cy << ", " << c.cz
       << ") is not physical";
    throw std::domain_error(os.str());
  }
  return c;
}

Trajectory trajectory(const BellCoefficients& c0, const KernelParams& k, const TimeGrid& grid,
                      const TrajectoryOptions& options) {
  require_physical(c0);
  k.validate();
  grid.validate();
  const bool bfpf_pair = options.channel_a == Axis::x && options.channel_b == Axis::z;
  auto evolve = [&](double p) {
    return bfpf_pair ? evolve_bell_bfpf(c0, p) : evolve_bell(c0, options.channel_a, options.channel_b, p);
  };

  Trajectory out(grid.points);
  parallel_for(grid.points, options.threads, [&](std::size_t i) {
    TrajectoryPoint& pt = out[i];
    pt.t = grid.at(i);
    pt.p = p_analytic(k, pt.t);
    pt.c = evolve(pt.p);
    pt.report = discord(pt.c);
    pt.p_markov = p_markovian(k.a, pt.t);
    pt.c_markov = evolve(pt.p_markov);
    pt.markov = discord(pt.c_markov);
  });
  return out;
}

double characteristic_time_equal_rate(double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw std::invalid_argument("characteristic time: ratio must lie in (0, 1]");
  return std::log((1.0 + std::sqrt(1.0 - ratio)) / ratio);
}

std::optional<double> characteristic_time(const BellCoefficients& c0, const KernelParams& k) {
  k.validate();
  if (std::abs(std::abs(c0.cz) - std::abs(c0.cx)) > kFamilyTolerance)
    throw std::invalid_argument("characteristic time needs |c_z| = |c_x|");
  const double cx = std::abs(c0.cx), cy = std::abs(c0.cy);
  if (cx == 0.0 || cx >= cy) return std::nullopt;

  const double ratio = cx / cy;
  const double t_c = solve_p_equals(k, ratio);
  if (is_equal_rate(k)) {
    const double closed = characteristic_time_equal_rate(ratio) / k.a;
    if (std::abs(closed - t_c) * k.a > kClosedFormAgreement) {
      std::ostringstream os;
      os << "characteristic time root " << t_c << " disagrees with closed form " << closed;
      throw std::logic_error(os.str());
    }
  }
  return t_c;
}

std::optional<double> detect_kink(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < kMinKinkPoints)
    throw std::invalid_argument("kink detection needs at least 100 trajectory points");

  double scale = 0.0;
  for (const auto& pt : traj) scale = std::max(scale, std::abs(pt.report.classical));
  const double floor = 1e-13 * scale;

  std::vector<double> d2(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d2[i] = std::abs(traj[i + 1].report.classical - 2.0 * traj[i].report.classical +
                     traj[i - 1].report.classical);

  std::vector<bool> flagged(n, false);
  std::vector<double> window;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d2[i] <= floor) continue;
    window.clear();
    const std::size_t lo = std::max<std::size_t>(1, i > kKinkWindow ? i - kKinkWindow : 1);
    const std::size_t hi = std::min(n - 2, i + kKinkWindow);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j + kKinkExclusion < i || j > i + kKinkExclusion) window.push_back(d2[j]);
    if (window.empty()) continue;
    auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    std::nth_element(window.begin(), mid, window.end());
    flagged[i] = d2[i] > kKinkThreshold * *mid;
  }

  // First cluster of flagged points; its largest second difference is the kink.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!flagged[i]) continue;
    std::size_t best = i;
    for (std::size_t j = i; j + 1 < n && j <= i + 2 * kKinkExclusion; ++j)
      if (flagged[j] && d2[j] > d2[best]) best = j;
    return traj[best].t;
  }
  return std::nullopt;
}

TimeGrid default_figure_grid(FigurePanel panel, double a) {
  return TimeGrid{(panel == FigurePanel::b ? 3.0 : 10.0) / a, 2000};
}

FigureTable figure_data(int id, FigurePanel panel, std::optional<TimeGrid> grid, unsigned threads) {
  if (id < 1 || id > 3) throw std::invalid_argument("figure id must be 1, 2 or 3");
  if (panel == FigurePanel::c && id != 3)
    throw std::invalid_argument("panel c exists only for figure 3");

  FigureTable table;
  const char panel_char = panel == FigurePanel::a ? 'a' : panel == FigurePanel::b ? 'b' : 'c';
  table.title = "figure " + std::to_string(id) + panel_char;

  if (panel == FigurePanel::c) {
    const KernelParams k = equal_rate_kernel();
    const double cx = 0.1;
    table.meta = {"c_x=0.1", "c_z=0.1", "a=1", "A=1", "gamma=1", "c_y_min=0.105", "c_y_max=1",
                  "c_y_points=180", "t_c depends only on |c_x|/|c_y|"};
    table.columns = {"c_y", "a_t_c"};
    for (int i = 1; i <= 180; ++i) {
      const double cy = 0.1 + 0.9 * i / 180.0;
      const auto t_c = characteristic_time({cx, cy, cx}, k);
      table.rows.push_back({cy, t_c ? *t_c * k.a : 0.0});
    }
    return table;
  }

  BellCoefficients c0;
  switch (id) {
    case 1: c0 = make_family_state({FamilyKind::synchronized, 0.6, 0.0, +1}); break;
    case 2: c0 = make_family_state({FamilyKind::proportional, 0.6, 0.0, +1}); break;
    default: c0 = make_family_state({FamilyKind::sudden_change, 0.1, 0.16, +1}); break;
  }
  const KernelParams k = panel == FigurePanel::a ? equal_rate_kernel() : strong_memory_kernel();
  const TimeGrid g = grid.value_or(default_figure_grid(panel, k.a));

  table.meta = state_meta(c0, k, g);
  table.columns = {"a_t", "p", "I", "C", "D", "C_markov", "D_markov"};
  TrajectoryOptions opts;
  opts.threads = threads;
  for (const auto& pt : trajectory(c0, k, g, opts))
    table.rows.push_back({pt.t * k.a, pt.p, pt.report.mutual_information, pt.report.classical,
                          pt.report.discord, pt.markov.classical, pt.markov.discord});
  return table;
}

}  // namespace nmd
