#include "cohesive/pathsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "cohesive/errors.hpp"

namespace cohesive {

Vec2 LoadingPath::opening(double time) const {
  return {std::abs(a[0] * std::sin(b[0] * time)), std::abs(a[1] * std::sin(b[1] * time))};
}

LoadingPath LoadingPath::uniform(Vec2 a, Vec2 b, double t_end, std::size_t n) {
  if (n < 2 || !(t_end > 0.0)) throw InvalidParameter("path needs n >= 2 samples and t_end > 0");
  LoadingPath p;
  p.a = a;
  p.b = b;
  p.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.t[i] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
  return p;
}

double PathTrace::peak_traction() const {
  double peak = 0.0;
  for (const TraceRow& r : rows) peak = std::max({peak, std::abs(r.traction[0]), std::abs(r.traction[1])});
  return peak;
}

PathTrace simulate_path(const MixedModeLaw& law, const LoadingPath& path, Vec2 z0) {
  PathTrace trace;
  trace.model = is_potential(law) ? "potential" : "nonpotential";
  trace.rows.reserve(path.t.size());
  Vec2 z = z0;
  for (double t : path.t) {
    TraceRow row;
    row.t = t;
    row.y = path.opening(t);
    row.traction = traction(law, row.y, z);
    if (const auto* p = std::get_if<PotentialLaw>(&law)) {
      row.energy = p->energy(row.y, z);
    } else {
      row.energy = std::numeric_limits<double>::quiet_NaN();
    }
    z = join(z, row.y);
    row.z = z;
    trace.rows.push_back(row);
  }
  return trace;
}

CaseSetup case_setup(int n) {
  CaseSetup s;
  s.number = n;
  switch (n) {
    case 1:
      s.a = {1.0, 1.0};
      s.b = {0.2, 0.2};
      s.energy = {2.0, 2.0};
      break;
    case 2:
      s.a = {1.0, 1.0};
      s.b = {0.2, 0.3};
      s.energy = {2.0, 2.0};
      break;
    case 3:
      s.a = {1.0, 3.0};
      s.b = {0.2, 0.3};
      s.energy = {6.0, 2.0};
      break;
    case 4:
      s.a = {1.0, 0.5};
      s.b = {0.125, 0.4};
      s.energy = {2.0, 2.0};
      break;
    default:
      throw InvalidParameter(fmt::format("case must be 1..4, got {}", n));
  }
  return s;
}

LoadingDensity case_density(const CaseSetup& setup, CouplingMode mode) {
  CouplingF f;
  f.energy1 = setup.energy[0];
  f.energy2 = setup.energy[1];
  f.coupling = std::max(setup.energy[0], setup.energy[1]);
  f.mode = mode;
  return LoadingDensity(f,
                        CohesiveLaw1D::ppr_intrinsic(setup.alpha, setup.sigma, setup.lambda, setup.energy[0]),
                        CohesiveLaw1D::ppr_intrinsic(setup.alpha, setup.sigma, setup.lambda, setup.energy[1]));
}

LoadingPath case_path(const CaseSetup& setup, std::size_t samples) {
  const double t_end = 3.0 * std::numbers::pi / std::min(setup.b[0], setup.b[1]);
  return LoadingPath::uniform(setup.a, setup.b, t_end, samples);
}

CaseRun run_case(int n, std::size_t samples) {
  CaseRun run;
  run.setup = case_setup(n);
  run.path = case_path(run.setup, samples);
  run.potential = simulate_path(PotentialLaw(case_density(run.setup, CouplingMode::Potential)), run.path);
  run.nonpotential = simulate_path(TensionLaw(case_density(run.setup, CouplingMode::NonPotential)), run.path);
  return run;
}

std::vector<SampleRange> unloading_intervals(const PathTrace& trace, int l) {
  const auto k = static_cast<std::size_t>(l);
  std::vector<SampleRange> out;
  bool open = false;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const bool unl = trace.rows[i].y[k] < trace.rows[i].z[k];
    if (unl && !open) {
      out.push_back({i, i});
      open = true;
    } else if (unl) {
      out.back().last = i;
    } else {
      open = false;
    }
  }
  return out;
}

std::size_t first_unloading(const PathTrace& trace) {
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    if (r.y[0] < r.z[0] || r.y[1] < r.z[1]) return i;
  }
  return trace.rows.size();
}

OriginFit fit_through_origin(const PathTrace& trace, const SampleRange& range, int l) {
  const auto k = static_cast<std::size_t>(l);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = range.first; i <= range.last; ++i) {
    const TraceRow& r = trace.rows[i];
    sxy += r.y[k] * r.traction[k];
    sxx += r.y[k] * r.y[k];
  }
  OriginFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  for (std::size_t i = range.first; i <= range.last; ++i) {
    const TraceRow& r = trace.rows[i];
    fit.max_residual = std::max(fit.max_residual, std::abs(r.traction[k] - fit.slope * r.y[k]));
  }
  return fit;
}

void write_trace_csv(std::ostream& os, const PathTrace& trace) {
  os << "t,y1,y2,z1,z2,traction1,traction2,energy\n";
  for (const TraceRow& r : trace.rows) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t, r.y[0],
                      r.y[1], r.z[0], r.z[1], r.traction[0], r.traction[1], r.energy);
  }
}

}  // namespace cohesive
