#pragma once

// Pointwise loading/unloading path driver: y_i(t) = |a_i sin(b_i t)|, with
// the history z carried as a running max. Tractions are evaluated at the
// pre-update history, then z <- z v y.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohesive/mixedmode.hpp"

namespace cohesive {

struct LoadingPath {
  Vec2 a{1.0, 1.0};
  Vec2 b{1.0, 1.0};
  std::vector<double> t;  // strictly increasing

  Vec2 opening(double time) const;

  // n uniform samples on [0, t_end]. Throws InvalidParameter for n < 2 or
  // t_end <= 0.
  static LoadingPath uniform(Vec2 a, Vec2 b, double t_end, std::size_t n);
};

struct TraceRow {
  double t = 0.0;
  Vec2 y{};
  Vec2 z{};          // history after the update at this sample
  Vec2 traction{};   // grad_y Phi or T, at the pre-update history
  double energy = 0.0;  // Phi at the pre-update history; NaN for tension laws
};

struct PathTrace {
  std::string model;  // "potential" or "nonpotential"
  std::vector<TraceRow> rows;

  double peak_traction() const;
};

PathTrace simulate_path(const MixedModeLaw& law, const LoadingPath& path, Vec2 z0 = {0.0, 0.0});

struct CaseSetup {
  int number = 1;
  Vec2 a{};
  Vec2 b{};
  Vec2 energy{};  // delamination energies per direction
  double alpha = 2.0;
  double sigma = 2.0;
  double lambda = 0.2;
};

// Throws InvalidParameter outside 1..4.
CaseSetup case_setup(int n);

// PPR intrinsic densities with coupling c = max(E1, E2): c = E1 = E2 in
// the equal-energy cases, and the only admissible choice for the tension
// model in case 3 (the potential model then runs with a nonphysical c).
LoadingDensity case_density(const CaseSetup& setup, CouplingMode mode);

// Horizon 3 pi / min(b): loading, unloading and reloading in the slowest
// direction.
LoadingPath case_path(const CaseSetup& setup, std::size_t samples = 2000);

struct CaseRun {
  CaseSetup setup;
  LoadingPath path;
  PathTrace potential;
  PathTrace nonpotential;
};

CaseRun run_case(int n, std::size_t samples = 2000);

// Maximal runs of consecutive samples with y_l strictly below the history
// (unloading and the reloading that follows). Indices are inclusive.
struct SampleRange {
  std::size_t first = 0;
  std::size_t last = 0;
};
std::vector<SampleRange> unloading_intervals(const PathTrace& trace, int l);

// First sample where some y_l is below its pre-update history; rows.size()
// if the path never unloads.
std::size_t first_unloading(const PathTrace& trace);

// Least-squares line through the origin of (y_l, traction_l) on a range.
struct OriginFit {
  double slope = 0.0;
  double max_residual = 0.0;
};
OriginFit fit_through_origin(const PathTrace& trace, const SampleRange& range, int l);

void write_trace_csv(std::ostream& os, const PathTrace& trace);

}  // namespace cohesive
