#pragma once

// Sampling-based checkers for the structural hypotheses on cohesive laws.
//
// Every checker evaluates a condition of the form "violation <= tolerance"
// on a deterministic point set (log + linear tensor grids and a fixed-seed
// pseudo-random cloud) and reports the worst point. Reports are reproducible
// bit for bit for a given (law, grid).
//
// Hypothesis ids:
//   psi_*        one-dimensional densities
//   Psi1..Psi6   loading density
//   Phi1..Phi9   constructed potential
//   S1..S3, T1..T6  loading tension and non-potential tension
//   GradT        T versus grad_y Phi

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohesive/kernels.hpp"
#include "cohesive/laws1d.hpp"
#include "cohesive/mixedmode.hpp"

namespace cohesive {

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus s);

struct CheckReport {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::NotApplicable;
  // Largest violation found (condition holds where violation <= tolerance).
  // Negative values are slack: -violation is the smallest margin seen.
  double violation = 0.0;
  double tolerance = 0.0;
  // Witness point: y for 1-D checks, (y1, y2) or (y1, y2, z1, z2) otherwise.
  std::vector<double> location;
  std::string grid;
};

struct ValidationGrid {
  int points_1d = 1000;       // linear points for 1-D laws on [0, 10 * opening]
  int log_points_1d = 200;
  int axis_linear = 31;       // per-direction linear openings on [0, 1.5 * opening]
  int axis_log = 12;          // per-direction log openings up to 10 * opening
  int history_values = 7;     // per-direction history values (including 0)
  int random_points = 10000;
  std::uint64_t seed = 42;
  Exec exec = Exec::Parallel;

  std::string describe() const;
};

std::vector<CheckReport> check_psi1d(const CohesiveLaw1D& law, const ValidationGrid& grid = {});
std::vector<CheckReport> check_loading_density(const LoadingDensity& psi,
                                               const ValidationGrid& grid = {});
std::vector<CheckReport> check_constructed_potential(const PotentialLaw& law,
                                                     const ValidationGrid& grid = {});
std::vector<CheckReport> check_tension(const TensionLaw& law, const ValidationGrid& grid = {});

// Max |T - grad_y Phi| over the grid. Pass iff the gap is <= 1e-10 * (1 + peak
// stress). Throws IncompatibleLaws when the two laws use different densities.
CheckReport check_gradient_consistency(const TensionLaw& t_law, const PotentialLaw& phi_law,
                                       const ValidationGrid& grid = {});

// Everything that applies to the law: both 1-D densities, then the potential
// lists (potential mode) or the tension lists (non-potential mode).
std::vector<CheckReport> validate_law(const MixedModeLaw& law, const ValidationGrid& grid = {},
                                      bool gradient_consistency = false);

bool any_fail(const std::vector<CheckReport>& reports);
const CheckReport* find_report(const std::vector<CheckReport>& reports, const std::string& id);

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports);
void write_reports_json(std::ostream& os, const std::vector<CheckReport>& reports);

}  // namespace cohesive
