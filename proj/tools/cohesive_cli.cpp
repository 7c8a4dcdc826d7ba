// cohesive: evaluate, validate and simulate mixed-mode cohesive laws.
//
// exit codes: 0 ok, 1 validation failure, 2 solver did not converge,
// 64 usage or configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cohesive/config.hpp"
#include "cohesive/errors.hpp"
#include "cohesive/laminate.hpp"
#include "cohesive/pathsim.hpp"
#include "cohesive/svg.hpp"
#include "cohesive/validate.hpp"

namespace fs = std::filesystem;
using namespace cohesive;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitNoConv = 2;
constexpr int kExitUsage = 64;

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError(fmt::format("cannot write '{}'", p.string()));
  return os;
}

int cmd_eval(const std::string& law_path, const std::vector<double>& y, const std::vector<double>& z) {
  const MixedModeLaw law = make_law(load_law(law_path));
  const Vec2 yy{y[0], y[1]};
  const Vec2 zz{z[0], z[1]};
  const Vec2 t = traction(law, yy, zz);
  const double phi = is_potential(law) ? eval_phi(density(law), yy, zz) : std::numeric_limits<double>::quiet_NaN();
  std::cout << fmt::format("region={} phi={:.17g} t1={:.17g} t2={:.17g}\n", to_string(classify_region(yy, zz)), phi,
                           t[0], t[1]);
  return 0;
}

int cmd_validate(const std::string& law_path, const std::string& format, const std::string& out, bool grad_t,
                 int random_points) {
  const MixedModeLaw law = make_law(load_law(law_path));
  ValidationGrid grid;
  grid.random_points = random_points;
  const auto reports = validate_law(law, grid, grad_t);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  if (format == "json") {
    write_reports_json(*os, reports);
  } else {
    write_reports_csv(*os, reports);
  }
  return any_fail(reports) ? kExitFail : 0;
}

void write_case(const PathTrace& trace, const fs::path& dir) {
  {
    auto os = open_out(dir / fmt::format("trace_{}.csv", trace.model));
    write_trace_csv(os, trace);
  }
  auto os = open_out(dir / fmt::format("trace_{}.svg", trace.model));
  write_svg(os, trace_panels(trace));
}

int cmd_case(int n, const std::string& model, std::size_t samples, const fs::path& out) {
  fs::create_directories(out);
  const CaseSetup setup = case_setup(n);
  const LoadingPath path = case_path(setup, samples);
  if (model == "potential" || model == "both") {
    write_case(simulate_path(PotentialLaw(case_density(setup, CouplingMode::Potential)), path), out);
  }
  if (model == "nonpotential" || model == "both") {
    write_case(simulate_path(TensionLaw(case_density(setup, CouplingMode::NonPotential)), path), out);
  }
  return 0;
}

int cmd_laminate(const fs::path& problem_path, const fs::path& out, const std::string& scheme, bool fields) {
  LaminateProblem p = load_problem(problem_path);
  if (scheme == "energetic") p.scheme = Scheme::Energetic;
  if (scheme == "equilibrium") p.scheme = Scheme::Equilibrium;
  const LaminateModel model(p);
  const Trajectory traj = run_evolution(model, p.scheme);
  fs::create_directories(out);
  {
    auto os = open_out(out / "ledger.csv");
    write_ledger_csv(os, model, traj);
  }
  if (fields) {
    auto os = open_out(out / "fields_final.csv");
    write_fields_csv(os, model, traj.states.back());
  }
  if (!traj.converged) {
    std::cerr << "laminate: some steps did not reach the solver tolerance (see the converged column)\n";
    return kExitNoConv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-mode cohesive laws: evaluation, hypothesis checks, loading paths and laminates"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::string law_path;
  std::vector<double> y{0.0, 0.0}, z{0.0, 0.0};
  auto* eval = app.add_subcommand("eval", "Evaluate Phi and the traction at one (y, z)");
  eval->add_option("--law", law_path, "Law config file")->required()->check(CLI::ExistingFile);
  eval->add_option("--y", y, "Opening y1 y2")->expected(2);
  eval->add_option("--z", z, "History z1 z2")->expected(2);

  std::string v_law, format = "csv", v_out;
  bool grad_t = false;
  int random_points = ValidationGrid{}.random_points;
  auto* validate = app.add_subcommand("validate", "Check the structural hypotheses of a law on the standard grid");
  validate->add_option("law", v_law, "Law config file")->required()->check(CLI::ExistingFile);
  validate->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  validate->add_option("--out", v_out, "Report file (default: stdout)");
  validate->add_flag("--gradient-consistency", grad_t, "Also compare T with grad_y Phi");
  validate->add_option("--random-points", random_points, "Random (y, z) samples")->check(CLI::PositiveNumber);

  int case_n = 1;
  std::string model = "both";
  std::size_t samples = 2000;
  std::string case_out;
  auto* cs = app.add_subcommand("case", "Run one of the four sinusoidal loading-path cases");
  cs->add_option("n", case_n, "Case number")->required()->check(CLI::Range(1, 4));
  cs->add_option("--model", model, "Model")->check(CLI::IsMember({"potential", "nonpotential", "both"}));
  cs->add_option("--samples", samples, "Time samples")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  cs->add_option("--out", case_out, "Output directory")->required();

  std::string problem, lam_out, scheme = "config";
  bool fields = false;
  auto* lam = app.add_subcommand("laminate", "Quasistatic evolution of the two-layer laminate");
  lam->add_option("problem", problem, "Problem config file")->required()->check(CLI::ExistingFile);
  lam->add_option("--out", lam_out, "Output directory")->required();
  lam->add_option("--scheme", scheme, "Override the scheme of the problem file")
      ->check(CLI::IsMember({"config", "energetic", "equilibrium"}));
  lam->add_flag("--fields", fields, "Write nodal displacements of the final step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(law_path, y, z);
    if (*validate) return cmd_validate(v_law, format, v_out, grad_t, random_points);
    if (*cs) return cmd_case(case_n, model, samples, case_out);
    if (*lam) return cmd_laminate(problem, lam_out, scheme, fields);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConv;
  } catch (const FixedPointStall& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConv;
  } catch (const CohesiveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
