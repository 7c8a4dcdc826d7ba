// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-10 each
// produce a CSV payload; criterion 11 reruns them and compares the bytes.
//
// usage: acceptance [CONFIG_DIR] [OUT_DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cohesive/config.hpp"
#include "cohesive/laminate.hpp"
#include "cohesive/laws1d.hpp"
#include "cohesive/mixedmode.hpp"
#include "cohesive/pathsim.hpp"
#include "cohesive/validate.hpp"

using namespace cohesive;
namespace fs = std::filesystem;

namespace {

fs::path g_configs = COHESIVE_CONFIG_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string csv;
};

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds, <= 0 for none
  std::function<Outcome()> run;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------- 1

// closed form of the PPR parameters, written out independently of the library
double ref_m(double alpha, double lambda) {
  return alpha * (alpha - 1.0) * lambda * lambda / (1.0 - alpha * lambda * lambda);
}
double ref_delta(double alpha, double sigma, double lambda, double energy) {
  const double m = ref_m(alpha, lambda);
  return energy / sigma * alpha * lambda * std::pow(1.0 - lambda, alpha - 1.0) * (alpha / m + 1.0) *
         std::pow(alpha / m * lambda + 1.0, m - 1.0);
}

Outcome ppr_pipeline() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const PprParameters p = ppr_parameters(2.0, 2.0, 0.2, 2.0);
  const double ext = ppr_extrinsic_opening(2.0, 2.0, 2.0);
  const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  const double ref = ref_delta(2.0, 2.0, 0.2, 2.0);
  const double m_err = std::abs(p.m - 2.0 / 23.0);
  const double d_err = std::abs(p.delta - ref) / ref;
  o.pass = m_err <= 1e-12 && d_err <= 1e-10 && ext == 2.0 && us < 1000.0;
  o.detail = fmt::format("m={:.17g} |m-2/23|={:.2e} delta={:.17g} rel.err={:.2e} extrinsic={} ({:.0f} us)", p.m,
                         m_err, p.delta, d_err, ext, us);
  o.csv = "m,delta,delta_ref,extrinsic\n" + fmt::format("{},{},{},{}\n", num(p.m), num(p.delta), num(ref), num(ext));
  return o;
}

// ---------------------------------------------------------------- 2

struct ConstructionStats {
  double fd = 0.0;          // relative
  double continuity = 0.0;  // relative
  double replacement = 0.0;
  std::size_t fd_points = 0;
};

ConstructionStats construction_stats(const LoadingDensity& pot, const LoadingDensity& ten, std::uint64_t seed) {
  ConstructionStats st;
  std::mt19937_64 rng(seed);
  const Vec2 op{pot.psi(0).effective_opening(), pot.psi(1).effective_opening()};
  // traction scale for the FD floor
  double peak = 0.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const Vec2 s = eval_s(ten, {1.5 * op[0] * i / 100, 1.5 * op[1] * j / 100});
      peak = std::max({peak, s[0], s[1]});
    }
  const auto near = [](double a, double b, double scale) { return std::abs(a - b) < 1e-3 * scale; };
  const auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
  for (int k = 0; k < 10000; ++k) {
    const Vec2 y{1.5 * op[0] * uniform01(rng), 1.5 * op[1] * uniform01(rng)};
    const Vec2 z{1.5 * op[0] * uniform01(rng), 1.5 * op[1] * uniform01(rng)};
    const Vec2 w = join(y, z);

    st.replacement = std::max(st.replacement, std::abs(eval_phi(pot, y, z) - eval_phi(pot, y, w)));
    const Vec2 t1 = eval_t(ten, y, z), t2 = eval_t(ten, y, w);
    st.replacement = std::max({st.replacement, std::abs(t1[0] - t2[0]), std::abs(t1[1] - t2[1])});

    bool interior = true;
    for (int i = 0; i < 2; ++i) {
      interior = interior && !near(y[i], z[i], op[i]) && !near(y[i], op[i], op[i]) && y[i] > 2e-3 * op[i];
    }
    if (interior) {
      const Vec2 g = grad_phi(pot, y, z);
      const double scale = std::max({std::abs(g[0]), std::abs(g[1]), 1e-3 * peak});
      for (int i = 0; i < 2; ++i) {
        const double h = 1e-6 * op[i];
        Vec2 a = y, b = y;
        a[i] += h;
        b[i] -= h;
        const double fd = (eval_phi(pot, a, z) - eval_phi(pot, b, z)) / (2 * h);
        st.fd = std::max(st.fd, std::abs(fd - g[i]) / scale);
      }
      ++st.fd_points;
    }

    // boundary points: y1 = z1 and y2 = z2
    for (int i = 0; i < 2; ++i) {
      Vec2 b = y;
      b[i] = z[i];
      if (z[i] <= 0.0) continue;
      const bool other_loading = b[1 - i] >= z[1 - i];
      Region lo, hi;
      if (i == 0) {
        lo = other_loading ? Region::R2 : Region::R4;
        hi = other_loading ? Region::R1 : Region::R3;
      } else {
        lo = other_loading ? Region::R3 : Region::R4;
        hi = other_loading ? Region::R1 : Region::R2;
      }
      if (lo == Region::R4 && (z[0] <= 0.0 || z[1] <= 0.0)) continue;
      st.continuity = std::max(st.continuity, rel(eval_phi_branch(pot, lo, b, z), eval_phi_branch(pot, hi, b, z)));
      const Vec2 ga = grad_phi_branch(pot, lo, b, z), gb = grad_phi_branch(pot, hi, b, z);
      const Vec2 ta = eval_t_branch(ten, lo, b, z), tb = eval_t_branch(ten, hi, b, z);
      for (int c = 0; c < 2; ++c) {
        st.continuity = std::max({st.continuity, rel(ga[c], gb[c]), rel(ta[c], tb[c])});
      }
    }
  }
  return st;
}

Outcome construction() {
  Outcome o;
  o.pass = true;
  o.csv = "case,fd_points,fd_rel,continuity_rel,replacement\n";
  double fd = 0, cont = 0, rep = 0;
  for (int n = 1; n <= 4; ++n) {
    const CaseSetup s = case_setup(n);
    const ConstructionStats st = construction_stats(case_density(s, CouplingMode::Potential),
                                                    case_density(s, CouplingMode::NonPotential), 1000 + n);
    o.csv += fmt::format("{},{},{},{},{}\n", n, st.fd_points, num(st.fd), num(st.continuity), num(st.replacement));
    fd = std::max(fd, st.fd);
    cont = std::max(cont, st.continuity);
    rep = std::max(rep, st.replacement);
  }
  o.pass = fd <= 1e-6 && cont <= 1e-10 && rep <= 1e-14;
  o.detail = fmt::format("max FD rel.err={:.2e} continuity={:.2e} replacement={:.2e} (4 cases x 1e4 points)", fd,
                         cont, rep);
  return o;
}

// ---------------------------------------------------------------- 3

double loading_peak(const LoadingDensity& psi) {
  const Vec2 op{psi.psi(0).effective_opening(), psi.psi(1).effective_opening()};
  double peak = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const Vec2 s = eval_s(psi, {1.5 * op[0] * i / 200, 1.5 * op[1] * j / 200});
      peak = std::max(peak, std::hypot(s[0], s[1]));
    }
  return peak;
}

Outcome dichotomy() {
  Outcome o;
  const auto ppr = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0);
  const LoadingDensity unc({2.0, 2.0, 0.0, CouplingMode::Potential}, ppr, ppr);
  const LoadingDensity cpl = case_density(case_setup(1), CouplingMode::Potential);
  const CheckReport a = check_gradient_consistency(TensionLaw(unc), PotentialLaw(unc));
  const CheckReport b = check_gradient_consistency(TensionLaw(cpl), PotentialLaw(cpl));
  const double peak = loading_peak(cpl);
  o.pass = a.violation <= 1e-10 && b.violation > 1e-4 * peak;
  o.detail = fmt::format("uncoupled gap={:.2e}, coupled gap={:.4g} = {:.3g} x peak stress {:.4g}", a.violation,
                         b.violation, b.violation / peak, peak);
  o.csv = "law,max_gap,peak\n" + fmt::format("uncoupled,{},{}\ncoupled,{},{}\n", num(a.violation),
                                             num(loading_peak(unc)), num(b.violation), num(peak));
  return o;
}

// ---------------------------------------------------------------- 4

// max |T_l - slope * y_l| on a range, slope from the last sample before it
double chord_deviation(const PathTrace& tr, const SampleRange& r, int l) {
  const TraceRow& turn = tr.rows[r.first - 1];
  const double slope = turn.traction[l] / turn.y[l];
  double dev = 0.0;
  for (std::size_t i = r.first; i <= r.last; ++i) {
    dev = std::max(dev, std::abs(tr.rows[i].traction[l] - slope * tr.rows[i].y[l]));
  }
  return dev;
}

Outcome case1_linearity() {
  Outcome o;
  const CaseRun run = run_case(1);
  const double peak_np = run.nonpotential.peak_traction();
  const double peak_p = run.potential.peak_traction();
  double np_res = 0.0, p_dev = 0.0;
  std::size_t branches = 0;
  o.csv = "model,direction,first,last,residual\n";
  for (int l = 0; l < 2; ++l) {
    for (const SampleRange& r : unloading_intervals(run.nonpotential, l)) {
      const OriginFit f = fit_through_origin(run.nonpotential, r, l);
      np_res = std::max(np_res, f.max_residual);
      o.csv += fmt::format("nonpotential,{},{},{},{}\n", l + 1, r.first, r.last, num(f.max_residual));
      ++branches;
    }
    for (const SampleRange& r : unloading_intervals(run.potential, l)) {
      const double d = chord_deviation(run.potential, r, l);
      p_dev = std::max(p_dev, d);
      o.csv += fmt::format("potential,{},{},{},{}\n", l + 1, r.first, r.last, num(d));
    }
  }
  o.pass = branches > 0 && np_res <= 1e-10 * peak_np && p_dev > 0.01 * peak_p;
  o.detail = fmt::format("non-potential fit residual={:.2e} x peak; potential chord deviation={:.4f} x peak",
                         np_res / peak_np, p_dev / peak_p);
  return o;
}

// ---------------------------------------------------------------- 5

Outcome case3_sign() {
  Outcome o;
  const CaseRun run = run_case(3);
  double p_min = INFINITY, np_min = INFINITY;
  std::size_t p_arg = 0;
  for (std::size_t i = 0; i < run.potential.rows.size(); ++i) {
    const Vec2& t = run.potential.rows[i].traction;
    if (std::min(t[0], t[1]) < p_min) {
      p_min = std::min(t[0], t[1]);
      p_arg = i;
    }
    const Vec2& s = run.nonpotential.rows[i].traction;
    np_min = std::min({np_min, s[0], s[1]});
  }
  const bool p_ok = p_min < 0.0, np_ok = np_min >= 0.0;
  o.pass = p_ok && np_ok;
  o.detail = fmt::format("potential min dPhi/dy={:.6g} at sample {} ({}), non-potential min T={:.6g} ({})", p_min,
                         p_arg, p_ok ? "negative" : "never negative", np_min, np_ok ? "ok" : "negative");
  o.csv = "model,min_traction,sample\n" +
          fmt::format("potential,{},{}\nnonpotential,{},\n", num(p_min), p_arg, num(np_min));
  return o;
}

// ---------------------------------------------------------------- 6

Outcome case4_frozen() {
  Outcome o;
  const CaseRun run = run_case(4);
  const LoadingDensity psi = case_density(run.setup, CouplingMode::Potential);
  const double peak = run.potential.peak_traction();
  double dev = 0.0;
  std::size_t samples = 0;
  o.csv = "first,last,deviation\n";
  for (const SampleRange& r : unloading_intervals(run.potential, 0)) {
    double d = 0.0;
    for (std::size_t i = r.first; i <= r.last; ++i) {
      const Vec2 y = run.potential.rows[i].y;
      const Vec2 z = run.potential.rows[i - 1].z;  // history seen by sample i
      const double g = grad_phi(psi, y, z)[0];
      // value at y1 = z1 with y2 frozen, scaled along the line through the origin
      const double chord = grad_phi(psi, {z[0], y[1]}, z)[0] * y[0] / z[0];
      d = std::max(d, std::abs(g - chord));
      ++samples;
    }
    dev = std::max(dev, d);
    o.csv += fmt::format("{},{},{}\n", r.first, r.last, num(d));
  }
  o.pass = samples > 0 && dev <= 1e-10 * peak;
  o.detail = fmt::format("{} y1-unloading samples, max deviation from the origin line={:.2e} x peak", samples,
                         dev / peak);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome first_loading() {
  Outcome o;
  o.pass = true;
  o.csv = "case,first_unloading,max_gap\n";
  std::string parts;
  for (int n = 1; n <= 4; ++n) {
    const CaseRun run = run_case(n);
    const std::size_t k = std::min(first_unloading(run.potential), first_unloading(run.nonpotential));
    double gap = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (int l = 0; l < 2; ++l) {
        gap = std::max(gap, std::abs(run.potential.rows[i].traction[l] - run.nonpotential.rows[i].traction[l]));
      }
    }
    o.pass = o.pass && k > 1 && gap <= 1e-10;
    o.csv += fmt::format("{},{},{}\n", n, k, num(gap));
    parts += fmt::format("{}case {}: {} samples gap {:.1e}", parts.empty() ? "" : "; ", n, k, gap);
  }
  o.detail = parts;
  return o;
}

// ---------------------------------------------------------------- 8

MixedModeLaw shipped(const std::string& name) { return make_law(load_law(g_configs / (name + ".law"))); }

Outcome validators() {
  Outcome o;
  o.pass = true;
  std::vector<std::string> notes;
  std::ostringstream csv;
  for (const char* name : {"case1_potential", "case1_nonpotential"}) {
    const auto reports = validate_law(shipped(name));
    write_reports_csv(csv, reports);
    const bool pot = std::string(name) == "case1_potential";
    std::vector<std::string> ids;
    if (pot) {
      for (int i = 1; i <= 6; ++i) ids.push_back("Psi" + std::to_string(i));
      for (int i = 1; i <= 9; ++i) ids.push_back("Phi" + std::to_string(i));
    } else {
      for (int i = 1; i <= 3; ++i) ids.push_back("S" + std::to_string(i));
      for (int i = 1; i <= 6; ++i) ids.push_back("T" + std::to_string(i));
    }
    int passed = 0;
    for (const auto& id : ids) {
      const CheckReport* r = find_report(reports, id);
      if (r && r->status == CheckStatus::Pass) {
        ++passed;
      } else {
        o.pass = false;
        notes.push_back(fmt::format("{} {} not passing", name, id));
      }
    }
    notes.push_back(fmt::format("{} {}/{}", name, passed, ids.size()));
  }
  struct Fixture {
    const char* law;
    const char* id;
    bool gradient;
  };
  const Fixture fixtures[] = {{"fail_ppr_slope", "psi1.psi_a", false}, {"fail_coupling", "Psi5", false},
                              {"case3_potential", "Phi6", false},      {"fail_tension", "S2", false},
                              {"fail_tension", "T6", false},           {"case1_potential", "GradT", true}};
  int hit = 0;
  for (const Fixture& f : fixtures) {
    const auto reports = validate_law(shipped(f.law), {}, f.gradient);
    const CheckReport* r = find_report(reports, f.id);
    const bool ok = r && r->status == CheckStatus::Fail && !r->location.empty();
    hit += ok;
    o.pass = o.pass && ok;
    csv << f.law << ',' << f.id << ',' << (ok ? "fail" : "missed") << '\n';
  }
  notes.push_back(fmt::format("fixtures failing their target {}/{}", hit, std::size(fixtures)));
  for (std::size_t i = 0; i < notes.size(); ++i) o.detail += (i ? ", " : "") + notes[i];
  o.csv = csv.str();
  return o;
}

// ---------------------------------------------------------------- 9

LaminateProblem stretch_problem(double tau, int nx = 16, int ny = 4) {
  LaminateProblem p = load_problem(g_configs / "stretch.problem");
  p.tau = tau;
  p.nx = nx;
  p.ny = ny;
  return p;
}

// sup |grad_y Phi| (1-norm) on a grid, for the smoothing slack
double phi_lipschitz(const LoadingDensity& psi) {
  const Vec2 op{psi.psi(0).effective_opening(), psi.psi(1).effective_opening()};
  double lip = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const Vec2 g = psi.eval({1.5 * op[0] * i / 200, 1.5 * op[1] * j / 200}).grad;
      lip = std::max(lip, std::abs(g[0]) + std::abs(g[1]));
    }
  return lip;
}

struct InequalityStats {
  double excess = -INFINITY;  // max_k F^k - F^{k-1} - dW^k - R^k - slack
  double remainder = 0.0;     // sum_k R^k
};

// Per step: F(t^k, u^k, gamma^k) <= F(t^{k-1}, u^{k-1}, gamma^{k-1}) + a(u^{k-1}, dl) + R^k
// with R^k = a(dl, dl) / 2, dl = l(t^k) - l(t^{k-1}), i.e. the work of the
// piecewise constant interpolant plus a remainder that is O(tau) in total.
InequalityStats energy_inequality(const LaminateModel& model, const Trajectory& tr, double slack) {
  InequalityStats st;
  for (std::size_t k = 1; k < tr.states.size(); ++k) {
    const auto& s = tr.states[k];
    const auto& prev = tr.states[k - 1];
    const Eigen::VectorXd dl = model.lift(s.t) - model.lift(prev.t);
    const double work = model.bilinear(prev.u, dl);
    const double rem = 0.5 * model.bilinear(dl, dl);
    st.remainder += rem;
    st.excess = std::max(st.excess, s.total - prev.total - work - rem - slack);
  }
  return st;
}

Outcome laminate_energetic() {
  Outcome o;
  const LaminateModel model(stretch_problem(0.05));
  const Trajectory tr = run_evolution(model, Scheme::Energetic);
  // |K - K_smoothed| <= |Omega| sup|grad Phi| eps, once for u^k and once for the lifted start
  const double eps = model.problem().solver.eps_reg * model.mesh().diameter;
  const double slack = 2.0 * model.mesh().measure * phi_lipschitz(density(model.law())) * eps;

  bool mono = true;
  double feas = 0.0;
  for (std::size_t k = 1; k < tr.states.size(); ++k) {
    const auto& s = tr.states[k];
    const auto& prev = tr.states[k - 1];
    const auto d = model.slips(s.u);
    for (std::size_t e = 0; e < d.size(); ++e) {
      for (int l = 0; l < 2; ++l) {
        mono = mono && s.gamma[e][l] >= prev.gamma[e][l];
        feas = std::max(feas, std::abs(d[e][l]) - s.gamma[e][l]);
      }
    }
  }
  const InequalityStats ineq = energy_inequality(model, tr, slack);

  std::vector<double> worst, rem;
  std::ostringstream csv;
  write_ledger_csv(csv, model, tr);
  bool conv = tr.converged;
  for (double tau : {0.05, 0.025, 0.0125}) {
    const LaminateModel m(stretch_problem(tau));
    const Trajectory t = run_evolution(m, Scheme::Energetic);
    double w = 0.0;
    for (const auto& s : t.states) w = std::max(w, s.balance_residual);
    const InequalityStats st = energy_inequality(m, t, slack);
    worst.push_back(w);
    rem.push_back(st.remainder);
    conv = conv && t.converged && st.excess <= 0.0;
    csv << "tau," << num(tau) << ",max_balance_residual," << num(w) << ",remainder," << num(st.remainder)
        << ",max_excess," << num(st.excess) << '\n';
  }
  const bool decreasing = worst[1] < worst[0] && worst[2] < worst[1];
  const bool vanishing = rem[1] < rem[0] && rem[2] < rem[1];
  o.pass = conv && tr.states.size() == 21 && mono && feas <= 1e-12 && ineq.excess <= 0.0 && decreasing && vanishing;
  o.detail = fmt::format(
      "20 steps, gamma monotone={}, max(g(delta)-gamma)={:.1e}, energy inequality max excess={:.2e} "
      "(slack {:.1e}), remainder {:.2e} -> {:.2e} -> {:.2e}, max balance residual {:.3e} -> {:.3e} -> {:.3e}",
      mono ? "yes" : "no", feas, ineq.excess + slack, slack, rem[0], rem[1], rem[2], worst[0], worst[1], worst[2]);
  o.csv = csv.str();
  return o;
}

// ---------------------------------------------------------------- 10

Outcome scheme_agreement() {
  Outcome o;
  const LaminateModel model(stretch_problem(0.05, 4, 4));
  const Trajectory en = run_evolution(model, Scheme::Energetic);
  const Trajectory eq = run_evolution(model, Scheme::Equilibrium);
  double gap = 0.0, res = 0.0;
  int iters = 0;
  std::ostringstream csv;
  csv << "t,rel_energy_norm_gap,picard_iterations,picard_residual\n";
  for (std::size_t k = 0; k < en.states.size(); ++k) {
    const auto& a = en.states[k];
    const auto& b = eq.states[k];
    const double norm = model.energy_norm(a.u);
    const double g = norm > 0.0 ? model.energy_norm(a.u - b.u) / norm : model.energy_norm(a.u - b.u);
    gap = std::max(gap, g);
    res = std::max(res, b.residual);
    iters = std::max(iters, b.iterations);
    csv << num(a.t) << ',' << num(g) << ',' << b.iterations << ',' << num(b.residual) << '\n';
  }
  o.pass = en.converged && eq.converged && model.mesh().tris.size() == 32 && gap <= 1e-6 && res <= 1e-8 &&
           iters <= 200;
  o.detail = fmt::format("{} elements, max relative energy-norm gap={:.2e}, Picard max residual={:.2e}, max {} "
                         "iterations per step",
                         model.mesh().tris.size(), gap, res, iters);
  o.csv = csv.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_configs = argv[1];
  const fs::path out = argc > 2 ? fs::path(argv[2]) : fs::path();

  const std::vector<Criterion> criteria = {
      {1, "PPR parameter pipeline", 0.001, ppr_pipeline},
      {2, "construction correctness", 5, construction},
      {3, "gradient dichotomy", 5, dichotomy},
      {4, "case 1 unloading linearity", 1, case1_linearity},
      {5, "case 3 sign of the traction", 1, case3_sign},
      {6, "case 4 frozen-y2 unloading", 1, case4_frozen},
      {7, "first-loading equivalence", 0, first_loading},
      {8, "hypothesis validators", 0, validators},
      {9, "laminate energetic scheme", 60, laminate_energetic},
      {10, "scheme cross-validation", 120, scheme_agreement},
  };

  int failed = 0;
  std::vector<std::string> first;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // criterion 1 times its own kernel; the others are timed whole
    const bool in_time = c.budget <= 0 || c.id == 1 || sec < c.budget;
    const bool pass = o.pass && in_time;
    failed += !pass;
    fmt::print("[{}] criterion {:>2} {}: {} ({:.3f} s{})\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, sec,
               in_time ? "" : fmt::format(", over the {} s budget", c.budget));
    std::fflush(stdout);
    first.push_back(o.csv);
    if (!out.empty()) {
      fs::create_directories(out);
      std::ofstream(out / fmt::format("criterion{:02}.csv", c.id)) << o.csv;
    }
  }

  std::size_t same = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception&) {
    }
    same += o.csv == first[i] && !o.csv.empty();
  }
  const bool det = same == criteria.size();
  failed += !det;
  fmt::print("[{}] criterion 11 determinism: {}/{} CSV outputs byte-identical on rerun\n", det ? "PASS" : "FAIL",
             same, criteria.size());
  fmt::print("{} of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
