#include "cohesive/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "cohesive/errors.hpp"

namespace cohesive {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSignTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr double kContinuityTol = 1e-10;
constexpr double kDecayTol = 1e-6;
constexpr double kFdTol = 1e-6;
constexpr double kFdStep = 1e-5;

double finite_or_inf(double x) { return std::isnan(x) ? kInf : x; }

bool all_finite(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// Uniform [0, 1) from the raw 64-bit stream; independent of the standard
// library's distribution implementation.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 0) return v;
  if (n == 1) return {lo};
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  if (n <= 0) return v;
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) v.push_back(std::exp(a + (b - a) * (n == 1 ? 0.0 : double(i) / (n - 1))));
  return v;
}

// Openings along one direction: dense where the law is active, log-spaced
// out to the far field.
std::vector<double> opening_axis(const CohesiveLaw1D& law, const ValidationGrid& g) {
  const double op = law.effective_opening();
  std::vector<double> v = linspace(0.0, 1.5 * op, g.axis_linear);
  for (double x : logspace(1e-4 * op, 10.0 * op, g.axis_log)) v.push_back(x);
  return sorted_unique(std::move(v));
}

std::vector<double> history_axis(const CohesiveLaw1D& law, const ValidationGrid& g) {
  const double op = law.effective_opening();
  std::vector<double> v{0.0};
  for (int k = 1; k < g.history_values; ++k) v.push_back(1.2 * op * k / (g.history_values - 1));
  return v;
}

struct PointCloud {
  std::vector<Vec2> y;
  std::vector<Vec2> z;  // empty for pure opening clouds
  std::size_t size() const { return y.size(); }
};

PointCloud opening_cloud(const LoadingDensity& psi, const ValidationGrid& g) {
  PointCloud c;
  const auto a1 = opening_axis(psi.psi(0), g);
  const auto a2 = opening_axis(psi.psi(1), g);
  for (double u : a1) {
    for (double v : a2) c.y.push_back({u, v});
  }
  std::mt19937_64 rng(g.seed);
  const double s1 = 1.5 * psi.psi(0).effective_opening();
  const double s2 = 1.5 * psi.psi(1).effective_opening();
  for (int i = 0; i < g.random_points; ++i) {
    const double u = s1 * unit_draw(rng);
    const double v = s2 * unit_draw(rng);
    c.y.push_back({u, v});
  }
  return c;
}

PointCloud history_cloud(const LoadingDensity& psi, const ValidationGrid& g) {
  PointCloud c;
  const auto a1 = opening_axis(psi.psi(0), g);
  const auto a2 = opening_axis(psi.psi(1), g);
  const auto h1 = history_axis(psi.psi(0), g);
  const auto h2 = history_axis(psi.psi(1), g);
  for (double z1 : h1) {
    for (double z2 : h2) {
      for (double u : a1) {
        for (double v : a2) {
          c.y.push_back({u, v});
          c.z.push_back({z1, z2});
        }
      }
    }
  }
  std::mt19937_64 rng(g.seed + 1);
  const double o1 = psi.psi(0).effective_opening();
  const double o2 = psi.psi(1).effective_opening();
  for (int i = 0; i < g.random_points; ++i) {
    const double y1 = 1.5 * o1 * unit_draw(rng);
    const double y2 = 1.5 * o2 * unit_draw(rng);
    const double z1 = 1.2 * o1 * unit_draw(rng);
    const double z2 = 1.2 * o2 * unit_draw(rng);
    c.y.push_back({y1, y2});
    c.z.push_back({z1, z2});
  }
  return c;
}

// Far-field openings: one component pinned at 10x the opening.
PointCloud far_cloud(const LoadingDensity& psi, const ValidationGrid& g, bool with_history) {
  PointCloud c;
  const auto a1 = opening_axis(psi.psi(0), g);
  const auto a2 = opening_axis(psi.psi(1), g);
  const double r1 = 10.0 * psi.psi(0).effective_opening();
  const double r2 = 10.0 * psi.psi(1).effective_opening();
  std::vector<Vec2> hist{{0.0, 0.0}};
  if (with_history) {
    hist.clear();
    for (double z1 : history_axis(psi.psi(0), g)) {
      for (double z2 : history_axis(psi.psi(1), g)) hist.push_back({z1, z2});
    }
  }
  for (const Vec2& z : hist) {
    for (double v : a2) {
      c.y.push_back({r1, v});
      c.z.push_back(z);
    }
    for (double u : a1) {
      c.y.push_back({u, r2});
      c.z.push_back(z);
    }
  }
  return c;
}

template <class Violation, class Locate>
CheckReport sweep(std::string id, std::string description, std::size_t n, double tolerance,
                  const ValidationGrid& grid, Violation&& violation, Locate&& locate) {
  CheckReport r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.tolerance = tolerance;
  r.grid = grid.describe();
  if (n == 0) {
    r.status = CheckStatus::NotApplicable;
    return r;
  }
  std::vector<double> v(n);
  parallel_for(n, grid.exec, [&](std::size_t i) { v[i] = finite_or_inf(violation(i)); });
  const std::size_t k = argmax(v);
  r.violation = v[k];
  r.location = locate(k);
  r.status = v[k] <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

CheckReport not_applicable(std::string id, std::string description, const ValidationGrid& g) {
  CheckReport r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.status = CheckStatus::NotApplicable;
  r.grid = g.describe();
  return r;
}

// Several sub-probes of one hypothesis. The reported numbers come from the
// worst sub-probe relative to its own tolerance.
CheckReport merge(std::string id, std::string description, std::vector<CheckReport> parts) {
  CheckReport best = parts.front();
  auto ratio = [](const CheckReport& r) {
    if (r.status == CheckStatus::NotApplicable) return -kInf;
    return r.tolerance > 0.0 ? r.violation / r.tolerance : r.violation;
  };
  for (const CheckReport& p : parts) {
    if (ratio(p) > ratio(best)) best = p;
  }
  bool fail = false;
  bool any = false;
  for (const CheckReport& p : parts) {
    fail = fail || p.status == CheckStatus::Fail;
    any = any || p.status != CheckStatus::NotApplicable;
  }
  best.id = std::move(id);
  best.description = std::move(description);
  best.status = fail ? CheckStatus::Fail : (any ? CheckStatus::Pass : CheckStatus::NotApplicable);
  return best;
}

std::vector<double> loc(const Vec2& y) { return {y[0], y[1]}; }
std::vector<double> loc(const Vec2& y, const Vec2& z) { return {y[0], y[1], z[0], z[1]}; }

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

double peak_stress(const LoadingDensity& psi, const PointCloud& ys, Exec exec) {
  std::vector<double> v(ys.size());
  parallel_for(ys.size(), exec, [&](std::size_t i) { v[i] = finite_or_inf(norm(psi.eval(ys.y[i]).grad)); });
  return v.empty() ? 0.0 : v[argmax(v)];
}

Vec2 with(const Vec2& y, int l, double value) {
  Vec2 out = y;
  out[static_cast<std::size_t>(l)] = value;
  return out;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

std::string ValidationGrid::describe() const {
  return fmt::format("1d={}+{}log axis={}+{}log hist={} random={} seed={}", points_1d,
                     log_points_1d, axis_linear, axis_log, history_values, random_points, seed);
}

// ---------------------------------------------------------------------------
// One-dimensional densities

std::vector<CheckReport> check_psi1d(const CohesiveLaw1D& law, const ValidationGrid& g) {
  const double op = law.effective_opening();
  std::vector<double> ys = linspace(0.0, 10.0 * op, g.points_1d);
  for (double x : logspace(1e-6 * op, 10.0 * op, g.log_points_1d)) ys.push_back(x);
  ys = sorted_unique(std::move(ys));
  const std::size_t n = ys.size();

  std::vector<LawEval> ev(n);
  parallel_for(n, g.exec, [&](std::size_t i) { ev[i] = law.eval(ys[i]); });
  auto at = [&](std::size_t i) { return std::vector<double>{ys[i]}; };

  double lip = 0.0;
  double curv_max = 0.0;
  double ypsi_max = 0.0;
  for (const LawEval& e : ev) {
    lip = std::max(lip, std::abs(e.slope));
    curv_max = std::max(curv_max, std::abs(e.curv));
  }
  for (std::size_t i = 0; i < n; ++i) ypsi_max = std::max(ypsi_max, ys[i] * ev[i].slope);

  std::vector<CheckReport> out;
  out.push_back(sweep("psi_origin", "psi(0) = 0", 1, kExactTol, g,
                      [&](std::size_t) { return std::abs(law.eval(0.0).value); },
                      [](std::size_t) { return std::vector<double>{0.0}; }));
  out.push_back(sweep("psi_nonneg", "psi >= 0", n, kSignTol, g,
                      [&](std::size_t i) { return -ev[i].value; }, at));
  out.push_back(sweep("psi_bounded", "psi <= 1 (normalised)", n, kSignTol, g,
                      [&](std::size_t i) { return ev[i].value - 1.0; }, at));
  out.push_back(sweep("psi_monotone", "psi' >= 0", n, kSignTol * (1.0 + lip), g,
                      [&](std::size_t i) { return -ev[i].slope; }, at));
  out.push_back(sweep("psi_a", "psi' - y psi'' >= 0", n, kSignTol * (1.0 + lip), g,
                      [&](std::size_t i) { return -(ev[i].slope - ys[i] * ev[i].curv); }, at));
  // Bounded y psi': the grid maximum must be finite and the far end of the
  // grid must have decayed relative to it.
  out.push_back(sweep("psi_b", "sup y psi' < inf", 1, kDecayTol * (1.0 + ypsi_max), g,
                      [&](std::size_t) {
                        return std::isfinite(ypsi_max) ? ys.back() * ev.back().slope : kInf;
                      },
                      [&](std::size_t) { return std::vector<double>{ys.back()}; }));
  const double zbar = law.concavity_threshold();
  out.push_back(sweep("psi_concave", "psi'' <= 0 beyond the elastic threshold", n,
                      kSignTol * (1.0 + curv_max), g,
                      [&](std::size_t i) { return ys[i] >= zbar ? ev[i].curv : -kInf; }, at));

  // Finite differences away from kink points.
  std::vector<double> kinks{0.0, zbar};
  if (std::isfinite(law.opening())) kinks.push_back(law.opening());
  auto near_kink = [&](double y) {
    return std::any_of(kinks.begin(), kinks.end(),
                       [&](double k) { return std::abs(y - k) <= 2.0 * kFdStep; });
  };
  out.push_back(sweep(
      "psi_fd", "psi' and psi'' match central differences", n, kFdTol, g,
      [&](std::size_t i) {
        const double y = ys[i];
        if (near_kink(y)) return -kInf;
        const LawEval p = law.eval(y + kFdStep);
        const LawEval m = law.eval(y - kFdStep);
        const double d1 = (p.value - m.value) / (2.0 * kFdStep);
        const double d2 = (p.slope - m.slope) / (2.0 * kFdStep);
        return std::max(std::abs(ev[i].slope - d1) / (1.0 + std::abs(ev[i].slope)),
                        std::abs(ev[i].curv - d2) / (1.0 + std::abs(ev[i].curv)));
      },
      at));

  if (const auto* p = std::get_if<CohesiveLaw1D::PprIntrinsic>(&law.params())) {
    const double bound = 1.0 / std::sqrt(2.0 * p->alpha - 1.0);
    out.push_back(sweep("ppr_slope_bound", "lambda <= 1/sqrt(2 alpha - 1)", 1, 0.0, g,
                        [&](std::size_t) { return p->lambda - bound; },
                        [&](std::size_t) { return std::vector<double>{p->lambda}; }));
  } else {
    out.push_back(not_applicable("ppr_slope_bound", "lambda <= 1/sqrt(2 alpha - 1)", g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Loading density

std::vector<CheckReport> check_loading_density(const LoadingDensity& psi, const ValidationGrid& g) {
  const PointCloud ys = opening_cloud(psi, g);
  const std::size_t n = ys.size();
  std::vector<PsiEval> ev(n);
  parallel_for(n, g.exec, [&](std::size_t i) { ev[i] = psi.eval(ys.y[i]); });
  auto at = [&](std::size_t i) { return loc(ys.y[i]); };

  double peak = 0.0;
  for (const PsiEval& e : ev) peak = std::max(peak, norm(e.grad));
  const double stress_tol = kSignTol * (1.0 + peak);
  const double zbar1 = psi.psi(0).concavity_threshold();
  const double zbar2 = psi.psi(1).concavity_threshold();

  std::vector<CheckReport> out;
  out.push_back(sweep("Psi1", "Psi(0,0) = 0", 1, kExactTol, g,
                      [&](std::size_t) { return std::abs(psi.eval({0.0, 0.0}).value); },
                      [](std::size_t) { return std::vector<double>{0.0, 0.0}; }));
  out.push_back(sweep("Psi2", "Psi nonnegative, bounded, Lipschitz (finite samples)", n,
                      kSignTol * (1.0 + psi.sup_value()), g,
                      [&](std::size_t i) {
                        const PsiEval& e = ev[i];
                        if (!all_finite({e.value, e.grad[0], e.grad[1], e.d12, e.diag[0], e.diag[1]})) {
                          return kInf;
                        }
                        return std::max(-e.value, e.value - psi.sup_value());
                      },
                      at));
  out.push_back(sweep("Psi3", "d_i Psi >= y_i d_ii Psi v 0 and d12 Psi <= y_i d_iij Psi ^ 0", n,
                      stress_tol, g,
                      [&](std::size_t i) {
                        const PsiEval& e = ev[i];
                        const Vec2& y = ys.y[i];
                        double v = -kInf;
                        for (int k = 0; k < 2; ++k) {
                          const auto kk = static_cast<std::size_t>(k);
                          v = std::max(v, std::max(y[kk] * e.diag[kk], 0.0) - e.grad[kk]);
                          v = std::max(v, e.d12 - std::min(y[kk] * e.third[kk], 0.0));
                        }
                        return v;
                      },
                      at));

  // Psi4 bound from one-dimensional sups.
  double bound = 0.0;
  {
    double sup_s[2] = {0.0, 0.0};
    double sup_ys[2] = {0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
      const CohesiveLaw1D& law = psi.psi(k);
      const double op = law.effective_opening();
      for (double y : linspace(0.0, 10.0 * op, 20 * g.points_1d)) {
        const LawEval e = law.eval(y);
        sup_s[k] = std::max(sup_s[k], e.slope);
        sup_ys[k] = std::max(sup_ys[k], y * e.slope);
      }
    }
    bound = std::abs(psi.coupling().d12()) * (sup_s[1] * sup_ys[0] + sup_s[0] * sup_ys[1]);
  }
  out.push_back(sweep("Psi4", "sup (y1 + y2)|d12 Psi| finite (against chain-rule bound)", n,
                      kSignTol * (1.0 + bound), g,
                      [&](std::size_t i) {
                        const Vec2& y = ys.y[i];
                        return (y[0] + y[1]) * std::abs(ev[i].d12) - bound;
                      },
                      at));

  const PointCloud far = far_cloud(psi, g, false);
  out.push_back(sweep("Psi5", "grad Psi and d12 Psi vanish at infinity", far.size(),
                      kDecayTol * (1.0 + peak), g,
                      [&](std::size_t i) {
                        const PsiEval e = psi.eval(far.y[i]);
                        return std::max(norm(e.grad), std::abs(e.d12));
                      },
                      [&](std::size_t i) { return loc(far.y[i]); }));
  out.push_back(sweep("Psi6", "2 d_ii Psi <= y_j d_iij Psi ^ 0 beyond the elastic threshold", n,
                      stress_tol, g,
                      [&](std::size_t i) {
                        const PsiEval& e = ev[i];
                        const Vec2& y = ys.y[i];
                        double v = -kInf;
                        if (y[0] >= zbar1) v = std::max(v, 2.0 * e.diag[0] - std::min(y[1] * e.third[0], 0.0));
                        if (y[1] >= zbar2) v = std::max(v, 2.0 * e.diag[1] - std::min(y[0] * e.third[1], 0.0));
                        return v;
                      },
                      at));
  return out;
}

// ---------------------------------------------------------------------------
// Constructed potential

std::vector<CheckReport> check_constructed_potential(const PotentialLaw& law, const ValidationGrid& g) {
  const LoadingDensity& psi = law.density();
  const PointCloud pts = history_cloud(psi, g);
  const std::size_t n = pts.size();
  const LawSamples s = evaluate_batch(psi, pts.y, pts.z, g.exec);
  auto at = [&](std::size_t i) { return loc(pts.y[i], pts.z[i]); };

  const double peak = peak_stress(psi, opening_cloud(psi, g), g.exec);
  const double sup_psi = psi.sup_value();
  const double energy_scale = 1.0 + sup_psi;
  const double stress_tol = kSignTol * (1.0 + peak);
  const Vec2 zbar{psi.psi(0).concavity_threshold(), psi.psi(1).concavity_threshold()};
  const Vec2 op{psi.psi(0).effective_opening(), psi.psi(1).effective_opening()};

  std::vector<CheckReport> out;
  out.push_back(sweep("Phi1", "Phi(0,0,0,0) = 0", 1, kExactTol, g,
                      [&](std::size_t) { return std::abs(eval_phi(psi, {0.0, 0.0}, {0.0, 0.0})); },
                      [](std::size_t) { return std::vector<double>{0.0, 0.0, 0.0, 0.0}; }));

  {
    CheckReport bounds = sweep("Phi2", "0 <= Phi <= sup Psi", n, kSignTol * energy_scale, g,
                               [&](std::size_t i) { return std::max(-s.phi[i], s.phi[i] - sup_psi); }, at);
    // Continuity: both branch formulas on each region boundary.
    CheckReport cont = sweep(
        "Phi2", "Phi continuous across region boundaries", n, kContinuityTol * energy_scale, g,
        [&](std::size_t i) {
          const Vec2& z = pts.z[i];
          const Vec2& y = pts.y[i];
          double v = 0.0;
          if (z[0] > 0.0) {
            const Vec2 b = with(y, 0, z[0]);
            const Region loadr = b[1] >= z[1] ? Region::R1 : Region::R3;
            const Region unl = b[1] >= z[1] ? Region::R2 : Region::R4;
            v = std::max(v, std::abs(eval_phi_branch(psi, loadr, b, z) - eval_phi_branch(psi, unl, b, z)));
          }
          if (z[1] > 0.0) {
            const Vec2 b = with(y, 1, z[1]);
            const Region loadr = b[0] >= z[0] ? Region::R1 : Region::R2;
            const Region unl = b[0] >= z[0] ? Region::R3 : Region::R4;
            v = std::max(v, std::abs(eval_phi_branch(psi, loadr, b, z) - eval_phi_branch(psi, unl, b, z)));
          }
          return v;
        },
        at);
    out.push_back(merge("Phi2", "Phi bounded and continuous", {bounds, cont}));
  }

  out.push_back(sweep("Phi3", "y -> Phi Lipschitz uniformly in z (finite gradient samples)", n, 0.0, g,
                      [&](std::size_t i) {
                        return all_finite({s.grad_phi[i][0], s.grad_phi[i][1]}) ? 0.0 : kInf;
                      },
                      at));
  out.push_back(sweep("Phi4", "Phi(y, z) = Phi(y, y v z)", n, kExactTol * energy_scale, g,
                      [&](std::size_t i) {
                        return std::abs(s.phi[i] - eval_phi(psi, pts.y[i], join(pts.y[i], pts.z[i])));
                      },
                      at));
  out.push_back(sweep("Phi5", "z -> Phi nondecreasing (grad_z Phi >= 0)", n, stress_tol, g,
                      [&](std::size_t i) { return -std::min(s.dz_phi[i][0], s.dz_phi[i][1]); }, at));
  out.push_back(sweep("Phi6", "y_l -> Phi nondecreasing (grad_y Phi >= 0)", n, stress_tol, g,
                      [&](std::size_t i) { return -std::min(s.grad_phi[i][0], s.grad_phi[i][1]); }, at));

  {
    // Unloading: second differences on {0, z/4, z/2, 3z/4} equal and >= 0.
    CheckReport quad = sweep(
        "Phi7", "quadratic and convex in the unloading zone", n, kExactTol * energy_scale, g,
        [&](std::size_t i) {
          const Vec2& y = pts.y[i];
          const Vec2& z = pts.z[i];
          double v = -kInf;
          for (int l = 0; l < 2; ++l) {
            const double zl = z[static_cast<std::size_t>(l)];
            if (!(zl > 0.0)) continue;
            double f[4];
            for (int k = 0; k < 4; ++k) f[k] = eval_phi(psi, with(y, l, zl * k / 4.0), z);
            const double c1 = f[0] - 2.0 * f[1] + f[2];
            const double c2 = f[1] - 2.0 * f[2] + f[3];
            v = std::max({v, std::abs(c1 - c2), -c1, -c2});
          }
          return v;
        },
        at);
    // Loading beyond the elastic threshold: second difference <= 0.
    CheckReport conc = sweep(
        "Phi7", "concave in the loading zone", n, kSignTol * (1.0 + peak), g,
        [&](std::size_t i) {
          const Vec2& y = pts.y[i];
          const Vec2& z = pts.z[i];
          double v = -kInf;
          for (int l = 0; l < 2; ++l) {
            const auto ll = static_cast<std::size_t>(l);
            const double h = 1e-2 * op[ll];
            if (y[ll] < std::max(z[ll], zbar[ll]) + h) continue;
            const double d2 = eval_phi(psi, with(y, l, y[ll] + h), z) - 2.0 * eval_phi(psi, y, z) +
                              eval_phi(psi, with(y, l, y[ll] - h), z);
            v = std::max(v, d2 / (h * h));
          }
          return v;
        },
        at);
    out.push_back(merge("Phi7", "convex quadratic when unloading, concave when loading", {quad, conc}));
  }

  out.push_back(sweep("Phi8", "y_j -> d_{y_l} Phi nonincreasing (d_{y1 y2} Phi <= 0)", n, stress_tol, g,
                      [&](std::size_t i) { return hess_phi(psi, pts.y[i], pts.z[i])[1]; }, at));

  const PointCloud far = far_cloud(psi, g, true);
  out.push_back(sweep("Phi9", "|grad_y Phi| -> 0 as |y| -> inf", far.size(), kDecayTol * (1.0 + peak), g,
                      [&](std::size_t i) { return norm(grad_phi(psi, far.y[i], far.z[i])); },
                      [&](std::size_t i) { return loc(far.y[i], far.z[i]); }));
  return out;
}

// ---------------------------------------------------------------------------
// Loading tension and non-potential tension

std::vector<CheckReport> check_tension(const TensionLaw& law, const ValidationGrid& g) {
  const LoadingDensity& psi = law.density();
  const PointCloud ys = opening_cloud(psi, g);
  const PointCloud pts = history_cloud(psi, g);
  const Vec2 zbar{psi.psi(0).concavity_threshold(), psi.psi(1).concavity_threshold()};
  const Vec2 op{psi.psi(0).effective_opening(), psi.psi(1).effective_opening()};

  std::vector<Vec2> sv(ys.size());
  parallel_for(ys.size(), g.exec, [&](std::size_t i) { sv[i] = eval_s(psi, ys.y[i]); });
  double peak = 0.0;
  for (const Vec2& v : sv) peak = std::max(peak, norm(v));
  const double tol = kSignTol * (1.0 + peak);
  auto at_y = [&](std::size_t i) { return loc(ys.y[i]); };
  auto at = [&](std::size_t i) { return loc(pts.y[i], pts.z[i]); };

  std::vector<CheckReport> out;
  out.push_back(sweep("S1", "S continuous and bounded (finite samples)", ys.size(), 0.0, g,
                      [&](std::size_t i) { return all_finite({sv[i][0], sv[i][1]}) ? 0.0 : kInf; }, at_y));
  {
    CheckReport sign = sweep("S2", "S >= 0", ys.size(), tol, g,
                             [&](std::size_t i) { return -std::min(sv[i][0], sv[i][1]); }, at_y);
    const PointCloud far = far_cloud(psi, g, false);
    CheckReport decay = sweep("S2", "S vanishes at infinity", far.size(), kDecayTol * (1.0 + peak), g,
                              [&](std::size_t i) { return norm(eval_s(psi, far.y[i])); },
                              [&](std::size_t i) { return loc(far.y[i]); });
    out.push_back(merge("S2", "S valued in [0, inf)^2 and vanishing at infinity", {sign, decay}));
  }
  out.push_back(sweep("S3", "S_i nonincreasing in each component", ys.size(), tol, g,
                      [&](std::size_t i) {
                        const Vec2& y = ys.y[i];
                        double v = -kInf;
                        for (int j = 0; j < 2; ++j) {
                          const auto jj = static_cast<std::size_t>(j);
                          const Vec2 s2 = eval_s(psi, with(y, j, y[jj] + 1e-3 * op[jj]));
                          for (int l = 0; l < 2; ++l) {
                            const auto ll = static_cast<std::size_t>(l);
                            if (l == j && y[ll] < zbar[ll]) continue;
                            v = std::max(v, s2[ll] - sv[i][ll]);
                          }
                        }
                        return v;
                      },
                      at_y));

  const std::size_t n = pts.size();
  std::vector<Vec2> tv(n);
  parallel_for(n, g.exec, [&](std::size_t i) { tv[i] = eval_t(psi, pts.y[i], pts.z[i]); });

  {
    CheckReport fin = sweep("T1", "T bounded (finite samples)", n, 0.0, g,
                            [&](std::size_t i) { return all_finite({tv[i][0], tv[i][1]}) ? 0.0 : kInf; }, at);
    CheckReport cont = sweep(
        "T1", "T continuous across region boundaries", n, kContinuityTol * (1.0 + peak), g,
        [&](std::size_t i) {
          const Vec2& z = pts.z[i];
          const Vec2& y = pts.y[i];
          double v = 0.0;
          if (z[0] > 0.0) {
            const Vec2 b = with(y, 0, z[0]);
            const Region loadr = b[1] >= z[1] ? Region::R1 : Region::R3;
            const Region unl = b[1] >= z[1] ? Region::R2 : Region::R4;
            v = std::max(v, norm({eval_t_branch(psi, loadr, b, z)[0] - eval_t_branch(psi, unl, b, z)[0],
                                  eval_t_branch(psi, loadr, b, z)[1] - eval_t_branch(psi, unl, b, z)[1]}));
          }
          if (z[1] > 0.0) {
            const Vec2 b = with(y, 1, z[1]);
            const Region loadr = b[0] >= z[0] ? Region::R1 : Region::R2;
            const Region unl = b[0] >= z[0] ? Region::R3 : Region::R4;
            v = std::max(v, norm({eval_t_branch(psi, loadr, b, z)[0] - eval_t_branch(psi, unl, b, z)[0],
                                  eval_t_branch(psi, loadr, b, z)[1] - eval_t_branch(psi, unl, b, z)[1]}));
          }
          return v;
        },
        at);
    out.push_back(merge("T1", "T bounded and continuous", {fin, cont}));
  }
  out.push_back(sweep("T2", "T(y, z) = T(y, y v z)", n, kExactTol * (1.0 + peak), g,
                      [&](std::size_t i) {
                        const Vec2 t2 = eval_t(psi, pts.y[i], join(pts.y[i], pts.z[i]));
                        return norm({tv[i][0] - t2[0], tv[i][1] - t2[1]});
                      },
                      at));
  out.push_back(sweep("T3", "T >= 0", n, tol, g,
                      [&](std::size_t i) { return -std::min(tv[i][0], tv[i][1]); }, at));
  {
    CheckReport lin = sweep(
        "T4", "y_l -> T_l linear and nondecreasing when unloading", n, kExactTol * (1.0 + peak), g,
        [&](std::size_t i) {
          const Vec2& y = pts.y[i];
          const Vec2& z = pts.z[i];
          double v = -kInf;
          for (int l = 0; l < 2; ++l) {
            const auto ll = static_cast<std::size_t>(l);
            if (!(z[ll] > 0.0)) continue;
            const double a = eval_t(psi, with(y, l, 0.25 * z[ll]), z)[ll];
            const double b = eval_t(psi, with(y, l, 0.5 * z[ll]), z)[ll];
            const double c = eval_t(psi, with(y, l, 0.75 * z[ll]), z)[ll];
            v = std::max({v, std::abs(a - 2.0 * b + c), a - c});
          }
          return v;
        },
        at);
    CheckReport mono = sweep(
        "T4", "y_l -> T_l nonincreasing when loading beyond the elastic threshold", n, tol, g,
        [&](std::size_t i) {
          const Vec2& y = pts.y[i];
          const Vec2& z = pts.z[i];
          double v = -kInf;
          for (int l = 0; l < 2; ++l) {
            const auto ll = static_cast<std::size_t>(l);
            if (y[ll] < std::max(z[ll], zbar[ll])) continue;
            v = std::max(v, eval_t(psi, with(y, l, y[ll] + 1e-3 * op[ll]), z)[ll] - tv[i][ll]);
          }
          return v;
        },
        at);
    out.push_back(merge("T4", "linear nondecreasing unloading, nonincreasing loading", {lin, mono}));
  }
  out.push_back(sweep("T5", "y_j -> T_l nonincreasing for j != l", n, tol, g,
                      [&](std::size_t i) {
                        const Vec2& y = pts.y[i];
                        const Vec2& z = pts.z[i];
                        double v = -kInf;
                        for (int j = 0; j < 2; ++j) {
                          const auto jj = static_cast<std::size_t>(j);
                          const auto ll = static_cast<std::size_t>(1 - j);
                          v = std::max(v, eval_t(psi, with(y, j, y[jj] + 1e-3 * op[jj]), z)[ll] - tv[i][ll]);
                        }
                        return v;
                      },
                      at));
  const PointCloud far = far_cloud(psi, g, true);
  out.push_back(sweep("T6", "|T| -> 0 as |y| -> inf", far.size(), kDecayTol * (1.0 + peak), g,
                      [&](std::size_t i) { return norm(eval_t(psi, far.y[i], far.z[i])); },
                      [&](std::size_t i) { return loc(far.y[i], far.z[i]); }));
  return out;
}

CheckReport check_gradient_consistency(const TensionLaw& t_law, const PotentialLaw& phi_law,
                                       const ValidationGrid& g) {
  if (!(t_law.density() == phi_law.density()) &&
      !(t_law.density().psi(0) == phi_law.density().psi(0) &&
        t_law.density().psi(1) == phi_law.density().psi(1) &&
        t_law.density().coupling().energy1 == phi_law.density().coupling().energy1 &&
        t_law.density().coupling().energy2 == phi_law.density().coupling().energy2 &&
        t_law.density().coupling().coupling == phi_law.density().coupling().coupling)) {
    throw IncompatibleLaws("tension and potential laws are built from different densities");
  }
  const LoadingDensity& psi = phi_law.density();
  const PointCloud pts = history_cloud(psi, g);
  const LawSamples s = evaluate_batch(psi, pts.y, pts.z, g.exec);
  const double peak = peak_stress(psi, opening_cloud(psi, g), g.exec);
  return sweep("GradT", "T coincides with grad_y Phi", pts.size(), kContinuityTol * (1.0 + peak), g,
               [&](std::size_t i) {
                 return norm({s.tension[i][0] - s.grad_phi[i][0], s.tension[i][1] - s.grad_phi[i][1]});
               },
               [&](std::size_t i) { return loc(pts.y[i], pts.z[i]); });
}

std::vector<CheckReport> validate_law(const MixedModeLaw& law, const ValidationGrid& g,
                                      bool gradient_consistency) {
  std::vector<CheckReport> out;
  const LoadingDensity& psi = density(law);
  const bool potential = is_potential(law);
  for (int k = 0; k < 2; ++k) {
    for (CheckReport r : check_psi1d(psi.psi(k), g)) {
      // The non-potential construction does not need the psi_a / psi_b
      // structure conditions.
      if (!potential && (r.id == "psi_a" || r.id == "psi_b" || r.id == "ppr_slope_bound")) {
        r.status = CheckStatus::NotApplicable;
      }
      r.id = fmt::format("psi{}.{}", k + 1, r.id);
      out.push_back(std::move(r));
    }
  }
  if (potential) {
    for (CheckReport& r : check_loading_density(psi, g)) out.push_back(std::move(r));
    for (CheckReport& r : check_constructed_potential(std::get<PotentialLaw>(law), g)) out.push_back(std::move(r));
  } else {
    for (CheckReport& r : check_tension(std::get<TensionLaw>(law), g)) out.push_back(std::move(r));
  }
  if (gradient_consistency) {
    out.push_back(check_gradient_consistency(TensionLaw(psi), PotentialLaw(psi), g));
  }
  return out;
}

bool any_fail(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.status == CheckStatus::Fail; });
}

const CheckReport* find_report(const std::vector<CheckReport>& reports, const std::string& id) {
  for (const CheckReport& r : reports) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

namespace {
std::string join_location(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += fmt::format("{:.17g}", xs[i]);
  }
  return s;
}
}  // namespace

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
  os << "id,status,violation,tolerance,location,description\n";
  for (const CheckReport& r : reports) {
    os << fmt::format("{},{},{:.17g},{:.17g},{},\"{}\"\n", r.id, to_string(r.status), r.violation,
                      r.tolerance, join_location(r.location), r.description);
  }
}

void write_reports_json(std::ostream& os, const std::vector<CheckReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckReport& r : reports) {
    nlohmann::json j;
    j["id"] = r.id;
    j["status"] = to_string(r.status);
    j["violation"] = std::isfinite(r.violation) ? nlohmann::json(r.violation) : nlohmann::json(nullptr);
    j["tolerance"] = r.tolerance;
    j["location"] = r.location;
    j["description"] = r.description;
    j["grid"] = r.grid;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace cohesive
