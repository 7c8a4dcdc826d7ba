#include "cohesive/laminate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "cohesive/errors.hpp"

namespace cohesive {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// sqrt(d^2 + e^2) - e, written to stay accurate for |d| << e.
double smooth_abs(double d, double e) { return d * d / (std::sqrt(d * d + e * e) + e); }

struct CohesiveTerms {
  std::vector<double> energy;  // area-weighted, per element
  std::vector<Vec2> force;     // d(energy_e)/d(delta_e)
};

// Energetic terms of the smoothed cohesive energy.
CohesiveTerms smoothed_terms(const LaminateModel& m, const Eigen::VectorXd& u,
                             const std::vector<Vec2>& gamma, double eps) {
  const auto* law = std::get_if<PotentialLaw>(&m.law());
  if (!law) throw IncompatibleLaws("the energetic scheme needs a potential-based law");
  const std::vector<Vec2> d = m.slips(u);
  const std::size_t ne = d.size();
  CohesiveTerms out{std::vector<double>(ne), std::vector<Vec2>(ne)};
  const auto& area = m.mesh().area;
  parallel_for(ne, m.problem().solver.exec, [&](std::size_t e) {
    const Vec2 y{smooth_abs(d[e][0], eps), smooth_abs(d[e][1], eps)};
    out.energy[e] = area[e] * law->energy(y, gamma[e]);
    const Vec2 g = law->traction(y, gamma[e]);
    for (std::size_t l = 0; l < 2; ++l) {
      out.force[e][l] = area[e] * g[l] * d[e][l] / std::sqrt(d[e][l] * d[e][l] + eps * eps);
    }
  });
  return out;
}

double serial_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::Energetic ? "energetic" : "equilibrium"; }

Mesh make_rect_mesh(int nx, int ny, double x0, double x1, double y0, double y1) {
  if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0)) throw InvalidParameter("degenerate rectangle mesh");
  Mesh m;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      m.nodes.push_back({x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny});
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      m.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  for (const auto& t : m.tris) {
    const Vec2& a = m.nodes[t[0]];
    const Vec2& b = m.nodes[t[1]];
    const Vec2& c = m.nodes[t[2]];
    m.area.push_back(0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])));
  }
  m.diameter = std::hypot(x1 - x0, y1 - y0);
  m.measure = (x1 - x0) * (y1 - y0);
  return m;
}

Eigen::Matrix3d plane_strain_matrix(const Lame& c) {
  Eigen::Matrix3d d;
  d << c.lambda + 2.0 * c.mu, c.lambda, 0.0,
       c.lambda, c.lambda + 2.0 * c.mu, 0.0,
       0.0, 0.0, c.mu;
  return d;
}

Eigen::Matrix<double, 6, 6> element_stiffness(const std::array<Vec2, 3>& xy, const Lame& c) {
  const double x1 = xy[0][0], y1 = xy[0][1];
  const double x2 = xy[1][0], y2 = xy[1][1];
  const double x3 = xy[2][0], y3 = xy[2][1];
  const double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
  if (!(det > 0.0)) throw InvalidParameter("element with nonpositive orientation");
  const double area = 0.5 * det;
  // shape function gradients
  const double bx[3] = {(y2 - y3) / det, (y3 - y1) / det, (y1 - y2) / det};
  const double by[3] = {(x3 - x2) / det, (x1 - x3) / det, (x2 - x1) / det};
  Eigen::Matrix<double, 3, 6> b = Eigen::Matrix<double, 3, 6>::Zero();
  for (int a = 0; a < 3; ++a) {
    b(0, 2 * a) = bx[a];
    b(1, 2 * a + 1) = by[a];
    b(2, 2 * a) = by[a];
    b(2, 2 * a + 1) = bx[a];
  }
  return area * b.transpose() * plane_strain_matrix(c) * b;
}

Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh, const Lame& c, Exec exec) {
  const std::size_t ne = mesh.tris.size();
  std::vector<Eigen::Matrix<double, 6, 6>> ke(ne);
  parallel_for(ne, exec, [&](std::size_t e) {
    const auto& t = mesh.tris[e];
    ke[e] = element_stiffness({mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]}, c);
  });
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(36 * ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& t = mesh.tris[e];
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        trip.emplace_back(2 * t[a / 2] + a % 2, 2 * t[b / 2] + b % 2, ke[e](a, b));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(2 * mesh.nodes.size());
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

LaminateModel::LaminateModel(LaminateProblem problem) : problem_(std::move(problem)) {
  const LaminateProblem& p = problem_;
  if (!p.law) throw InvalidParameter("laminate problem without a cohesive law");
  for (const Lame* c : {&p.layer1, &p.layer2}) {
    if (!(c->mu > 0.0) || !(c->lambda >= 0.0)) throw InvalidParameter("Lame parameters need mu > 0, lambda >= 0");
  }
  if (!(p.tau > 0.0) || !(p.t_end >= 0.0)) throw InvalidParameter("need tau > 0 and t_end >= 0");
  if (p.program.empty()) throw InvalidParameter("empty displacement program");
  for (std::size_t i = 1; i < p.program.size(); ++i) {
    if (!(p.program[i].t > p.program[i - 1].t)) throw InvalidParameter("program knots must have increasing t");
  }
  if ((p.dirichlet & 15u) == 0u) throw SingularOperator("no Dirichlet edge: the elastic operator is singular");

  mesh_ = make_rect_mesh(p.nx, p.ny, p.x_min, p.x_max, p.y_min, p.y_max);
  eps_ = p.solver.eps_reg * mesh_.diameter;

  const Eigen::SparseMatrix<double> k1 = assemble_stiffness(mesh_, p.layer1, p.solver.exec);
  const Eigen::SparseMatrix<double> k2 = assemble_stiffness(mesh_, p.layer2, p.solver.exec);
  const Eigen::Index n = k1.rows();
  std::vector<Eigen::Triplet<double>> trip;
  for (int layer = 0; layer < 2; ++layer) {
    const auto& k = layer == 0 ? k1 : k2;
    for (Eigen::Index c = 0; c < k.outerSize(); ++c) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(k, c); it; ++it) {
        trip.emplace_back(it.row() + layer * n, it.col() + layer * n, it.value());
      }
    }
  }
  stiffness_.resize(2 * n, 2 * n);
  stiffness_.setFromTriplets(trip.begin(), trip.end());

  std::vector<char> fixed_node(mesh_.nodes.size(), 0);
  const double tol = 1e-12 * mesh_.diameter;
  for (std::size_t a = 0; a < mesh_.nodes.size(); ++a) {
    const Vec2& x = mesh_.nodes[a];
    if (((p.dirichlet & kLeft) && std::abs(x[0] - p.x_min) <= tol) ||
        ((p.dirichlet & kRight) && std::abs(x[0] - p.x_max) <= tol) ||
        ((p.dirichlet & kBottom) && std::abs(x[1] - p.y_min) <= tol) ||
        ((p.dirichlet & kTop) && std::abs(x[1] - p.y_max) <= tol)) {
      fixed_node[a] = 1;
    }
  }
  std::vector<int> map(static_cast<std::size_t>(2 * n), -1);
  for (int layer = 0; layer < 2; ++layer) {
    for (std::size_t a = 0; a < mesh_.nodes.size(); ++a) {
      for (int c = 0; c < 2; ++c) {
        const int dof = static_cast<int>(layer * n + 2 * static_cast<Eigen::Index>(a) + c);
        if (fixed_node[a]) {
          fixed_.push_back(dof);
        } else {
          map[static_cast<std::size_t>(dof)] = static_cast<int>(free_.size());
          free_.push_back(dof);
        }
      }
    }
  }
  std::vector<Eigen::Triplet<double>> ff;
  for (Eigen::Index c = 0; c < stiffness_.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(stiffness_, c); it; ++it) {
      const int r = map[static_cast<std::size_t>(it.row())];
      const int s = map[static_cast<std::size_t>(it.col())];
      if (r >= 0 && s >= 0) ff.emplace_back(r, s, it.value());
    }
  }
  const auto nf = static_cast<Eigen::Index>(free_.size());
  kff_.resize(nf, nf);
  kff_.setFromTriplets(ff.begin(), ff.end());
  solver_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
  if (nf > 0) {
    solver_->compute(kff_);
    if (solver_->info() != Eigen::Success) throw SingularOperator("factorization of the reduced stiffness failed");
  }
}

Vec2 LaminateModel::program(double t) const {
  const auto& k = problem_.program;
  if (t <= k.front().t) return k.front().u;
  if (t >= k.back().t) return k.back().u;
  std::size_t i = 1;
  while (k[i].t < t) ++i;
  const double s = (t - k[i - 1].t) / (k[i].t - k[i - 1].t);
  return {k[i - 1].u[0] + s * (k[i].u[0] - k[i - 1].u[0]), k[i - 1].u[1] + s * (k[i].u[1] - k[i - 1].u[1])};
}

Eigen::VectorXd LaminateModel::lift(double t) const {
  const Vec2 u = program(t);
  const std::size_t nn = mesh_.nodes.size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(4 * nn));
  const double len = problem_.x_max - problem_.x_min;
  for (std::size_t a = 0; a < nn; ++a) {
    const double s = (mesh_.nodes[a][0] - problem_.x_min) / len;
    for (std::size_t layer = 0; layer < 2; ++layer) {
      const auto base = static_cast<Eigen::Index>(layer * 2 * nn + 2 * a);
      out[base] = s * u[0] + problem_.offset[0];
      out[base + 1] = s * u[1] + problem_.offset[1];
    }
  }
  return out;
}

std::vector<Vec2> LaminateModel::slips(const Eigen::VectorXd& u) const {
  const auto n = static_cast<Eigen::Index>(2 * mesh_.nodes.size());
  std::vector<Vec2> d(mesh_.tris.size());
  parallel_for(d.size(), problem_.solver.exec, [&](std::size_t e) {
    Vec2 s{0.0, 0.0};
    for (int a : mesh_.tris[e]) {
      for (int c = 0; c < 2; ++c) s[static_cast<std::size_t>(c)] += u[2 * a + c] - u[n + 2 * a + c];
    }
    d[e] = {s[0] / 3.0, s[1] / 3.0};
  });
  return d;
}

Eigen::VectorXd LaminateModel::scatter(const std::vector<Vec2>& f) const {
  const auto n = static_cast<Eigen::Index>(2 * mesh_.nodes.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
  for (std::size_t e = 0; e < f.size(); ++e) {
    for (int a : mesh_.tris[e]) {
      for (int c = 0; c < 2; ++c) {
        const double v = f[e][static_cast<std::size_t>(c)] / 3.0;
        out[2 * a + c] += v;
        out[n + 2 * a + c] -= v;
      }
    }
  }
  return out;
}

Eigen::VectorXd LaminateModel::free_part(const Eigen::VectorXd& u) const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(free_.size()));
  for (std::size_t i = 0; i < free_.size(); ++i) x[static_cast<Eigen::Index>(i)] = u[free_[i]];
  return x;
}

void LaminateModel::set_free(Eigen::VectorXd& u, const Eigen::VectorXd& x) const {
  for (std::size_t i = 0; i < free_.size(); ++i) u[free_[i]] = x[static_cast<Eigen::Index>(i)];
}

double LaminateModel::free_norm(const Eigen::VectorXd& x) const {
  if (x.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, x.dot(kff_ * x)));
}

double LaminateModel::bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return u.dot(stiffness_ * v);
}

double LaminateModel::energy_norm(const Eigen::VectorXd& v) const {
  return std::sqrt(std::max(0.0, bilinear(v, v)));
}

double LaminateModel::elastic_energy(const Eigen::VectorXd& u) const { return 0.5 * bilinear(u, u); }

double LaminateModel::cohesive_energy(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const {
  const auto* law = std::get_if<PotentialLaw>(&*problem_.law);
  if (!law) return kNaN;
  const std::vector<Vec2> d = slips(u);
  std::vector<double> k(d.size());
  parallel_for(d.size(), problem_.solver.exec, [&](std::size_t e) {
    k[e] = mesh_.area[e] * law->energy({std::abs(d[e][0]), std::abs(d[e][1])}, gamma[e]);
  });
  return serial_sum(k);
}

Energies LaminateModel::energies(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma, double t) const {
  const Eigen::VectorXd l = lift(t);
  for (int dof : fixed_) {
    if (std::abs(u[dof] - l[dof]) > 1e-10) {
      throw BoundaryMismatch(fmt::format("dof {} is {} but the Dirichlet data give {}", dof, u[dof], l[dof]));
    }
  }
  Energies out;
  out.elastic = elastic_energy(u);
  out.cohesive = cohesive_energy(u, gamma);
  out.total = out.elastic + out.cohesive;
  return out;
}

double LaminateModel::objective(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma,
                                Eigen::VectorXd* free_grad) const {
  const CohesiveTerms c = smoothed_terms(*this, u, gamma, eps_);
  const Eigen::VectorXd ku = stiffness_ * u;
  if (free_grad) *free_grad = free_part(ku + scatter(c.force));
  return 0.5 * u.dot(ku) + serial_sum(c.energy);
}

double LaminateModel::stationarity(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const {
  Eigen::VectorXd g;
  objective(u, gamma, &g);
  if (g.size() == 0) return 0.0;
  const double dual = std::sqrt(std::max(0.0, g.dot(solver_->solve(g))));
  const double scale = energy_norm(u);
  if (dual == 0.0) return 0.0;
  return scale > 0.0 ? dual / scale : std::numeric_limits<double>::infinity();
}

Eigen::VectorXd LaminateModel::equilibrium_map(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const {
  const std::vector<Vec2> d = slips(u);
  std::vector<Vec2> f(d.size());
  const MixedModeLaw& law = *problem_.law;
  parallel_for(d.size(), problem_.solver.exec, [&](std::size_t e) {
    const Vec2 t = traction(law, {std::abs(d[e][0]), std::abs(d[e][1])}, gamma[e]);
    f[e] = {mesh_.area[e] * t[0] * sign0(d[e][0]), mesh_.area[e] * t[1] * sign0(d[e][1])};
  });
  Eigen::VectorXd out = u;
  for (int dof : free_) out[dof] = 0.0;
  if (free_.empty()) return out;
  const Eigen::VectorXd rhs = -free_part(stiffness_ * out + scatter(f));
  set_free(out, solver_->solve(rhs));
  return out;
}

double LaminateModel::equilibrium_residual(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const {
  const Eigen::VectorXd g = equilibrium_map(u, gamma);
  const double num = free_norm(free_part(u - g));
  if (num == 0.0) return 0.0;
  const double den = energy_norm(g);
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

std::vector<Vec2> LaminateModel::update_history(const std::vector<Vec2>& gamma_prev, const Eigen::VectorXd& u) const {
  const std::vector<Vec2> d = slips(u);
  std::vector<Vec2> out(d.size());
  for (std::size_t e = 0; e < d.size(); ++e) out[e] = join(gamma_prev[e], {std::abs(d[e][0]), std::abs(d[e][1])});
  return out;
}

QuasistaticState LaminateModel::initial_state() const {
  QuasistaticState s;
  s.t = 0.0;
  s.u = lift(0.0);
  s.gamma.assign(mesh_.tris.size(), {0.0, 0.0});
  return s;
}

// Preconditioned L-BFGS (H0 = Kff^-1) with Armijo backtracking. The
// decrease is computed from differences (elastic part in closed form,
// cohesive part element by element) so the test stays meaningful close to
// the tolerance where F itself is dominated by roundoff. Accepted steps
// strictly decrease the objective.
Eigen::VectorXd LaminateModel::minimize_from(Eigen::VectorXd u, const std::vector<Vec2>& gamma, int* iterations,
                                             bool* converged) const {
  const SolverOptions& opt = problem_.solver;
  *iterations = 0;
  *converged = false;
  if (free_.empty()) {
    *converged = true;
    return u;
  }
  struct Point {
    Eigen::VectorXd ku;
    std::vector<double> coh;
    Eigen::VectorXd grad;
  };
  auto evaluate = [&](const Eigen::VectorXd& v) {
    CohesiveTerms c = smoothed_terms(*this, v, gamma, eps_);
    Point pt;
    pt.ku = stiffness_ * v;
    pt.grad = free_part(pt.ku + scatter(c.force));
    pt.coh = std::move(c.energy);
    return pt;
  };
  auto stationary = [&](const Eigen::VectorXd& g, const Eigen::VectorXd& v) {
    const double dual = std::sqrt(std::max(0.0, g.dot(solver_->solve(g))));
    const double scale = energy_norm(v);
    return dual == 0.0 || (scale > 0.0 && dual <= opt.tol_min * scale);
  };

  Point cur = evaluate(u);
  std::deque<Eigen::VectorXd> ss, ys;
  std::deque<double> rhos;
  for (int it = 0; it < opt.max_iter; ++it) {
    const Eigen::VectorXd& g = cur.grad;
    if (stationary(g, u)) {
      *converged = true;
      break;
    }
    Eigen::VectorXd q = g;
    std::vector<double> alpha(ss.size());
    for (std::size_t i = ss.size(); i-- > 0;) {
      alpha[i] = rhos[i] * ss[i].dot(q);
      q -= alpha[i] * ys[i];
    }
    Eigen::VectorXd r = solver_->solve(q);
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double beta = rhos[i] * ys[i].dot(r);
      r += ss[i] * (alpha[i] - beta);
    }
    Eigen::VectorXd p = -r;
    double gp = g.dot(p);
    if (!(gp < 0.0)) {
      ss.clear();
      ys.clear();
      rhos.clear();
      p = -solver_->solve(g);
      gp = g.dot(p);
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd u_new = u;
    Point next;
    const Eigen::VectorXd x = free_part(u);
    for (int bt = 0; bt < 60; ++bt) {
      set_free(u_new, x + step * p);
      next = evaluate(u_new);
      const Eigen::VectorXd d = u_new - u;
      double df = 0.5 * d.dot(cur.ku + next.ku);
      for (std::size_t e = 0; e < cur.coh.size(); ++e) df += next.coh[e] - cur.coh[e];
      if (df <= 1e-4 * step * gp && df < 0.0) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++*iterations;
    if (!accepted) break;
    Eigen::VectorXd s = step * p;
    Eigen::VectorXd y = next.grad - g;
    const double sy = s.dot(y);
    if (sy > 0.0) {
      ss.push_back(std::move(s));
      ys.push_back(std::move(y));
      rhos.push_back(1.0 / sy);
      if (static_cast<int>(ss.size()) > opt.lbfgs_memory) {
        ss.pop_front();
        ys.pop_front();
        rhos.pop_front();
      }
    }
    u = std::move(u_new);
    cur = std::move(next);
  }
  if (!*converged) *converged = stationary(cur.grad, u);
  return u;
}

QuasistaticState LaminateModel::finish_step(const QuasistaticState& prev, double t, Eigen::VectorXd u) const {
  QuasistaticState s;
  s.t = t;
  s.u = std::move(u);
  s.gamma = update_history(prev.gamma, s.u);
  const Energies en = energies(s.u, s.gamma, t);
  s.elastic = en.elastic;
  s.cohesive = en.cohesive;
  s.total = en.total;
  const Eigen::VectorXd dl = lift(t) - lift(prev.t);
  s.work = prev.work + 0.5 * (bilinear(prev.u, dl) + bilinear(s.u, dl));
  return s;
}

QuasistaticState LaminateModel::energetic_step(const QuasistaticState& prev, double t) const {
  const Eigen::VectorXd lifted = prev.u + lift(t) - lift(prev.t);
  const Eigen::VectorXd zero_lift = lift(t);

  int it_a = 0;
  bool ok_a = false;
  Eigen::VectorXd best = minimize_from(lifted, prev.gamma, &it_a, &ok_a);
  double f_best = objective(best, prev.gamma);
  int iterations = it_a;
  bool ok = ok_a;
  if ((zero_lift - lifted).lpNorm<Eigen::Infinity>() > 0.0) {
    int it_b = 0;
    bool ok_b = false;
    Eigen::VectorXd other = minimize_from(zero_lift, prev.gamma, &it_b, &ok_b);
    const double f_other = objective(other, prev.gamma);
    iterations += it_b;
    // gaps at roundoff level count as ties, and ties keep the lifted start
    if (f_other < f_best - 1e-12 * std::abs(f_best)) {
      best = std::move(other);
      f_best = f_other;
      ok = ok_b;
    }
  }
  QuasistaticState s = finish_step(prev, t, best);
  s.iterations = iterations;
  s.converged = ok;
  s.residual = stationarity(s.u, prev.gamma);
  s.objective_start = objective(lifted, prev.gamma);
  s.objective_end = f_best;
  return s;
}

QuasistaticState LaminateModel::equilibrium_step(const QuasistaticState& prev, double t) const {
  const SolverOptions& opt = problem_.solver;
  Eigen::VectorXd s = prev.u + lift(t) - lift(prev.t);
  double theta = opt.theta;
  double last = std::numeric_limits<double>::infinity();
  int updates = 0;
  double res = 0.0;
  bool ok = false;
  for (;;) {
    const Eigen::VectorXd g = equilibrium_map(s, prev.gamma);
    const double num = free_norm(free_part(s - g));
    const double den = energy_norm(g);
    res = num == 0.0 ? 0.0 : (den > 0.0 ? num / den : std::numeric_limits<double>::infinity());
    if (res <= opt.tol_fp) {
      ok = true;
      break;
    }
    if (updates >= opt.max_picard) break;
    // The starting guess is not an iterate of the map, so the first update
    // takes the full step; damping applies from the second one on.
    if (updates > 0 && res > last) theta = std::max(theta * 0.5, 1.0 / 1024.0);
    const double w = updates == 0 ? 1.0 : theta;
    s = (1.0 - w) * s + w * g;
    last = res;
    ++updates;
  }
  QuasistaticState out = finish_step(prev, t, s);
  out.iterations = updates;
  out.residual = res;
  out.converged = ok;
  out.objective_start = kNaN;
  out.objective_end = kNaN;
  return out;
}

Trajectory run_evolution(const LaminateModel& model, Scheme scheme) {
  Trajectory traj;
  traj.scheme = scheme;
  const LaminateProblem& p = model.problem();
  auto step = [&](const QuasistaticState& prev, double t) {
    return scheme == Scheme::Energetic ? model.energetic_step(prev, t) : model.equilibrium_step(prev, t);
  };
  QuasistaticState s = step(model.initial_state(), 0.0);
  s.work = 0.0;
  const double f0 = s.total;
  s.balance_residual = scheme == Scheme::Energetic ? 0.0 : kNaN;
  traj.converged = s.converged;
  traj.states.push_back(s);
  const auto steps = static_cast<long>(std::llround(p.t_end / p.tau));
  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * p.tau;
    QuasistaticState next = step(traj.states.back(), t);
    next.balance_residual = scheme == Scheme::Energetic ? std::abs(next.total - f0 - next.work) : kNaN;
    traj.converged = traj.converged && next.converged;
    traj.states.push_back(std::move(next));
  }
  return traj;
}

void write_ledger_csv(std::ostream& os, const LaminateModel& model, const Trajectory& traj) {
  os << "t,E,K,F,W,balance_residual,max_gamma1,max_gamma2,max_abs_delta,iterations,residual,converged\n";
  for (const QuasistaticState& s : traj.states) {
    double g1 = 0.0, g2 = 0.0, dmax = 0.0;
    for (const Vec2& g : s.gamma) {
      g1 = std::max(g1, g[0]);
      g2 = std::max(g2, g[1]);
    }
    for (const Vec2& d : model.slips(s.u)) dmax = std::max(dmax, std::hypot(d[0], d[1]));
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n",
                      s.t, s.elastic, s.cohesive, s.total, s.work, s.balance_residual, g1, g2, dmax,
                      s.iterations, s.residual, s.converged ? 1 : 0);
  }
}

void write_fields_csv(std::ostream& os, const LaminateModel& model, const QuasistaticState& state) {
  const Mesh& m = model.mesh();
  const auto n = static_cast<Eigen::Index>(2 * m.nodes.size());
  os << "node,x,y,u1x,u1y,u2x,u2y\n";
  for (std::size_t a = 0; a < m.nodes.size(); ++a) {
    const auto i = static_cast<Eigen::Index>(2 * a);
    os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", a, m.nodes[a][0], m.nodes[a][1],
                      state.u[i], state.u[i + 1], state.u[n + i], state.u[n + i + 1]);
  }
}

}  // namespace cohesive
