#pragma once

// Two elastic layers occupying the same rectangle, glued by a mixed-mode
// cohesive interface acting on the slip delta = u1 - u2 through
// g(delta) = (|delta_1|, |delta_2|).
//
// P1 triangles, plane strain, isotropic layers. Both layers share the
// Dirichlet edges and the prescribed displacement. One cohesive quadrature
// point per element (the barycentre), which is also where the history gamma
// lives.
//
// Dof layout of the global vector: [layer 1 | layer 2], each block node-major
// (ux, uy) pairs.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cohesive/kernels.hpp"
#include "cohesive/mixedmode.hpp"

namespace cohesive {

struct Lame {
  double lambda = 0.0;
  double mu = 1.0;
};

enum Edge : unsigned { kLeft = 1u, kRight = 2u, kBottom = 4u, kTop = 8u };

enum class Scheme { Energetic, Equilibrium };

std::string to_string(Scheme s);

// Knot of the prescribed displacement program U(t).
struct ProgramKnot {
  double t = 0.0;
  Vec2 u{};
};

struct SolverOptions {
  double tol_min = 1e-8;     // relative stationarity, energetic scheme
  int max_iter = 5000;       // descent iterations per start
  int lbfgs_memory = 10;
  double eps_reg = 1e-8;     // |delta| smoothing, times the domain diameter
  double tol_fp = 1e-8;      // relative fixed-point residual, equilibrium scheme
  double theta = 0.5;        // Picard damping
  int max_picard = 1000;
  Exec exec = Exec::Parallel;
};

struct LaminateProblem {
  int nx = 16;
  int ny = 4;
  double x_min = 0.0, x_max = 4.0;
  double y_min = 0.0, y_max = 1.0;
  Lame layer1{};
  Lame layer2{};
  unsigned dirichlet = kLeft | kRight;
  // Boundary displacement l(t, x) = (x - x_min) / (x_max - x_min) * U(t) + offset,
  // U piecewise linear through the knots and constant outside them. The same
  // field is used as the lift on interior nodes.
  std::vector<ProgramKnot> program;
  Vec2 offset{};
  std::optional<MixedModeLaw> law;
  double tau = 0.05;
  double t_end = 1.0;
  Scheme scheme = Scheme::Energetic;
  SolverOptions solver{};
};

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;
  std::vector<double> area;
  double diameter = 0.0;
  double measure = 0.0;
};

// nx * ny cells, each split along its (lower-left, upper-right) diagonal.
Mesh make_rect_mesh(int nx, int ny, double x0, double x1, double y0, double y1);

// Plane-strain constitutive matrix in Voigt form (xx, yy, engineering xy).
Eigen::Matrix3d plane_strain_matrix(const Lame& c);

// 6x6 P1 element stiffness, dofs (ux0, uy0, ux1, uy1, ux2, uy2).
Eigen::Matrix<double, 6, 6> element_stiffness(const std::array<Vec2, 3>& xy, const Lame& c);

// Unconstrained single-layer stiffness (2 * nodes square).
Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh, const Lame& c, Exec exec = Exec::Parallel);

struct QuasistaticState {
  double t = 0.0;
  Eigen::VectorXd u;           // both layers
  std::vector<Vec2> gamma;     // per element
  double elastic = 0.0;        // E
  double cohesive = 0.0;       // K (NaN for tension laws)
  double total = 0.0;          // F = E + K
  double work = 0.0;           // W(t), trapezoidal
  double balance_residual = 0.0;  // |F - F(0) - W|, NaN for the equilibrium scheme
  // Solver diagnostics of the step that produced this state.
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  double objective_start = 0.0;  // smoothed F at the lifted previous state
  double objective_end = 0.0;    // smoothed F at the returned state
};

struct Energies {
  double elastic = 0.0;
  double cohesive = 0.0;
  double total = 0.0;
};

class LaminateModel {
 public:
  // Throws InvalidParameter for a malformed problem (no law, bad Lame, ...)
  // and SingularOperator when no Dirichlet edge is selected.
  explicit LaminateModel(LaminateProblem problem);

  const LaminateProblem& problem() const { return problem_; }
  const Mesh& mesh() const { return mesh_; }
  const MixedModeLaw& law() const { return *problem_.law; }
  std::size_t num_dofs() const { return static_cast<std::size_t>(stiffness_.rows()); }
  const Eigen::SparseMatrix<double>& stiffness() const { return stiffness_; }
  const std::vector<int>& free_dofs() const { return free_; }
  const std::vector<int>& fixed_dofs() const { return fixed_; }

  Vec2 program(double t) const;
  Eigen::VectorXd lift(double t) const;

  // delta_e = barycentric value of u1 - u2.
  std::vector<Vec2> slips(const Eigen::VectorXd& u) const;

  double elastic_energy(const Eigen::VectorXd& u) const;
  // Unsmoothed K; NaN for tension laws.
  double cohesive_energy(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const;
  // Throws BoundaryMismatch when u leaves the Dirichlet data at t by more
  // than 1e-10.
  Energies energies(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma, double t) const;

  // sum_i a_i(u, v) and the energy (semi)norm sqrt(a(v, v)).
  double bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  double energy_norm(const Eigen::VectorXd& v) const;

  // Smoothed objective used inside the minimizer, with its gradient
  // restricted to the free dofs.
  double objective(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma,
                   Eigen::VectorXd* free_grad = nullptr) const;

  // Relative stationarity of the smoothed objective: ||grad||_{K^-1} / ||u||_K.
  double stationarity(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const;

  // Relative fixed-point residual ||u - G(u)||_K / ||G(u)||_K of the
  // equilibrium map at u.
  double equilibrium_residual(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const;

  // Zero displacement and zero history at t = 0 (before the initial solve).
  QuasistaticState initial_state() const;

  QuasistaticState energetic_step(const QuasistaticState& prev, double t) const;
  QuasistaticState equilibrium_step(const QuasistaticState& prev, double t) const;

  // gamma_prev v g(delta(u)).
  std::vector<Vec2> update_history(const std::vector<Vec2>& gamma_prev, const Eigen::VectorXd& u) const;

 private:
  // Cohesive forces per element (derivative of the cohesive term with
  // respect to delta_e), scattered to the global dof vector.
  Eigen::VectorXd scatter(const std::vector<Vec2>& element_force) const;
  Eigen::VectorXd free_part(const Eigen::VectorXd& u) const;
  void set_free(Eigen::VectorXd& u, const Eigen::VectorXd& x) const;
  double free_norm(const Eigen::VectorXd& x) const;  // sqrt(x' Kff x)
  // Equilibrium map: solution of the linear problem with frozen cohesive
  // tractions evaluated at u.
  Eigen::VectorXd equilibrium_map(const Eigen::VectorXd& u, const std::vector<Vec2>& gamma) const;
  Eigen::VectorXd minimize_from(Eigen::VectorXd u, const std::vector<Vec2>& gamma, int* iterations,
                                bool* converged) const;
  QuasistaticState finish_step(const QuasistaticState& prev, double t, Eigen::VectorXd u) const;

  LaminateProblem problem_;
  Mesh mesh_;
  Eigen::SparseMatrix<double> stiffness_;   // block diagonal, both layers
  Eigen::SparseMatrix<double> kff_;
  std::vector<int> free_;
  std::vector<int> fixed_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> solver_;
  double eps_ = 0.0;
};

struct Trajectory {
  Scheme scheme = Scheme::Energetic;
  std::vector<QuasistaticState> states;
  bool converged = true;
};

// u0 from one step at t = 0, then t^k = k tau up to t_end. Work and balance
// residuals are accumulated along the way.
Trajectory run_evolution(const LaminateModel& model, Scheme scheme);

void write_ledger_csv(std::ostream& os, const LaminateModel& model, const Trajectory& traj);
void write_fields_csv(std::ostream& os, const LaminateModel& model, const QuasistaticState& state);

}  // namespace cohesive
