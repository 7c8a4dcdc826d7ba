#pragma once

// Two-dimensional (mixed-mode) cohesive laws built from a purely loading
// density Psi(y1, y2) = F(psi1(y1), psi2(y2)):
//
//  * the loading/unloading potential Phi(y, z) with its y- and z-gradients,
//  * the loading tension S = (d1 Psi)^+ , (d2 Psi)^+,
//  * the non-potential tension T(y, z) built from S.
//
// y is the current opening (cohesive variables), z the history (running max).
// The (y, z) plane is split into four regions:
//   R1: y1 >= z1, y2 >= z2   pure loading
//   R2: y1 <  z1, y2 >= z2   unloading in direction 1
//   R3: y1 >= z1, y2 <  z2   unloading in direction 2
//   R4: y1 <  z1, y2 <  z2   pure unloading
// Ties go to the loading side. Unloading factors y_i / z_i are only formed
// when y_i < z_i, hence z_i > 0.

#include <array>
#include <string>
#include <variant>

#include "cohesive/laws1d.hpp"

namespace cohesive {

using Vec2 = std::array<double, 2>;

enum class CouplingMode { Potential, NonPotential };

// Bilinear coupling F(xi1, xi2) = E1 xi1 + E2 xi2 - c xi1 xi2 on [0, 1]^2.
// Only the bilinear family is implemented; the chain rule in LoadingDensity
// is written against the partials below so a richer F slots in there.
struct CouplingF {
  double energy1 = 0.0;
  double energy2 = 0.0;
  double coupling = 0.0;
  CouplingMode mode = CouplingMode::Potential;

  double value(double xi1, double xi2) const;
  double d1(double xi1, double xi2) const;
  double d2(double xi1, double xi2) const;
  double d11() const { return 0.0; }
  double d22() const { return 0.0; }
  double d12() const { return -coupling; }
  double d112() const { return 0.0; }
  double d122() const { return 0.0; }

  // 0 <= c <= min(E1, E2) (potential) or c >= max(E1, E2) (non-potential).
  bool admissible() const;
  // d1 F(xi1, 1) = d2 F(1, xi2) = 0, i.e. c = E1 = E2.
  bool vanishing_at_saturation() const;

  bool operator==(const CouplingF&) const = default;
};

struct PsiEval {
  double value = 0.0;
  Vec2 grad{};   // (d1 Psi, d2 Psi)
  double d12 = 0.0;
  Vec2 diag{};   // (d11 Psi, d22 Psi)
  Vec2 third{};  // (d112 Psi, d122 Psi)
};

class LoadingDensity {
 public:
  LoadingDensity(CouplingF f, CohesiveLaw1D psi1, CohesiveLaw1D psi2);

  // Throws NegativeOpening if a component is negative.
  PsiEval eval(const Vec2& y) const;

  const CouplingF& coupling() const { return f_; }
  const CohesiveLaw1D& psi(int i) const { return i == 0 ? psi1_ : psi2_; }

  // Potential mode with a coupling outside [0, min(E1, E2)]: allowed so that
  // pathological laws can be studied, but flagged.
  bool nonphysical_coupling() const;

  // sup Psi = F(1, 1) for the bilinear coupling with admissible sign pattern;
  // computed as the max of F over the unit square corners.
  double sup_value() const;

  bool operator==(const LoadingDensity& other) const;

 private:
  CouplingF f_;
  CohesiveLaw1D psi1_;
  CohesiveLaw1D psi2_;
};

enum class Region { R1, R2, R3, R4 };

std::string to_string(Region r);

Region classify_region(const Vec2& y, const Vec2& z);

// Componentwise max.
inline Vec2 join(const Vec2& a, const Vec2& b) {
  return {a[0] > b[0] ? a[0] : b[0], a[1] > b[1] ? a[1] : b[1]};
}

// Phi(y, z) and derivatives. All throw NegativeOpening for y < 0 and
// DegenerateHistory for negative or non-finite z.
double eval_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z);
Vec2 grad_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z);
Vec2 dz_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z);

// Second y-derivatives (d11, d12, d22) of Phi.
std::array<double, 3> hess_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z);

// Same formulas with the branch forced; used to probe continuity across
// region boundaries. The caller guarantees z_i > 0 for every unloading
// direction of the forced region.
double eval_phi_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z);
Vec2 grad_phi_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z);

// Loading tension S = grad Psi v 0.
Vec2 eval_s(const LoadingDensity& psi, const Vec2& y);

Vec2 eval_t(const LoadingDensity& psi, const Vec2& y, const Vec2& z);
Vec2 eval_t_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z);

// Potential-based law: traction = grad_y Phi.
class PotentialLaw {
 public:
  explicit PotentialLaw(LoadingDensity psi) : psi_(std::move(psi)) {}
  const LoadingDensity& density() const { return psi_; }
  double energy(const Vec2& y, const Vec2& z) const { return eval_phi(psi_, y, z); }
  Vec2 traction(const Vec2& y, const Vec2& z) const { return grad_phi(psi_, y, z); }
  Vec2 dz(const Vec2& y, const Vec2& z) const { return dz_phi(psi_, y, z); }

 private:
  LoadingDensity psi_;
};

// Non-potential law: traction = T built from S = grad Psi v 0.
class TensionLaw {
 public:
  explicit TensionLaw(LoadingDensity psi) : psi_(std::move(psi)) {}
  const LoadingDensity& density() const { return psi_; }
  Vec2 traction(const Vec2& y, const Vec2& z) const { return eval_t(psi_, y, z); }
  Vec2 loading_tension(const Vec2& y) const { return eval_s(psi_, y); }

 private:
  LoadingDensity psi_;
};

using MixedModeLaw = std::variant<PotentialLaw, TensionLaw>;

Vec2 traction(const MixedModeLaw& law, const Vec2& y, const Vec2& z);
const LoadingDensity& density(const MixedModeLaw& law);
bool is_potential(const MixedModeLaw& law);

// Builds the law matching the coupling mode of the density.
MixedModeLaw make_law(LoadingDensity psi);

}  // namespace cohesive
