#include "cohesive/mixedmode.hpp"

#include <algorithm>
#include <cmath>

#include "cohesive/errors.hpp"

namespace cohesive {

double CouplingF::value(double xi1, double xi2) const {
  return energy1 * xi1 + energy2 * xi2 - coupling * xi1 * xi2;
}

double CouplingF::d1(double /*xi1*/, double xi2) const { return energy1 - coupling * xi2; }

double CouplingF::d2(double xi1, double /*xi2*/) const { return energy2 - coupling * xi1; }

bool CouplingF::admissible() const {
  if (energy1 < 0.0 || energy2 < 0.0 || coupling < 0.0) return false;
  if (mode == CouplingMode::Potential) return coupling <= std::min(energy1, energy2);
  return coupling >= std::max(energy1, energy2);
}

bool CouplingF::vanishing_at_saturation() const {
  return coupling == energy1 && coupling == energy2;
}

LoadingDensity::LoadingDensity(CouplingF f, CohesiveLaw1D psi1, CohesiveLaw1D psi2)
    : f_(f), psi1_(std::move(psi1)), psi2_(std::move(psi2)) {
  if (!(f_.energy1 >= 0.0) || !(f_.energy2 >= 0.0) || !(f_.coupling >= 0.0)) {
    throw InvalidParameter("coupling energies must be nonnegative");
  }
}

PsiEval LoadingDensity::eval(const Vec2& y) const {
  const LawEval a = psi1_.eval(y[0]);
  const LawEval b = psi2_.eval(y[1]);
  const double f1 = f_.d1(a.value, b.value);
  const double f2 = f_.d2(a.value, b.value);
  const double f12 = f_.d12();

  PsiEval out;
  out.value = f_.value(a.value, b.value);
  out.grad = {f1 * a.slope, f2 * b.slope};
  out.d12 = f12 * a.slope * b.slope;
  out.diag = {f_.d11() * a.slope * a.slope + f1 * a.curv,
              f_.d22() * b.slope * b.slope + f2 * b.curv};
  out.third = {f_.d112() * a.slope * a.slope * b.slope + f12 * a.curv * b.slope,
               f_.d122() * a.slope * b.slope * b.slope + f12 * a.slope * b.curv};
  return out;
}

bool LoadingDensity::nonphysical_coupling() const {
  return f_.mode == CouplingMode::Potential && !f_.admissible();
}

double LoadingDensity::sup_value() const {
  return std::max({0.0, f_.value(1.0, 0.0), f_.value(0.0, 1.0), f_.value(1.0, 1.0)});
}

bool LoadingDensity::operator==(const LoadingDensity& other) const {
  return f_ == other.f_ && psi1_ == other.psi1_ && psi2_ == other.psi2_;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
  }
  return "?";
}

Region classify_region(const Vec2& y, const Vec2& z) {
  const bool load1 = y[0] >= z[0];
  const bool load2 = y[1] >= z[1];
  if (load1) return load2 ? Region::R1 : Region::R3;
  return load2 ? Region::R2 : Region::R4;
}

namespace {

void check_args(const Vec2& y, const Vec2& z) {
  if (!(y[0] >= 0.0) || !(y[1] >= 0.0)) throw NegativeOpening("opening y must be nonnegative");
  if (!(z[0] >= 0.0) || !(z[1] >= 0.0) || !std::isfinite(z[0]) || !std::isfinite(z[1])) {
    throw DegenerateHistory("history z must be finite and nonnegative");
  }
}

// 1 - (y/z)^2
double unload_weight(double y, double z) {
  const double r = y / z;
  return 1.0 - r * r;
}

}  // namespace

double eval_phi_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z) {
  switch (r) {
    case Region::R1:
      return psi.eval(y).value;
    case Region::R2: {
      const PsiEval p = psi.eval({z[0], y[1]});
      return p.value - 0.5 * z[0] * p.grad[0] * unload_weight(y[0], z[0]);
    }
    case Region::R3: {
      const PsiEval p = psi.eval({y[0], z[1]});
      return p.value - 0.5 * z[1] * p.grad[1] * unload_weight(y[1], z[1]);
    }
    case Region::R4: {
      const PsiEval p = psi.eval(z);
      const double w1 = unload_weight(y[0], z[0]);
      const double w2 = unload_weight(y[1], z[1]);
      return p.value - 0.5 * z[0] * p.grad[0] * w1 - 0.5 * z[1] * p.grad[1] * w2 +
             0.25 * z[0] * z[1] * p.d12 * w1 * w2;
    }
  }
  return 0.0;
}

Vec2 grad_phi_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z) {
  switch (r) {
    case Region::R1:
      return psi.eval(y).grad;
    case Region::R2: {
      const PsiEval p = psi.eval({z[0], y[1]});
      return {p.grad[0] * y[0] / z[0],
              p.grad[1] - 0.5 * z[0] * p.d12 * unload_weight(y[0], z[0])};
    }
    case Region::R3: {
      const PsiEval p = psi.eval({y[0], z[1]});
      return {p.grad[0] - 0.5 * z[1] * p.d12 * unload_weight(y[1], z[1]),
              p.grad[1] * y[1] / z[1]};
    }
    case Region::R4: {
      const PsiEval p = psi.eval(z);
      const double w1 = unload_weight(y[0], z[0]);
      const double w2 = unload_weight(y[1], z[1]);
      return {(p.grad[0] - 0.5 * z[1] * p.d12 * w2) * y[0] / z[0],
              (p.grad[1] - 0.5 * z[0] * p.d12 * w1) * y[1] / z[1]};
    }
  }
  return {0.0, 0.0};
}

double eval_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z) {
  check_args(y, z);
  return eval_phi_branch(psi, classify_region(y, z), y, z);
}

Vec2 grad_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z) {
  check_args(y, z);
  return grad_phi_branch(psi, classify_region(y, z), y, z);
}

Vec2 dz_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z) {
  check_args(y, z);
  switch (classify_region(y, z)) {
    case Region::R1:
      return {0.0, 0.0};
    case Region::R2: {
      const PsiEval p = psi.eval({z[0], y[1]});
      return {0.5 * (p.grad[0] - z[0] * p.diag[0]) * unload_weight(y[0], z[0]), 0.0};
    }
    case Region::R3: {
      const PsiEval p = psi.eval({y[0], z[1]});
      return {0.0, 0.5 * (p.grad[1] - z[1] * p.diag[1]) * unload_weight(y[1], z[1])};
    }
    case Region::R4: {
      const PsiEval p = psi.eval(z);
      const double w1 = unload_weight(y[0], z[0]);
      const double w2 = unload_weight(y[1], z[1]);
      return {(0.5 * (p.grad[0] - z[0] * p.diag[0]) - 0.25 * z[1] * (p.d12 - z[0] * p.third[0]) * w2) * w1,
              (0.5 * (p.grad[1] - z[1] * p.diag[1]) - 0.25 * z[0] * (p.d12 - z[1] * p.third[1]) * w1) * w2};
    }
  }
  return {0.0, 0.0};
}

std::array<double, 3> hess_phi(const LoadingDensity& psi, const Vec2& y, const Vec2& z) {
  check_args(y, z);
  switch (classify_region(y, z)) {
    case Region::R1: {
      const PsiEval p = psi.eval(y);
      return {p.diag[0], p.d12, p.diag[1]};
    }
    case Region::R2: {
      const PsiEval p = psi.eval({z[0], y[1]});
      return {p.grad[0] / z[0], p.d12 * y[0] / z[0],
              p.diag[1] - 0.5 * z[0] * p.third[1] * unload_weight(y[0], z[0])};
    }
    case Region::R3: {
      const PsiEval p = psi.eval({y[0], z[1]});
      return {p.diag[0] - 0.5 * z[1] * p.third[0] * unload_weight(y[1], z[1]),
              p.d12 * y[1] / z[1], p.grad[1] / z[1]};
    }
    case Region::R4: {
      const PsiEval p = psi.eval(z);
      const double w1 = unload_weight(y[0], z[0]);
      const double w2 = unload_weight(y[1], z[1]);
      return {(p.grad[0] - 0.5 * z[1] * p.d12 * w2) / z[0],
              p.d12 * y[0] / z[0] * y[1] / z[1],
              (p.grad[1] - 0.5 * z[0] * p.d12 * w1) / z[1]};
    }
  }
  return {0.0, 0.0, 0.0};
}

Vec2 eval_s(const LoadingDensity& psi, const Vec2& y) {
  const PsiEval p = psi.eval(y);
  return {std::max(p.grad[0], 0.0), std::max(p.grad[1], 0.0)};
}

Vec2 eval_t_branch(const LoadingDensity& psi, Region r, const Vec2& y, const Vec2& z) {
  switch (r) {
    case Region::R1:
      return eval_s(psi, y);
    case Region::R2: {
      const Vec2 s = eval_s(psi, {z[0], y[1]});
      return {s[0] * y[0] / z[0], s[1]};
    }
    case Region::R3: {
      const Vec2 s = eval_s(psi, {y[0], z[1]});
      return {s[0], s[1] * y[1] / z[1]};
    }
    case Region::R4: {
      const Vec2 s = eval_s(psi, z);
      return {s[0] * y[0] / z[0], s[1] * y[1] / z[1]};
    }
  }
  return {0.0, 0.0};
}

Vec2 eval_t(const LoadingDensity& psi, const Vec2& y, const Vec2& z) {
  check_args(y, z);
  return eval_t_branch(psi, classify_region(y, z), y, z);
}

Vec2 traction(const MixedModeLaw& law, const Vec2& y, const Vec2& z) {
  return std::visit([&](const auto& l) { return l.traction(y, z); }, law);
}

const LoadingDensity& density(const MixedModeLaw& law) {
  return std::visit([](const auto& l) -> const LoadingDensity& { return l.density(); }, law);
}

bool is_potential(const MixedModeLaw& law) { return std::holds_alternative<PotentialLaw>(law); }

MixedModeLaw make_law(LoadingDensity psi) {
  if (psi.coupling().mode == CouplingMode::Potential) return PotentialLaw(std::move(psi));
  return TensionLaw(std::move(psi));
}

}  // namespace cohesive
