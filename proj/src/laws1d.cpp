#include "cohesive/laws1d.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cohesive/errors.hpp"

namespace cohesive {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

LawEval eval_exponential(const CohesiveLaw1D::Exponential& p, double y) {
  const double e = std::exp(-p.rho * y);
  return {1.0 - e, p.rho * e, -p.rho * p.rho * e};
}

LawEval eval_cubic(const CohesiveLaw1D::Cubic& p, double y) {
  if (y >= p.delta) return {1.0, 0.0, 0.0};
  const double x = y / p.delta;
  const double r = 1.0 - x;
  return {x * (x * x - 3.0 * x + 3.0), 3.0 * r * r / p.delta, -6.0 * r / (p.delta * p.delta)};
}

LawEval eval_ppr_intrinsic(const CohesiveLaw1D::PprIntrinsic& p, double y) {
  const double x = y / p.delta;
  const double r = std::max(1.0 - x, 0.0);
  if (r == 0.0) return {1.0, 0.0, 0.0};
  const double am = p.alpha / p.m;
  const double q = 1.0 + am * x;
  const double value = 1.0 - std::pow(r, p.alpha) * std::pow(q, p.m);
  const double c = p.alpha / p.delta * (1.0 + am);
  const double slope = c * x * std::pow(r, p.alpha - 1.0) * std::pow(q, p.m - 1.0);
  const double curv = c / p.delta * std::pow(r, p.alpha - 2.0) * std::pow(q, p.m - 2.0) *
                      (1.0 - am * (p.alpha + p.m - 1.0) * x * x);
  return {value, slope, curv};
}

LawEval eval_ppr_extrinsic(const CohesiveLaw1D::PprExtrinsic& p, double y) {
  const double r = std::max(1.0 - y / p.delta, 0.0);
  if (r == 0.0) return {1.0, 0.0, 0.0};
  const double a = p.alpha;
  return {1.0 - std::pow(r, a), a / p.delta * std::pow(r, a - 1.0),
          -a * (a - 1.0) / (p.delta * p.delta) * std::pow(r, a - 2.0)};
}

LawEval eval_intrinsic(const CohesiveLaw1D::Intrinsic& p, double y) {
  if (y < p.threshold) {
    return {p.scale * y * y / (2.0 * p.epsilon), p.scale * y / p.epsilon, p.scale / p.epsilon};
  }
  const LawEval b = p.base->eval(y);
  const LawEval bz = p.base->eval(p.threshold);
  const double shifted = b.value - bz.value + p.threshold * p.threshold / (2.0 * p.epsilon);
  return {p.scale * shifted, p.scale * b.slope, p.scale * b.curv};
}

}  // namespace

PprParameters ppr_parameters(double alpha, double sigma, double lambda, double energy) {
  require(alpha > 1.0, "PPR shape index alpha must exceed 1");
  require(sigma > 0.0, "PPR cohesive strength sigma must be positive");
  require(energy > 0.0, "PPR delamination energy must be positive");
  require(lambda > 0.0, "PPR initial slope indicator lambda must be positive");
  const double denom = 1.0 - alpha * lambda * lambda;
  if (!(denom > 0.0)) {
    throw LambdaOutOfRange("PPR lambda must satisfy lambda < 1/sqrt(alpha)");
  }
  PprParameters out;
  out.m = alpha * (alpha - 1.0) * lambda * lambda / denom;
  const double am = alpha / out.m;
  out.delta = energy / sigma * alpha * lambda * std::pow(1.0 - lambda, alpha - 1.0) * (1.0 + am) *
              std::pow(1.0 + lambda * am, out.m - 1.0);
  out.concavity_warning = lambda > 1.0 / std::sqrt(2.0 * alpha - 1.0);
  return out;
}

double ppr_extrinsic_opening(double alpha, double sigma, double energy) {
  require(alpha > 1.0, "PPR shape index alpha must exceed 1");
  require(sigma > 0.0, "PPR cohesive strength sigma must be positive");
  require(energy > 0.0, "PPR delamination energy must be positive");
  return energy / sigma * alpha;
}

CohesiveLaw1D CohesiveLaw1D::exponential(double rho) {
  require(rho > 0.0 && std::isfinite(rho), "exponential rate rho must be positive");
  return CohesiveLaw1D(Exponential{rho});
}

CohesiveLaw1D CohesiveLaw1D::cubic(double delta) {
  require(delta > 0.0 && std::isfinite(delta), "cubic opening delta must be positive");
  return CohesiveLaw1D(Cubic{delta});
}

CohesiveLaw1D CohesiveLaw1D::ppr_intrinsic(double alpha, double sigma, double lambda,
                                           double energy) {
  const PprParameters pp = ppr_parameters(alpha, sigma, lambda, energy);
  return CohesiveLaw1D(PprIntrinsic{alpha, sigma, lambda, energy, pp.m, pp.delta});
}

CohesiveLaw1D CohesiveLaw1D::ppr_extrinsic(double alpha, double sigma, double energy) {
  return CohesiveLaw1D(PprExtrinsic{alpha, sigma, energy, ppr_extrinsic_opening(alpha, sigma, energy)});
}

LawEval CohesiveLaw1D::eval(double y) const {
  if (!(y >= 0.0)) throw NegativeOpening("opening must be nonnegative, got " + std::to_string(y));
  return std::visit(Overloaded{
                        [y](const Exponential& p) { return eval_exponential(p, y); },
                        [y](const Cubic& p) { return eval_cubic(p, y); },
                        [y](const Intrinsic& p) { return eval_intrinsic(p, y); },
                        [y](const PprIntrinsic& p) { return eval_ppr_intrinsic(p, y); },
                        [y](const PprExtrinsic& p) { return eval_ppr_extrinsic(p, y); },
                    },
                    params_);
}

CohesiveLaw1D::Kind CohesiveLaw1D::kind() const {
  return static_cast<Kind>(params_.index());
}

double CohesiveLaw1D::opening() const {
  return std::visit(Overloaded{
                        [](const Exponential&) { return kInf; },
                        [](const Cubic& p) { return p.delta; },
                        [](const Intrinsic& p) { return p.base->opening(); },
                        [](const PprIntrinsic& p) { return p.delta; },
                        [](const PprExtrinsic& p) { return p.delta; },
                    },
                    params_);
}

double CohesiveLaw1D::effective_opening() const {
  return std::visit(Overloaded{
                        [](const Exponential& p) { return 12.0 * std::log(10.0) / p.rho; },
                        [](const Intrinsic& p) { return p.base->effective_opening(); },
                        [this](const auto&) { return opening(); },
                    },
                    params_);
}

double CohesiveLaw1D::concavity_threshold() const {
  return std::visit(Overloaded{
                        [](const Intrinsic& p) { return p.threshold; },
                        [](const PprIntrinsic& p) { return p.delta * p.lambda; },
                        [](const auto&) { return 0.0; },
                    },
                    params_);
}

double CohesiveLaw1D::lipschitz() const {
  return std::visit(Overloaded{
                        [](const Exponential& p) { return p.rho; },
                        [](const Cubic& p) { return 3.0 / p.delta; },
                        [](const Intrinsic& p) { return p.scale * p.base->eval(p.threshold).slope; },
                        // psi'' changes sign exactly at delta * lambda.
                        [](const PprIntrinsic& p) { return eval_ppr_intrinsic(p, p.delta * p.lambda).slope; },
                        [](const PprExtrinsic& p) { return p.alpha / p.delta; },
                    },
                    params_);
}

std::string CohesiveLaw1D::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const Exponential& p) { os << "exponential(rho=" << p.rho << ")"; },
                 [&](const Cubic& p) { os << "cubic(delta=" << p.delta << ")"; },
                 [&](const Intrinsic& p) {
                   os << "intrinsic(epsilon=" << p.epsilon << ", base=" << p.base->describe() << ")";
                 },
                 [&](const PprIntrinsic& p) {
                   os << "ppr_intrinsic(alpha=" << p.alpha << ", sigma=" << p.sigma
                      << ", lambda=" << p.lambda << ", energy=" << p.energy << ")";
                 },
                 [&](const PprExtrinsic& p) {
                   os << "ppr_extrinsic(alpha=" << p.alpha << ", sigma=" << p.sigma
                      << ", energy=" << p.energy << ")";
                 },
             },
             params_);
  return os.str();
}

bool CohesiveLaw1D::operator==(const CohesiveLaw1D& other) const {
  return describe() == other.describe();
}

CohesiveLaw1D make_intrinsic(const CohesiveLaw1D& base, double epsilon) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "intrinsic epsilon must be positive");
  const double lo0 = std::numeric_limits<double>::epsilon();
  const double hi0 = epsilon * base.lipschitz();
  auto h = [&](double z) { return z - epsilon * base.eval(z).slope; };

  if (!(hi0 > lo0) || !(h(lo0) < 0.0) || !(h(hi0) >= 0.0)) {
    throw NoRoot("cannot bracket z = epsilon * psi'(z) for base " + base.describe());
  }
  // h is strictly increasing for a concave base; anything else means the
  // root is not unique.
  constexpr int kProbe = 64;
  double prev = h(lo0);
  for (int i = 1; i <= kProbe; ++i) {
    const double z = lo0 + (hi0 - lo0) * i / kProbe;
    const double hz = h(z);
    if (hz < prev) throw NoRoot("base law is not concave on the bracket: " + base.describe());
    prev = hz;
  }

  const double tol = 1e-12 * std::max(epsilon, 1.0);
  double lo = lo0;
  double hi = hi0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double zbar = 0.5 * (lo + hi);
  const double scale = 1.0 / (1.0 - base.eval(zbar).value + zbar * zbar / (2.0 * epsilon));
  return CohesiveLaw1D(CohesiveLaw1D::Intrinsic{std::make_shared<const CohesiveLaw1D>(base),
                                                epsilon, zbar, scale});
}

}  // namespace cohesive
