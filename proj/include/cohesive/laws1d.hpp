#pragma once

// One-dimensional cohesive densities psi: [0, inf) -> [0, 1].
//
// Every law is normalised so that sup psi = 1; the delamination energy lives
// in the two-dimensional coupling (see mixedmode.hpp). Laws are immutable
// value types and evaluation is thread-safe.
//
// At kinks and junctions (cubic at delta, intrinsic at its elastic threshold,
// PPR at its opening) derivatives are right-derivatives.

#include <memory>
#include <string>
#include <variant>

namespace cohesive {

struct LawEval {
  double value = 0.0;   // psi(y)
  double slope = 0.0;   // psi'(y)
  double curv = 0.0;    // psi''(y)
};

struct PprParameters {
  double m = 0.0;
  double delta = 0.0;
  // Set when lambda > 1/sqrt(2 alpha - 1): the density is still defined but
  // psi' - y psi'' >= 0 is no longer guaranteed.
  bool concavity_warning = false;
};

// m and the final opening delta of the intrinsic PPR law.
// Throws InvalidParameter for alpha <= 1, sigma <= 0, energy <= 0 or
// lambda <= 0, and LambdaOutOfRange when lambda >= 1/sqrt(alpha).
PprParameters ppr_parameters(double alpha, double sigma, double lambda, double energy);

// Opening of the extrinsic PPR law, the lambda -> 0 limit: energy * alpha / sigma.
double ppr_extrinsic_opening(double alpha, double sigma, double energy);

class CohesiveLaw1D {
 public:
  enum class Kind { Exponential, Cubic, Intrinsic, PprIntrinsic, PprExtrinsic };

  struct Exponential {
    double rho;
  };
  struct Cubic {
    double delta;
  };
  struct Intrinsic {
    std::shared_ptr<const CohesiveLaw1D> base;
    double epsilon;
    double threshold;  // z_bar = epsilon * base'(z_bar)
    double scale;      // 1 / (1 - base(z_bar) + z_bar^2 / (2 epsilon))
  };
  struct PprIntrinsic {
    double alpha, sigma, lambda, energy, m, delta;
  };
  struct PprExtrinsic {
    double alpha, sigma, energy, delta;
  };

  using Params = std::variant<Exponential, Cubic, Intrinsic, PprIntrinsic, PprExtrinsic>;

  static CohesiveLaw1D exponential(double rho);
  static CohesiveLaw1D cubic(double delta);
  static CohesiveLaw1D ppr_intrinsic(double alpha, double sigma, double lambda, double energy);
  static CohesiveLaw1D ppr_extrinsic(double alpha, double sigma, double energy);

  // Throws NegativeOpening for y < 0.
  LawEval eval(double y) const;

  Kind kind() const;
  const Params& params() const { return params_; }

  // Opening at which psi reaches 1; +inf for the exponential law.
  double opening() const;

  // Finite length scale that bounds the interesting part of the law: the
  // opening when finite, otherwise the point where 1 - psi drops below 1e-12.
  double effective_opening() const;

  // Below this opening concavity is not required (initial elastic branch).
  // Zero for laws that are concave everywhere.
  double concavity_threshold() const;

  // Lipschitz constant sup psi' (exact for the packaged laws).
  double lipschitz() const;

  std::string describe() const;

  bool operator==(const CohesiveLaw1D& other) const;

 private:
  explicit CohesiveLaw1D(Params p) : params_(std::move(p)) {}
  friend CohesiveLaw1D make_intrinsic(const CohesiveLaw1D& base, double epsilon);

  Params params_;
};

// Intrinsic version of a concave base law: quadratic y^2/(2 eps) up to the
// unique root z_bar of z = eps * base'(z), then the shifted base, rescaled so
// that sup = 1. Throws NoRoot when the root cannot be bracketed, which is the
// case for non-concave bases (and for bases with base'(0) = 0).
CohesiveLaw1D make_intrinsic(const CohesiveLaw1D& base, double epsilon);

}  // namespace cohesive
