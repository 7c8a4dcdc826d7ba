#include <cmath>
#include <limits>

#include "doctest.h"

#include "cohesive/errors.hpp"
#include "cohesive/laws1d.hpp"

using namespace cohesive;

namespace {

void check_fd(const CohesiveLaw1D& law, double y, double h = 1e-6) {
  const LawEval e = law.eval(y);
  const double d1 = (law.eval(y + h).value - law.eval(y - h).value) / (2 * h);
  const double d2 = (law.eval(y + h).slope - law.eval(y - h).slope) / (2 * h);
  CHECK(std::abs(d1 - e.slope) <= 1e-6 * (1 + std::abs(e.slope)));
  CHECK(std::abs(d2 - e.curv) <= 1e-5 * (1 + std::abs(e.curv)));
}

}  // namespace

TEST_CASE("exponential law at y = 1") {
  const LawEval e = CohesiveLaw1D::exponential(1.0).eval(1.0);
  CHECK(e.value == doctest::Approx(0.63212055882855768).epsilon(1e-14));
  CHECK(e.slope == doctest::Approx(0.36787944117144232).epsilon(1e-14));
  CHECK(e.curv == doctest::Approx(-0.36787944117144232).epsilon(1e-14));
  CHECK(std::isinf(CohesiveLaw1D::exponential(1.0).opening()));
}

TEST_CASE("cubic law") {
  const auto law = CohesiveLaw1D::cubic(2.0);
  CHECK(law.eval(0.0).value == 0.0);
  CHECK(law.eval(1.0).value == doctest::Approx(0.875));
  CHECK(law.eval(2.0).value == 1.0);
  CHECK(law.eval(5.0).slope == 0.0);
  CHECK(law.lipschitz() == doctest::Approx(1.5));
  check_fd(law, 0.7);
  check_fd(law, 1.9);
}

TEST_CASE("intrinsic exponential threshold") {
  const auto law = make_intrinsic(CohesiveLaw1D::exponential(1.0), 1.0);
  const auto& p = std::get<CohesiveLaw1D::Intrinsic>(law.params());
  // z = exp(-z)
  CHECK(p.threshold == doctest::Approx(0.56714329040978387).epsilon(1e-12));
  CHECK(law.concavity_threshold() == p.threshold);
  // C1 junction
  const double z = p.threshold;
  CHECK(law.eval(z - 1e-9).slope == doctest::Approx(law.eval(z).slope).epsilon(1e-7));
  CHECK(law.eval(z).value == doctest::Approx(z * z / 2.0 * p.scale).epsilon(1e-12));
  check_fd(law, 0.3);
  check_fd(law, 2.0);
  CHECK(law.eval(200.0).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intrinsic of a base with zero initial slope has no threshold") {
  const auto once = make_intrinsic(CohesiveLaw1D::exponential(1.0), 1.0);
  CHECK_THROWS_AS(make_intrinsic(once, 1.0), NoRoot);
}

TEST_CASE("PPR parameters") {
  const PprParameters p = ppr_parameters(2.0, 2.0, 0.2, 2.0);
  CHECK(std::abs(p.m - 2.0 / 23.0) <= 1e-12);
  CHECK(std::abs(p.delta - 1.5930632586463705) <= 1e-10 * 1.5930632586463705);
  CHECK_FALSE(p.concavity_warning);
  const PprParameters q = ppr_parameters(2.0, 2.0, 0.2, 6.0);
  CHECK(std::abs(q.delta - 4.7791897759391115) <= 1e-10 * 4.7791897759391115);
  CHECK(ppr_extrinsic_opening(2.0, 2.0, 2.0) == 2.0);
  CHECK(ppr_parameters(2.0, 2.0, 0.6, 2.0).concavity_warning);
}

TEST_CASE("PPR parameter errors") {
  CHECK_THROWS_AS(ppr_parameters(1.0, 2.0, 0.2, 2.0), InvalidParameter);
  CHECK_THROWS_AS(ppr_parameters(2.0, 0.0, 0.2, 2.0), InvalidParameter);
  CHECK_THROWS_AS(ppr_parameters(2.0, 2.0, 0.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(ppr_parameters(2.0, 2.0, 0.2, -1.0), InvalidParameter);
  CHECK_THROWS_AS(ppr_parameters(4.0, 2.0, 0.5, 2.0), LambdaOutOfRange);
  CHECK_THROWS_AS(ppr_parameters(2.0, 2.0, 0.9, 2.0), LambdaOutOfRange);
}

TEST_CASE("PPR intrinsic shape") {
  const auto law = CohesiveLaw1D::ppr_intrinsic(2.0, 2.0, 0.2, 2.0);
  const double d = law.opening();
  CHECK(law.eval(0.0).value == 0.0);
  CHECK(law.eval(d).value == 1.0);
  CHECK(law.eval(2 * d).slope == 0.0);
  // peak traction E * psi' at the concavity threshold equals sigma
  CHECK(2.0 * law.eval(law.concavity_threshold()).slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(law.lipschitz() == law.eval(law.concavity_threshold()).slope);
  for (double y : {0.05, 0.3, 0.9, 1.4}) check_fd(law, y * d / 1.5);
}

TEST_CASE("extrinsic limit converges monotonically") {
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const double gap = std::abs(ppr_parameters(2.0, 2.0, lambda, 2.0).delta - 2.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-2);
  const auto ext = CohesiveLaw1D::ppr_extrinsic(2.0, 2.0, 2.0);
  CHECK(ext.opening() == 2.0);
  CHECK(ext.eval(2.0).value == 1.0);
  check_fd(ext, 0.7);
}

TEST_CASE("negative opening is rejected") {
  CHECK_THROWS_AS(CohesiveLaw1D::cubic(1.0).eval(-1e-300), NegativeOpening);
  CHECK_THROWS_AS(CohesiveLaw1D::exponential(1.0).eval(-1.0), NegativeOpening);
}

TEST_CASE("law equality and description") {
  CHECK(CohesiveLaw1D::cubic(1.0) == CohesiveLaw1D::cubic(1.0));
  CHECK_FALSE(CohesiveLaw1D::cubic(1.0) == CohesiveLaw1D::cubic(2.0));
  CHECK_FALSE(CohesiveLaw1D::ppr_intrinsic(2, 2, 0.2, 2).describe().empty());
}
