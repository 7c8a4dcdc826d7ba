#include <cmath>
#include <sstream>

#include "doctest.h"

#include "cohesive/errors.hpp"
#include "cohesive/pathsim.hpp"

using namespace cohesive;

TEST_CASE("case table") {
  CHECK_THROWS_AS(case_setup(0), InvalidParameter);
  CHECK_THROWS_AS(case_setup(5), InvalidParameter);
  const CaseSetup s = case_setup(3);
  const LoadingDensity d = case_density(s, CouplingMode::Potential);
  CHECK(d.coupling().coupling == 6.0);
  CHECK(d.nonphysical_coupling());
  CHECK(case_density(case_setup(1), CouplingMode::Potential).coupling().vanishing_at_saturation());
  const LoadingPath p = case_path(case_setup(4), 2000);
  CHECK(p.t.size() == 2000);
  CHECK(p.t.back() == doctest::Approx(3 * M_PI / 0.125));
}

TEST_CASE("uniform path arguments") {
  CHECK_THROWS_AS(LoadingPath::uniform({1, 1}, {1, 1}, 1.0, 1), InvalidParameter);
  CHECK_THROWS_AS(LoadingPath::uniform({1, 1}, {1, 1}, 0.0, 10), InvalidParameter);
  const auto p = LoadingPath::uniform({2, 3}, {1, 1}, M_PI, 5);
  const Vec2 y = p.opening(M_PI / 2);
  CHECK(y[0] == doctest::Approx(2));
  CHECK(y[1] == doctest::Approx(3));
  CHECK(p.opening(1.5 * M_PI)[0] >= 0.0);
}

TEST_CASE("history is the running max of the opening") {
  const CaseRun run = run_case(2, 500);
  for (const PathTrace* tr : {&run.potential, &run.nonpotential}) {
    Vec2 m{0, 0};
    for (const TraceRow& r : tr->rows) {
      m = join(m, r.y);
      CHECK(r.z[0] == m[0]);
      CHECK(r.z[1] == m[1]);
    }
  }
  CHECK(std::isnan(run.nonpotential.rows[10].energy));
  CHECK(std::isfinite(run.potential.rows[10].energy));
}

TEST_CASE("unloading intervals on a hand-made trace") {
  PathTrace tr;
  const double y1[] = {0, 1, 2, 1, 0.5, 1.5, 2.5, 2, 3};
  double z = 0;
  for (double v : y1) {
    TraceRow r;
    r.y = {v, v};
    z = std::max(z, v);
    r.z = {z, z};
    r.traction = {v, v};
    tr.rows.push_back(r);
  }
  const auto iv = unloading_intervals(tr, 0);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].first == 3);
  CHECK(iv[0].last == 5);
  CHECK(iv[1].first == 7);
  CHECK(iv[1].last == 7);
  CHECK(first_unloading(tr) == 3);
  const OriginFit f = fit_through_origin(tr, iv[0], 0);
  CHECK(f.slope == doctest::Approx(1.0));
  CHECK(f.max_residual <= 1e-15);
}

TEST_CASE("first loading: potential and tension models coincide") {
  for (int n = 1; n <= 4; ++n) {
    const CaseRun run = run_case(n, 2000);
    const std::size_t k = std::min(first_unloading(run.potential), first_unloading(run.nonpotential));
    CHECK(k > 10);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(std::abs(run.potential.rows[i].traction[0] - run.nonpotential.rows[i].traction[0]) <= 1e-12);
      CHECK(std::abs(run.potential.rows[i].traction[1] - run.nonpotential.rows[i].traction[1]) <= 1e-12);
    }
  }
}

TEST_CASE("trace csv") {
  const CaseRun run = run_case(1, 20);
  std::ostringstream a, b;
  write_trace_csv(a, run.potential);
  write_trace_csv(b, run_case(1, 20).potential);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("t,y1,y2,z1,z2,traction1,traction2,energy\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : a.str()) lines += c == '\n';
  CHECK(lines == 21);
}
