#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cohesive/kernels.hpp"

using namespace cohesive;

TEST_CASE("serial and parallel batches are bit-identical") {
  const LoadingDensity psi({2.0, 2.0, 2.0, CouplingMode::Potential}, CohesiveLaw1D::ppr_intrinsic(2, 2, 0.2, 2),
                           CohesiveLaw1D::ppr_intrinsic(2, 2, 0.2, 2));
  std::mt19937_64 rng(3);
  std::vector<Vec2> y(5000), z(5000);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = {static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2};
    z[i] = {static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2};
  }
  const LawSamples a = evaluate_batch(psi, y, z, Exec::Serial);
  const LawSamples b = evaluate_batch(psi, y, z, Exec::Parallel);
  REQUIRE(a.phi.size() == y.size());
  CHECK(std::memcmp(a.phi.data(), b.phi.data(), a.phi.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.grad_phi.data(), b.grad_phi.data(), a.grad_phi.size() * sizeof(Vec2)) == 0);
  CHECK(std::memcmp(a.dz_phi.data(), b.dz_phi.data(), a.dz_phi.size() * sizeof(Vec2)) == 0);
  CHECK(std::memcmp(a.tension.data(), b.tension.data(), a.tension.size() * sizeof(Vec2)) == 0);
}

TEST_CASE("argmax takes the first occurrence") {
  const std::vector<double> v{1.0, 3.0, 2.0, 3.0};
  CHECK(argmax(v) == 1);
  CHECK(argmax(std::span<const double>{}) == 0);
}

TEST_CASE("parallel_for rethrows on the caller") {
  CHECK_THROWS_AS(parallel_for(100, Exec::Parallel,
                               [](std::size_t i) {
                                 if (i == 57) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(max_threads() >= 1);
}
