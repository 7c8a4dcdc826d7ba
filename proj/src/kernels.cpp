#include "cohesive/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cohesive {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

LawSamples evaluate_batch(const LoadingDensity& psi, std::span<const Vec2> y,
                          std::span<const Vec2> z, Exec exec) {
  if (y.size() != z.size()) throw std::invalid_argument("evaluate_batch: y and z sizes differ");
  const std::size_t n = y.size();
  LawSamples out;
  out.phi.resize(n);
  out.grad_phi.resize(n);
  out.dz_phi.resize(n);
  out.tension.resize(n);
  parallel_for(n, exec, [&](std::size_t i) {
    out.phi[i] = eval_phi(psi, y[i], z[i]);
    out.grad_phi[i] = grad_phi(psi, y[i], z[i]);
    out.dz_phi[i] = dz_phi(psi, y[i], z[i]);
    out.tension[i] = eval_t(psi, y[i], z[i]);
  });
  return out;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (best == values.size() || values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace cohesive
