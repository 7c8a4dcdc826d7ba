#pragma once

// Data-parallel sweeps over sample points and mesh elements.
//
// Each kernel has a serial reference path and an OpenMP path. Both write one
// result per index into preallocated storage, so their outputs are
// bit-identical and any reduction happens afterwards in index order.

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include "cohesive/mixedmode.hpp"

namespace cohesive {

enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, n). Exceptions thrown inside the parallel region
// are captured and the first one is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

int max_threads();

struct LawSamples {
  std::vector<double> phi;
  std::vector<Vec2> grad_phi;
  std::vector<Vec2> dz_phi;
  std::vector<Vec2> tension;
};

// Phi, grad_y Phi, grad_z Phi and T at each (y[i], z[i]).
LawSamples evaluate_batch(const LoadingDensity& psi, std::span<const Vec2> y,
                          std::span<const Vec2> z, Exec exec = Exec::Parallel);

// Index of the largest value, first occurrence on ties; n if empty.
std::size_t argmax(std::span<const double> values);

}  // namespace cohesive
