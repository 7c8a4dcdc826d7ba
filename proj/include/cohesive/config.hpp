#pragma once

// Plain-text "key = value" configuration files. '#' starts a comment, blank
// lines are ignored, keys may appear once, unknown keys are rejected. Errors
// are ConfigError with the key and line number.
//
// Law file keys:
//   mode          potential | nonpotential
//   energy1/2     delamination energies E1, E2 of the bilinear coupling
//   coupling      c, or "auto" for max(E1, E2)
//   psiN.kind     exponential | cubic | intrinsic | ppr_intrinsic | ppr_extrinsic
//   psiN.rho      exponential
//   psiN.delta    cubic
//   psiN.alpha, psiN.sigma, psiN.lambda (intrinsic PPR only), psiN.energy
//                 PPR; energy defaults to energyN
//   psiN.epsilon, psiN.base.kind, psiN.base.<param>
//                 intrinsic version of a base law
//
// Problem file keys: see README.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cohesive/laminate.hpp"
#include "cohesive/mixedmode.hpp"

namespace cohesive {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<ConfigEntry> parse_key_values(std::istream& in);

LoadingDensity parse_law(std::istream& in);
LoadingDensity load_law(const std::filesystem::path& path);

// Relative law paths are resolved against base_dir.
LaminateProblem parse_problem(std::istream& in, const std::filesystem::path& base_dir);
LaminateProblem load_problem(const std::filesystem::path& path);

}  // namespace cohesive
