#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "opradius/complex_matrix.hpp"
#include "opradius/radii.hpp"

namespace opradius {

struct RandomTestConfig {
  std::size_t dim_min = 2;
  std::size_t dim_max = 8;
  std::size_t samples = 500;
  double rho = 2.0;
  std::uint64_t seed = kDefaultSeed;
};

struct RandomCase {
  std::size_t index = 0;
  std::size_t dim = 0;
  double r = 1.0;       // balanced radius max(w_rho(tA), w_rho((tA)^{-1}))
  double norm = 0.0;    // ||tA||
  double bound = 0.0;   // psi_rho_upper(rho, r)
  double ratio = 0.0;   // norm / bound
  double distance = 0.0;
  ComplexMatrix matrix; // tA
};

struct RandomTestSummary {
  RandomTestConfig config;
  std::size_t violations = 0;           // ||tA|| > bound + 1e-6 ||tA||
  std::size_t distance_violations = 0;  // rho = 2 only
  std::size_t skipped = 0;              // numerically singular draws
  double max_ratio = 0.0;
  std::optional<RandomCase> worst_case;

  bool passed() const { return violations == 0 && distance_violations == 0; }
  nlohmann::json to_json() const;
};

/// n x n complex Gaussian matrix with entry variance 1/n drawn from `rng`.
ComplexMatrix random_gaussian_matrix(std::size_t n, std::mt19937_64& rng);

/// Sample i uses stream (seed, i) for its dimension and entries, so results
/// do not depend on the worker count. Each draw A is rescaled by
/// t = sqrt(w_rho(A^{-1}) / w_rho(A)) so that both radii agree, then
/// ||tA|| is compared with psi_rho_upper(rho, r). At rho = 2 the distance to
/// the unitaries is also checked against psi(r) - 1.
RandomTestSummary random_test(const RandomTestConfig& config);

}  // namespace opradius
