#include "opradius/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "opradius/bounds.hpp"
#include "opradius/linalg.hpp"
#include "opradius/matrix_io.hpp"
#include "opradius/parallel.hpp"
#include "opradius/unitary_distance.hpp"

namespace opradius {
namespace {

constexpr double kRelativeSlack = 1e-6;
constexpr double kDistanceSlack = 1e-8;

struct Outcome {
  bool skipped = false;
  bool violation = false;
  bool distance_violation = false;
  RandomCase result;
};

Outcome run_sample(const RandomTestConfig& cfg, std::size_t index) {
  std::mt19937_64 rng = stream_rng(cfg.seed, index);
  std::uniform_int_distribution<std::size_t> pick(cfg.dim_min, cfg.dim_max);
  const std::size_t dim = pick(rng);
  ComplexMatrix a = random_gaussian_matrix(dim, rng);

  Outcome out;
  out.result.index = index;
  out.result.dim = dim;
  ComplexMatrix inv;
  try {
    inv = inverse(a);
  } catch (const SingularMatrix&) {
    out.skipped = true;
    return out;
  }
  RhoOptions opt;
  opt.seed = cfg.seed ^ (index * 0x9e3779b97f4a7c15ULL);
  const double w = rho_radius(a, cfg.rho, opt).value;
  const double w_inv = rho_radius(inv, cfg.rho, opt).value;
  const double t = std::sqrt(w_inv / w);
  a *= t;

  RandomCase& rc = out.result;
  rc.r = std::max(std::sqrt(w * w_inv), 1.0);
  rc.norm = operator_norm(a);
  rc.bound = psi_rho_upper(cfg.rho, rc.r);
  rc.ratio = rc.norm / rc.bound;
  out.violation = rc.norm > rc.bound + kRelativeSlack * rc.norm;
  if (cfg.rho == 2.0) {
    try {
      rc.distance = distance_to_unitaries(a).distance;
      out.distance_violation = rc.distance > stampfli_gap_bound(rc.r, rc.r, 2.0) + kDistanceSlack;
    } catch (const SingularMatrix&) {
      out.skipped = true;
      return out;
    }
  }
  rc.matrix = std::move(a);
  return out;
}

}  // namespace

ComplexMatrix random_gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  // Real and imaginary parts each carry half of the 1/n variance.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 / static_cast<double>(n)));
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = {re, im};
    }
  return m;
}

RandomTestSummary random_test(const RandomTestConfig& config) {
  if (!(config.rho >= 1.0 && config.rho <= 2.0)) throw InvalidInput("random_test: rho must lie in [1, 2]");
  if (config.samples < 1) throw InvalidInput("random_test: samples must be at least 1");
  if (config.dim_min < 1 || config.dim_max < config.dim_min || config.dim_max > 64) {
    throw InvalidInput("random_test: need 1 <= dim_min <= dim_max <= 64");
  }
  std::vector<Outcome> outcomes(config.samples);
  parallel_for(config.samples, [&](std::size_t i) { outcomes[i] = run_sample(config, i); });

  RandomTestSummary summary;
  summary.config = config;
  for (auto& o : outcomes) {
    if (o.skipped) {
      ++summary.skipped;
      continue;
    }
    summary.violations += o.violation ? 1 : 0;
    summary.distance_violations += o.distance_violation ? 1 : 0;
    if (!summary.worst_case || o.result.ratio > summary.max_ratio) {
      summary.max_ratio = o.result.ratio;
      summary.worst_case = std::move(o.result);
    }
  }
  return summary;
}

nlohmann::json RandomTestSummary::to_json() const {
  nlohmann::json j = {{"rho", config.rho},
                      {"samples", config.samples},
                      {"seed", config.seed},
                      {"dim_min", config.dim_min},
                      {"dim_max", config.dim_max},
                      {"violations", violations},
                      {"distance_violations", distance_violations},
                      {"skipped", skipped},
                      {"max_ratio", max_ratio},
                      {"pass", passed()}};
  if (worst_case) {
    j["worst_case"] = {{"index", worst_case->index},
                       {"dim", worst_case->dim},
                       {"r", worst_case->r},
                       {"norm", worst_case->norm},
                       {"bound", worst_case->bound},
                       {"ratio", worst_case->ratio},
                       {"distance", worst_case->distance},
                       {"matrix", matrix_to_json(worst_case->matrix)}};
  } else {
    j["worst_case"] = nullptr;
  }
  return j;
}

}  // namespace opradius
