#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opradius/complex_matrix.hpp"

namespace opradius {

inline constexpr std::uint64_t kDefaultSeed = 20120401;

enum class RadiusKind { operator_norm, numerical_radius, rho_radius, spectral_radius };

std::string_view to_string(RadiusKind kind);

/// A computed radius together with how it was obtained.
///
/// `value` is always attained: it is a lower bound for the true radius and
/// `witness` (when non-empty) is a unit vector reaching it. `upper_bound` is a
/// certified upper bound; `exact` is set when upper_bound - value <= tolerance.
struct RadiusEstimate {
  double value = 0.0;
  double upper_bound = 0.0;
  RadiusKind kind = RadiusKind::numerical_radius;
  double rho = 2.0;
  double tolerance = 0.0;
  bool exact = false;
  CVector witness;
  std::size_t evaluations = 0;
};

/// One sample of the numerical-range boundary: the support value in direction
/// `angle` and the boundary point <Av, v> of the top eigenvector v of the
/// rotated Hermitian part.
struct SupportPoint {
  double angle = 0.0;
  double support_value = 0.0;
  cplx boundary_point{};
};

struct SweepOptions {
  /// Coarse grid size over the full circle. With symmetry_order m the grid
  /// over one period [0, 2 pi / m] keeps the same density.
  std::size_t coarse_points = 256;
  /// Caller-asserted rotational symmetry W(A) = exp(2 pi i / m) W(A). Only
  /// one period of the support function is swept.
  std::size_t symmetry_order = 1;
  std::size_t max_evaluations = 2'000'000;
  bool want_witness = true;
};

/// (e^{i theta} A + e^{-i theta} A*) / 2.
ComplexMatrix rotated_hermitian_part(const ComplexMatrix& a, double theta);

/// lambda_max of the rotated Hermitian part, i.e. the support function of
/// W(A) in direction theta.
double support_value(const ComplexMatrix& a, double theta);

SupportPoint support_point(const ComplexMatrix& a, double theta);

/// Numerical radius w(A) = max over theta of the support function.
///
/// A coarse sweep is followed by branch-and-bound bisection. Between two
/// evaluated angles the numerical range lies inside the wedge cut out by the
/// two supporting lines, which gives a rigorous upper bound on the support
/// function over that interval. Refinement stops once the best upper bound is
/// within `tol` of the best evaluated value. tol must lie in [1e-12, 1e-2].
RadiusEstimate numerical_radius(const ComplexMatrix& a, double tol = 1e-10,
                                const SweepOptions& options = {});

struct RhoOptions {
  int restarts = 32;
  int max_iterations = 200;
  double tol = 1e-12;
  std::uint64_t seed = kDefaultSeed;
};

/// g(h) = (1-1/rho) t + sqrt((1-1/rho)^2 t^2 + (2/rho-1) s^2) with
/// t = |<Ah,h>|, s = ||Ah||, for a unit vector h. Requires 1 <= rho <= 2.
double rho_objective(const ComplexMatrix& a, std::span<const cplx> h, double rho);

/// Operator rho-radius for 1 <= rho <= 2. rho = 1 is the operator norm,
/// rho = 2 the numerical radius; in between the sphere maximum of
/// rho_objective is found by multistart projected gradient ascent, so the
/// value is attained but not certified globally optimal. At rho = 2 the sweep
/// runs with tolerance max(options.tol, 1e-10).
RadiusEstimate rho_radius(const ComplexMatrix& a, double rho, const RhoOptions& options = {});

/// max |lambda| over the eigenvalues of A.
double spectral_radius(const ComplexMatrix& a);

/// `samples` support points on the uniform grid theta_j = 2 pi j / samples.
std::vector<SupportPoint> range_boundary(const ComplexMatrix& a, std::size_t samples);

/// CSV with header "theta,support_value,re,im".
std::string range_boundary_csv(const std::vector<SupportPoint>& points);

}  // namespace opradius
