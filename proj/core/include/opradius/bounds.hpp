#pragma once

#include <string>
#include <vector>

#include "opradius/complex_matrix.hpp"

namespace opradius {

/// X(r) = r + sqrt(r^2 - 1), r >= 1.
double x_of_r(double r);

/// X(r) + sqrt(X(r)^2 - 1): upper bound on the largest norm of A when both
/// w(A) and w(A^{-1}) are at most r.
double psi_upper(double r);

/// (2 + rho r^2 - rho + sqrt((2 + rho r^2 - rho)^2 - 4 r^2)) / (2 r), for
/// 1 <= rho <= 2 and r >= 1. Reduces to r at rho = 1 and to X(r) at rho = 2.
double x_rho(double rho, double r);

/// X_rho(r) + sqrt(X_rho(r)^2 - 1).
double psi_rho_upper(double rho, double r);

/// min(psi_rho_upper(rho, r), rho r): the bound reported to users, since the
/// trivial estimate psi_rho(r) <= rho r also holds.
double operative_psi_bound(double rho, double r);

/// 1 + (8 (rho - 1) eps)^{1/4}, the leading term of psi_rho(1 + eps).
/// Requires 0 <= eps <= 0.1 and 1 <= rho <= 2.
double asymptotic_upper(double eps, double rho);

/// Root of psi_upper(r) - 2 r on (1, 1.1) by bisection to 1e-12.
double crossover_root();

struct LowerWitness {
  ComplexMatrix matrix;  // [[1, 2y], [0, -1]], y = sqrt(r^2 - 1); self-inverse
  double norm = 1.0;     // r + sqrt(r^2 - 1)
};

/// 2x2 matrix with w(A) = w(A^{-1}) = r and ||A|| = r + sqrt(r^2 - 1).
LowerWitness lower_witness(double r);

struct MidpointReport {
  ComplexMatrix midpoint;      // (A + (A*)^{-1}) / 2
  double norm_a = 0.0;         // ||A||
  double norm_m = 0.0;         // ||M||
  double norm_m_inverse = 0.0; // ||M^{-1}||
  double bound = 0.0;          // ||M|| + sqrt(max(||M||^2 - 1, 0))
  bool inverse_contractive = false;  // ||M^{-1}|| <= 1 + 1e-10
  bool norm_bounded = false;         // ||A|| <= bound + 1e-9
  bool holds() const { return inverse_contractive && norm_bounded; }
};

/// Builds M = (A + (A*)^{-1}) / 2 and checks ||M^{-1}|| <= 1 and
/// ||A|| <= ||M|| + sqrt(||M||^2 - 1).
MidpointReport midpoint_certificate(const ComplexMatrix& a);

struct BoundRow {
  double r = 1.0;
  double x_value = 1.0;
  double psi_upper = 1.0;  // operative bound min(psi_rho_upper, rho r)
  double psi_lower = 1.0;
  double asymptotic = 1.0;
};

struct BoundCurve {
  double rho = 2.0;
  std::vector<BoundRow> rows;
};

/// Evaluates the envelopes on `steps` evenly spaced r values in
/// [r_min, r_max] (a single row when steps == 1). psi_lower is the witness
/// value r + sqrt(r^2 - 1) at rho = 2 and the scalar witness r otherwise.
BoundCurve bound_curve(double rho, double r_min, double r_max, std::size_t steps);

/// CSV with header "r,X,psi_upper,psi_lower,asymptotic".
std::string bound_curve_csv(const BoundCurve& curve);

}  // namespace opradius
