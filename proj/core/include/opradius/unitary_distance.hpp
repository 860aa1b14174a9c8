#pragma once

#include "opradius/complex_matrix.hpp"

namespace opradius {

/// Distance from an invertible matrix to the unitary group in operator norm.
struct UnitaryGap {
  double distance = 0.0;        // max(norm_excess, inverse_excess)
  ComplexMatrix nearest;        // unitary polar factor of A
  double norm_excess = 0.0;     // ||A|| - 1
  double inverse_excess = 0.0;  // 1 - 1/||A^{-1}||
};

/// The infimum of ||A - U|| over unitaries equals max(||A|| - 1,
/// 1 - 1/||A^{-1}||) and is attained by the polar factor. Throws
/// SingularMatrix when sigma_n <= 1e-12 sigma_1.
UnitaryGap distance_to_unitaries(const ComplexMatrix& a);

/// psi_rho-upper(max(w, w_inv)) - 1: an upper bound on the distance to the
/// unitaries for any A with w_rho(A) <= w and w_rho(A^{-1}) <= w_inv.
/// w and w_inv must be >= 1 - 1e-12; rho in [1, 2].
double stampfli_gap_bound(double w, double w_inv, double rho = 2.0);

}  // namespace opradius
