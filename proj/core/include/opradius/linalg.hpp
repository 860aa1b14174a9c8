#pragma once

#include "opradius/complex_matrix.hpp"

namespace opradius {

/// Eigendecomposition H = V diag(values) V* of a Hermitian matrix.
/// values ascend; column j of `vectors` belongs to values[j]. `vectors` is
/// empty when it was not requested.
struct HermitianEigen {
  RVector values;
  ComplexMatrix vectors;
};

struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};

struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
};

/// Cyclic complex Jacobi. The input must be Hermitian to within
/// 1e-12 * ||H||_F; it is symmetrized before rotating.
HermitianEigen eig_hermitian(const ComplexMatrix& h, bool want_vectors = true);

/// Smallest and largest eigenvalue of a Hermitian matrix by Householder
/// tridiagonalization and Sturm bisection. Intended for hot loops (support
/// function sweeps) where eigenvectors are not needed. Only the lower
/// triangle of `h` is read.
ExtremeEigenvalues hermitian_extreme_eigenvalues(const ComplexMatrix& h);

struct TopEigenpair {
  double value = 0.0;
  CVector vector;  // unit norm
};

/// Largest eigenvalue from the tridiagonal path and a unit vector from
/// shifted inverse iteration (Cholesky of (lambda + delta) I - H). When the
/// top eigenvalue is clustered the vector lies in the cluster's span.
TopEigenpair hermitian_top_eigenpair(const ComplexMatrix& h);

/// Singular values, descending, as square roots of the eigenvalues of A*A.
RVector singular_values(const ComplexMatrix& a);

/// ||A|| = sigma_1, via the extreme eigenvalue of A*A.
double operator_norm(const ComplexMatrix& a);

/// Spectral norm of a Hermitian matrix: max(|lambda_min|, |lambda_max|).
double hermitian_norm(const ComplexMatrix& h);

/// A = U P with U unitary, P Hermitian positive definite. Requires
/// sigma_n(A) > 1e-12 sigma_1(A).
PolarFactors polar(const ComplexMatrix& a);

/// LU with partial pivoting. Throws SingularMatrix on a zero or negligible
/// pivot.
ComplexMatrix inverse(const ComplexMatrix& a);

/// All eigenvalues of a general square matrix (Hessenberg reduction followed
/// by shifted complex QR). Order is unspecified.
CVector eigenvalues(const ComplexMatrix& a);

}  // namespace opradius
