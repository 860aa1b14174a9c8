#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace opradius {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using RVector = std::vector<double>;

/// Raised when an input violates a documented precondition (shape, range,
/// congruence). The CLI maps it to a usage error.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix is singular or too ill-conditioned for the requested
/// operation.
class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  /// Row-major nested initializer, e.g. {{1, 2}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * dim_, dim_}; }
  std::span<const cplx> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// (A + A*) / 2.
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  double frobenius_norm() const;
  double max_abs_entry() const;
  bool all_finite() const;
  bool is_hermitian(double tol) const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx scalar);
CVector operator*(const ComplexMatrix& m, std::span<const cplx> v);

/// Largest entrywise modulus of a - b.
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

/// <x, y> = sum conj(y_i) x_i, linear in the first argument.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> v);
/// Scales v to unit norm in place; returns the original norm.
double normalize(std::span<cplx> v);

}  // namespace opradius
