#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "opradius/complex_matrix.hpp"

namespace opradius {

/// The n x n matrices A = D B D with n = 8k + 4 whose numerical radius and
/// that of their inverse stay below 1/cos(pi/n) while ||A|| = 1 + 1/(8 sqrt n).
///
///   D = diag(e^{(2l-1) i pi / 2n}),  l = 1..n
///   E_ij = 1 iff 3k+2 <= |i-j| <= 5k+2 (plain difference, no wraparound)
///   B = I + E / (2 n^{3/2})
struct ExtremalFamily {
  int n = 0;
  int k = 0;
  ComplexMatrix d;
  ComplexMatrix e;
  ComplexMatrix b;
  ComplexMatrix a;
};

/// Cyclic shift P (p_ij = 1 iff i = j + 1 mod n) and Delta = diag(1, ..., 1, -1).
struct SymmetryPair {
  ComplexMatrix p;
  ComplexMatrix delta;
};

/// One named inequality. Upper-bound checks pass when value <= bound +
/// allowance (allowance 1e-10); deviation checks store |computed - target|
/// as value, the tolerance as bound, and use allowance 0.
struct CertificateCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double allowance = 1e-10;
  bool pass = false;
  double slack = 0.0;  // bound - value
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;

  void add_upper(std::string name, double value, double bound, double allowance = 1e-10);
  void add_deviation(std::string name, double computed, double target, double tolerance);
  void append(const CertificateReport& other);
  bool all_pass() const;
  const CertificateCheck* find(std::string_view name) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Throws InvalidInput unless n = 8k + 4 with 12 <= n <= 500.
ExtremalFamily build_extremal_family(int n);

SymmetryPair make_symmetry_pair(int n);

/// max |((P Delta)^{-1} A (P Delta) - e^{2 i pi / n} A)_ij|.
double symmetry_residual(const ExtremalFamily& fam);

/// The conjugation identity plus the intermediate identities
/// P^{-1} D P = e^{i pi/n} Delta D, P^{-1} E P = E, P^n = I and unitarity
/// of P Delta.
CertificateReport check_symmetry(const ExtremalFamily& fam);

/// B e = (1 + 1/(8 sqrt n)) e, ||A|| = ||B|| and sigma_1(B) = 1 + 1/(8 sqrt n).
CertificateReport check_norm(const ExtremalFamily& fam);

/// Spectra of (A + A*)/2 and (A^{-1} + (A^{-1})*)/2 lie in [-1, 1].
CertificateReport check_real_parts(const ExtremalFamily& fam);

/// Matrix M with m_ij = cot(a_i) cot(a_j) e_ij / (2 n^{3/2}),
/// a_i = (i - 1/2) pi / n (one-based i).
ComplexMatrix cotangent_matrix(const ExtremalFamily& fam);

/// ||M||_F^2 <= 9/32, ||E|| = n/4, ||M|| + ||E||/(2 n^{3/2}) <= 7/8 and the
/// quadratic form 2|v|^2 - <Mv,v> + <Ev,v>/(2 n^{3/2}) >= 0.
CertificateReport certificate_real_part(const ExtremalFamily& fam);

/// The four-term splitting of the inverse: bounds on ||M_1||..||M_4||,
/// ||F||, the max-norm facts and ||M_1 + M_2 + M_3 + M_4|| < 1.
CertificateReport certificate_inverse_real_part(const ExtremalFamily& fam);

/// w(A) and w(A^{-1}) are at most 1/cos(pi/n) + 1e-8. The sweep uses the
/// n-fold symmetry only when symmetry_residual certifies it.
CertificateReport check_radius_bounds(const ExtremalFamily& fam, double tol = 1e-10);

/// Rotation invariance of W(A) and W(A^{-1}) on `samples` angles: the support
/// function is 2 pi / n periodic, and every rotated boundary point satisfies
/// all sampled supporting half-planes.
CertificateReport check_range_rotation(const ExtremalFamily& fam, std::size_t samples = 1024);

/// Everything above, in order.
CertificateReport verify_extremal_family(const ExtremalFamily& fam);

struct ScalingRow {
  int n = 0;
  double eps = 0.0;    // 1/cos(pi/n) - 1
  double delta = 0.0;  // ||A_n|| - 1
  double w = 0.0;
  double w_inv = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  double slope = 0.0;  // least-squares slope of log(delta) against log(eps)
};

/// Rows for k = k_min..k_max (n = 8k + 4 <= 500), ordered by n.
ScalingTable scaling_experiment(int k_min, int k_max, double tol = 1e-10);

/// CSV "n,eps,delta,w,w_inv" followed by "# slope=<value>".
std::string scaling_csv(const ScalingTable& table);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace opradius
