#include "opradius/extremal_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "opradius/linalg.hpp"
#include "opradius/output.hpp"
#include "opradius/parallel.hpp"
#include "opradius/radii.hpp"

namespace opradius {
namespace {

constexpr double kPi = std::numbers::pi;

double coupling(int n) { return 1.0 / (2.0 * std::pow(static_cast<double>(n), 1.5)); }

double norm_target(int n) { return 1.0 + 1.0 / (8.0 * std::sqrt(static_cast<double>(n))); }

double radius_target(int n) { return 1.0 / std::cos(kPi / n); }

// cot((i - 1/2) pi / n) for one-based i; the angle stays inside (0, pi).
std::vector<double> cotangents(int n) {
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double angle = (static_cast<double>(i) + 0.5) * kPi / n;
    c[static_cast<std::size_t>(i)] = std::cos(angle) / std::sin(angle);
  }
  return c;
}

// Entrywise cot_i cot_j x_ij * scale.
ComplexMatrix cot_weighted(const ComplexMatrix& x, const std::vector<double>& cot, double scale) {
  const std::size_t n = x.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = scale * cot[i] * cot[j] * x(i, j);
  return out;
}

double max_row_sum(const ComplexMatrix& x) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double s = 0.0;
    for (const auto& z : x.row(i)) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

ComplexMatrix matrix_power(ComplexMatrix base, int exponent) {
  ComplexMatrix result = ComplexMatrix::identity(base.dim());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// max |(U* X U - factor X)_ij| for a unitary U.
double conjugation_residual(const ComplexMatrix& x, const ComplexMatrix& u, cplx factor) {
  return max_abs_difference(u.adjoint() * x * u, factor * x);
}

ComplexMatrix p_delta(int n) {
  const SymmetryPair s = make_symmetry_pair(n);
  return s.p * s.delta;
}

RadiusEstimate symmetric_radius(const ComplexMatrix& x, int n, double residual, double tol) {
  SweepOptions opt;
  opt.want_witness = false;
  opt.symmetry_order = residual <= 1e-13 ? static_cast<std::size_t>(n) : 1;
  return numerical_radius(x, tol, opt);
}

}  // namespace

void CertificateReport::add_upper(std::string name, double value, double bound, double allowance) {
  checks.push_back({std::move(name), value, bound, allowance, value <= bound + allowance,
                    bound - value});
}

void CertificateReport::add_deviation(std::string name, double computed, double target,
                                      double tolerance) {
  const double dev = std::abs(computed - target);
  checks.push_back({std::move(name), dev, tolerance, 0.0, dev <= tolerance, tolerance - dev});
}

void CertificateReport::append(const CertificateReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool CertificateReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const CertificateCheck* CertificateReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"bound", c.bound},
                   {"allowance", c.allowance},
                   {"pass", c.pass},
                   {"slack", c.slack}});
  }
  return {{"checks", std::move(arr)}, {"all_pass", all_pass()}};
}

std::string CertificateReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << format_double(c.value)
        << "  bound=" << format_double(c.bound) << "  slack=" << format_double(c.slack) << '\n';
  }
  return out.str();
}

ExtremalFamily build_extremal_family(int n) {
  if (n < 12 || n > 500 || n % 8 != 4) {
    throw InvalidInput("extremal family requires n = 8k + 4 with 12 <= n <= 500, got n = " +
                       std::to_string(n));
  }
  ExtremalFamily fam;
  fam.n = n;
  fam.k = (n - 4) / 8;
  const auto un = static_cast<std::size_t>(n);
  const int lo = 3 * fam.k + 2;
  const int hi = 5 * fam.k + 2;

  CVector dvals(un);
  for (int l = 1; l <= n; ++l) {
    dvals[static_cast<std::size_t>(l - 1)] = std::polar(1.0, (2.0 * l - 1.0) * kPi / (2.0 * n));
  }
  fam.d = ComplexMatrix::diagonal(dvals);
  fam.e = ComplexMatrix(un);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int gap = std::abs(i - j);
      if (gap >= lo && gap <= hi) fam.e(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
    }
  }
  const double c = coupling(n);
  fam.b = ComplexMatrix::identity(un);
  fam.b += c * fam.e;
  fam.a = ComplexMatrix(un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) fam.a(i, j) = dvals[i] * fam.b(i, j) * dvals[j];
  return fam;
}

SymmetryPair make_symmetry_pair(int n) {
  if (n < 1) throw InvalidInput("make_symmetry_pair: n must be positive");
  const auto un = static_cast<std::size_t>(n);
  SymmetryPair s{ComplexMatrix(un), ComplexMatrix::identity(un)};
  for (std::size_t j = 0; j < un; ++j) s.p((j + 1) % un, j) = 1.0;
  s.delta(un - 1, un - 1) = -1.0;
  return s;
}

double symmetry_residual(const ExtremalFamily& fam) {
  return conjugation_residual(fam.a, p_delta(fam.n), std::polar(1.0, 2.0 * kPi / fam.n));
}

CertificateReport check_symmetry(const ExtremalFamily& fam) {
  CertificateReport rep;
  const SymmetryPair s = make_symmetry_pair(fam.n);
  const ComplexMatrix pd = s.p * s.delta;
  const auto un = static_cast<std::size_t>(fam.n);

  rep.add_upper("conjugation_residual", symmetry_residual(fam), 1e-13, 0.0);
  const ComplexMatrix shifted_d = std::polar(1.0, kPi / fam.n) * (s.delta * fam.d);
  rep.add_upper("d_shift_residual", max_abs_difference(s.p.adjoint() * fam.d * s.p, shifted_d),
                1e-13, 0.0);
  rep.add_upper("e_shift_residual", max_abs_difference(s.p.adjoint() * fam.e * s.p, fam.e), 0.0,
                0.0);
  rep.add_upper("p_order_residual",
                max_abs_difference(matrix_power(s.p, fam.n), ComplexMatrix::identity(un)), 0.0,
                0.0);
  rep.add_upper("p_delta_unitarity",
                max_abs_difference(pd.adjoint() * pd, ComplexMatrix::identity(un)), 0.0, 0.0);
  return rep;
}

CertificateReport check_norm(const ExtremalFamily& fam) {
  CertificateReport rep;
  const auto un = static_cast<std::size_t>(fam.n);
  const double target = norm_target(fam.n);

  // Integer identity: each row of E has exactly n/4 ones.
  double worst_row = 0.0;
  for (std::size_t i = 0; i < un; ++i) {
    double s = 0.0;
    for (const auto& z : fam.e.row(i)) s += z.real();
    worst_row = std::max(worst_row, std::abs(s - fam.n / 4.0));
  }
  rep.add_deviation("e_row_sums_equal_n_over_4", worst_row, 0.0, 0.0);

  const CVector ones(un, cplx{1.0});
  const CVector be = fam.b * std::span<const cplx>(ones);
  double worst_be = 0.0;
  double spread = 0.0;
  for (const auto& z : be) {
    worst_be = std::max(worst_be, std::abs(z - target));
    spread = std::max(spread, std::abs(z - be.front()));
  }
  rep.add_deviation("b_times_ones", worst_be, 0.0, 1e-14);
  rep.add_deviation("b_times_ones_constant", spread, 0.0, 1e-14);

  const double norm_a = operator_norm(fam.a);
  const double sigma_b = singular_values(fam.b).front();
  rep.add_deviation("norm_a_equals_norm_b", norm_a, sigma_b, 1e-11);
  rep.add_deviation("sigma1_b", sigma_b, target, 1e-11);
  rep.add_deviation("norm_a", norm_a, target, 1e-11);
  return rep;
}

CertificateReport check_real_parts(const ExtremalFamily& fam) {
  CertificateReport rep;
  const auto re_a = hermitian_extreme_eigenvalues(fam.a.hermitian_part());
  const auto re_inv = hermitian_extreme_eigenvalues(inverse(fam.a).hermitian_part());
  rep.add_upper("re_a_lambda_max", re_a.max, 1.0);
  rep.add_upper("re_a_minus_lambda_min", -re_a.min, 1.0);
  rep.add_upper("re_a_inv_lambda_max", re_inv.max, 1.0);
  rep.add_upper("re_a_inv_minus_lambda_min", -re_inv.min, 1.0);
  return rep;
}

ComplexMatrix cotangent_matrix(const ExtremalFamily& fam) {
  return cot_weighted(fam.e, cotangents(fam.n), coupling(fam.n));
}

CertificateReport certificate_real_part(const ExtremalFamily& fam) {
  CertificateReport rep;
  const auto un = static_cast<std::size_t>(fam.n);
  const double c = coupling(fam.n);
  const ComplexMatrix m = cotangent_matrix(fam);

  const double fro = m.frobenius_norm();
  rep.add_upper("m_frobenius_squared", fro * fro, 9.0 / 32.0);
  const double norm_m = hermitian_norm(m);
  rep.add_upper("m_norm", norm_m, 0.75);
  const double norm_e = hermitian_norm(fam.e);
  rep.add_deviation("e_norm_equals_n_over_4", norm_e, fam.n / 4.0, 1e-11);
  rep.add_upper("m_plus_scaled_e_norm", norm_m + c * norm_e, 7.0 / 8.0);

  ComplexMatrix form = 2.0 * ComplexMatrix::identity(un);
  form -= m;
  form += c * fam.e;
  rep.add_upper("quadratic_form_min_eigenvalue", -hermitian_extreme_eigenvalues(form).min, 0.0);
  return rep;
}

CertificateReport certificate_inverse_real_part(const ExtremalFamily& fam) {
  CertificateReport rep;
  const int n = fam.n;
  const auto un = static_cast<std::size_t>(n);
  const double c = coupling(n);
  const double c2 = c * c;  // 1 / (4 n^3)
  const auto cot = cotangents(n);

  const ComplexMatrix m1 = -1.0 * cotangent_matrix(fam);
  const ComplexMatrix m2 = c * fam.e;
  ComplexMatrix perturbed = ComplexMatrix::identity(un);
  perturbed += m2;
  const ComplexMatrix perturbed_inv = inverse(perturbed);
  const ComplexMatrix e2 = fam.e * fam.e;
  const ComplexMatrix f = e2 * perturbed_inv;
  const ComplexMatrix m3 = cot_weighted(f, cot, c2);
  const ComplexMatrix m4 = -c2 * f;

  rep.add_upper("m1_norm", hermitian_norm(m1), 0.75);
  rep.add_deviation("m2_norm", hermitian_norm(m2), 1.0 / (8.0 * std::sqrt(static_cast<double>(n))),
                    1e-11);
  const double norm_f = hermitian_norm(f.hermitian_part());
  rep.add_upper("f_norm", norm_f, n * static_cast<double>(n) / 14.0);
  rep.add_upper("m3_norm", hermitian_norm(m3.hermitian_part()), 1.0 / 14.0);
  rep.add_upper("m4_norm", hermitian_norm(m4.hermitian_part()), 1.0 / 56.0);

  rep.add_deviation("e_max_norm", max_row_sum(fam.e), n / 4.0, 0.0);
  rep.add_upper("scaled_e_max_norm", max_row_sum(m2), 1.0 / 8.0);
  rep.add_upper("perturbed_inverse_max_norm", max_row_sum(perturbed_inv), 8.0 / 7.0);
  rep.add_deviation("e_squared_max_entry", e2.max_abs_entry(), n / 4.0, 0.0);
  rep.add_upper("f_max_entry", f.max_abs_entry(), 2.0 * n / 7.0);

  ComplexMatrix sum = m1 + m2;
  sum += m3;
  sum += m4;
  sum = sum.hermitian_part();
  rep.add_upper("sum_norm", hermitian_norm(sum), 1.0, 0.0);
  rep.add_upper("bound_chain", 0.75 + 0.125 + 1.0 / 14.0 + 1.0 / 56.0, 1.0, 0.0);

  ComplexMatrix form = 2.0 * ComplexMatrix::identity(un);
  form -= sum;
  rep.add_upper("inverse_quadratic_form_min_eigenvalue", -hermitian_extreme_eigenvalues(form).min, 0.0);
  return rep;
}

CertificateReport check_radius_bounds(const ExtremalFamily& fam, double tol) {
  CertificateReport rep;
  const ComplexMatrix inv = inverse(fam.a);
  const ComplexMatrix pd = p_delta(fam.n);
  const cplx omega = std::polar(1.0, 2.0 * kPi / fam.n);
  const double res_a = conjugation_residual(fam.a, pd, omega);
  const double res_inv = conjugation_residual(inv, pd, std::conj(omega));
  const RadiusEstimate w = symmetric_radius(fam.a, fam.n, res_a, tol);
  const RadiusEstimate w_inv = symmetric_radius(inv, fam.n, res_inv, tol);
  const double target = radius_target(fam.n);
  rep.add_upper("w_a", w.upper_bound, target, 1e-8);
  rep.add_upper("w_a_inv", w_inv.upper_bound, target, 1e-8);
  return rep;
}

CertificateReport check_range_rotation(const ExtremalFamily& fam, std::size_t samples) {
  CertificateReport rep;
  const double step = 2.0 * kPi / fam.n;
  const cplx omega = std::polar(1.0, step);
  const ComplexMatrix inv = inverse(fam.a);
  for (const auto& [label, x] : {std::pair<std::string, const ComplexMatrix*>{"a", &fam.a},
                                 std::pair<std::string, const ComplexMatrix*>{"a_inv", &inv}}) {
    const std::vector<SupportPoint> pts = range_boundary(*x, samples);
    std::vector<double> shifted(samples);
    parallel_for(samples, [&](std::size_t j) { shifted[j] = support_value(*x, pts[j].angle + step); });
    double periodic = 0.0;
    for (std::size_t j = 0; j < samples; ++j)
      periodic = std::max(periodic, std::abs(shifted[j] - pts[j].support_value));

    double containment = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      const cplx z = omega * p.boundary_point;
      for (const auto& q : pts) {
        containment = std::max(containment, (std::polar(1.0, q.angle) * z).real() - q.support_value);
      }
    }
    rep.add_upper("support_periodicity_" + label, periodic, 1e-7);
    rep.add_upper("rotated_boundary_containment_" + label, containment, 1e-7);
  }
  return rep;
}

CertificateReport verify_extremal_family(const ExtremalFamily& fam) {
  CertificateReport rep;
  rep.append(check_symmetry(fam));
  rep.append(check_norm(fam));
  rep.append(check_real_parts(fam));
  rep.append(certificate_real_part(fam));
  rep.append(certificate_inverse_real_part(fam));
  rep.append(check_radius_bounds(fam));
  rep.append(check_range_rotation(fam, fam.n <= 60 ? 1024 : 256));
  return rep;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("least_squares_slope: need at least two paired samples");
  }
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ScalingTable scaling_experiment(int k_min, int k_max, double tol) {
  if (k_min < 1 || k_max < k_min || 8 * k_max + 4 > 500) {
    throw InvalidInput("scaling_experiment: need 1 <= k_min <= k_max with 8 k_max + 4 <= 500");
  }
  ScalingTable table;
  table.rows.resize(static_cast<std::size_t>(k_max - k_min + 1));
  parallel_for(table.rows.size(), [&](std::size_t idx) {
    const int n = 8 * (k_min + static_cast<int>(idx)) + 4;
    const ExtremalFamily fam = build_extremal_family(n);
    const ComplexMatrix inv = inverse(fam.a);
    const ComplexMatrix pd = p_delta(n);
    const cplx omega = std::polar(1.0, 2.0 * kPi / n);
    ScalingRow row;
    row.n = n;
    const double half = kPi / (2.0 * n);
    row.eps = 2.0 * std::sin(half) * std::sin(half) / std::cos(kPi / n);
    row.delta = operator_norm(fam.a) - 1.0;
    row.w = symmetric_radius(fam.a, n, conjugation_residual(fam.a, pd, omega), tol).value;
    row.w_inv = symmetric_radius(inv, n, conjugation_residual(inv, pd, std::conj(omega)), tol).value;
    table.rows[idx] = row;
  });
  if (table.rows.size() >= 2) {
    std::vector<double> lx, ly;
    for (const auto& r : table.rows) {
      lx.push_back(std::log(r.eps));
      ly.push_back(std::log(r.delta));
    }
    table.slope = least_squares_slope(lx, ly);
  } else {
    table.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return table;
}

std::string scaling_csv(const ScalingTable& table) {
  std::ostringstream out;
  out << "n,eps,delta,w,w_inv\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << format_double(r.eps) << ',' << format_double(r.delta) << ','
        << format_double(r.w) << ',' << format_double(r.w_inv) << '\n';
  }
  out << "# slope=" << format_double(table.slope) << '\n';
  return out.str();
}

}  // namespace opradius
