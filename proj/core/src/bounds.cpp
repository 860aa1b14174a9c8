#include "opradius/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "opradius/linalg.hpp"
#include "opradius/output.hpp"

namespace opradius {
namespace {

void require_r(double r, const char* who) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidInput(std::string(who) + ": r must be >= 1");
}

void require_rho(double rho, const char* who) {
  if (!(rho >= 1.0 && rho <= 2.0)) {
    throw InvalidInput(std::string(who) + ": rho must lie in [1, 2]");
  }
}

// sqrt(x^2 - 1) for x >= 1 written as sqrt((x-1)(x+1)) from x - 1 directly.
double sqrt_excess(double x_minus_one) {
  return std::sqrt(x_minus_one * (x_minus_one + 2.0));
}

// X_rho(r) - 1, cancellation-free. The discriminant factors as
// (r-1)(r+1)(rho(r+1) - 2)(2 + rho(r-1)).
double x_rho_minus_one(double rho, double r) {
  const double rm1 = r - 1.0;
  const double disc = rm1 * (r + 1.0) * (rho * (r + 1.0) - 2.0) * (2.0 + rho * rm1);
  return (rm1 * (rho * (r + 1.0) - 2.0) + std::sqrt(std::max(disc, 0.0))) / (2.0 * r);
}

double psi_from_excess(double x_minus_one) {
  return 1.0 + x_minus_one + sqrt_excess(x_minus_one);
}

double asymptotic_term(double eps, double rho) {
  return 1.0 + std::pow(8.0 * (rho - 1.0) * eps, 0.25);
}

}  // namespace

double x_of_r(double r) {
  require_r(r, "x_of_r");
  return r + sqrt_excess(r - 1.0);
}

double psi_upper(double r) {
  require_r(r, "psi_upper");
  return psi_from_excess(r - 1.0 + sqrt_excess(r - 1.0));
}

double x_rho(double rho, double r) {
  require_rho(rho, "x_rho");
  require_r(r, "x_rho");
  return 1.0 + x_rho_minus_one(rho, r);
}

double psi_rho_upper(double rho, double r) {
  require_rho(rho, "psi_rho_upper");
  require_r(r, "psi_rho_upper");
  return psi_from_excess(x_rho_minus_one(rho, r));
}

double operative_psi_bound(double rho, double r) {
  return std::min(psi_rho_upper(rho, r), rho * r);
}

double asymptotic_upper(double eps, double rho) {
  require_rho(rho, "asymptotic_upper");
  if (!(eps >= 0.0 && eps <= 0.1)) throw InvalidInput("asymptotic_upper: eps must lie in [0, 0.1]");
  return asymptotic_term(eps, rho);
}

double crossover_root() {
  // psi_upper(r) - 2r is negative just above 1 and positive at 1.1.
  double lo = 1.0 + 1e-12;
  double hi = 1.1;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (psi_upper(mid) - 2.0 * mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LowerWitness lower_witness(double r) {
  require_r(r, "lower_witness");
  const double y = sqrt_excess(r - 1.0);
  return {ComplexMatrix{{1.0, 2.0 * y}, {0.0, -1.0}}, r + y};
}

MidpointReport midpoint_certificate(const ComplexMatrix& a) {
  MidpointReport rep;
  const ComplexMatrix inv_adj = inverse(a.adjoint());
  rep.midpoint = a + inv_adj;
  rep.midpoint *= 0.5;
  rep.norm_a = operator_norm(a);
  const RVector sm = singular_values(rep.midpoint);
  rep.norm_m = sm.front();
  rep.norm_m_inverse = sm.back() > 0.0 ? 1.0 / sm.back() : std::numeric_limits<double>::infinity();
  rep.bound = rep.norm_m + std::sqrt(std::max(rep.norm_m * rep.norm_m - 1.0, 0.0));
  rep.inverse_contractive = rep.norm_m_inverse <= 1.0 + 1e-10;
  rep.norm_bounded = rep.norm_a <= rep.bound + 1e-9;
  return rep;
}

BoundCurve bound_curve(double rho, double r_min, double r_max, std::size_t steps) {
  require_rho(rho, "bound_curve");
  require_r(r_min, "bound_curve");
  if (!(r_max >= r_min) || !std::isfinite(r_max)) {
    throw InvalidInput("bound_curve: r_max must be finite and >= r_min");
  }
  if (steps == 0) throw InvalidInput("bound_curve: steps must be >= 1");
  BoundCurve curve;
  curve.rho = rho;
  curve.rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double r = steps == 1 ? r_min
                                : r_min + (r_max - r_min) * static_cast<double>(i) /
                                              static_cast<double>(steps - 1);
    BoundRow row;
    row.r = r;
    row.x_value = x_rho(rho, r);
    row.psi_upper = operative_psi_bound(rho, r);
    row.psi_lower = rho == 2.0 ? x_of_r(r) : r;
    row.asymptotic = asymptotic_term(r - 1.0, rho);
    curve.rows.push_back(row);
  }
  return curve;
}

std::string bound_curve_csv(const BoundCurve& curve) {
  std::ostringstream out;
  out << "r,X,psi_upper,psi_lower,asymptotic\n";
  for (const auto& row : curve.rows) {
    out << format_double(row.r) << ',' << format_double(row.x_value) << ','
        << format_double(row.psi_upper) << ',' << format_double(row.psi_lower) << ','
        << format_double(row.asymptotic) << '\n';
  }
  return out.str();
}

}  // namespace opradius
