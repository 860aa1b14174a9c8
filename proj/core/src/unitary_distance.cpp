#include "opradius/unitary_distance.hpp"

#include <algorithm>

#include "opradius/bounds.hpp"
#include "opradius/linalg.hpp"

namespace opradius {

UnitaryGap distance_to_unitaries(const ComplexMatrix& a) {
  if (a.dim() == 0 || !a.all_finite()) {
    throw InvalidInput("distance_to_unitaries: matrix must be non-empty and finite");
  }
  const RVector s = singular_values(a);
  if (!(s.back() > 1e-12 * s.front())) {
    throw SingularMatrix("distance_to_unitaries: matrix is singular (sigma_n <= 1e-12 sigma_1)");
  }
  UnitaryGap gap;
  gap.norm_excess = s.front() - 1.0;
  gap.inverse_excess = 1.0 - s.back();
  gap.distance = std::max(gap.norm_excess, gap.inverse_excess);
  gap.nearest = polar(a).unitary;
  return gap;
}

double stampfli_gap_bound(double w, double w_inv, double rho) {
  if (!(rho >= 1.0 && rho <= 2.0)) throw InvalidInput("stampfli_gap_bound: rho must lie in [1, 2]");
  if (!(w >= 1.0 - 1e-12) || !(w_inv >= 1.0 - 1e-12)) {
    throw InvalidInput("stampfli_gap_bound: radii must be >= 1");
  }
  const double r = std::max({w, w_inv, 1.0});
  return psi_rho_upper(rho, r) - 1.0;
}

}  // namespace opradius
