#include "opradius/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include "opradius/linalg.hpp"
#include "opradius/output.hpp"
#include "opradius/parallel.hpp"

namespace opradius {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(const ComplexMatrix& a, const char* who) {
  if (a.dim() == 0) throw InvalidInput(std::string(who) + ": empty matrix");
  if (!a.all_finite()) throw InvalidInput(std::string(who) + ": non-finite entries");
}

struct Interval {
  double left;
  double right;
  double h_left;
  double h_right;
  double upper;
};

struct IntervalOrder {
  bool operator()(const Interval& x, const Interval& y) const {
    if (x.upper != y.upper) return x.upper < y.upper;
    return x.left > y.left;
  }
};

// Max over [left, right] of the support function of the wedge
// {Re(e^{i l} z) <= h_l} n {Re(e^{i r} z) <= h_r}. On the interval it equals
// h_l cos(tau) + slope sin(tau), tau = theta - left.
double wedge_upper_bound(double left, double right, double h_left, double h_right) {
  const double width = right - left;
  const double slope = (h_right - h_left * std::cos(width)) / std::sin(width);
  const double peak = std::atan2(slope, h_left);
  if (peak >= 0.0 && peak <= width) return std::hypot(h_left, slope);
  return std::max(h_left, h_right);
}

Interval make_interval(double l, double r, double hl, double hr) {
  return {l, r, hl, hr, wedge_upper_bound(l, r, hl, hr)};
}

CVector top_eigenvector(const ComplexMatrix& h) {
  const HermitianEigen e = eig_hermitian(h, true);
  const std::size_t n = h.dim();
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, n - 1);
  return v;
}

CVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  normalize(v);
  return v;
}

struct RhoTerms {
  double a;  // 1 - 1/rho
  double b;  // 2/rho - 1
};

struct ObjectiveState {
  double value = 0.0;
  cplx form{};  // <Ah, h>
  CVector ah;   // A h
};

ObjectiveState evaluate(const ComplexMatrix& a, std::span<const cplx> h, RhoTerms k) {
  ObjectiveState st;
  st.ah = a * h;
  st.form = inner(st.ah, h);
  const double t = std::abs(st.form);
  double s2 = 0.0;
  for (const auto& z : st.ah) s2 += std::norm(z);
  st.value = k.a * t + std::sqrt(k.a * k.a * t * t + k.b * s2);
  return st;
}

// Riemannian gradient of the objective at unit h, with the modulus |<Ah,h>|
// replaced by Re(e^{i phi} <Ah,h>) for the aligning phase phi.
CVector tangent_gradient(const ComplexMatrix& a_adj,
                         std::span<const cplx> h, const ObjectiveState& st, RhoTerms k) {
  const std::size_t n = h.size();
  const double t = std::abs(st.form);
  double s2 = 0.0;
  for (const auto& z : st.ah) s2 += std::norm(z);
  const double r = std::sqrt(k.a * k.a * t * t + k.b * s2);
  CVector g(n);
  if (r == 0.0) return g;
  const cplx phase = t > 0.0 ? std::conj(st.form) / t : cplx{1.0};
  const double d_t = k.a + k.a * k.a * t / r;
  const double d_s2 = k.b / (2.0 * r);
  const CVector adj_h = a_adj * h;
  const CVector adj_ah = a_adj * std::span<const cplx>(st.ah);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = d_t * (phase * st.ah[i] + std::conj(phase) * adj_h[i]) + d_s2 * 2.0 * adj_ah[i];
  }
  const double radial = inner(g, h).real();
  for (std::size_t i = 0; i < n; ++i) g[i] -= radial * h[i];
  return g;
}

struct AscentResult {
  double value;
  CVector h;
};

AscentResult ascend(const ComplexMatrix& a, const ComplexMatrix& a_adj, CVector h, RhoTerms k,
                    int max_iterations, double tol) {
  ObjectiveState st = evaluate(a, h, k);
  double step = 1.0;
  CVector trial(h.size());
  for (int it = 0; it < max_iterations; ++it) {
    const CVector g = tangent_gradient(a_adj, h, st, k);
    const double gnorm = norm2(g);
    if (gnorm <= tol * std::max(st.value, 1e-300)) break;
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t i = 0; i < h.size(); ++i) trial[i] = h[i] + step * g[i];
      normalize(trial);
      ObjectiveState cand = evaluate(a, trial, k);
      if (cand.value > st.value) {
        const double gain = cand.value - st.value;
        h.swap(trial);
        st = std::move(cand);
        improved = true;
        step = std::min(step * 2.0, 1e6);
        if (gain <= tol * st.value) it = max_iterations;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return {st.value, std::move(h)};
}

}  // namespace

std::string_view to_string(RadiusKind kind) {
  switch (kind) {
    case RadiusKind::operator_norm:
      return "operator_norm";
    case RadiusKind::numerical_radius:
      return "numerical_radius";
    case RadiusKind::rho_radius:
      return "rho_radius";
    case RadiusKind::spectral_radius:
      return "spectral_radius";
  }
  return "unknown";
}

ComplexMatrix rotated_hermitian_part(const ComplexMatrix& a, double theta) {
  const std::size_t n = a.dim();
  const cplx e = std::polar(1.0, theta);
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const cplx v = 0.5 * (e * a(i, j) + std::conj(e * a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
    h(i, i) = h(i, i).real();
  }
  return h;
}

double support_value(const ComplexMatrix& a, double theta) {
  return hermitian_extreme_eigenvalues(rotated_hermitian_part(a, theta)).max;
}

SupportPoint support_point(const ComplexMatrix& a, double theta) {
  const TopEigenpair top = hermitian_top_eigenpair(rotated_hermitian_part(a, theta));
  const CVector av = a * std::span<const cplx>(top.vector);
  return {theta, top.value, inner(av, top.vector)};
}

RadiusEstimate numerical_radius(const ComplexMatrix& a, double tol, const SweepOptions& options) {
  require_finite(a, "numerical_radius");
  if (!(tol >= 1e-12 && tol <= 1e-2)) {
    throw InvalidInput("numerical_radius: tol must lie in [1e-12, 1e-2]");
  }
  if (options.symmetry_order == 0) throw InvalidInput("numerical_radius: symmetry_order >= 1");

  RadiusEstimate est;
  est.kind = RadiusKind::numerical_radius;
  est.rho = 2.0;
  est.tolerance = tol;
  if (a.max_abs_entry() == 0.0) {
    est.exact = true;
    return est;
  }

  const double period = kTwoPi / static_cast<double>(options.symmetry_order);
  const std::size_t coarse = std::max<std::size_t>(
      8, (options.coarse_points + options.symmetry_order - 1) / options.symmetry_order);

  // Grid over [0, period]; with no symmetry the closing point is theta = 0 again.
  std::vector<double> h(coarse + 1);
  parallel_for(coarse, [&](std::size_t j) {
    h[j] = support_value(a, period * static_cast<double>(j) / static_cast<double>(coarse));
  });
  h[coarse] = options.symmetry_order == 1 ? h[0] : support_value(a, period);
  std::size_t evaluations = coarse + (options.symmetry_order == 1 ? 0 : 1);

  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  auto record = [&](double theta, double value) {
    if (value > best) {
      best = value;
      best_theta = theta;
    }
  };

  std::priority_queue<Interval, std::vector<Interval>, IntervalOrder> queue;
  for (std::size_t j = 0; j < coarse; ++j) {
    const double l = period * static_cast<double>(j) / static_cast<double>(coarse);
    const double r = period * static_cast<double>(j + 1) / static_cast<double>(coarse);
    record(l, h[j]);
    queue.push(make_interval(l, r, h[j], h[j + 1]));
  }
  record(period, h[coarse]);

  bool certified = false;
  double upper = queue.top().upper;
  while (true) {
    const Interval top = queue.top();
    upper = std::max(top.upper, best);
    if (upper - best <= tol) {
      certified = true;
      break;
    }
    const double mid = 0.5 * (top.left + top.right);
    if (evaluations >= options.max_evaluations || !(mid > top.left && mid < top.right)) break;
    queue.pop();
    const double hm = support_value(a, mid);
    ++evaluations;
    record(mid, hm);
    queue.push(make_interval(top.left, mid, top.h_left, hm));
    queue.push(make_interval(mid, top.right, hm, top.h_right));
  }

  est.value = std::max(best, 0.0);
  est.upper_bound = upper;
  est.exact = certified;
  est.evaluations = evaluations;
  if (options.want_witness) {
    est.witness = top_eigenvector(rotated_hermitian_part(a, best_theta));
  }
  return est;
}

double rho_objective(const ComplexMatrix& a, std::span<const cplx> h, double rho) {
  if (!(rho >= 1.0 && rho <= 2.0)) throw InvalidInput("rho_objective: rho must lie in [1, 2]");
  return evaluate(a, h, {1.0 - 1.0 / rho, 2.0 / rho - 1.0}).value;
}

RadiusEstimate rho_radius(const ComplexMatrix& a, double rho, const RhoOptions& options) {
  require_finite(a, "rho_radius");
  if (!(rho >= 1.0 && rho <= 2.0)) {
    throw InvalidInput("rho_radius: rho must lie in [1, 2]; rho > 2 is not supported");
  }
  if (options.restarts < 1) throw InvalidInput("rho_radius: restarts must be >= 1");
  const std::size_t n = a.dim();

  RadiusEstimate est;
  est.rho = rho;
  est.tolerance = options.tol;
  if (a.max_abs_entry() == 0.0) {
    est.kind = rho == 2.0 ? RadiusKind::numerical_radius : RadiusKind::rho_radius;
    est.exact = true;
    return est;
  }

  if (rho == 2.0) return numerical_radius(a, std::clamp(options.tol, 1e-10, 1e-2));

  const ComplexMatrix a_adj = a.adjoint();
  const ComplexMatrix gram = a_adj * a;
  const CVector top_right = top_eigenvector(gram);
  const double norm = std::sqrt(std::max(eig_hermitian(gram, false).values.back(), 0.0));

  if (rho == 1.0) {
    est.kind = RadiusKind::operator_norm;
    est.value = norm;
    est.upper_bound = norm;
    est.exact = true;
    est.witness = top_right;
    return est;
  }

  est.kind = RadiusKind::rho_radius;
  const RhoTerms k{1.0 - 1.0 / rho, 2.0 / rho - 1.0};

  // Starts: the maximizers for rho = 1 and rho = 2, then seeded random vectors.
  SweepOptions sweep;
  sweep.coarse_points = 256;
  std::vector<CVector> starts;
  starts.push_back(top_right);
  starts.push_back(numerical_radius(a, 1e-8, sweep).witness);
  for (int r = 0; r < options.restarts; ++r) {
    auto rng = stream_rng(options.seed, static_cast<std::uint64_t>(r));
    starts.push_back(random_unit_vector(rng, n));
  }

  std::vector<AscentResult> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    results[i] = ascend(a, a_adj, starts[i], k, options.max_iterations, options.tol);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[best].value) best = i;

  est.value = results[best].value;
  // w(A) <= w_rho(A) <= ||A|| for rho in [1, 2].
  est.upper_bound = norm;
  est.exact = false;
  est.witness = std::move(results[best].h);
  return est;
}

double spectral_radius(const ComplexMatrix& a) {
  require_finite(a, "spectral_radius");
  double r = 0.0;
  for (const auto& z : eigenvalues(a)) r = std::max(r, std::abs(z));
  return r;
}

std::vector<SupportPoint> range_boundary(const ComplexMatrix& a, std::size_t samples) {
  require_finite(a, "range_boundary");
  if (samples < 8) throw InvalidInput("range_boundary: samples must be >= 8");
  std::vector<SupportPoint> pts(samples);
  parallel_for(samples, [&](std::size_t j) {
    pts[j] = support_point(a, kTwoPi * static_cast<double>(j) / static_cast<double>(samples));
  });
  return pts;
}

std::string range_boundary_csv(const std::vector<SupportPoint>& points) {
  std::ostringstream out;
  out << "theta,support_value,re,im\n";
  for (const auto& p : points) {
    out << format_double(p.angle) << ',' << format_double(p.support_value) << ','
        << format_double(p.boundary_point.real()) << ',' << format_double(p.boundary_point.imag())
        << '\n';
  }
  return out.str();
}

}  // namespace opradius
