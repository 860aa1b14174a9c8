#include "opradius/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace opradius {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_nonempty(const ComplexMatrix& a, const char* who) {
  if (a.dim() == 0) throw InvalidInput(std::string(who) + ": empty matrix");
}

double off_diagonal_norm(const ComplexMatrix& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (i != j) acc += std::norm(h(i, j));
  return std::sqrt(acc);
}

// One two-sided rotation annihilating h(p, q). G acts on columns p, q as
//   [ c        s e ]
//   [ -s conj(e)  c ]   with e = h(p,q)/|h(p,q)|.
void jacobi_rotate(ComplexMatrix& h, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const std::size_t n = h.dim();
  const cplx b = h(p, q);
  const double ab = std::abs(b);
  const cplx e = b / ab;
  const double zeta = (h(q, q).real() - h(p, p).real()) / (2.0 * ab);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx se = s * e;
  const cplx sec = s * std::conj(e);

  const double app = h(p, p).real() - t * ab;
  const double aqq = h(q, q).real() + t * ab;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx hkp = h(k, p);
    const cplx hkq = h(k, q);
    h(k, p) = c * hkp - sec * hkq;
    h(k, q) = se * hkp + c * hkq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx hpk = h(p, k);
    const cplx hqk = h(q, k);
    h(p, k) = c * hpk - se * hqk;
    h(q, k) = sec * hpk + c * hqk;
  }
  h(p, q) = 0.0;
  h(q, p) = 0.0;
  h(p, p) = app;
  h(q, q) = aqq;

  if (v != nullptr) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx vkp = (*v)(k, p);
      const cplx vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp - sec * vkq;
      (*v)(k, q) = se * vkp + c * vkq;
    }
  }
}

// Householder vector v with (I - beta v v*) x = alpha e_1. Returns beta
// (0 when x is already a multiple of e_1).
double householder(std::span<cplx> x, cplx& alpha) {
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += std::norm(x[i]);
  const double xnorm = std::sqrt(std::norm(x[0]) + tail);
  if (tail == 0.0) {
    alpha = x[0];
    return 0.0;
  }
  const double a0 = std::abs(x[0]);
  const cplx phase = a0 == 0.0 ? cplx{1.0} : x[0] / a0;
  alpha = -phase * xnorm;
  x[0] -= alpha;
  const double vnorm2 = std::norm(x[0]) + tail;
  return 2.0 / vnorm2;
}

struct Tridiagonal {
  RVector diag;
  RVector off;  // off[i] couples i and i+1, taken as a modulus
};

Tridiagonal tridiagonalize(ComplexMatrix h) {
  const std::size_t n = h.dim();
  CVector v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
    cplx alpha;
    const double beta = householder(std::span<cplx>(v.data(), m), alpha);
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    if (beta == 0.0) continue;

    // p = beta * H_sub v, using the lower triangle only.
    for (std::size_t i = 0; i < m; ++i) p[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t gi = k + 1 + i;
      cplx acc = h(gi, gi).real() * v[i];
      for (std::size_t j = 0; j < i; ++j) {
        const cplx hij = h(gi, k + 1 + j);
        acc += hij * v[j];
        p[j] += std::conj(hij) * v[i];
      }
      p[i] += acc;
    }
    cplx vp{};
    for (std::size_t i = 0; i < m; ++i) {
      p[i] *= beta;
      vp += std::conj(v[i]) * p[i];
    }
    const double kk = 0.5 * beta * vp.real();
    for (std::size_t i = 0; i < m; ++i) p[i] -= kk * v[i];  // p is now w
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t gi = k + 1 + i;
      for (std::size_t j = 0; j <= i; ++j) {
        h(gi, k + 1 + j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
      }
    }
  }
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = h(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = std::abs(h(i + 1, i));
  return t;
}

// Number of eigenvalues of the tridiagonal strictly less than x.
std::size_t sturm_count(const Tridiagonal& t, double x, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// Bisection for the eigenvalue with `index` eigenvalues below it.
double bisect_eigenvalue(const Tridiagonal& t, std::size_t index, double lo, double hi,
                         double pivmin) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(scale, std::abs(mid)) || mid == lo || mid == hi) break;
    if (sturm_count(t, mid, pivmin) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ComplexMatrix gram(const ComplexMatrix& a) {
  // A*A, Hermitian by construction.
  const std::size_t n = a.dim();
  ComplexMatrix g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto r = a.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx ci = std::conj(r[i]);
      if (ci == cplx{}) continue;
      for (std::size_t j = i; j < n; ++j) g(i, j) += ci * r[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = g(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) g(j, i) = std::conj(g(i, j));
  }
  return g;
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& input, bool want_vectors) {
  require_nonempty(input, "eig_hermitian");
  const std::size_t n = input.dim();
  const double fro = input.frobenius_norm();
  if (!input.all_finite()) throw InvalidInput("eig_hermitian: non-finite entries");
  if (!input.is_hermitian(1e-12 * std::max(fro, std::numeric_limits<double>::min()))) {
    throw InvalidInput("eig_hermitian: matrix is not Hermitian within 1e-12 ||H||_F");
  }
  ComplexMatrix h = input.hermitian_part();
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();

  HermitianEigen out;
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{};
  ComplexMatrix* vp = want_vectors ? &v : nullptr;

  const double target = kEps * fro;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(h) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(h(p, q));
        if (apq == 0.0) continue;
        // Entries already below the rounding level of both diagonals are dropped.
        const double dp = std::abs(h(p, p).real());
        const double dq = std::abs(h(q, q).real());
        if (sweep > 3 && dp + 100.0 * apq == dp && dq + 100.0 * apq == dq) {
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          continue;
        }
        jacobi_rotate(h, vp, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return h(x, x).real() < h(y, y).real();
  });
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = h(order[j], order[j]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

ExtremeEigenvalues hermitian_extreme_eigenvalues(const ComplexMatrix& h) {
  require_nonempty(h, "hermitian_extreme_eigenvalues");
  const std::size_t n = h.dim();
  if (n == 1) return {h(0, 0).real(), h(0, 0).real()};
  const Tridiagonal t = tridiagonalize(h);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double emax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? t.off[i - 1] : 0.0) + (i + 1 < n ? t.off[i] : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
    if (i + 1 < n) emax = std::max(emax, t.off[i]);
  }
  const double width = std::max(hi - lo, std::numeric_limits<double>::min());
  lo -= 2.0 * kEps * width * n + std::numeric_limits<double>::min();
  hi += 2.0 * kEps * width * n + std::numeric_limits<double>::min();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax * emax);
  return {bisect_eigenvalue(t, 0, lo, hi, pivmin), bisect_eigenvalue(t, n - 1, lo, hi, pivmin)};
}

TopEigenpair hermitian_top_eigenpair(const ComplexMatrix& h) {
  require_nonempty(h, "hermitian_top_eigenpair");
  const std::size_t n = h.dim();
  const double lambda = hermitian_extreme_eigenvalues(h).max;
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::fmod(0.6180339887498949 * i, 1.0);
  normalize(v);
  if (n == 1) return {lambda, {cplx{1.0}}};

  const double scale = std::max(h.max_abs_entry() * static_cast<double>(n), std::numeric_limits<double>::min());
  for (double delta = 1e-10 * scale; delta <= 1e-2 * scale; delta *= 100.0) {
    // Cholesky L L* of (lambda + delta) I - H, lower triangle.
    ComplexMatrix l(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      double d = lambda + delta - h(j, j).real();
      for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
      if (!(d > 0.0)) {
        ok = false;
        break;
      }
      const double ljj = std::sqrt(d);
      l(j, j) = ljj;
      for (std::size_t i = j + 1; i < n; ++i) {
        cplx acc = -h(i, j);
        for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
        l(i, j) = acc / ljj;
      }
    }
    if (!ok) continue;
    for (int iter = 0; iter < 3; ++iter) {
      for (std::size_t i = 0; i < n; ++i) {
        cplx acc = v[i];
        for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * v[k];
        v[i] = acc / l(i, i).real();
      }
      for (std::size_t i = n; i-- > 0;) {
        cplx acc = v[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= std::conj(l(k, i)) * v[k];
        v[i] = acc / l(i, i).real();
      }
      normalize(v);
    }
    return {lambda, std::move(v)};
  }
  HermitianEigen e = eig_hermitian(h, true);
  for (std::size_t i = 0; i < n; ++i) v[i] = e.vectors(i, n - 1);
  return {e.values.back(), std::move(v)};
}

RVector singular_values(const ComplexMatrix& a) {
  require_nonempty(a, "singular_values");
  HermitianEigen e = eig_hermitian(gram(a), false);
  RVector s(e.values.rbegin(), e.values.rend());
  for (auto& x : s) x = std::sqrt(std::max(x, 0.0));
  return s;
}

double operator_norm(const ComplexMatrix& a) {
  require_nonempty(a, "operator_norm");
  return std::sqrt(std::max(hermitian_extreme_eigenvalues(gram(a)).max, 0.0));
}

double hermitian_norm(const ComplexMatrix& h) {
  const auto ext = hermitian_extreme_eigenvalues(h);
  return std::max(std::abs(ext.min), std::abs(ext.max));
}

PolarFactors polar(const ComplexMatrix& a) {
  require_nonempty(a, "polar");
  const std::size_t n = a.dim();
  HermitianEigen e = eig_hermitian(gram(a), true);
  const double smax = std::sqrt(std::max(e.values.back(), 0.0));
  const double smin = std::sqrt(std::max(e.values.front(), 0.0));
  if (!(smin > 1e-12 * smax)) {
    throw SingularMatrix("polar: matrix is singular or nearly singular (sigma_n <= 1e-12 sigma_1)");
  }
  // P = V S V*, P^{-1} = V S^{-1} V*.
  ComplexMatrix pos(n);
  ComplexMatrix pos_inv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(e.values[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = e.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx outer = vik * std::conj(e.vectors(j, k));
        pos(i, j) += s * outer;
        pos_inv(i, j) += outer / s;
      }
    }
  }
  pos = pos.hermitian_part();
  return {a * pos_inv, std::move(pos)};
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_nonempty(a, "inverse");
  const std::size_t n = a.dim();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  const double scale = a.max_abs_entry();
  if (scale == 0.0) throw SingularMatrix("inverse: zero matrix");
  const double tiny = kEps * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tiny) throw SingularMatrix("inverse: matrix is singular to working precision");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const cplx d = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / d;
      if (f == cplx{}) continue;
      lu(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) inv(i, j) -= f * inv(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    const cplx d = lu(kk, kk);
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = inv(kk, j);
      for (std::size_t m = kk + 1; m < n; ++m) acc -= lu(kk, m) * inv(m, j);
      inv(kk, j) = acc / d;
    }
  }
  return inv;
}

CVector eigenvalues(const ComplexMatrix& a) {
  require_nonempty(a, "eigenvalues");
  if (!a.all_finite()) throw InvalidInput("eigenvalues: non-finite entries");
  const std::size_t n = a.dim();
  ComplexMatrix h = a;

  // Householder reduction to upper Hessenberg form.
  CVector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
    cplx alpha;
    const double beta = householder(std::span<cplx>(v.data(), m), alpha);
    if (beta == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) {
      cplx dot{};
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= beta;
      for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot{};
      for (std::size_t j = 0; j < m; ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= beta;
      for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  const double fro = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  CVector eig(n);
  std::vector<double> cs(n);
  CVector sn(n);
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = fro;
      if (std::abs(h(lo, lo - 1)) <= kEps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 100 * static_cast<int>(n) + 1000) {
      throw SingularMatrix("eigenvalues: QR iteration failed to converge");
    }

    cplx mu;
    if (iter > 0 && iter % 10 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      // Wilkinson shift: eigenvalue of the trailing 2x2 closest to h(hi,hi).
      const cplx p = h(hi - 1, hi - 1), q = h(hi - 1, hi), r = h(hi, hi - 1), s = h(hi, hi);
      const cplx half_tr = 0.5 * (p + s);
      const cplx disc = std::sqrt(0.25 * (p - s) * (p - s) + q * r);
      const cplx l1 = half_tr + disc, l2 = half_tr - disc;
      mu = std::abs(l1 - s) < std::abs(l2 - s) ? l1 : l2;
    }
    ++iter;

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const cplx x = h(k, k), y = h(k + 1, k);
      const double ax = std::abs(x);
      const double nrm = std::hypot(ax, std::abs(y));
      double c;
      cplx s;
      if (nrm == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (ax == 0.0) {
        c = 0.0;
        s = 1.0;
      } else {
        c = ax / nrm;
        s = (x / ax) * std::conj(y) / nrm;
      }
      cs[k] = c;
      sn[k] = s;
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = c * t1 + s * t2;
        h(k + 1, j) = -std::conj(s) * t1 + c * t2;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const double c = cs[k];
      const cplx s = sn[k];
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const cplx t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = c * t1 + std::conj(s) * t2;
        h(i, k + 1) = -s * t1 + c * t2;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

}  // namespace opradius
