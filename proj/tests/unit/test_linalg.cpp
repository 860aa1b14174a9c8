#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "opradius/linalg.hpp"
#include "opradius/matrix_io.hpp"
#include "test_support.hpp"

using namespace opradius;
using testing_support::gaussian;
using testing_support::random_unitary;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return gaussian(n, rng).hermitian_part();
}

}  // namespace

TEST(ComplexMatrix, BasicAlgebra) {
  const ComplexMatrix a{{1.0, cplx{0, 2}}, {3.0, 4.0}};
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a.adjoint()(0, 1), 3.0);
  EXPECT_EQ(a.adjoint()(1, 0), cplx(0, -2));
  EXPECT_EQ((a - a).max_abs_entry(), 0.0);
  EXPECT_EQ((a * ComplexMatrix::identity(2)), a);
  EXPECT_NEAR(a.frobenius_norm(), std::sqrt(30.0), 1e-15);
  EXPECT_TRUE(a.hermitian_part().is_hermitian(0.0));
  EXPECT_FALSE(a.is_hermitian(1e-12));
}

TEST(ComplexMatrix, InnerProductConvention) {
  const CVector x{cplx{1, 1}, 2.0};
  const CVector y{cplx{0, 1}, 1.0};
  // <x, y> = sum x_i conj(y_i)
  EXPECT_EQ(inner(x, y), cplx(1, 1) * cplx(0, -1) + 2.0);
  EXPECT_NEAR(norm2(x), std::sqrt(6.0), 1e-15);
}

TEST(EigHermitian, DiagonalAndTwoByTwo) {
  const auto e = eig_hermitian(ComplexMatrix::diagonal(std::vector<double>{3.0, -1.0, 2.0}));
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_DOUBLE_EQ(e.values[0], -1.0);
  EXPECT_DOUBLE_EQ(e.values[1], 2.0);
  EXPECT_DOUBLE_EQ(e.values[2], 3.0);

  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  const ComplexMatrix h{{2.0, cplx{0, 1}}, {cplx{0, -1}, 2.0}};
  const auto f = eig_hermitian(h);
  EXPECT_NEAR(f.values[0], 1.0, 1e-15);
  EXPECT_NEAR(f.values[1], 3.0, 1e-15);
}

TEST(EigHermitian, ReconstructsRandomMatrices) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto e = eig_hermitian(h);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    const ComplexMatrix vtv = e.vectors.adjoint() * e.vectors;
    EXPECT_LT(max_abs_difference(vtv, ComplexMatrix::identity(n)), 1e-13) << n;
    const ComplexMatrix rebuilt = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
    EXPECT_LT(max_abs_difference(rebuilt, h), 1e-13) << n;
  }
}

TEST(EigHermitian, RejectsNonHermitianAndEmpty) {
  const ComplexMatrix a{{1.0, 1.0}, {0.0, 1.0}};
  EXPECT_THROW(eig_hermitian(a), InvalidInput);
  EXPECT_THROW(eig_hermitian(ComplexMatrix(0)), InvalidInput);
}

TEST(EigHermitian, TrackedEigenvaluesMatchSingularValuesOnPositiveDefinite) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const ComplexMatrix g = gaussian(n, rng);
    ComplexMatrix h = (g.adjoint() * g).hermitian_part();
    h += 0.1 * ComplexMatrix::identity(n);
    auto ev = eig_hermitian(h, false).values;
    std::reverse(ev.begin(), ev.end());
    const auto sv = singular_values(h);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], sv[i], 1e-10);
  }
}

TEST(ExtremeEigenvalues, AgreeWithJacobi) {
  std::mt19937_64 rng(13);
  for (std::size_t n : {1u, 2u, 3u, 8u, 33u, 64u}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto full = eig_hermitian(h, false).values;
    const auto ext = hermitian_extreme_eigenvalues(h);
    EXPECT_NEAR(ext.min, full.front(), 1e-13) << n;
    EXPECT_NEAR(ext.max, full.back(), 1e-13) << n;
  }
}

TEST(ExtremeEigenvalues, TopEigenpairHasSmallResidual) {
  std::mt19937_64 rng(14);
  for (std::size_t n : {1u, 4u, 20u, 52u}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto top = hermitian_top_eigenpair(h);
    EXPECT_NEAR(norm2(top.vector), 1.0, 1e-14);
    CVector r = h * std::span<const cplx>(top.vector);
    for (std::size_t i = 0; i < n; ++i) r[i] -= top.value * top.vector[i];
    EXPECT_LT(norm2(r), 1e-8) << n;
  }
  // Fully degenerate: any unit vector is an eigenvector.
  const auto id = hermitian_top_eigenpair(ComplexMatrix::identity(6));
  EXPECT_DOUBLE_EQ(id.value, 1.0);
}

TEST(SingularValues, KnownTwoByTwo) {
  const ComplexMatrix a{{1.0, 1.5}, {0.0, -1.0}};
  const auto s = singular_values(a);
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 0.5, 1e-14);
  EXPECT_NEAR(operator_norm(a), 2.0, 1e-14);
}

TEST(SingularValues, InvariantUnderUnitaries) {
  std::mt19937_64 rng(15);
  const ComplexMatrix a = gaussian(6, rng);
  const ComplexMatrix u = random_unitary(6, rng);
  const ComplexMatrix v = random_unitary(6, rng);
  const auto s1 = singular_values(a);
  const auto s2 = singular_values(u * a * v);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(s1[i], s2[i], 1e-12);
  EXPECT_NEAR(operator_norm(a), s1.front(), 1e-13);
}

TEST(Polar, FactorsRandomMatrices) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const ComplexMatrix a = gaussian(n, rng);
    const auto p = polar(a);
    EXPECT_LT(max_abs_difference(p.unitary.adjoint() * p.unitary, ComplexMatrix::identity(n)), 1e-11);
    EXPECT_LT(max_abs_difference(p.unitary * p.positive, a), 1e-11);
    EXPECT_TRUE(p.positive.is_hermitian(1e-13));
    EXPECT_GE(hermitian_extreme_eigenvalues(p.positive).min, 0.0);
  }
}

TEST(Polar, DistanceToPolarFactorIsSingularValueGap) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const ComplexMatrix a = gaussian(n, rng);
    const auto s = singular_values(a);
    const double expected = std::max(s.front() - 1.0, 1.0 - s.back());
    EXPECT_NEAR(operator_norm(a - polar(a).unitary), expected, 1e-9);
  }
}

TEST(Polar, LeftUnitaryEquivariance) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const ComplexMatrix a = gaussian(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    EXPECT_LT(max_abs_difference(polar(u * a).unitary, u * polar(a).unitary), 1e-9);
  }
}

TEST(Polar, SingularInputThrows) {
  const ComplexMatrix a{{1.0, 2.0}, {2.0, 4.0}};
  EXPECT_THROW(polar(a), SingularMatrix);
}

TEST(Inverse, RandomAndSingular) {
  std::mt19937_64 rng(19);
  for (std::size_t n : {1u, 3u, 10u, 30u}) {
    const ComplexMatrix a = gaussian(n, rng);
    EXPECT_LT(max_abs_difference(a * inverse(a), ComplexMatrix::identity(n)), 1e-11) << n;
  }
  EXPECT_THROW(inverse(ComplexMatrix(3)), SingularMatrix);
  EXPECT_THROW(inverse(ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}}), SingularMatrix);
}

TEST(Eigenvalues, TriangularAndTraceIdentities) {
  const ComplexMatrix t{{2.0, 5.0, 1.0}, {0.0, cplx{0, 3}, 4.0}, {0.0, 0.0, -1.0}};
  auto ev = eigenvalues(t);
  ASSERT_EQ(ev.size(), 3u);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  EXPECT_NEAR(std::abs(ev[0] - cplx(-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[1] - cplx(0, 3)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[2] - cplx(2.0)), 0.0, 1e-12);

  std::mt19937_64 rng(20);
  for (std::size_t n : {2u, 5u, 12u, 36u}) {
    const ComplexMatrix a = gaussian(n, rng);
    const auto lam = eigenvalues(a);
    const ComplexMatrix a2 = a * a;
    cplx tr{}, tr2{}, s1{}, s2{};
    for (std::size_t i = 0; i < n; ++i) {
      tr += a(i, i);
      tr2 += a2(i, i);
      s1 += lam[i];
      s2 += lam[i] * lam[i];
    }
    EXPECT_LT(std::abs(tr - s1), 1e-11) << n;
    EXPECT_LT(std::abs(tr2 - s2), 1e-10) << n;
  }
}

TEST(Eigenvalues, RotationMatrix) {
  const double c = std::cos(0.3), s = std::sin(0.3);
  const auto ev = eigenvalues(ComplexMatrix{{c, -s}, {s, c}});
  for (const auto& z : ev) EXPECT_NEAR(std::abs(z), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(ev[0].imag()), s, 1e-14);
}

TEST(MatrixIo, RoundTripAndValidation) {
  const ComplexMatrix a{{1.0, cplx{0.5, -2}}, {cplx{0, 1e-300}, 3.0}};
  EXPECT_EQ(matrix_from_json(matrix_to_json(a)), a);
  EXPECT_THROW(matrix_from_json(nlohmann::json{{"dim", 2}, {"re", {1, 2, 3}}, {"im", {0, 0, 0, 0}}}),
               InvalidInput);
  EXPECT_THROW(matrix_from_json(nlohmann::json::array()), InvalidInput);
  EXPECT_THROW(matrix_from_json(nlohmann::json{{"dim", 0}, {"re", nlohmann::json::array()},
                                               {"im", nlohmann::json::array()}}),
               InvalidInput);
  EXPECT_THROW(read_matrix_file("/nonexistent/matrix.json"), InvalidInput);
}
