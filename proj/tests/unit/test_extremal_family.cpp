#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "opradius/extremal_family.hpp"
#include "opradius/linalg.hpp"
#include "opradius/radii.hpp"

using namespace opradius;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_all_pass(const CertificateReport& rep, int n) {
  ASSERT_FALSE(rep.checks.empty());
  for (const auto& c : rep.checks) {
    EXPECT_TRUE(c.pass) << "n=" << n << " " << c.name << " value=" << c.value << " bound=" << c.bound;
  }
}

}  // namespace

TEST(ExtremalFamily, RejectsBadDimensions) {
  for (int n : {-4, 0, 4, 8, 13, 16, 508}) EXPECT_THROW(build_extremal_family(n), InvalidInput) << n;
}

TEST(ExtremalFamily, Structure) {
  const ExtremalFamily f = build_extremal_family(20);
  EXPECT_EQ(f.k, 2);
  // One-based D_ll = exp(i (2l - 1) pi / 2n).
  EXPECT_NEAR(std::abs(f.d(0, 0) - std::polar(1.0, kPi / 40.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.d(19, 19) - std::polar(1.0, 39.0 * kPi / 40.0)), 0.0, 1e-15);
  // Distances 3k+2 = 8 through 5k+2 = 12 are ones.
  EXPECT_EQ(f.e(0, 7), 0.0);
  EXPECT_EQ(f.e(0, 8), 1.0);
  EXPECT_EQ(f.e(0, 12), 1.0);
  EXPECT_EQ(f.e(0, 13), 0.0);
  EXPECT_EQ(f.e(19, 0), 0.0);
  EXPECT_TRUE(f.e.is_hermitian(0.0));
  const double c = 1.0 / (2.0 * std::pow(20.0, 1.5));
  EXPECT_DOUBLE_EQ(f.b(0, 8).real(), c);
  EXPECT_NEAR(std::abs(f.a(0, 8) - f.d(0, 0) * c * f.d(8, 8)), 0.0, 1e-18);
}

TEST(ExtremalFamily, RowSumsAreExactlyQuarterN) {
  for (int k = 1; k <= 20; ++k) {
    const int n = 8 * k + 4;
    const ExtremalFamily f = build_extremal_family(n);
    for (std::size_t i = 0; i < f.e.dim(); ++i) {
      double s = 0.0;
      for (const auto& z : f.e.row(i)) s += z.real();
      ASSERT_EQ(s, n / 4) << "n=" << n << " row " << i;
    }
  }
}

TEST(ExtremalFamily, SymmetryPair) {
  const SymmetryPair s = make_symmetry_pair(12);
  EXPECT_EQ(s.p(1, 0), 1.0);
  EXPECT_EQ(s.p(0, 11), 1.0);
  EXPECT_EQ(s.delta(11, 11), -1.0);
  EXPECT_EQ(s.delta(0, 0), 1.0);
}

TEST(ExtremalFamily, NormIdentity) {
  for (int n : {12, 20, 28, 36}) {
    const ExtremalFamily f = build_extremal_family(n);
    EXPECT_NEAR(operator_norm(f.a), 1.0 + 1.0 / (8.0 * std::sqrt(static_cast<double>(n))), 1e-10);
    expect_all_pass(check_norm(f), n);
  }
}

TEST(ExtremalFamily, RotationSymmetry) {
  for (int n : {12, 20, 28, 36}) {
    const ExtremalFamily f = build_extremal_family(n);
    EXPECT_LE(symmetry_residual(f), 1e-13);
    expect_all_pass(check_symmetry(f), n);
  }
}

TEST(ExtremalFamily, RealPartsContractive) {
  for (int n : {12, 20, 28, 36, 52}) expect_all_pass(check_real_parts(build_extremal_family(n)), n);
}

TEST(ExtremalFamily, ProofCertificates) {
  for (int n : {12, 20, 28, 36, 52}) {
    const ExtremalFamily f = build_extremal_family(n);
    const CertificateReport a = certificate_real_part(f);
    const CertificateReport b = certificate_inverse_real_part(f);
    expect_all_pass(a, n);
    expect_all_pass(b, n);
    EXPECT_NE(a.find("m_frobenius_squared"), nullptr);
    EXPECT_NE(b.find("sum_norm"), nullptr);
  }
}

TEST(ExtremalFamily, RadiusBounds) {
  const double expected_w[] = {1.0000103895, 1.0000040839, 1.0000021327, 1.0000013024};
  const double expected_w_inv[] = {1.0004461620, 1.0001611905, 1.0000823644, 1.0000498687};
  int idx = 0;
  for (int n : {12, 20, 28, 36}) {
    const ExtremalFamily f = build_extremal_family(n);
    const auto w = numerical_radius(f.a);
    const auto w_inv = numerical_radius(inverse(f.a));
    EXPECT_NEAR(w.value, expected_w[idx], 1e-9);
    EXPECT_NEAR(w_inv.value, expected_w_inv[idx], 1e-9);
    EXPECT_LE(w.upper_bound, 1.0 / std::cos(kPi / n) + 1e-8);
    expect_all_pass(check_radius_bounds(f), n);
    ++idx;
  }
}

TEST(ExtremalFamily, RangeRotationInvariance) {
  for (int n : {12, 20}) expect_all_pass(check_range_rotation(build_extremal_family(n), 1024), n);
}

TEST(ExtremalFamily, FullVerificationAndReport) {
  const CertificateReport rep = verify_extremal_family(build_extremal_family(12));
  EXPECT_TRUE(rep.all_pass());
  const auto j = rep.to_json();
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(j["checks"].size(), rep.checks.size());
  EXPECT_NE(rep.to_text().find("PASS conjugation_residual"), std::string::npos);
}

TEST(CertificateReport, PassRules) {
  CertificateReport r;
  r.add_upper("upper_ok", 1.0 + 5e-11, 1.0);
  r.add_upper("upper_bad", 1.0 + 5e-10, 1.0);
  r.add_deviation("dev_ok", 2.0, 2.0 + 1e-12, 1e-11);
  r.add_deviation("dev_bad", 2.0, 2.0 + 1e-10, 1e-11);
  EXPECT_TRUE(r.find("upper_ok")->pass);
  EXPECT_FALSE(r.find("upper_bad")->pass);
  EXPECT_TRUE(r.find("dev_ok")->pass);
  EXPECT_FALSE(r.find("dev_bad")->pass);
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.find("missing"), nullptr);
}

TEST(Scaling, SlopeNearOneQuarter) {
  const ScalingTable t = scaling_experiment(1, 18);
  ASSERT_EQ(t.rows.size(), 18u);
  EXPECT_EQ(t.rows.front().n, 12);
  EXPECT_EQ(t.rows.back().n, 148);
  EXPECT_GE(t.slope, 0.22);
  EXPECT_LE(t.slope, 0.28);
  EXPECT_NEAR(t.slope, 0.24902475228563314, 1e-9);
  for (const auto& r : t.rows) {
    EXPECT_NEAR(r.eps, 1.0 / std::cos(kPi / r.n) - 1.0, 1e-14);
    EXPECT_NEAR(r.delta, 1.0 / (8.0 * std::sqrt(static_cast<double>(r.n))), 1e-12);
    EXPECT_LE(r.w, 1.0 + r.eps + 1e-8);
    EXPECT_LE(r.w_inv, 1.0 + r.eps + 1e-8);
  }
}

TEST(Scaling, CsvShapeAndValidation) {
  const ScalingTable t = scaling_experiment(1, 3);
  const std::string csv = scaling_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,eps,delta,w,w_inv");
  EXPECT_NE(csv.find("\n# slope="), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_THROW(scaling_experiment(0, 3), InvalidInput);
  EXPECT_THROW(scaling_experiment(3, 2), InvalidInput);
  EXPECT_THROW(scaling_experiment(1, 70), InvalidInput);
  EXPECT_THROW(least_squares_slope({1.0}, {2.0}), InvalidInput);
  EXPECT_NEAR(least_squares_slope({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0}), 2.0, 1e-15);
}
