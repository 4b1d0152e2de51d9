#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include <stokes_euler/critical.hpp>
#include <stokes_euler/sectors.hpp>

#include "oracles.hpp"

using namespace stokes_euler;

namespace {

const Complex kQ{0.9, 0.3};

UnfoldingPoint generic_point(const OrbifoldType& A) { return perturb_arms(A, UnfoldingPoint::at_q(A, balanced_q(A)), 7); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Unfolding, Evaluation) {
  const auto A = make_orbifold(1, 1, 1);
  const auto s = UnfoldingPoint::at_q(A, 1.0);
  EXPECT_NEAR(std::abs(eval_unfolding(A, s, {1.0, 1.0, 1.0}) - 2.0), 0.0, 1e-15);
  auto t = s;
  t.s1 = Complex(0.25, -1.0);
  EXPECT_EQ(eval_unfolding(A, t, {0.0, 0.0, 0.0}), t.s1);
  // undeformed point is the cusp polynomial itself
  const auto B = make_orbifold(2, 3, 4);
  const auto u = UnfoldingPoint::at_q(B, kQ);
  const Point3 x{Complex(0.3, 0.1), Complex(-0.7, 0.2), Complex(0.4, 0.9)};
  const Complex f = std::pow(x[0], 2) + std::pow(x[1], 3) + std::pow(x[2], 4) - x[0] * x[1] * x[2] / kQ;
  EXPECT_LT(std::abs(eval_unfolding(B, u, x) - f), 1e-14);
}

TEST(Unfolding, GradientMatchesFiniteDifferences) {
  const auto A = make_orbifold(2, 3, 3);
  const auto s = generic_point(A);
  const Point3 x{Complex(0.3, 0.1), Complex(-0.7, 0.2), Complex(0.4, 0.9)};
  const auto g = gradient_unfolding(A, s, x);
  const auto h = hessian_unfolding(A, s, x);
  const double eps = 1e-6;
  for (std::size_t i = 0; i < 3; ++i) {
    Point3 xp = x, xm = x;
    xp[i] += eps;
    xm[i] -= eps;
    EXPECT_LT(std::abs((eval_unfolding(A, s, xp) - eval_unfolding(A, s, xm)) / (2 * eps) - g[i]), 1e-8);
    const auto gp = gradient_unfolding(A, s, xp), gm = gradient_unfolding(A, s, xm);
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_LT(std::abs((gp[j] - gm[j]) / (2 * eps) - h(static_cast<int>(j), static_cast<int>(i))), 1e-7);
  }
}

TEST(Jacobian, DimensionEqualsMuAtUndeformedPoints) {
  for (auto t : oracle::test_set()) {
    const auto A = make_orbifold(t[0], t[1], t[2]);
    const auto alg = build_jacobian_algebra(A, UnfoldingPoint::at_q(A, kQ));
    EXPECT_EQ(static_cast<int>(alg.dim()), A.mu) << A.label();
    EXPECT_LT(alg.commutator_defect(), 1e-9) << A.label();
  }
}

TEST(Jacobian, SmallestCase) {
  const auto A = make_orbifold(1, 1, 1);
  const auto alg = build_jacobian_algebra(A, UnfoldingPoint::at_q(A, kQ));
  ASSERT_EQ(alg.dim(), 2u);
  EXPECT_EQ(alg.basis[0], (Monomial{0, 0, 0}));
  EXPECT_EQ(total_degree(alg.basis[1]), 1);
  // x_j x_k = q in the quotient
  Polynomial p{{{0, 1, 1}, Complex(1.0)}};
  const CVector c = alg.reduce(p);
  EXPECT_LT(std::abs(c(0) - kQ), 1e-15);
  EXPECT_LT(std::abs(c(1)), 1e-15);
}

TEST(Jacobian, KodairaSpencerAndEulerField) {
  for (auto t : oracle::test_set()) {
    const auto A = make_orbifold(t[0], t[1], t[2]);
    auto s = generic_point(A);
    s.s1 = Complex(0.2, -0.1);
    const auto alg = build_jacobian_algebra(A, s);
    EXPECT_LT((kodaira_spencer_class(alg, s, Direction::unit()) - alg.unit()).norm(), 1e-14);
    const CVector ef = euler_field_class(A, alg, s);
    const CVector fclass = alg.mult_F * alg.unit();
    EXPECT_LT((ef - fclass).norm(), 1e-9 * std::max(1.0, fclass.norm())) << A.label();
    if (A.a[1] >= 3) {
      Polynomial p{{{0, 2, 0}, Complex(1.0)}};
      EXPECT_LT((kodaira_spencer_class(alg, s, Direction::arm_power(1, 2)) - alg.reduce(p)).norm(), 1e-14);
    }
  }
}

TEST(Critical, SmallestCaseClosedForm) {
  const auto A = make_orbifold(1, 1, 1);
  const auto s = UnfoldingPoint::at_q(A, kQ);
  const auto cd = critical_data(A, s, build_jacobian_algebra(A, s));
  ASSERT_EQ(cd.size(), 2u);
  const Complex r = std::sqrt(kQ);
  EXPECT_LT(std::abs(cd.values[0] + 2.0 * r), 1e-12);
  EXPECT_LT(std::abs(cd.values[1] - 2.0 * r), 1e-12);
  for (std::size_t i = 0; i < 2; ++i) {
    const Complex sign = i == 0 ? -1.0 : 1.0;
    for (auto x : cd.points[i]) EXPECT_LT(std::abs(x - sign * r), 1e-12);
    // det [[0,a,a],[a,0,a],[a,a,0]] = 2a^3 with a = -x/q
    const Complex a = -sign * r / kQ;
    EXPECT_LT(std::abs(cd.hessians[i] - 2.0 * a * a * a), 1e-12);
  }
}

TEST(Critical, StickelbergerAgreesWithNewton) {
  for (auto t : oracle::test_set()) {
    const auto A = make_orbifold(t[0], t[1], t[2]);
    const auto s = generic_point(A);
    const auto alg = build_jacobian_algebra(A, s);
    const auto cd = critical_data(A, s, alg);
    ASSERT_EQ(static_cast<int>(cd.size()), A.mu);
    for (std::size_t i = 0; i < cd.size(); ++i) {
      EXPECT_LT(rel(cd.direct_values[i], cd.values[i]), 1e-9) << A.label();
      EXPECT_LT(cd.gradient_residuals[i], 1e-9);
      EXPECT_GT(std::abs(cd.hessians[i]), 0.0);
    }
  }
}

TEST(Critical, DegeneratePointIsRefused) {
  const auto A = make_orbifold(1, 2, 2);
  const auto s = UnfoldingPoint::at_q(A, kQ);
  try {
    critical_data(A, s, build_jacobian_algebra(A, s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePoint);
  }
}

TEST(Frame, EtaAndPsi) {
  const auto A = make_orbifold(1, 1, 1);
  const auto s = UnfoldingPoint::at_q(A, 1.0);
  const auto cd = critical_data(A, s, build_jacobian_algebra(A, s));
  const auto fr = canonical_frame(s, cd);
  // values sorted ascending: w=-2 has Delta=+2, w=+2 has Delta=-2
  EXPECT_LT(std::abs(fr[0].eta + 0.5), 1e-12);
  EXPECT_LT(std::abs(fr[1].eta - 0.5), 1e-12);

  const auto B = make_orbifold(2, 2, 3);
  const auto sb = generic_point(B);
  const auto cdb = critical_data(B, sb, build_jacobian_algebra(B, sb));
  const auto f1 = canonical_frame(sb, cdb);
  auto shifted = sb;
  shifted.s_mu *= std::exp(0.3);
  auto cd_shift = cdb;  // the frame formula only reads Delta and t_mu
  const auto f2 = canonical_frame(shifted, cd_shift);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    EXPECT_LT(std::abs(f2[i].psi - f1[i].psi * std::exp(-0.3)), 1e-12);
    EXPECT_LT(std::abs(f1[i].psi * f1[i].psi * cdb.hessians[i] + std::exp(-2.0 * sb.t_mu())), 1e-10);
  }
}

TEST(Frame, ZeroHessianRejected) {
  CriticalData cd;
  cd.hessians = {Complex{}};
  EXPECT_THROW(canonical_frame(UnfoldingPoint{}, cd), Error);
}

TEST(Exponents, SymmetricMultiset) {
  for (auto t : oracle::test_set()) {
    const auto A = make_orbifold(t[0], t[1], t[2]);
    auto v = exponent_data(A).v_diagonal();
    ASSERT_EQ(static_cast<int>(v.size()), A.mu);
    auto neg = v;
    for (auto& x : neg) x = -x;
    std::sort(v.begin(), v.end());
    std::sort(neg.begin(), neg.end());
    EXPECT_EQ(v, neg);
  }
  auto v = exponent_data(make_orbifold(2, 3, 5)).v_diagonal();
  std::sort(v.begin(), v.end());
  const std::vector<Rational> want{Rational(-1, 2), Rational(-3, 10), Rational(-1, 6), Rational(-1, 10), Rational(0),
                                   Rational(1, 10),  Rational(1, 6),   Rational(3, 10), Rational(1, 2)};
  EXPECT_EQ(v, want);
}

TEST(Exponents, UHasCriticalValuesAsSpectrum) {
  const auto A = make_orbifold(2, 2, 2);
  const auto s = generic_point(A);
  const auto alg = build_jacobian_algebra(A, s);
  const auto uv = assemble_UV(exponent_data(A), alg);
  const auto cd = critical_data(A, s, alg);
  Eigen::ComplexEigenSolver<CMatrix> es(uv.U);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double best = 1e300;
    for (auto w : cd.values) best = std::min(best, std::abs(w - es.eigenvalues()(k)));
    EXPECT_LT(best, 1e-9);
  }
}

TEST(Sectors, Admissibility) {
  const std::vector<Complex> w{0.0, 1.0};
  EXPECT_FALSE(sector_analysis(w, std::numbers::pi / 2).admissible);
  const auto r = sector_analysis(w, std::numbers::pi / 4);
  EXPECT_TRUE(r.admissible);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(r.margin, std::numbers::pi / 4, 1e-15);
  EXPECT_TRUE(sector_analysis({Complex(3.0, 1.0)}, 0.7).admissible);
  EXPECT_THROW(require_admissible(w, std::numbers::pi / 2), Error);
}

TEST(Sectors, SymmetricAndTranslationInvariant) {
  const std::vector<Complex> w{{0.3, 1.0}, {-1.0, 0.2}, {2.0, -0.5}, {0.1, 0.1}};
  for (double phi = 0.05; phi < 3.1; phi += 0.17) {
    auto rev = w;
    std::reverse(rev.begin(), rev.end());
    auto shifted = w;
    for (auto& x : shifted) x += Complex(5.0, -3.0);
    const auto a = sector_analysis(w, phi);
    EXPECT_EQ(a.admissible, sector_analysis(rev, phi).admissible);
    EXPECT_EQ(a.admissible, sector_analysis(shifted, phi).admissible);
    if (a.admissible) {
      EXPECT_EQ(a.order, sector_analysis(shifted, phi).order);
    }
  }
}

TEST(Sectors, Walls) {
  EXPECT_NEAR(wall_structure({2.0, -2.0}).at(0), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(wall_structure({Complex(0, 2), Complex(0, -2)}).at(0), 0.0, 1e-15);
  EXPECT_TRUE(wall_structure({1.0}).empty());
  const std::vector<Complex> w{2.0, -2.0};
  const double phi = choose_admissible_angle(w, std::numbers::pi / 2);
  EXPECT_GT(sector_analysis(w, phi).margin, 0.05);
}
