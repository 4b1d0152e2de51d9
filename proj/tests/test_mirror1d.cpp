#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <stokes_euler/euler_matrix.hpp>
#include <stokes_euler/jacobian.hpp>
#include <stokes_euler/search.hpp>
#include <stokes_euler/stokes1d.hpp>

#include "oracles.hpp"

using namespace stokes_euler;

namespace {

Mirror1D bessel_mirror(Complex q = 1.0) {
  Mirror1D m;
  m.q = q;
  return m;
}

// The a_1 = 1 cases, at the balanced q, perturbed off the bifurcation set when needed.
struct Case {
  OrbifoldType A;
  UnfoldingPoint s;
  Mirror1D m;
};

Case reducible_case(int a, int b, int c) {
  Case k{make_orbifold(a, b, c), {}, {}};
  k.s = UnfoldingPoint::at_q(k.A, a == 1 && b == 1 && c == 1 ? Complex{1.0, 0.0} : balanced_q(k.A));
  k.m = reduce_to_1d(k.A, k.s);
  try {
    critical_points_1d(k.m);
  } catch (const Error&) {
    k.s = perturb_arms(k.A, k.s, 7);
    k.m = reduce_to_1d(k.A, k.s);
  }
  return k;
}

const std::vector<std::array<int, 3>> kReducible{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {1, 2, 3}, {1, 3, 3}, {1, 2, 4}};

// Thimble of x + q/x through x = sqrt(q) at theta = pi: the positive real axis for q > 0.
Thimble positive_thimble(const Mirror1D& m, double mod_u) {
  const auto cps = critical_points_1d(m);
  TraceOptions t;
  t.decay_scale = mod_u;
  return trace_thimble(m, cps, 1, std::numbers::pi, t);
}

}  // namespace

TEST(Reduce, SmallestCase) {
  const auto A = make_orbifold(1, 1, 1);
  const Complex q{0.7, 0.2};
  const auto m = reduce_to_1d(A, UnfoldingPoint::at_q(A, q));
  EXPECT_EQ(m.p, 1);
  EXPECT_EQ(m.r, 1);
  const auto co = m.coefficients();
  ASSERT_EQ(co.size(), 3u);
  EXPECT_EQ(co[0], q);
  EXPECT_EQ(co[1], Complex{});
  EXPECT_EQ(co[2], Complex{1.0});
  const auto cps = critical_points_1d(m);
  const Complex root = 2.0 * std::sqrt(q);
  EXPECT_NEAR(std::abs(cps[0].w + root), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(cps[1].w - root), 0.0, 1e-12);
}

TEST(Reduce, RefusesWithoutUnitOrder) {
  const auto A = make_orbifold(2, 3, 3);
  try {
    reduce_to_1d(A, UnfoldingPoint::at_q(A, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotReducible);
  }
}

TEST(Reduce, UnitArmNeedNotComeFirst) {
  const auto A = make_orbifold(2, 1, 3);
  const auto m = reduce_to_1d(A, UnfoldingPoint::at_q(A, 0.8));
  EXPECT_EQ(m.arms[0], 1);
  EXPECT_EQ(m.p + m.r, 5);
}

TEST(Reduce, DegenerateSymmetricCase) {
  // x^2 + q^2/x^2: values {2q^2, 2q^2, -2q^2, -2q^2}
  const auto A = make_orbifold(1, 2, 2);
  const auto m = reduce_to_1d(A, UnfoldingPoint::at_q(A, 0.9));
  try {
    critical_points_1d(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCritical);
  }
}

TEST(Reduce, CriticalValuesMatchJacobian) {
  for (auto a : kReducible) {
    const auto k = reducible_case(a[0], a[1], a[2]);
    const auto cd = critical_data(k.A, k.s, build_jacobian_algebra(k.A, k.s));
    const auto w1 = critical_values(critical_points_1d(k.m));
    EXPECT_EQ(w1.size(), static_cast<std::size_t>(k.A.mu)) << k.A.label();
    EXPECT_LT(multiset_distance(w1, cd.values), 1e-9) << k.A.label();
  }
}

TEST(Critical1D, InverseSum) {
  const auto cps = critical_points_1d(bessel_mirror());
  ASSERT_EQ(cps.size(), 2u);
  EXPECT_NEAR(std::abs(cps[0].x + 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cps[0].w + 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cps[0].g2 + 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cps[1].x - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cps[1].w - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cps[1].g2 - 2.0), 0.0, 1e-14);
}

TEST(Critical1D, DeformedQuarticAgainstRootOracle) {
  Mirror1D m;
  m.p = m.r = 2;
  m.q = 1.0;
  m.b = {0.3};
  m.c = {0.0};
  // x^3 g'(x) = 2x^4 + 0.3 x^3 - 2 ; the oracle finds its roots independently
  const auto roots = oracle::polynomial_roots({-2.0, 0.0, 0.0, 0.3, 2.0});
  const auto cps = critical_points_1d(m);
  ASSERT_EQ(cps.size(), 4u);
  std::vector<Complex> want;
  for (auto x : roots) want.push_back(x * x + 1.0 / (x * x) + 0.3 * x);
  EXPECT_LT(multiset_distance(critical_values(cps), want), 1e-12);
  EXPECT_GT(relative_min_gap(critical_values(cps)), 1e-3);
}

TEST(Critical1D, CountIsPPlusR) {
  for (int p = 1; p <= 4; ++p)
    for (int r = 1; r <= 4; ++r) {
      Mirror1D m;
      m.p = p;
      m.r = r;
      m.q = Complex(0.8, 0.3);
      const auto cps = critical_points_1d(m, 0.0);
      ASSERT_EQ(cps.size(), static_cast<std::size_t>(p + r));
      // p x^{p+r} = r q^r
      for (const auto& c : cps)
        EXPECT_NEAR(std::abs(static_cast<double>(p) * std::pow(c.x, p + r) - static_cast<double>(r) * std::pow(m.q, r)), 0.0, 1e-12);
    }
}

TEST(Thimble, LevelLine) {
  const auto m = bessel_mirror();
  const auto cps = critical_points_1d(m);
  const auto th = trace_thimble(m, cps, 1, std::numbers::pi / 2 - 0.1);
  EXPECT_LT(th.level_defect(m), 1e-8);
  // and the real part runs down to -lambda
  const LaurentEval ev(m);
  const Complex rot = std::polar(1.0, -th.theta);
  EXPECT_NEAR(((ev(th.path.front())[0] - th.w) * rot).real(), -th.lambda, 1e-8 * th.lambda);
  EXPECT_NEAR(((ev(th.path.back())[0] - th.w) * rot).real(), -th.lambda, 1e-8 * th.lambda);
}

TEST(Thimble, BranchesLeaveAntipodally) {
  const auto m = bessel_mirror(Complex(0.6, 0.4));
  const auto cps = critical_points_1d(m);
  const auto th = trace_thimble(m, cps, 0, 0.7);
  const LaurentEval ev(m);
  const auto plus = thimble_point(ev, th, 1e-6).first - th.x0;
  const auto minus = thimble_point(ev, th, -1e-6).first - th.x0;
  EXPECT_NEAR(std::abs(plus / minus + 1.0), 0.0, 1e-5);
  EXPECT_NEAR(std::abs(plus / (th.v * 1e-6) - 1.0), 0.0, 1e-5);
}

TEST(Thimble, FullTurnReversesOrientation) {
  const auto m = bessel_mirror(Complex(1.0, 0.5));
  const auto cps = critical_points_1d(m);
  const double theta = 2.2;
  const auto a = trace_thimble(m, cps, 1, theta);
  const auto b = trace_thimble(m, cps, 1, theta + 2 * std::numbers::pi);
  EXPECT_NEAR(std::abs(a.v + b.v), 0.0, 1e-14);
  const LaurentEval ev(m);
  for (double t : {-2.0, -0.3, 0.0, 0.4, 1.7})
    EXPECT_NEAR(std::abs(thimble_point(ev, a, t).first - thimble_point(ev, b, -t).first), 0.0, 1e-12);
  const Complex u = std::polar(0.3, theta);
  EXPECT_NEAR(std::abs(moment_normalized(m, a, u, 1) + moment_normalized(m, b, u, 1)), 0.0, 1e-12);
}

TEST(Thimble, CollisionIsReported) {
  const auto m = bessel_mirror();
  const auto cps = critical_points_1d(m);
  // from w = -2 towards +2: the half-line runs straight into the other value
  try {
    trace_thimble(m, cps, 0, std::numbers::pi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::SaddleCollision || e.kind() == ErrorKind::StepFailure) << e.what();
  }
}

TEST(Moments, BesselOracle) {
  const auto m = bessel_mirror();
  for (double mod_u : {0.1, 0.05}) {
    const auto th = positive_thimble(m, mod_u);
    const Complex u = -mod_u;
    const double z = 2.0 / mod_u;
    const Complex got = moment_normalized(m, th, u, 0);
    // path runs from x = infinity down to x = 0
    const Complex prefactor = -2.0 / std::sqrt(2.0 * std::numbers::pi * u);
    const double k0_std = std::cyl_bessel_k(0.0, z) * std::exp(z);
    EXPECT_NEAR(std::abs(got / (prefactor * k0_std) - 1.0), 0.0, 1e-8) << mod_u;
    EXPECT_NEAR(std::abs(got / (prefactor * oracle::scaled_k0_asymptotic(z)) - 1.0), 0.0, 1e-8) << mod_u;
    EXPECT_NEAR(std::abs(got / (prefactor * oracle::scaled_k0_trapezoid(z)) - 1.0), 0.0, 1e-8) << mod_u;
  }
}

TEST(Moments, BesselOracleWithGeneralQ) {
  const double q = 2.5;
  const auto m = bessel_mirror(q);
  const double mod_u = 0.2;
  const auto th = positive_thimble(m, mod_u);
  const double z = 2.0 * std::sqrt(q) / mod_u;
  const Complex got = moment_normalized(m, th, -mod_u, 0);
  const Complex want = -2.0 * std::cyl_bessel_k(0.0, z) * std::exp(z) / std::sqrt(2.0 * std::numbers::pi * Complex(-mod_u));
  EXPECT_NEAR(std::abs(got / want - 1.0), 0.0, 1e-9);
}

TEST(Moments, IntegralCarriesSaddleFactor) {
  const auto m = bessel_mirror();
  const auto th = positive_thimble(m, 0.5);
  const Complex u = -0.5;
  EXPECT_NEAR(std::abs(moment_integral(m, th, u, 2) / (std::exp(th.w / u) * moment_normalized(m, th, u, 2)) - 1.0), 0.0, 1e-14);
}

TEST(Moments, DecayViolation) {
  const auto m = bessel_mirror();
  const auto th = positive_thimble(m, 0.1);
  try {
    moment_normalized(m, th, Complex(0.0, 0.1), 0);  // |arg u - theta| = pi/2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DecayViolation);
  }
}

TEST(Asymptotic, SaddlePointLawIsLinear) {
  const auto m = bessel_mirror();
  const auto cps = critical_points_1d(m);
  const auto rep = asymptotic_check(m, cps, 1, {-0.1, -0.05, -0.025, -0.0125});
  ASSERT_EQ(rep.samples.size(), 4u);
  EXPECT_TRUE(rep.linear_decrease());
  EXPECT_TRUE(std::isfinite(rep.slope));
  EXPECT_LT(rep.samples.back().defect, 1e-3);
  // 1-d saddle expansion: ratio = 1 + u/16 + O(u^2) for x + 1/x at x = 1
  EXPECT_NEAR(rep.slope, 1.0 / 16, 0.01);
  for (std::size_t k = 1; k < rep.samples.size(); ++k)
    EXPECT_NEAR(rep.samples[k - 1].defect / rep.samples[k].defect, 2.0, 0.1);
}

TEST(Asymptotic, BothBranchesSameSign) {
  const auto m = bessel_mirror();
  const auto cps = critical_points_1d(m);
  const auto rep = asymptotic_check(m, cps, 1, {-0.05});
  EXPECT_GT(rep.samples[0].ratio.real(), 0.9);
}

TEST(Stokes, SmallestCase) {
  const auto m = bessel_mirror();
  const auto r = stokes_numeric(m);
  ASSERT_EQ(r.S.rows(), 2u);
  EXPECT_EQ(r.S(0, 0), 1);
  EXPECT_EQ(r.S(1, 1), 1);
  EXPECT_EQ(r.S(1, 0), 0);
  EXPECT_EQ(std::abs(r.S(0, 1)), 2);
  EXPECT_LT(r.max_int_distance, 1e-6);
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_EQ(coxeter_invariants(r.S).poly_text(), "x^2 + 2x + 1");
  const auto chi = canonical_collection_euler_matrix(make_orbifold(1, 1, 1)).chi;
  SearchOptions so;
  so.max_depth = 4;
  const auto sr = equivalence_search(r.S, chi, so);
  ASSERT_TRUE(sr.found());
  EXPECT_EQ(apply_moves(r.S, sr.moves), chi);
}

TEST(Stokes, SameAnswerOnEitherAdmissibleLine) {
  const auto m = bessel_mirror();
  StokesOptions a, b;
  a.phi = 0.3;
  b.phi = 2.8;
  const auto ra = stokes_numeric(m, a);
  const auto rb = stokes_numeric(m, b);
  // the dominance order flips with the line, and with it which entry is above the diagonal
  EXPECT_EQ(coxeter_invariants(ra.S).char_poly, coxeter_invariants(rb.S).char_poly);
  EXPECT_EQ(std::abs(ra.S(0, 1)), std::abs(rb.S(0, 1)));
}

TEST(Stokes, WallIsRefused) {
  StokesOptions o;
  o.phi = std::numbers::pi / 2;  // w = +-2 differ by a real number
  try {
    stokes_numeric(bessel_mirror(), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Inadmissible);
  }
}

TEST(Stokes, AcceptanceFamily) {
  for (auto a : kReducible) {
    const auto k = reducible_case(a[0], a[1], a[2]);
    const auto r = stokes_numeric(k.m);
    SCOPED_TRACE(k.A.label());
    EXPECT_EQ(r.S.rows(), static_cast<std::size_t>(k.A.mu));
    EXPECT_TRUE(r.S.is_unit_upper_triangular());
    EXPECT_LT(r.max_int_distance, 1e-6);
    EXPECT_LT(r.residual, 1e-8);
    const auto gram = gram_from_stokes(r.S).gram;
    EXPECT_TRUE(gram.is_symmetric());
    for (std::size_t i = 0; i < gram.rows(); ++i) EXPECT_EQ(gram(i, i), -2);
    EXPECT_EQ(stokes_from_gram(gram), r.S);
    // the values are reported in the order the matrix is written in
    const auto w = r.values();
    const Complex rot = std::polar(1.0, -r.phi);
    for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LT((w[i - 1] * rot).real(), (w[i] * rot).real());
    EXPECT_TRUE(stokes_stability(k.m, r).stable);
  }
}

TEST(Stokes, CoxeterPolynomialMatchesEulerMatrix) {
  for (auto a : kReducible) {
    const auto k = reducible_case(a[0], a[1], a[2]);
    const auto r = stokes_numeric(k.m);
    const auto chi = canonical_collection_euler_matrix(k.A).chi;
    EXPECT_EQ(coxeter_invariants(r.S).char_poly, coxeter_invariants(chi).char_poly) << k.A.label();
  }
}
