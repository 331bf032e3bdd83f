#include <gtest/gtest.h>

#include "invmetric/distances.hpp"
#include "oracles.hpp"

using namespace invmetric;

TEST(PlanarDistances, DiscCaratheodoryIsPoincare) {
  EXPECT_NEAR(caratheodory(UnitDisc{}, 0.0, 0.5).mid(), 0.549306144334055, 1e-15);
  std::mt19937_64 g(41);
  for (int i = 0; i < 100; ++i) {
    const cplx z = oracle::random_in_disc(g, 0.99), w = oracle::random_in_disc(g, 0.99);
    const CertifiedValue c = caratheodory(UnitDisc{}, z, w), l = lempert(UnitDisc{}, z, w);
    EXPECT_NEAR(c.mid(), oracle::disc(z, w), 1e-10 * std::max(1.0, c.mid()));
    EXPECT_EQ(c.lo, l.lo);
    EXPECT_EQ(c.method, Method::closed_form);
  }
}

TEST(PlanarDistances, ScaledDiscAndHalfPlane) {
  const cplx c(1, 1);
  EXPECT_NEAR(caratheodory(make_disc(c, 3.0), c, c + 1.5).mid(), std::atanh(0.5), 1e-14);
  EXPECT_NEAR(caratheodory(HalfPlane(I), I, 4.0 * I).mid(), 0.5 * std::log(4.0), 1e-14);
  EXPECT_NEAR(caratheodory(HalfPlane(cplx(1, 0)), 1.0, 4.0).mid(), 0.5 * std::log(4.0), 1e-14);
}

TEST(PlanarDistances, SlitPlaneExact) {
  // sqrt maps the slit plane onto a half-plane; c(-1, -t) = (1/2) log(1 / sqrt t) on the imaginary axis.
  for (double t : {1e-2, 1e-5, 1e-8})
    EXPECT_NEAR(caratheodory(SlitPlane{}, -1.0, -t).mid(), 0.25 * std::log(1.0 / t), 1e-9);
}

TEST(PlanarDistances, SectorExact) {
  // Along the axis of the sector the power map gives (pi / (4 theta)) log(x2 / x1).
  const double theta = 0.4;
  EXPECT_NEAR(caratheodory(Sector(theta), 1.0, 3.0).mid(), pi / (4 * theta) * std::log(3.0), 1e-12);
}

TEST(PlanarDistances, SymmetryAndTriangleOnJordanDomain) {
  const PlanarDomain d = JordanDomain(curves::ellipse(2.0, 1.0));
  const cplx a(0.3, 0.2), b(-1.2, 0.5), c(1.5, -0.3);
  const double ab = caratheodory(d, a, b).mid(), ba = caratheodory(d, b, a).mid();
  EXPECT_NEAR(ab, ba, 1e-5);
  EXPECT_LE(caratheodory(d, a, c).mid(), ab + caratheodory(d, b, c).mid() + 1e-5);
}

TEST(PlanarDistances, InclusionDecreasesDistance) {
  // Ellipse(2, 1) contains the unit disc and is contained in Disc(0, 2).
  const PlanarDomain e = JordanDomain(curves::ellipse(2.0, 1.0));
  for (auto [z, w] : {std::pair<cplx, cplx>{0.1, cplx(0.3, 0.5)}, {cplx(-0.4, 0.1), cplx(0.6, -0.6)}}) {
    const double small = caratheodory(UnitDisc{}, z, w).mid();
    const double mid = caratheodory(e, z, w).mid();
    const double big = caratheodory(make_disc(0.0, 2.0), z, w).mid();
    EXPECT_LE(mid, small + 1e-6);
    EXPECT_GE(mid, big - 1e-6);
  }
}

TEST(PlanarDistances, KobayashiMetricBelowInverseDistance) {
  // kappa(z, X) <= |X| / d(z) on every planar domain (the disc of radius d(z) sits inside).
  const PlanarDomain e = JordanDomain(curves::ellipse(2.0, 1.0));
  for (cplx z : {cplx(0, 0), cplx(1.5, 0.1), cplx(-0.3, 0.8)}) {
    const double k = kobayashi_metric(e, z, 1.0);
    EXPECT_LE(k, 1.0 / boundary_distance(e, z) * (1 + 1e-6));
    EXPECT_GE(k, 0.25 / boundary_distance(e, z) * (1 - 1e-6));
  }
  EXPECT_NEAR(kobayashi_metric(UnitDisc{}, 0.5, 1.0), 1.0 / 0.75, 1e-12);
}

TEST(PlanarDistances, GreenFunctionOnDisc) {
  // g(0, w) = (1/2pi) log |w| on the unit disc.
  EXPECT_NEAR(green_function(UnitDisc{}, 0.0, 0.5), std::log(0.5) / (2 * pi), 1e-14);
  EXPECT_THROW(green_function(Annulus(2.0), 1.0, -1.0), Error);
}

TEST(Bergman, DiscDistanceIsRootTwoTimesPoincare) {
  EXPECT_NEAR(bergman_distance(UnitDisc{}, 0.0, 0.5).mid(), 0.7768362, 1e-7);
  EXPECT_NEAR(bergman_distance(UnitDisc{}, 0.0, 0.5).mid(), std::sqrt(2.0) * std::atanh(0.5), 1e-9);
  std::mt19937_64 g(42);
  for (int i = 0; i < 20; ++i) {
    const cplx z = oracle::random_in_disc(g, 0.9), w = oracle::random_in_disc(g, 0.9);
    EXPECT_NEAR(bergman_distance(UnitDisc{}, z, w).mid(), std::sqrt(2.0) * oracle::disc(z, w), 1e-9);
  }
}

TEST(Bergman, DiscKernelAndMetric) {
  // K(z) = 1 / (pi (1 - |z|^2)^2), beta(z, 1) = sqrt 2 / (1 - |z|^2).
  for (double r : {0.0, 0.3, 0.8}) {
    EXPECT_NEAR(bergman_kernel(UnitDisc{}, r) * pi * std::pow(1 - r * r, 2), 1.0, 1e-10);
    EXPECT_NEAR(bergman_metric(UnitDisc{}, r, 1.0) * (1 - r * r), std::sqrt(2.0), 1e-9);
  }
}

TEST(Bergman, KobayashiBelowFourTimesBergmanMetric) {
  const PlanarDomain a = Annulus(2.0);
  for (cplx z : {cplx(1.0, 0), cplx(0.6, 0.1), cplx(-1.8, 0.05)})
    EXPECT_LE(kobayashi_metric(a, z, 1.0), 4.0 * bergman_metric(a, z, 1.0));
}

TEST(Annulus, CoveringDistanceProperties) {
  const PlanarDomain a = Annulus(2.0);
  EXPECT_EQ(lempert(a, 1.0, 1.0).mid(), 0.0);
  const CertifiedValue c = caratheodory(a, 1.0, -1.0), l = lempert(a, 1.0, -1.0);
  EXPECT_LE(c.lo, l.hi);
  EXPECT_GT(l.mid(), 0.0);
  EXPECT_EQ(l.method, Method::covering);
}

TEST(Uniformizer, JordanDistanceAgreesWithClosedLens) {
  const double rho = 0.8;
  const PlanarDomain lens = JordanDomain(curves::lens(rho));
  const cplx z = 0.6, w(0.8, 0.2);
  const double exact = disc_distance(0.0, closed::lens(rho, z)(w));
  EXPECT_NEAR(caratheodory(lens, z, w).mid(), exact, 1e-3);
}

TEST(Errors, PointsOutsideAreRejected) {
  EXPECT_THROW(caratheodory(UnitDisc{}, 0.0, 1.5), Error);
  try {
    lempert(SlitPlane{}, -1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
}
