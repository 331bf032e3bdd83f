#include <gtest/gtest.h>

#include "invmetric/domains.hpp"
#include "oracles.hpp"

using namespace invmetric;

TEST(PlanarBoundaryDistance, ClosedFormDomains) {
  EXPECT_DOUBLE_EQ(boundary_distance(UnitDisc{}, 0.25), 0.75);
  EXPECT_DOUBLE_EQ(boundary_distance(make_disc(cplx(1, 1), 2.0), cplx(1, 2)), 1.0);
  EXPECT_NEAR(boundary_distance(HalfPlane(I), cplx(5, 0.3)), 0.3, 1e-15);
  EXPECT_NEAR(boundary_distance(HalfPlane(cplx(1, 0)), cplx(0.2, -7)), 0.2, 1e-15);
  EXPECT_NEAR(boundary_distance(SlitPlane{}, cplx(-2, 0)), 2.0, 1e-15);
  EXPECT_NEAR(boundary_distance(SlitPlane{}, cplx(3, 0.5)), 0.5, 1e-15);
  EXPECT_NEAR(boundary_distance(Annulus(2.0), 1.0), 0.5, 1e-15);
  EXPECT_NEAR(boundary_distance(Annulus(2.0), 1.8), 0.2, 1e-15);
}

TEST(PlanarBoundaryDistance, SectorUsesEdgesAndApex) {
  const Sector s(pi / 4);
  // On the axis the nearest edge point is at distance x sin(theta).
  EXPECT_NEAR(boundary_distance(s, 2.0), 2.0 * std::sin(pi / 4), 1e-14);
  // In a sector wider than a half-plane, points on the axis are closer to the apex than to either edge.
  EXPECT_NEAR(boundary_distance(Sector(3.0), 0.5), 0.5, 1e-14);
}

TEST(PlanarBoundaryDistance, DiscIsExactNearBoundary) {
  for (double e : {1e-6, 1e-9, 1e-12}) {
    const double x = 1.0 - e;
    EXPECT_EQ(boundary_distance(UnitDisc{}, x), 1.0 - x);
    EXPECT_EQ(boundary_distance(UnitDisc{}, cplx(0.0, -x)), 1.0 - x);
  }
}

TEST(PlanarBoundaryDistance, OutsideIsZeroOrSigned) {
  EXPECT_EQ(boundary_distance(UnitDisc{}, 2.0), 0.0);
  EXPECT_NEAR(boundary_distance(UnitDisc{}, 2.0, true), -1.0, 1e-15);
}

TEST(Contains, ClosedFormDomains) {
  EXPECT_TRUE(contains(UnitDisc{}, 0.9));
  EXPECT_FALSE(contains(UnitDisc{}, 1.0));
  EXPECT_FALSE(contains(SlitPlane{}, 2.0));
  EXPECT_TRUE(contains(SlitPlane{}, cplx(2.0, 1e-300)));
  EXPECT_FALSE(contains(Sector(0.5), 0.0));
  EXPECT_TRUE(contains(Sector(0.5), cplx(1, 0.5)));
  EXPECT_FALSE(contains(Annulus(2.0), 0.4));
}

TEST(JordanCurve, CircleDistanceMatchesDisc) {
  const JordanDomain d(curves::circle(cplx(1, -1), 2.0));
  std::mt19937_64 g(7);
  for (int i = 0; i < 50; ++i) {
    const cplx z = cplx(1, -1) + 2.0 * oracle::random_in_disc(g, 0.99);
    EXPECT_NEAR(boundary_distance(d, z), 2.0 - std::abs(z - cplx(1, -1)), 1e-7);
    EXPECT_TRUE(contains(d, z));
  }
  EXPECT_FALSE(contains(d, cplx(3.5, -1)));
}

TEST(JordanCurve, EllipseDistanceOnAxes) {
  const JordanDomain d(curves::ellipse(2.0, 1.0));
  EXPECT_NEAR(boundary_distance(d, 0.0), 1.0, 1e-8);
  EXPECT_NEAR(boundary_distance(d, cplx(0, 0.9)), 0.1, 1e-8);
  // Near the end of the major axis the curvature radius is b^2 / a = 0.5, so the axis point is the foot.
  EXPECT_NEAR(boundary_distance(d, 1.9), 0.1, 1e-8);
}

TEST(JordanCurve, LensContainsIntersectionOnly) {
  const JordanDomain d(curves::lens(0.8));
  EXPECT_TRUE(contains(d, 0.7));
  EXPECT_FALSE(contains(d, 0.1));
  EXPECT_FALSE(contains(d, 1.1));
  EXPECT_NEAR(boundary_distance(d, 0.7), 0.3, 1e-8);
}

TEST(JordanCurve, FourierRejectsNonStarShaped) {
  EXPECT_THROW(curves::fourier(1.0, {{2, 0.6, 0.0}, {3, 0.5, 0.0}}), Error);
  EXPECT_NO_THROW(curves::fourier(1.0, {{2, 0.2, 0.0}}));
}

TEST(TwoDiscHull, DegeneratesToLargerDisc) {
  const PlanarDomain h = two_disc_hull(0.0, 2.0, 0.5, 1.0);
  ASSERT_TRUE(std::holds_alternative<Disc>(h) || std::holds_alternative<UnitDisc>(h));
  EXPECT_NEAR(boundary_distance(h, 0.0), 2.0, 1e-15);
}

TEST(TwoDiscHull, ContainsBothDiscsAndSegment) {
  const PlanarDomain h = two_disc_hull(0.0, 1.0, 3.0, 0.5);
  EXPECT_TRUE(contains(h, cplx(-0.9, 0)));
  EXPECT_TRUE(contains(h, cplx(3.4, 0)));
  EXPECT_TRUE(contains(h, cplx(1.5, 0.7)));
  EXPECT_FALSE(contains(h, cplx(1.5, 0.9)));
  EXPECT_NEAR(boundary_distance(h, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(boundary_distance(h, 3.0), 0.5, 1e-12);
}

TEST(TwoDiscHull, CurveTracesHullBoundary) {
  const TwoDiscHull th(0.0, 1.0, 3.0, 0.5);
  const PlanarDomain h = th;
  const auto curve = hull_curve(th);
  for (int i = 0; i < 200; ++i) {
    const cplx p = curve->point((i + 0.5) / 200.0);
    EXPECT_NEAR(boundary_distance(h, p, true), 0.0, 1e-9);
  }
  EXPECT_EQ(curve->winding_number(curve->interior_hint()), 1);
}

TEST(CnDomains, BallAndPolydiscDistances) {
  const CnDomain ball = Ball({0.0, 0.0}, 2.0);
  EXPECT_NEAR(boundary_distance(ball, {cplx(1, 0), cplx(0, 0)}), 1.0, 1e-15);
  const CnDomain poly = Polydisc({0.0, 0.0}, {1.0, 3.0});
  EXPECT_NEAR(boundary_distance(poly, {cplx(0.5, 0), cplx(2, 0)}), 0.5, 1e-15);
  EXPECT_THROW(boundary_distance(ball, {cplx(0, 0)}), Error);
}

TEST(CnDomains, ConvexBodyCube) {
  // |Re x_j| < 1, |Im x_j| < 1 in C^1 as four real half-spaces.
  std::vector<HalfSpace> faces{{{cplx(1, 0)}, 1.0}, {{cplx(-1, 0)}, 1.0}, {{cplx(0, 1)}, 1.0}, {{cplx(0, -1)}, 1.0}};
  const CnDomain cube = ConvexBody(faces);
  EXPECT_TRUE(contains(cube, {cplx(0.5, -0.5)}));
  EXPECT_FALSE(contains(cube, {cplx(1.5, 0)}));
  EXPECT_NEAR(boundary_distance(cube, {cplx(0.5, -0.25)}), 0.5, 1e-9);
  EXPECT_NEAR(boundary_distance(cube, {cplx(2.0, 0)}, true), -1.0, 1e-6);
}

TEST(CnDomains, SupportingHyperplaneOfBall) {
  const CnDomain ball = Ball({0.0, 0.0}, 1.0);
  const Hyperplane h = supporting_hyperplane(ball, {cplx(0, 1), cplx(0, 0)});
  std::mt19937_64 g(9);
  for (int i = 0; i < 100; ++i) {
    const CVec x{0.7 * oracle::random_in_disc(g), 0.7 * oracle::random_in_disc(g)};
    EXPECT_LT(hermitian(x - h.point, h.normal).real(), 0.0);
  }
}
