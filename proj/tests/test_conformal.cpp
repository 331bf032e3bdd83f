#include <gtest/gtest.h>

#include "invmetric/conformal.hpp"
#include "oracles.hpp"

using namespace invmetric;

namespace {

// Central difference along the real direction.
cplx numeric_derivative(const ConformalMap& f, cplx z, double h = 1e-6) { return (f(z + h) - f(z - h)) / (2.0 * h); }

void expect_round_trip(const ConformalMap& f, cplx z, double tol) {
  EXPECT_NEAR(std::abs(f.inverse(f(z)) - z), 0.0, tol) << f.kind() << " at " << z;
}

}  // namespace

TEST(Mobius, NormalizedAndIsometric) {
  const cplx a(0.3, -0.4);
  const ConformalMap m = mobius_disc_automorphism(a);
  EXPECT_NEAR(std::abs(m(a)), 0.0, 1e-16);
  EXPECT_GT(m.derivative(a).real(), 0.0);
  EXPECT_NEAR(m.derivative(a).imag(), 0.0, 1e-16);
  std::mt19937_64 g(11);
  for (int i = 0; i < 100; ++i) {
    const cplx z = oracle::random_in_disc(g), w = oracle::random_in_disc(g);
    EXPECT_NEAR(oracle::disc(m(z), m(w)), oracle::disc(z, w), 1e-8 * std::max(1.0, oracle::disc(z, w)));
    expect_round_trip(m, z, 1e-14);
    EXPECT_NEAR(std::abs(m.derivative(0.5 * z) - numeric_derivative(m, 0.5 * z)), 0.0, 1e-7);
  }
  EXPECT_THROW(mobius_disc_automorphism(1.0), Error);
}

TEST(Cayley, MapsHalfPlaneOntoDisc) {
  const ConformalMap c = closed::cayley();
  EXPECT_NEAR(std::abs(c(I)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(c(3.0)), 1.0, 1e-15);
  const cplx z(0.3, 2.0), w(-1.0, 0.1);
  EXPECT_NEAR(oracle::disc(c(z), c(w)), oracle::upper_half_plane(z, w), 1e-10);
  expect_round_trip(c, z, 1e-14);
  EXPECT_NEAR(std::abs(c.derivative(z) - numeric_derivative(c, z)), 0.0, 1e-8);
  EXPECT_THROW(c(-I), Error);
}

TEST(SectorMap, PowerMapOntoRightHalfPlane) {
  const double theta = 0.3;
  const ConformalMap s = closed::sector(theta);
  // Edge points land on the imaginary axis.
  EXPECT_NEAR(s(std::polar(2.0, theta)).real(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s(2.0) - std::pow(2.0, pi / (2 * theta))), 0.0, 1e-9);
  const cplx z = std::polar(1.5, 0.1);
  expect_round_trip(s, z, 1e-13);
  EXPECT_NEAR(std::abs(s.derivative(z) - numeric_derivative(s, z)) / std::abs(s.derivative(z)), 0.0, 1e-7);
  EXPECT_THROW(s(-1.0), Error);
}

TEST(SlitMap, SquareRootOntoUpperHalfPlane) {
  const ConformalMap s = closed::slit_sqrt();
  EXPECT_NEAR(std::abs(s(-4.0) - 2.0 * I), 0.0, 1e-15);
  // The two sides of the cut at 4 approach the real axis at +2 (upper) and -2 (lower).
  EXPECT_NEAR(s(cplx(4, 1e-12)).real(), 2.0, 1e-9);
  EXPECT_NEAR(s(cplx(4, -1e-12)).real(), -2.0, 1e-9);
  const cplx z(0.5, -0.7);
  EXPECT_GT(s(z).imag(), 0.0);
  expect_round_trip(s, z, 1e-14);
  EXPECT_NEAR(std::abs(s.derivative(z) - numeric_derivative(s, z)), 0.0, 1e-8);
  EXPECT_THROW(s(1.0), Error);
}

TEST(DiscScale, AffineOntoUnitDisc) {
  const ConformalMap f = closed::disc_scale(cplx(1, 2), 3.0);
  EXPECT_NEAR(std::abs(f(cplx(4, 2)) - 1.0), 0.0, 1e-15);
  expect_round_trip(f, cplx(0, 1), 1e-15);
}

TEST(LensMap, NormalizedBoundaryPreservingBijection) {
  const double rho = 0.5;
  const cplx z0 = 0.8;
  const ConformalMap f = closed::lens(rho, z0);
  EXPECT_NEAR(std::abs(f(z0)), 0.0, 1e-14);
  EXPECT_GT(f.derivative(z0).real(), 0.0);
  EXPECT_NEAR(f.derivative(z0).imag(), 0.0, 1e-12);
  const auto curve = curves::lens(rho);
  for (int i = 0; i < 100; ++i) {
    const double s = (i + 0.5) / 100.0;
    const cplx p = curve->point(s), inside = z0 + 0.999 * (p - z0);
    EXPECT_NEAR(std::abs(f(inside)), 1.0, 5e-3);
    EXPECT_LT(std::abs(f(inside)), 1.0);
    expect_round_trip(f, inside, 1e-10);
  }
  const cplx z(0.7, 0.1);
  EXPECT_NEAR(std::abs(f.derivative(z) - numeric_derivative(f, z)) / std::abs(f.derivative(z)), 0.0, 1e-7);
}

TEST(LensMap, SchwarzLemmaAgainstTheDisc) {
  // The lens sits inside the disc, so its hyperbolic distance dominates the disc one.
  const ConformalMap f = closed::lens(0.5, 0.8);
  for (double x : {0.6, 0.7, 0.9, 0.99, 0.9999})
    EXPECT_GE(oracle::disc(0.0, f(x)), oracle::disc(0.8, x) - 1e-12);
}

TEST(LensMap, RejectsOutsideBasePoint) {
  EXPECT_THROW(closed::lens(0.5, 0.2), Error);
  EXPECT_THROW(closed::lens(1.5, 0.8), Error);
  EXPECT_NO_THROW(closed::lens(0.5, 1.0 - 1e-7));
}

TEST(AnnulusCover, StripDistanceIsDeckInvariant) {
  const AnnulusCover c(2.0);
  const cplx a = c.lift(cplx(1.2, 0.3)), b = c.lift(cplx(-0.8, 0.2));
  EXPECT_NEAR(c.strip_distance(a, b), c.strip_distance(a + c.deck_shift(), b + c.deck_shift()), 1e-12);
  EXPECT_NEAR(std::abs(c.project(a) - cplx(1.2, 0.3)), 0.0, 1e-15);
  // The centre line of the strip has density pi / (4 log r).
  EXPECT_NEAR(c.density(cplx(0, 1)), pi / (4 * std::log(2.0)), 1e-15);
  EXPECT_THROW(c.lift(3.0), Error);
}
