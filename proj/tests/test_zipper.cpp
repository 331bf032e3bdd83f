#include <gtest/gtest.h>

#include "invmetric/conformal.hpp"
#include "invmetric/zipper.hpp"
#include "oracles.hpp"

using namespace invmetric;

TEST(Zipper, CircleMatchesMobius) {
  const cplx c(0.5, -1.0);
  const double r = 2.0;
  const cplx z0 = c + r * cplx(0.3, 0.2);
  const ConformalMap phi = riemann_map(*curves::circle(c, r), z0);
  const ConformalMap exact = mobius_disc_automorphism(cplx(0.3, 0.2));
  std::mt19937_64 g(21);
  for (int i = 0; i < 100; ++i) {
    const cplx u = oracle::random_in_disc(g, 0.95);
    EXPECT_NEAR(std::abs(phi(c + r * u) - exact(u)), 0.0, 1e-6);
  }
  EXPECT_LE(phi.accuracy(), 1e-3);
}

TEST(Zipper, NormalizationAtBasePoint) {
  const auto curve = curves::ellipse(2.0, 1.0);
  const cplx z0(0.4, 0.2);
  const ConformalMap phi = riemann_map(*curve, z0);
  EXPECT_NEAR(std::abs(phi(z0)), 0.0, 1e-10);
  EXPECT_GT(phi.derivative(z0).real(), 0.0);
  EXPECT_NEAR(phi.derivative(z0).imag(), 0.0, 1e-8);
}

TEST(Zipper, LensMatchesClosedForm) {
  const double rho = 0.8;
  const cplx z0 = 0.6;
  const JordanDomain d(curves::lens(rho));
  const ConformalMap phi = riemann_map(d, z0);
  const ConformalMap exact = closed::lens(rho, z0);
  for (cplx z : {cplx(0.5, 0.1), cplx(0.8, -0.3), cplx(0.3, 0.0), cplx(0.95, 0.05)})
    EXPECT_NEAR(std::abs(phi(z) - exact(z)), 0.0, 5e-3) << z;
}

TEST(Zipper, InverseRoundTrip) {
  const auto curve = curves::fourier(1.0, {{3, 0.15, 0.2}, {2, 0.1, -0.5}});
  const ConformalMap phi = riemann_map(*curve, 0.0);
  std::mt19937_64 g(22);
  for (int i = 0; i < 50; ++i) {
    const cplx u = oracle::random_in_disc(g, 0.9);
    EXPECT_NEAR(std::abs(phi(phi.inverse(u)) - u), 0.0, 1e-8);
  }
}

TEST(Zipper, KoebeSandwich) {
  // d(z0) <= 1 / phi'(z0) <= 4 d(z0).
  const auto curve = curves::ellipse(3.0, 1.0);
  const PlanarDomain d = JordanDomain(curve);
  for (cplx z0 : {cplx(0, 0), cplx(1.5, 0.2), cplx(-2.5, 0.0)}) {
    const ConformalMap phi = riemann_map(*curve, z0);
    const double radius = 1.0 / std::abs(phi.derivative(z0));
    const double dz = boundary_distance(d, z0);
    EXPECT_GE(radius, dz * (1 - 1e-6));
    EXPECT_LE(radius, 4 * dz);
  }
}

TEST(Zipper, ResidualShrinksWithResolution) {
  const auto curve = curves::circle(0.0, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {128, 256, 512, 1024}) {
    const auto params = zipper::node_params(*curve, n);
    const zipper::GeodesicZipper zip(zipper::nodes_at(*curve, params), 0.2);
    const double res = zipper::boundary_residual(zip, *curve, params);
    EXPECT_LE(2.0 * res, prev) << n;
    prev = res;
  }
}

TEST(Zipper, RejectsOutsideBasePoint) {
  EXPECT_THROW(riemann_map(*curves::circle(0.0, 1.0), 2.0), Error);
  EXPECT_THROW(zipper::GeodesicZipper(std::vector<cplx>(4, 0.0), 0.0), Error);
}
