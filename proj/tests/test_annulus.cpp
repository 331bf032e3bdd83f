#include <gtest/gtest.h>

#include "invmetric/annulus.hpp"
#include "invmetric/bergman.hpp"
#include "invmetric/distances.hpp"
#include "invmetric/experiments.hpp"

using namespace invmetric;

TEST(AnnulusGreen, VanishesOnBothBoundaryCircles) {
  for (double r : {1.5, 2.0, 4.0}) EXPECT_LT(AnnulusGreen(r).boundary_residual(), 1e-12) << r;
}

TEST(AnnulusGreen, LogarithmicPoleAndSymmetry) {
  const AnnulusGreen g(2.0);
  const cplx a(0.3, 1.0);
  // g(z, a) + log|z - a| stays bounded at the pole.
  const double h1 = g(a + 1e-6, a) + std::log(1e-6), h2 = g(a + 1e-8, a) + std::log(1e-8);
  EXPECT_NEAR(h1, h2, 1e-5);
  const cplx z(-1.2, 0.4);
  EXPECT_NEAR(g(z, a), g(a, z), 1e-12);
  EXPECT_GT(g(z, a), 0.0);
}

TEST(AnnulusGreen, InversionAndRotationInvariant) {
  const AnnulusGreen g(2.5);
  const cplx z(1.1, 0.7), a(-0.6, 0.2), rot = std::polar(1.0, 0.9);
  EXPECT_NEAR(g(rot * z, rot * a), g(z, a), 1e-12);
  EXPECT_NEAR(g(1.0 / z, 1.0 / a), g(z, a), 1e-12);
}

TEST(AnnulusBergman, MonomialNorms) {
  const AnnulusBergman b(2.0);
  // ||z^n||^2 = pi (r^{2n+2} - r^{-(2n+2)}) / (n + 1), ||z^-1||^2 = 4 pi log r.
  EXPECT_NEAR(b.norm_squared(-1), 8.710344361, 1e-9);
  EXPECT_NEAR(b.norm_squared(0), pi * (4.0 - 0.25), 1e-12);
  EXPECT_NEAR(b.norm_squared(2), pi * (64.0 - 1.0 / 64.0) / 3.0, 1e-11);
}

TEST(AnnulusBergman, ReproducesMonomials) {
  for (int n = -5; n <= 5; ++n)
    EXPECT_LT(detail::reproducing_residual(2.0, n, cplx(0.9, 0.5)), 1e-6) << n;
}

TEST(AnnulusBergman, KernelIsRotationInvariantOnDiagonal) {
  const AnnulusBergman b(2.0);
  EXPECT_NEAR(b.kernel(cplx(1.3, 0)) / b.kernel(std::polar(1.3, 2.0)), 1.0, 1e-12);
  EXPECT_NEAR(b.kernel(cplx(1.3, 0)) / std::abs(b.kernel(cplx(1.3, 0), cplx(1.3, 0))), 1.0, 1e-12);
}

TEST(AnnulusDistances, CoverAgreesWithShortestPath) {
  const double r = 2.0;
  for (auto [z, w] : {std::pair<cplx, cplx>{1.0, -1.0}, {cplx(1.5, 0.2), cplx(0.6, 0.4)}}) {
    const double k = annulus_lempert(r, z, w).mid();
    const PathResult p = annulus_kobayashi_path(r, z, w);
    EXPECT_NEAR(p.value, k, 5e-3 * std::max(1.0, k)) << z << " " << w;
  }
}

TEST(AnnulusDistances, CaratheodoryBelowKobayashi) {
  const double r = 2.0;
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> rad(0.55, 1.95), ang(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const cplx z = std::polar(rad(g), ang(g)), w = std::polar(rad(g), ang(g));
    EXPECT_LE(annulus_caratheodory(r, z, w).lo, annulus_lempert(r, z, w).hi + 1e-12);
  }
}

TEST(AnnulusDistances, LempertDiagonalIsZero) { EXPECT_EQ(annulus_lempert(2.0, 1.0, 1.0).mid(), 0.0); }

TEST(AnnulusDistances, InvariantUnderRotationAndInversion) {
  const double r = 3.0;
  const cplx z(1.2, 0.5), w(-0.5, 0.9), rot = std::polar(1.0, -0.4);
  const double k = annulus_lempert(r, z, w).mid();
  EXPECT_NEAR(annulus_lempert(r, rot * z, rot * w).mid(), k, 1e-12);
  EXPECT_NEAR(annulus_lempert(r, 1.0 / z, 1.0 / w).mid(), k, 1e-12);
  const double c = annulus_caratheodory(r, z, w).mid();
  EXPECT_NEAR(annulus_caratheodory(r, rot * z, rot * w).mid(), c, 1e-9);
}
