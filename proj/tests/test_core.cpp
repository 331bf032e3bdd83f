#include <gtest/gtest.h>

#include "invmetric/core.hpp"
#include "oracles.hpp"

using namespace invmetric;

TEST(DiscDistance, OriginToHalf) { EXPECT_NEAR(disc_distance(0.0, 0.5), 0.549306144334055, 1e-15); }

TEST(DiscDistance, OriginIsInverseTanh) {
  for (double r : {1e-8, 0.1, 0.5, 0.9, 0.999999})
    EXPECT_NEAR(disc_distance(0.0, std::polar(r, 1.3)), std::atanh(r), 1e-14 * std::max(1.0, std::atanh(r)));
}

TEST(DiscDistance, MatchesArccoshForm) {
  std::mt19937_64 g(1);
  for (int i = 0; i < 500; ++i) {
    const cplx z = oracle::random_in_disc(g, 0.99), w = oracle::random_in_disc(g, 0.99);
    EXPECT_NEAR(disc_distance(z, w), oracle::disc(z, w), 1e-11 * std::max(1.0, oracle::disc(z, w)));
  }
}

TEST(DiscDistance, SymmetricAndZeroOnDiagonal) {
  std::mt19937_64 g(2);
  for (int i = 0; i < 200; ++i) {
    const cplx z = oracle::random_in_disc(g), w = oracle::random_in_disc(g);
    EXPECT_DOUBLE_EQ(disc_distance(z, w), disc_distance(w, z));
    EXPECT_EQ(disc_distance(z, z), 0.0);
  }
}

TEST(DiscDistance, TriangleInequality) {
  std::mt19937_64 g(3);
  for (int i = 0; i < 500; ++i) {
    const cplx a = oracle::random_in_disc(g), b = oracle::random_in_disc(g), c = oracle::random_in_disc(g);
    EXPECT_LE(disc_distance(a, c), disc_distance(a, b) + disc_distance(b, c) + 1e-12);
  }
}

TEST(DiscDistance, AccurateNearBoundary) {
  // c(0, x) = (1/2) log((2 - d) / d) with d = 1 - x exact in floating point.
  for (double e : {1e-6, 1e-10, 1e-14}) {
    const double x = 1.0 - e, d = 1.0 - x;
    EXPECT_NEAR(disc_distance(0.0, x), 0.5 * std::log((2.0 - d) / d), 1e-12);
  }
}

TEST(DiscDistance, MobiusInvariant) {
  std::mt19937_64 g(4);
  for (int i = 0; i < 200; ++i) {
    const cplx a = oracle::random_in_disc(g, 0.9), z = oracle::random_in_disc(g), w = oracle::random_in_disc(g);
    auto m = [&](cplx x) { return (x - a) / (1.0 - std::conj(a) * x); };
    EXPECT_NEAR(disc_distance(m(z), m(w)), disc_distance(z, w), 1e-9 * std::max(1.0, disc_distance(z, w)));
  }
}

TEST(HalfPlaneDistance, MatchesArccoshForm) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> x(-3, 3), y(1e-3, 3);
  for (int i = 0; i < 500; ++i) {
    const cplx a(x(g), y(g)), b(x(g), y(g));
    EXPECT_NEAR(upper_half_plane_distance(a, b), oracle::upper_half_plane(a, b),
                1e-11 * std::max(1.0, oracle::upper_half_plane(a, b)));
    EXPECT_NEAR(right_half_plane_distance(-I * a, -I * b), oracle::upper_half_plane(a, b), 1e-11 * std::max(1.0, oracle::upper_half_plane(a, b)));
  }
}

TEST(HalfPlaneDistance, VerticalPair) {
  // Along the imaginary axis the distance is (1/2) log(b / a).
  EXPECT_NEAR(upper_half_plane_distance(I, 4.0 * I), 0.5 * std::log(4.0), 1e-15);
}

TEST(MobiusScale, IsTanh) { EXPECT_NEAR(mobius_scale(disc_distance(0.0, 0.5)), 0.5, 1e-15); }

TEST(Errors, CodeIsCarried) {
  try {
    fail(ErrorCode::Unsupported, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
    EXPECT_STREQ(to_string(e.code()), "Unsupported");
  }
}

TEST(CVecOps, HermitianAndNorm) {
  const CVec a{cplx(1, 2), cplx(0, 1)}, b{cplx(3, 0), cplx(1, 1)};
  // <a, b> = (1+2i) 3 + i (1 - i) = 3 + 6i + i + 1 = 4 + 7i
  EXPECT_NEAR(std::abs(hermitian(a, b) - cplx(4, 7)), 0.0, 1e-15);
  EXPECT_NEAR(norm2(a), std::sqrt(6.0), 1e-15);
}
