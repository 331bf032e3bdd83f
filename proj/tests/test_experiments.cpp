#include <gtest/gtest.h>

#include "invmetric/experiments.hpp"
#include "invmetric/report.hpp"

using namespace invmetric;

namespace {

BoundReport small(const std::string& name, std::size_t samples, std::uint64_t seed = 42) {
  SuiteOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  return run_suite(name, opt);
}

}  // namespace

TEST(Sampler, DeterministicAndAboveFloor) {
  Sampler a(7), b(7);
  const PlanarDomain d = Sector(0.3);
  for (int i = 0; i < 100; ++i) {
    const cplx z = a.planar(d, 1e-6);
    EXPECT_EQ(z, b.planar(d, 1e-6));
    EXPECT_TRUE(contains(d, z));
    EXPECT_GE(boundary_distance(d, z), 1e-6);
  }
}

TEST(Experiments, SectorRatioMovesTowardsQuarterPi) {
  const Table t = experiment_sector_ratio(0.05, {1e-2, 1e-4, 1e-6});
  const auto ratio = t.column("ratio");
  EXPECT_NEAR(ratio.back(), pi / 4, 0.02);
  EXPECT_LE(std::abs(ratio[2] - pi / 4), std::abs(ratio[0] - pi / 4) + 1e-12);
  for (const auto& row : t.rows) EXPECT_LE(row[2], row[3]);
  EXPECT_THROW(experiment_sector_ratio(0.05, {1.5}), Error);
}

TEST(Experiments, SlitCoefficientMatchesExact) {
  const Table t = experiment_slit_coefficient({1e-2, 1e-8});
  for (const auto& row : t.rows) EXPECT_NEAR(row[1], row[4], 1e-9);
  EXPECT_NEAR(t.rows.back()[3], 0.25, 0.01);
}

TEST(Experiments, LensRatioTendsToOne) {
  const Table t = experiment_ratio_c_over_l(0.5, {1e-1, 1e-3, 1e-5});
  const auto ratio = t.column("ratio");
  for (double q : ratio) EXPECT_LE(q, 1.0 + 1e-9);
  EXPECT_GT(ratio.back(), 0.99);
  EXPECT_LT(ratio.front(), ratio.back());
}

TEST(Experiments, BoundarySlopeOnDisc) {
  const auto ds = log_spaced(1e-2, 1e-6, 10);
  EXPECT_DOUBLE_EQ(ds.front(), 1e-2);
  EXPECT_NEAR(ds.back(), 1e-6, 1e-20);
  const SlopeResult r = boundary_slope_regression(UnitDisc{}, 0.0, 1.0, -1.0, DistanceKind::caratheodory, ds);
  EXPECT_NEAR(r.fit.slope, 0.5, 1e-3);
  // c(0, 1 - d) = (1/2) log 2 - (1/2) log d + O(d), and the O(d) term shifts the intercept slightly.
  EXPECT_NEAR(r.fit.intercept, 0.5 * std::log(2.0), 5e-3);
}

TEST(Suites, ClosedFormSuitesPass) {
  for (const char* name : {"disc", "remark-a", "remark-b", "prop2", "ca", "prop7"}) {
    const BoundReport r = small(name, 100);
    EXPECT_TRUE(r.passed) << name << ": " << r.violations << " violations, worst " << r.worst_margin;
    EXPECT_EQ(r.suite, name);
  }
}

TEST(Suites, AnnulusProductFit) {
  const BoundReport r = small("prop5", 200);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(std::isfinite(r.constant("c")));
  EXPECT_LT(r.constant("additivity_err"), 1e-6);
  EXPECT_LT(r.constant("rotation_drift"), 1e-3);
}

TEST(Suites, LowerAndComparisonSuites) {
  for (const char* name : {"le", "comp"}) {
    const BoundReport r = small(name, 30);
    EXPECT_TRUE(r.passed) << name;
  }
}

TEST(Suites, DeterministicUnderSeed) {
  const BoundReport a = small("prop2", 50, 7), b = small("prop2", 50, 7), c = small("prop2", 50, 8);
  EXPECT_EQ(dump(to_json(a)), dump(to_json(b)));
  EXPECT_NE(dump(to_json(a)), dump(to_json(c)));
}

TEST(Suites, UnknownNameIsParseError) {
  try {
    small("nope", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  EXPECT_EQ(suites().size(), 15u);
}
