#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "invmetric/invmetric.hpp"

using namespace invmetric;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds
  std::vector<std::string> suites;
};

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome run(const Criterion& c) {
  Outcome out;
  for (const auto& name : c.suites) {
    SuiteOptions opt;
    opt.samples = 1000;
    opt.seed = 42;
    try {
      const BoundReport rep = run_suite(name, opt);
      out.passed = out.passed && rep.passed;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s: %zu samples, %zu violations;", name.c_str(), rep.samples, rep.violations);
      out.detail += buf;
    } catch (const Error& e) {
      out.passed = false;
      out.detail += " " + name + ": " + to_string(e.code()) + " (" + e.what() + ");";
    }
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "disc identities", 5, {"disc"}},
      {2, "riemann engine", 60, {"riemann"}},
      {3, "sector ratio limit", 5, {"remark-a"}},
      {4, "slit coefficient", 5, {"remark-b"}},
      {5, "convex upper bound", 120, {"prop1"}},
      {6, "convex and C-convex lower bounds", 30, {"prop2", "ca"}},
      {7, "boundary envelope", 60, {"prop4"}},
      {8, "two-sided estimate", 60, {"prop6"}},
      {9, "annulus", 120, {"annulus"}},
      {10, "lens squeeze", 60, {"prop7"}},
      {11, "boundary slope", 60, {"slope"}},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = run(c);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (sec > c.budget) {
      o.passed = false;
      o.detail += " over budget;";
    }
    if (!o.passed) ++failures;
    std::printf("[%s] criterion %2d %-34s %8.2f s (budget %5.0f s)%s\n", o.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), sec, c.budget, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
