#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "invmetric/core.hpp"

namespace invmetric {

inline void require_positive(double d, const char* what) {
  if (!(d > 0)) fail(ErrorCode::DegenerateInput, std::string(what) + " must be positive");
}

/// Convex lower bound (1/2) log(d_z / d_w); may be negative.
inline double bound_convex_lower(double dz, double dw) {
  require_positive(dz, "d_z");
  require_positive(dw, "d_w");
  return 0.5 * std::log(dz / dw);
}

/// Upper bound for the Lempert function of a convex domain obtained by integrating |X| / d along
/// the segment [z, w] inside the two-disc hull: |z - w| log(d_z / d_w) / (d_z - d_w).
inline double segment_hull_bound(double dist, double dz, double dw) {
  require_positive(dz, "d_z");
  require_positive(dw, "d_w");
  if (dist < 0) fail(ErrorCode::DegenerateInput, "distance must be nonnegative");
  const double x = dz / dw - 1.0;
  // log(1 + x) / x -> 1 as d_z -> d_w; log1p keeps the ratio accurate near equality.
  const double factor = std::abs(x) < 1e-8 ? 1.0 - 0.5 * x + x * x / 3.0 : std::log1p(x) / x;
  return dist / dw * factor;
}

/// Lower bound (1/4) log(d_z / (4 d_w)) for C-convex domains.
inline double bound_ccvx_lower(double dz, double dw) {
  require_positive(dz, "d_z");
  require_positive(dw, "d_w");
  return 0.25 * std::log(dz / (4.0 * dw));
}

/// Boundary envelope residual s + (1/2) log d_w.
inline double envelope_residual(double s, double dw) {
  require_positive(dw, "d_w");
  return s + 0.5 * std::log(dw);
}

/// Two-sided estimate in Mobius scale:
///   |z-w| / sqrt(c d_z d_w + |z-w|^2) <= tanh c_D <= tanh l_D <= |z-w| / sqrt(d_z d_w / c + |z-w|^2).
struct Sandwich {
  double lower;
  double upper;
};

inline Sandwich sandwich(double dist, double dz, double dw, double c) {
  require_positive(dz, "d_z");
  require_positive(dw, "d_w");
  if (!(c >= 1.0)) fail(ErrorCode::DegenerateInput, "sandwich constant must be >= 1");
  if (dist == 0.0) return {0.0, 0.0};
  const double p = dz * dw, x2 = dist * dist;
  return {dist / std::sqrt(c * p + x2), dist / std::sqrt(p / c + x2)};
}

/// The same estimate for 2 c_D and 2 l_D in logarithmic form:
///   log(1 + y/c + y^2/c) <= 2 c_D <= 2 l_D <= log(1 + c y + c y^2),  y = |z-w| / sqrt(d_z d_w).
inline Sandwich sandwich_log(double dist, double dz, double dw, double c) {
  require_positive(dz, "d_z");
  require_positive(dw, "d_w");
  if (!(c >= 1.0)) fail(ErrorCode::DegenerateInput, "sandwich constant must be >= 1");
  const double y = dist / std::sqrt(dz * dw);
  return {std::log1p(y / c + y * y / c), std::log1p(c * y + c * y * y)};
}

/// 2 tanh^-1(m) for a Mobius-scale bound.
inline double twice_atanh(double m) { return std::log1p(m) - std::log1p(-m); }

/// The two forms define the same family of estimates up to a change of constant:
///   tanh form with c  =>  log form with c        (lower side)
///   log form with c   =>  tanh form with 4 c^2   (lower side)
///   tanh form with c  =>  log form with 4 c      (upper side)
///   log form with c   =>  tanh form with c^2     (upper side)
/// Returns the largest violation of these four implications at one sample (<= 0 when they hold).
inline double sandwich_equivalence_gap(double dist, double dz, double dw, double c) {
  const Sandwich lg = sandwich_log(dist, dz, dw, c);
  const double gaps[] = {
      lg.lower - twice_atanh(sandwich(dist, dz, dw, c).lower),
      twice_atanh(sandwich(dist, dz, dw, 4.0 * c * c).lower) - lg.lower,
      twice_atanh(sandwich(dist, dz, dw, c).upper) - sandwich_log(dist, dz, dw, 4.0 * c).upper,
      lg.upper - twice_atanh(sandwich(dist, dz, dw, c * c).upper),
  };
  return *std::max_element(std::begin(gaps), std::end(gaps));
}

// ---------------------------------------------------------------------------
// Reports and constant fitting
// ---------------------------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) {
    if (row.size() != columns.size()) fail(ErrorCode::DegenerateInput, "table row width mismatch");
    rows.push_back(std::move(row));
  }
  std::vector<double> column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) fail(ErrorCode::DegenerateInput, "no column " + name);
    const auto k = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
  }
};

struct BoundReport {
  std::string suite;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::string, double>> constants;
  double runtime = 0.0;
  std::uint64_t seed = 42;
  bool passed = false;
  std::vector<std::string> notes;
  Table table;

  /// Record one sample; a violation is a margin below -tol.
  void check(double margin, double tol) {
    ++samples;
    worst_margin = std::min(worst_margin, margin);
    if (margin < -tol || std::isnan(margin)) ++violations;
  }
  void merge(const BoundReport& o) {
    samples += o.samples;
    violations += o.violations;
    worst_margin = std::min(worst_margin, o.worst_margin);
    constants.insert(constants.end(), o.constants.begin(), o.constants.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }
  double constant(const std::string& name) const {
    for (const auto& [k, v] : constants)
      if (k == name) return v;
    fail(ErrorCode::DegenerateInput, "no constant " + name);
  }
};

struct FitResult {
  double c;
  double worst_margin;  // smallest margin over the grid at c
  std::size_t samples;
  std::size_t violations;  // at c (zero on success)
};

/// Smallest c in [c_min, c_max] with margin(c, i) >= -tol for every sample i, by bisection on
/// a logarithmic scale. margin must be nondecreasing in c. The returned c is the upper end of the
/// final bracket, so it always has zero violations.
inline FitResult fit_min_constant(const std::function<double(double, std::size_t)>& margin, std::size_t n,
                                  double c_min = 1.0, double c_max = 1e6, double tol = 0.0,
                                  double rel_tol = 1e-6) {
  auto count = [&](double c, double* worst) {
    std::size_t v = 0;
    double w = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double m = margin(c, i);
      w = std::min(w, m);
      if (m < -tol || std::isnan(m)) ++v;
    }
    if (worst) *worst = w;
    return v;
  };
  double worst = 0.0;
  if (count(c_max, &worst) > 0)
    fail(ErrorCode::NoFiniteConstant, "violations persist at c = " + std::to_string(c_max));
  if (count(c_min, &worst) == 0) return {c_min, worst, n, 0};
  double lo = c_min, hi = c_max;
  while (hi - lo > rel_tol * hi) {
    const double mid = lo > 0.0 && hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (count(mid, nullptr) == 0) hi = mid;
    else lo = mid;
  }
  const std::size_t v = count(hi, &worst);
  return {hi, worst, n, v};
}

/// Least-squares fit of y = slope * x + intercept; residual is the RMS deviation.
struct LinearFit {
  double slope;
  double intercept;
  double residual;
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::DegenerateInput, "regression size mismatch");
  if (x.size() < 8) fail(ErrorCode::InsufficientSamples, "regression needs at least 8 points");
  const double n = double(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) fail(ErrorCode::DegenerateInput, "regression abscissae are constant");
  const double slope = sxy / sxx, intercept = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (slope * x[i] + intercept);
    ss += e * e;
  }
  return {slope, intercept, std::sqrt(ss / n)};
}

}  // namespace invmetric
