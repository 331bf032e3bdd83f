#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

namespace detail {

/// Order after which sum (n+1) ratio^n has a tail below tol.
inline int series_order(double ratio, double tol) {
  const double lr = -std::log(ratio);
  int n = 1;
  while (n < 50000000) {
    const double tail = (n + 2) * std::exp(-n * lr) / ((1.0 - ratio) * (1.0 - ratio));
    if (tail < tol) return n + 2;
    n = n < 64 ? n + 8 : n + n / 4;
  }
  fail(ErrorCode::NonConvergence, "Bergman series truncation cap reached");
}

/// For K = sum_n a_n t^n with t = |z|^2: d^2/dz dzbar log K = Var(n) / t, the variance taken
/// under weights a_n t^n. Computed in two centered passes from log-weights.
template <class LogCoef>
double radial_log_hessian(double t, int lo, int hi, LogCoef log_coef) {
  std::vector<double> w(static_cast<std::size_t>(hi - lo + 1));
  const double logt = std::log(t);
  double wmax = -std::numeric_limits<double>::infinity();
  for (int n = lo; n <= hi; ++n) {
    w[n - lo] = n * logt + log_coef(n);
    wmax = std::max(wmax, w[n - lo]);
  }
  double s0 = 0.0, s1 = 0.0;
  for (int n = lo; n <= hi; ++n) {
    const double p = std::exp(w[n - lo] - wmax);
    w[n - lo] = p;
    s0 += p;
    s1 += p * n;
  }
  const double mean = s1 / s0;
  double var = 0.0;
  for (int n = lo; n <= hi; ++n) var += w[n - lo] * (n - mean) * (n - mean);
  return var / s0 / t;
}

}  // namespace detail

/// Bergman kernel of the unit disc from the orthonormal monomials sqrt((n+1)/pi) z^n.
class DiscBergmanSeries {
 public:
  explicit DiscBergmanSeries(double tol = 1e-15) : tol_(tol) {}

  int order(double t) const {
    if (!(t < 1.0)) fail(ErrorCode::DomainViolation, "point not in the unit disc");
    return t == 0.0 ? 1 : detail::series_order(t, tol_);
  }

  double kernel(cplx z) const {
    const double t = std::norm(z);
    const int hi = order(t);
    double s = 0.0, p = 1.0;
    for (int n = 0; n <= hi; ++n, p *= t) s += (n + 1) * p;
    return s / pi;
  }

  double log_kernel_hessian(cplx z) const {
    const double t = std::norm(z);
    // Var(n)/t -> a_1/a_0 = 2 as t -> 0.
    if (t < 1e-300) return 2.0;
    return detail::radial_log_hessian(t, 0, order(t), [](int n) { return std::log((n + 1) / pi); });
  }

  double metric(cplx z, cplx X) const { return std::abs(X) * std::sqrt(log_kernel_hessian(z)); }

 private:
  double tol_;
};

/// Bergman kernel of A_r from the orthogonal Laurent monomials z^n,
///   ||z^n||^2 = pi (r^{2n+2} - r^{-(2n+2)}) / (n + 1),  ||z^{-1}||^2 = 4 pi log r.
class AnnulusBergman {
 public:
  explicit AnnulusBergman(double r, double tol = 1e-15) : r_(Annulus(r).r), tol_(tol) {
    table_.resize(2 * table_half_ + 1);
    for (int n = -table_half_; n <= table_half_; ++n) table_[n + table_half_] = compute_log_norm_squared(n);
  }

  double r() const { return r_; }

  double norm_squared(int n) const { return std::exp(log_norm_squared(n)); }

  double log_norm_squared(int n) const {
    if (n >= -table_half_ && n <= table_half_) return table_[n + table_half_];
    return compute_log_norm_squared(n);
  }

  double compute_log_norm_squared(int n) const {
    const double lr = std::log(r_);
    if (n == -1) return std::log(4.0 * pi * lr);
    const double m = std::abs(2.0 * (n + 1)) * lr;
    // pi (r^m - r^-m) / |n+1| written as pi e^m (1 - e^{-2m}) / |n+1|
    return std::log(pi / std::abs(n + 1.0)) + m + std::log(-std::expm1(-2.0 * m));
  }

  /// Truncation orders (n_min, n_max) for points with |z|^2 = t, set by a geometric tail bound.
  std::pair<int, int> truncation(double t) const {
    const double r2 = r_ * r_;
    const double up = t / r2, down = 1.0 / (t * r2);
    if (!(up < 1.0 && down < 1.0)) fail(ErrorCode::DomainViolation, "point not in annulus");
    return {-order_for(down), order_for(up)};
  }

  /// K(z, w) = sum_n z^n conj(w)^n / ||z^n||^2.
  cplx kernel(cplx z, cplx w) const {
    const auto [lo1, hi1] = truncation(std::norm(z));
    const auto [lo2, hi2] = truncation(std::norm(w));
    const int lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
    const cplx x = z * std::conj(w);
    const double lx = std::log(std::abs(x)), ax = std::arg(x);
    cplx s = 0.0;
    for (int n = lo; n <= hi; ++n) s += std::polar(std::exp(n * lx - log_norm_squared(n)), n * ax);
    return s;
  }

  double kernel(cplx z) const {
    const double t = std::norm(z);
    const auto [lo, hi] = truncation(t);
    const double lt = std::log(t);
    double s = 0.0;
    for (int n = lo; n <= hi; ++n) s += std::exp(n * lt - log_norm_squared(n));
    return s;
  }

  /// d^2/dz dzbar log K at z, from the weighted variance of n under weights t^n / ||z^n||^2.
  double log_kernel_hessian(cplx z) const {
    const double t = std::norm(z);
    const auto [lo, hi] = truncation(t);
    return detail::radial_log_hessian(t, lo, hi, [this](int n) { return -log_norm_squared(n); });
  }

  /// Bergman metric beta(z; X) = |X| sqrt(d^2/dz dzbar log K).
  double metric(cplx z, cplx X) const { return std::abs(X) * std::sqrt(log_kernel_hessian(z)); }

 private:
  int order_for(double ratio) const { return detail::series_order(ratio, tol_); }

  static constexpr int table_half_ = 4096;
  double r_;
  double tol_;
  std::vector<double> table_;
};

}  // namespace invmetric
