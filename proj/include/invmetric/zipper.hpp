#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "invmetric/conformal.hpp"
#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

struct RiemannMapOptions {
  std::size_t nodes = 1024;
  std::size_t max_nodes = 8192;
  /// Target for the self-tested accuracy; resolution doubles until it is met.
  double tolerance = 1e-3;
  /// Skip the boundary self-test (accuracy is then reported as NaN).
  bool self_test = true;
};

namespace zipper {

// Square root with the branch in the closed upper half-plane; on the real axis the sign follows
// `side` so that boundary points stay continuous with the half-plane.
inline cplx sqrt_upper(cplx w, double side) {
  cplx s = std::sqrt(w);
  if (s.imag() < 0.0) s = -s;
  if (s.imag() == 0.0 && side < 0.0 && s.real() > 0.0) s = -s;
  if (s.imag() == 0.0 && side > 0.0 && s.real() < 0.0) s = -s;
  return s;
}

/// Slit map f_a: H minus the hyperbolic geodesic [0, a] -> H with a -> 0.
struct SlitStep {
  double c;  // pole of the straightening Mobius map; infinite for a vertical slit
  double beta;

  static SlitStep from_tip(cplx a) {
    SlitStep s{};
    if (std::abs(a.real()) <= 1e-14 * std::abs(a)) {
      s.c = std::numeric_limits<double>::infinity();
      s.beta = a.imag();
    } else {
      s.c = std::norm(a) / a.real();
      const cplx b = a / (1.0 - a / s.c);
      s.beta = b.imag();
    }
    return s;
  }

  cplx straighten(cplx z) const { return std::isinf(c) ? z : c * z / (c - z); }
  cplx dstraighten(cplx z) const { return std::isinf(c) ? cplx(1.0) : (c * c) / ((c - z) * (c - z)); }

  cplx apply(cplx z) const {
    const cplx m = straighten(z);
    return sqrt_upper(m * m + beta * beta, m.real());
  }
  cplx apply_with_derivative(cplx z, cplx& d) const {
    const cplx m = straighten(z);
    const cplx s = sqrt_upper(m * m + beta * beta, m.real());
    d *= (m / s) * dstraighten(z);
    return s;
  }
  cplx invert(cplx s) const {
    const cplx m = sqrt_upper(s * s - beta * beta, s.real());
    return std::isinf(c) ? m : m * c / (c + m);
  }

  /// Image of a point on the extended real line (infinity encoded as inf).
  double apply_real(double x) const {
    double m;
    if (std::isinf(x)) m = std::isinf(c) ? x : -c;
    else if (std::isinf(c)) m = x;
    else if (x == c) return std::numeric_limits<double>::infinity();
    else m = c * x / (c - x);
    if (std::isinf(m)) return m;
    const double v = std::sqrt(m * m + beta * beta);
    return m < 0 ? -v : v;
  }
};

/// Geodesic zipper map from the interior of a polygonal node set onto the unit disc.
class GeodesicZipper {
 public:
  GeodesicZipper(std::vector<cplx> nodes, cplx z0) : z0_(z0) {
    const std::size_t n = nodes.size();
    if (n < 8) fail(ErrorCode::DegenerateInput, "zipper needs at least 8 boundary nodes");
    first_ = nodes[0];
    second_ = nodes[1];
    std::vector<cplx> pts(nodes.begin() + 2, nodes.end());
    for (auto& p : pts) p = initial(p);
    steps_.reserve(n - 2);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const cplx a = pts[k];
      if (!(a.imag() > 0.0)) fail(ErrorCode::InvalidDomain, "zipper lost track of the boundary (node left H)");
      const SlitStep step = SlitStep::from_tip(a);
      steps_.push_back(step);
      for (std::size_t j = k + 1; j < pts.size(); ++j) pts[j] = step.apply(pts[j]);
    }
    double p = std::numeric_limits<double>::infinity();
    for (const auto& s : steps_) p = s.apply_real(p);
    end_ = p;
    if (!std::isfinite(end_) || end_ == 0.0) fail(ErrorCode::NonConvergence, "degenerate closing arc in zipper");

    const cplx q0 = to_quadrant(z0);
    second_quadrant_ = q0.real() < 0.0;
    cplx d = 1.0;
    const cplx h0 = to_half_plane_d(z0, d);
    h0_ = h0;
    const cplx d0 = d / (h0 - std::conj(h0));
    phase_ = std::conj(d0) / std::abs(d0);
  }

  cplx evaluate(cplx z) const {
    const cplx h = to_half_plane(z);
    return phase_ * (h - h0_) / (h - std::conj(h0_));
  }

  cplx derivative(cplx z) const {
    cplx d = 1.0;
    const cplx h = to_half_plane_d(z, d);
    const cplx s = h - std::conj(h0_);
    return phase_ * (h0_ - std::conj(h0_)) / (s * s) * d;
  }

  cplx inverse(cplx w) const {
    const cplx v = w / phase_;
    const cplx h = (h0_ - v * std::conj(h0_)) / (1.0 - v);
    cplx t = second_quadrant_ ? -std::sqrt(-h) : std::sqrt(h);
    cplx z = t / (1.0 + t / end_);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) z = it->invert(z);
    const cplx q = (-I * z) * (-I * z);
    return (second_ - q * first_) / (1.0 - q);
  }

  /// Image in the upper half-plane before the final Cayley-type map.
  cplx to_half_plane(cplx z) const {
    const cplx t = to_quadrant(z);
    return second_quadrant_ ? -t * t : t * t;
  }

  cplx to_half_plane_derivative(cplx z) const {
    cplx d = 1.0;
    to_half_plane_d(z, d);
    return d;
  }

  std::size_t size() const { return steps_.size() + 2; }

 private:
  cplx initial(cplx z) const { return I * std::sqrt((z - second_) / (z - first_)); }

  cplx to_quadrant(cplx z) const {
    cplx u = initial(z);
    for (const auto& s : steps_) u = s.apply(u);
    return u / (1.0 - u / end_);
  }

  cplx to_half_plane_d(cplx z, cplx& d) const {
    const cplx q = (z - second_) / (z - first_);
    const cplx root = std::sqrt(q);
    cplx u = I * root;
    d = I / (2.0 * root) * ((second_ - first_) / ((z - first_) * (z - first_)));
    for (const auto& s : steps_) u = s.apply_with_derivative(u, d);
    const cplx den = 1.0 - u / end_;
    const cplx t = u / den;
    d *= 1.0 / (den * den);
    if (second_quadrant_) {
      d *= -2.0 * t;
      return -t * t;
    }
    d *= 2.0 * t;
    return t * t;
  }

  cplx z0_;
  cplx first_{}, second_{};
  std::vector<SlitStep> steps_;
  double end_ = 0.0;
  bool second_quadrant_ = false;
  cplx h0_{};
  cplx phase_{1.0};
};

/// Node parameters: equidistributed in the curve's node density, with the first interval graded
/// geometrically towards s = 0. The initial step treats that interval as a straight chord, so shrinking it
/// by 2^-grading cuts the chord sag by 4^-grading.
inline std::vector<double> node_params(const JordanCurve& curve, std::size_t n, int grading = 6) {
  std::vector<double> base = curve.equidistributed(n);
  std::vector<double> out;
  out.reserve(n + static_cast<std::size_t>(grading));
  out.push_back(base[0]);
  const double h = base[1] - base[0];
  for (int j = grading; j >= 1; --j) out.push_back(base[0] + std::ldexp(h, -j));
  out.insert(out.end(), base.begin() + 1, base.end());
  return out;
}

inline std::vector<cplx> nodes_at(const JordanCurve& curve, const std::vector<double>& params) {
  std::vector<cplx> nodes(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) nodes[i] = curve.point(params[i]);
  return nodes;
}

inline double boundary_residual(const GeodesicZipper& zip, const JordanCurve& curve,
                                const std::vector<double>& params) {
  double worst = 0.0;
  const std::size_t n = params.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = params[i];
    const double b = (i + 1 < n) ? params[i + 1] : 1.0;
    const cplx p = curve.point(0.5 * (a + b));
    worst = std::max(worst, std::abs(std::abs(zip.evaluate(p)) - 1.0));
  }
  return worst;
}

}  // namespace zipper

namespace detail {

inline ConformalMap wrap_zipper(std::shared_ptr<const zipper::GeodesicZipper> zip, PlanarDomain source,
                                double accuracy, cplx z0) {
  return ConformalMap(
      "riemann", std::move(source), UnitDisc{}, [zip](cplx z) { return zip->evaluate(z); },
      [zip](cplx z) { return zip->derivative(z); }, [zip](cplx w) { return zip->inverse(w); }, accuracy,
      z0);
}

}  // namespace detail

/// Numerical Riemann map of a Jordan domain onto the unit disc with phi(z0) = 0, phi'(z0) > 0.
/// Resolution doubles from `nodes` until the boundary self-test meets `tolerance`.
inline ConformalMap riemann_map(const JordanCurve& curve, cplx z0, const RiemannMapOptions& opt = {},
                                PlanarDomain source = UnitDisc{}) {
  if (curve.winding_number(z0) != 1) fail(ErrorCode::DomainViolation, "riemann_map base point is not inside");
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t n = opt.nodes; n <= opt.max_nodes; n *= 2) {
    const auto params = zipper::node_params(curve, n);
    auto zip = std::make_shared<const zipper::GeodesicZipper>(zipper::nodes_at(curve, params), z0);
    if (!opt.self_test) return detail::wrap_zipper(zip, source, std::numeric_limits<double>::quiet_NaN(), z0);
    last = zipper::boundary_residual(*zip, curve, params);
    if (last <= opt.tolerance) return detail::wrap_zipper(zip, source, last, z0);
  }
  fail(ErrorCode::NonConvergence,
       "riemann_map accuracy " + std::to_string(last) + " above tolerance at the node cap");
}

inline ConformalMap riemann_map(const JordanDomain& d, cplx z0, const RiemannMapOptions& opt = {}) {
  return riemann_map(*d.curve, z0, opt, d);
}

}  // namespace invmetric
