#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include <boost/math/quadrature/gauss.hpp>

#include "invmetric/annulus.hpp"
#include "invmetric/bergman.hpp"
#include "invmetric/conformal.hpp"
#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"
#include "invmetric/shortest_path.hpp"
#include "invmetric/zipper.hpp"

namespace invmetric {

// ---------------------------------------------------------------------------
// Result types
// ---------------------------------------------------------------------------

enum class Method { closed_form, conformal_pullback, covering, series, hull_upper, projection_lower, interval };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::conformal_pullback: return "conformal_pullback";
    case Method::covering: return "covering";
    case Method::series: return "series";
    case Method::hull_upper: return "hull_upper";
    case Method::projection_lower: return "projection_lower";
    case Method::interval: return "interval";
  }
  return "unknown";
}

/// Distance value in tanh^-1 scale: exact modes have lo == hi up to rounding.
struct CertifiedValue {
  double lo = 0.0;
  double hi = 0.0;
  Method method = Method::closed_form;
  double error_estimate = 0.0;

  static CertifiedValue exact(double v, Method m, double err = 0.0) { return {v, v, m, err}; }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Mobius-scale view of a certified value: (tanh lo, tanh hi).
inline std::pair<double, double> mobius_interval(const CertifiedValue& v) {
  return {std::tanh(v.lo), std::tanh(v.hi)};
}

enum class MetricKind { kobayashi, bergman };

inline const char* to_string(MetricKind k) { return k == MetricKind::kobayashi ? "kobayashi" : "bergman"; }

/// (point, direction) -> infinitesimal length.
struct MetricField {
  MetricKind kind;
  PlanarDomain domain;
  std::function<double(cplx, cplx)> eval;

  double operator()(cplx z, cplx X) const { return eval(z, X); }

  /// Length of the straight segment [a, b] (64-node Gauss-Legendre).
  double segment_length(cplx a, cplx b) const {
    const cplx d = b - a;
    return boost::math::quadrature::gauss<double, 64>::integrate([&](double s) { return eval(a + s * d, d); },
                                                                  0.0, 1.0);
  }
};

// ---------------------------------------------------------------------------
// Simply connected planar domains: uniformization onto a hyperbolic model
// ---------------------------------------------------------------------------

enum class HyperbolicModel { disc, upper_half_plane };

/// Conformal map of a simply connected domain onto the unit disc or the upper half-plane,
/// carrying everything needed to pull back the hyperbolic distance and metric.
class Uniformizer {
 public:
  using Fn = std::function<cplx(cplx)>;

  Uniformizer(HyperbolicModel model, Fn map, Fn derivative, Method method, double accuracy = 0.0)
      : model_(model), map_(std::move(map)), derivative_(std::move(derivative)), method_(method),
        accuracy_(accuracy) {}

  HyperbolicModel model() const { return model_; }
  Method method() const { return method_; }
  double accuracy() const { return accuracy_; }
  cplx image(cplx z) const { return map_(z); }
  cplx derivative(cplx z) const { return derivative_(z); }

  double distance(cplx z, cplx w) const {
    if (z == w) return 0.0;
    const cplx a = map_(z), b = map_(w);
    return model_ == HyperbolicModel::disc ? disc_distance(a, b) : upper_half_plane_distance(a, b);
  }

  /// kappa(z; 1): |phi'| / (1 - |phi|^2) or |phi'| / (2 Im phi).
  double density(cplx z) const {
    const cplx a = map_(z);
    const double d = std::abs(derivative_(z));
    if (model_ == HyperbolicModel::disc) {
      const double m = std::abs(a);
      return d / ((1.0 - m) * (1.0 + m));
    }
    return d / (2.0 * a.imag());
  }

 private:
  HyperbolicModel model_;
  Fn map_;
  Fn derivative_;
  Method method_;
  double accuracy_;
};

/// Uniformizer from a map onto the unit disc.
inline Uniformizer uniformize(const ConformalMap& to_disc) {
  return Uniformizer(
      HyperbolicModel::disc, [to_disc](cplx z) { return to_disc(z); },
      [to_disc](cplx z) { return to_disc.derivative(z); },
      to_disc.accuracy() == 0.0 ? Method::closed_form : Method::conformal_pullback, to_disc.accuracy());
}

inline Uniformizer uniformize(std::shared_ptr<const zipper::GeodesicZipper> zip, double accuracy) {
  return Uniformizer(
      HyperbolicModel::upper_half_plane, [zip](cplx z) { return zip->to_half_plane(z); },
      [zip](cplx z) { return zip->to_half_plane_derivative(z); }, Method::conformal_pullback, accuracy);
}

/// Zipper for a Jordan curve at the requested options; the map is normalized at z0.
inline std::pair<std::shared_ptr<const zipper::GeodesicZipper>, double> build_zipper(
    const JordanCurve& curve, cplx z0, const RiemannMapOptions& opt) {
  if (curve.winding_number(z0) != 1) fail(ErrorCode::DomainViolation, "base point is not inside the curve");
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t n = opt.nodes; n <= opt.max_nodes; n *= 2) {
    const auto params = zipper::node_params(curve, n);
    auto zip = std::make_shared<const zipper::GeodesicZipper>(zipper::nodes_at(curve, params), z0);
    last = zipper::boundary_residual(*zip, curve, params);
    if (last <= opt.tolerance) return {zip, last};
  }
  fail(ErrorCode::NonConvergence, "Riemann map accuracy " + std::to_string(last) + " above tolerance");
}

namespace detail {

struct ZipperCacheEntry {
  std::weak_ptr<const JordanCurve> curve;
  std::size_t nodes;
  std::shared_ptr<const zipper::GeodesicZipper> zip;
  double accuracy;
};

/// Process-wide cache of Jordan-domain maps so repeated distance queries share one build.
inline std::pair<std::shared_ptr<const zipper::GeodesicZipper>, double> cached_zipper(
    const std::shared_ptr<const JordanCurve>& curve, const RiemannMapOptions& opt) {
  static std::mutex mu;
  static std::map<std::pair<const JordanCurve*, std::size_t>, ZipperCacheEntry> cache;
  const auto key = std::make_pair(curve.get(), opt.nodes);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (auto alive = it->second.curve.lock(); alive == curve) return {it->second.zip, it->second.accuracy};
      cache.erase(it);
    }
  }
  auto built = build_zipper(*curve, curve->interior_hint(), opt);
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = ZipperCacheEntry{curve, opt.nodes, built.first, built.second};
  return built;
}

}  // namespace detail

/// Uniformizer of a simply connected planar domain. Jordan domains and hulls use the numerical
/// Riemann map; every other variant has a closed form.
inline Uniformizer uniformize(const PlanarDomain& d, const RiemannMapOptions& opt = {}) {
  using HM = HyperbolicModel;
  return std::visit(
      detail::overloaded{
          [](const UnitDisc&) {
            return Uniformizer(HM::disc, [](cplx z) { return z; }, [](cplx) { return cplx(1.0); },
                               Method::closed_form);
          },
          [](const Disc& c) {
            const cplx c0 = c.center;
            const double r = c.radius;
            return Uniformizer(HM::disc, [=](cplx z) { return (z - c0) / r; }, [=](cplx) { return cplx(1.0 / r); },
                               Method::closed_form);
          },
          [](const HalfPlane& h) {
            const cplx rot = I * std::conj(h.normal);
            return Uniformizer(HM::upper_half_plane, [=](cplx z) { return rot * z; }, [=](cplx) { return rot; },
                               Method::closed_form);
          },
          [](const Sector& s) {
            const auto m = closed::sector(s.half_angle);
            return Uniformizer(HM::upper_half_plane, [m](cplx z) { return I * m(z); },
                               [m](cplx z) { return I * m.derivative(z); }, Method::closed_form);
          },
          [](const SlitPlane&) {
            const auto m = closed::slit_sqrt();
            return Uniformizer(HM::upper_half_plane, [m](cplx z) { return m(z); },
                               [m](cplx z) { return m.derivative(z); }, Method::closed_form);
          },
          [](const Annulus&) -> Uniformizer {
            fail(ErrorCode::Unsupported, "the annulus is not simply connected");
          },
          [&](const TwoDiscHull& h) {
            const auto curve = hull_curve(h);
            auto [zip, acc] = build_zipper(*curve, curve->interior_hint(), opt);
            return uniformize(zip, acc);
          },
          [&](const JordanDomain& j) {
            auto [zip, acc] = detail::cached_zipper(j.curve, opt);
            return uniformize(zip, acc);
          },
      },
      d);
}

// ---------------------------------------------------------------------------
// Annulus model
// ---------------------------------------------------------------------------

/// Everything computed once per modulus r: covering, Green function and its self-test, Bergman series.
struct AnnulusModel {
  double r;
  AnnulusCover cover;
  AnnulusGreen green;
  AnnulusBergman bergman;
  double green_residual;
  bool series_mode;

  explicit AnnulusModel(double modulus, double self_test_tol = 1e-8)
      : r(modulus), cover(modulus), green(modulus), bergman(modulus) {
    green_residual = green.boundary_residual(64);
    series_mode = green_residual <= self_test_tol;
  }
};

inline std::shared_ptr<const AnnulusModel> annulus_model(double r) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const AnnulusModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[r];
  if (!slot) slot = std::make_shared<const AnnulusModel>(r);
  return slot;
}

inline constexpr int deck_translates = 16;

inline void require_annulus_point(double r, cplx z) {
  const double a = std::abs(z);
  if (!(a > 1.0 / r && a < r)) fail(ErrorCode::DomainViolation, "point is not in the annulus");
}

/// Kobayashi distance of A_r through the strip cover: min over deck translates |n| <= 16.
inline CertifiedValue annulus_lempert(double r, cplx z, cplx w) {
  require_annulus_point(r, z);
  require_annulus_point(r, w);
  if (z == w) return CertifiedValue::exact(0.0, Method::covering);
  const AnnulusCover cover(r);
  const cplx a = cover.lift(z), b = cover.lift(w);
  double best = cover.strip_distance(a, b);
  int arg_best = 0;
  for (int n = 1; n <= deck_translates; ++n) {
    for (int s : {-1, 1}) {
      const double v = cover.strip_distance(a, b + double(s * n) * cover.deck_shift());
      if (v < best) {
        best = v;
        arg_best = s * n;
      }
    }
  }
  if (std::abs(arg_best) >= deck_translates) fail(ErrorCode::NonConvergence, "deck translate cap reached");
  return CertifiedValue::exact(best, Method::covering);
}

/// tanh^-1 of exp(-x), stable for small and large x.
inline double atanh_exp_neg(double x) {
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  const double e = std::exp(-x);
  return 0.5 * std::log((1.0 + e) / -std::expm1(-x));
}

/// Caratheodory distance of A_r. The extremal function is the degree-two proper map with zeros at
/// w and w* = -e^{i arg z} / |w|, so m = exp(-g(z, w) - g(z, w*)) with g the Green function.
inline CertifiedValue annulus_caratheodory(double r, cplx z, cplx w) {
  require_annulus_point(r, z);
  require_annulus_point(r, w);
  const auto model = annulus_model(r);
  if (z == w) return CertifiedValue::exact(0.0, model->series_mode ? Method::series : Method::interval);
  if (model->series_mode) {
    const cplx w_star = -std::polar(1.0 / std::abs(w), std::arg(z));
    const double x = model->green(z, w) + model->green(z, w_star);
    return CertifiedValue::exact(atanh_exp_neg(x), Method::series, model->green_residual);
  }
  const double lo = std::max(0.0, disc_distance(z / r, w / r));
  const double hi = annulus_lempert(r, z, w).hi;
  return CertifiedValue{lo, hi, Method::interval, hi - lo};
}

/// Kobayashi metric of A_r: strip density pulled back by log.
inline double annulus_kobayashi_metric(double r, cplx z, cplx X) {
  require_annulus_point(r, z);
  const AnnulusCover cover(r);
  return cover.density(cover.lift(z)) * std::abs(X) / std::abs(z);
}

// ---------------------------------------------------------------------------
// Planar distances
// ---------------------------------------------------------------------------

inline void require_inside(const PlanarDomain& d, cplx z) {
  if (!contains(d, z)) fail(ErrorCode::DomainViolation, "point is not in the domain");
}

/// Poincare distance on the unit disc.
inline double poincare_distance(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) fail(ErrorCode::DomainViolation, "point outside the unit disc");
  return disc_distance(z, w);
}

inline CertifiedValue pullback_value(const Uniformizer& u, cplx z, cplx w) {
  return CertifiedValue::exact(u.distance(z, w), u.method(), u.accuracy());
}

inline CertifiedValue caratheodory(const PlanarDomain& d, cplx z, cplx w, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  require_inside(d, w);
  if (const auto* a = std::get_if<Annulus>(&d)) return annulus_caratheodory(a->r, z, w);
  return pullback_value(uniformize(d, opt), z, w);
}

inline CertifiedValue lempert(const PlanarDomain& d, cplx z, cplx w, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  require_inside(d, w);
  if (const auto* a = std::get_if<Annulus>(&d)) return annulus_lempert(a->r, z, w);
  return pullback_value(uniformize(d, opt), z, w);
}

/// Kobayashi distance; equal to the Lempert function on planar domains.
inline CertifiedValue kobayashi(const PlanarDomain& d, cplx z, cplx w, const RiemannMapOptions& opt = {}) {
  return lempert(d, z, w, opt);
}

inline double kobayashi_metric(const PlanarDomain& d, cplx z, cplx X, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  if (const auto* a = std::get_if<Annulus>(&d)) return annulus_kobayashi_metric(a->r, z, X);
  return uniformize(d, opt).density(z) * std::abs(X);
}

/// Green function (1/2pi) log tanh c of a simply connected domain; nonpositive.
inline double green_function(const PlanarDomain& d, cplx z, cplx w, const RiemannMapOptions& opt = {}) {
  if (!is_simply_connected(d)) fail(ErrorCode::Unsupported, "green_function needs a simply connected domain");
  if (z == w) fail(ErrorCode::DegenerateInput, "green_function pole: z == w");
  const double c = caratheodory(d, z, w, opt).mid();
  // log tanh c = log(1 - e^{-2c}) - log(1 + e^{-2c})
  return (std::log(-std::expm1(-2.0 * c)) - std::log1p(std::exp(-2.0 * c))) / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// Bergman kernel, metric and distance
// ---------------------------------------------------------------------------

inline double bergman_kernel(const PlanarDomain& d, cplx z, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  return std::visit(
      detail::overloaded{
          [&](const UnitDisc&) {
            const double t = std::norm(z);
            return 1.0 / (pi * (1.0 - t) * (1.0 - t));
          },
          [&](const Disc& c) {
            const double t = std::norm((z - c.center) / c.radius);
            return 1.0 / (pi * c.radius * c.radius * (1.0 - t) * (1.0 - t));
          },
          [&](const Annulus& a) { return annulus_model(a.r)->bergman.kernel(z); },
          [&](const auto&) {
            // Transport: K_D(z) = |phi'(z)|^2 K_model(phi(z)) = kappa_D(z)^2 / pi.
            const double k = uniformize(d, opt).density(z);
            return k * k / pi;
          },
      },
      d);
}

namespace detail {
inline const DiscBergmanSeries& disc_series() {
  static const DiscBergmanSeries s;
  return s;
}
}  // namespace detail

/// Bergman metric |X| sqrt(d^2/dz dzbar log K).
inline double bergman_metric(const PlanarDomain& d, cplx z, cplx X, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  return std::visit(
      detail::overloaded{
          [&](const UnitDisc&) { return detail::disc_series().metric(z, X); },
          [&](const Disc& c) { return detail::disc_series().metric((z - c.center) / c.radius, X / c.radius); },
          [&](const Annulus& a) { return annulus_model(a.r)->bergman.metric(z, X); },
          [&](const auto&) { return std::sqrt(2.0) * uniformize(d, opt).density(z) * std::abs(X); },
      },
      d);
}

inline MetricField metric_field(const PlanarDomain& d, MetricKind kind, const RiemannMapOptions& opt = {}) {
  if (kind == MetricKind::kobayashi) {
    if (const auto* a = std::get_if<Annulus>(&d)) {
      const double r = a->r;
      return {kind, d, [r](cplx z, cplx X) { return annulus_kobayashi_metric(r, z, X); }};
    }
    auto u = std::make_shared<Uniformizer>(uniformize(d, opt));
    return {kind, d, [u](cplx z, cplx X) { return u->density(z) * std::abs(X); }};
  }
  if (std::holds_alternative<UnitDisc>(d) || std::holds_alternative<Disc>(d) || std::holds_alternative<Annulus>(d))
    return {kind, d, [d](cplx z, cplx X) { return bergman_metric(d, z, X); }};
  auto u = std::make_shared<Uniformizer>(uniformize(d, opt));
  return {kind, d, [u](cplx z, cplx X) { return std::sqrt(2.0) * u->density(z) * std::abs(X); }};
}

/// Bergman length of the disc geodesic from z to w, integrating the series metric with a
/// tanh substitution along the geodesic.
inline double disc_bergman_geodesic_length(cplx z, cplx w) {
  if (z == w) return 0.0;
  // Geodesic: gamma(s) = M^{-1}(s e^{i theta}), M(x) = (x - z) / (1 - conj(z) x), s in [0, m].
  const cplx mw = (w - z) / (1.0 - std::conj(z) * w);
  const double m = std::abs(mw);
  const cplx dir = mw / m;
  const double total = disc_distance(z, w);
  const double a2 = (1.0 - std::abs(z)) * (1.0 + std::abs(z));
  const auto& series = detail::disc_series();
  auto integrand = [&](double u) {
    const double s = std::tanh(u);
    const double one_minus_s2 = 1.0 / (std::cosh(u) * std::cosh(u));
    const cplx zeta = s * dir;
    const cplx den = 1.0 + std::conj(z) * zeta;
    const cplx g = (zeta + z) / den;
    const double speed = a2 / std::norm(den) * one_minus_s2;  // |d gamma / du|
    return series.metric(g, speed);
  };
  return boost::math::quadrature::gauss<double, 64>::integrate(integrand, 0.0, total);
}

inline CertifiedValue bergman_distance(const PlanarDomain& d, cplx z, cplx w, const RiemannMapOptions& opt = {},
                                       const PathOptions& path = {}) {
  require_inside(d, z);
  require_inside(d, w);
  return std::visit(
      detail::overloaded{
          [&](const UnitDisc&) { return CertifiedValue::exact(disc_bergman_geodesic_length(z, w), Method::series); },
          [&](const Disc& c) {
            const double v = disc_bergman_geodesic_length((z - c.center) / c.radius, (w - c.center) / c.radius);
            return CertifiedValue::exact(v, Method::series);
          },
          [&](const Annulus& a) {
            const auto model = annulus_model(a.r);
            const auto res = annulus_shortest_path(
                a.r, z, w, [model](cplx p) { return model->bergman.metric(p, 1.0); }, path);
            return CertifiedValue{std::max(0.0, res.value - res.error), res.value + res.error, Method::interval,
                                  res.error};
          },
          [&](const auto&) {
            const Uniformizer u = uniformize(d, opt);
            return CertifiedValue::exact(std::sqrt(2.0) * u.distance(z, w), u.method(), u.accuracy());
          },
      },
      d);
}

/// Kobayashi length through the shortest-path solver on A_r (independent of the covering formula).
inline PathResult annulus_kobayashi_path(double r, cplx z, cplx w, const PathOptions& path = {}) {
  return annulus_shortest_path(r, z, w, [r](cplx p) { return annulus_kobayashi_metric(r, p, 1.0); }, path);
}

// ---------------------------------------------------------------------------
// Domains in C^n
// ---------------------------------------------------------------------------

inline void require_inside(const CnDomain& d, const CVec& z) {
  if (z.size() != dimension(d)) fail(ErrorCode::DomainViolation, "point dimension mismatch");
  if (!contains(d, z)) fail(ErrorCode::DomainViolation, "point is not in the domain");
}

/// Closed-form Caratheodory = Lempert distance of the ball and the polydisc.
inline double cn_model_distance(const CnDomain& d, const CVec& z, const CVec& w) {
  require_inside(d, z);
  require_inside(d, w);
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            if (z == w) return 0.0;
            const CVec a = cplx(1.0 / b.radius) * (z - b.center);
            const CVec c = cplx(1.0 / b.radius) * (w - b.center);
            const double na = norm2(a), nc = norm2(c);
            const double den = std::norm(1.0 - hermitian(a, c));
            const double one_minus_m2 = (1.0 - na) * (1.0 + na) * (1.0 - nc) * (1.0 + nc) / den;
            const double m = std::sqrt(std::max(0.0, 1.0 - one_minus_m2));
            return std::log1p(m) - 0.5 * std::log(one_minus_m2);
          },
          [&](const Polydisc& p) {
            double best = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
              best = std::max(best, disc_distance((z[j] - p.center[j]) / p.radii[j], (w[j] - p.center[j]) / p.radii[j]));
            return best;
          },
          [&](const ConvexBody&) -> double {
            fail(ErrorCode::Unsupported, "no closed form on a general convex body");
          },
      },
      d);
}

struct HullLempert {
  double value;
  double error;  // change from the previous resolution
  std::size_t nodes;
};

/// Lempert function of the convex hull of Disc(z, dz) and Disc(w, dw), evaluated between the centres
/// (any complex line through z and w carries an isometric copy of this hull). Resolution doubles from
/// `opt.nodes` until successive values agree to 0.1 * tolerance * max(1, l).
inline HullLempert hull_lempert(double separation, double dz, double dw, const RiemannMapOptions& opt = {}) {
  if (separation == 0.0) return {0.0, 0.0, 0};
  const PlanarDomain hull = two_disc_hull(0.0, dz, separation, dw);
  if (std::holds_alternative<UnitDisc>(hull)) return {disc_distance(0.0, separation), 0.0, 0};
  if (const auto* disc = std::get_if<Disc>(&hull))
    return {disc_distance(-disc->center / disc->radius, (separation - disc->center) / disc->radius), 0.0, 0};
  const auto curve = hull_curve(std::get<TwoDiscHull>(hull));
  const cplx z0 = curve->interior_hint();
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = opt.nodes; n <= opt.max_nodes; n *= 2) {
    const zipper::GeodesicZipper zip(zipper::nodes_at(*curve, zipper::node_params(*curve, n)), z0);
    const double l = upper_half_plane_distance(zip.to_half_plane(0.0), zip.to_half_plane(separation));
    if (!std::isfinite(l)) fail(ErrorCode::NonConvergence, "hull distance beyond double range");
    const double err = std::abs(l - prev);
    if (err <= 0.1 * opt.tolerance * std::max(1.0, l)) return {l, err, n};
    prev = l;
  }
  fail(ErrorCode::NonConvergence, "hull distance did not settle at the node cap");
}

/// Lower bound from the faces of a convex body: each face half-space maps onto the right half-plane.
inline double face_projection_lower(const ConvexBody& body, const CVec& z, const CVec& w) {
  double best = 0.0;
  for (const auto& f : body.faces) {
    const cplx a = f.offset - hermitian(z, f.normal);
    const cplx b = f.offset - hermitian(w, f.normal);
    best = std::max(best, right_half_plane_distance(a, b));
  }
  return best;
}

inline CertifiedValue lempert(const CnDomain& d, const CVec& z, const CVec& w, const RiemannMapOptions& opt = {}) {
  require_inside(d, z);
  require_inside(d, w);
  if (!std::holds_alternative<ConvexBody>(d)) return CertifiedValue::exact(cn_model_distance(d, z, w), Method::closed_form);
  const auto& body = std::get<ConvexBody>(d);
  const double dz = boundary_distance(d, z), dw = boundary_distance(d, w);
  const HullLempert h = hull_lempert(norm2(w - z), dz, dw, opt);
  const double hi = h.value;
  const double lo = std::min(hi, std::max({0.0, 0.5 * std::abs(std::log(dz / dw)), face_projection_lower(body, z, w)}));
  return CertifiedValue{lo, hi, Method::hull_upper, std::max(hi - lo, h.error)};
}

inline CertifiedValue caratheodory(const CnDomain& d, const CVec& z, const CVec& w,
                                   const RiemannMapOptions& opt = {}) {
  const CertifiedValue l = lempert(d, z, w, opt);
  if (l.method == Method::closed_form) return l;
  return CertifiedValue{l.lo, l.hi, Method::projection_lower, l.error_estimate};
}

}  // namespace invmetric
