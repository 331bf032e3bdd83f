#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "invmetric/core.hpp"

namespace invmetric {

// ---------------------------------------------------------------------------
// Jordan curves
// ---------------------------------------------------------------------------

struct CurveSmoothness {
  bool c1 = true;
  bool dini = true;  // metadata only, never verified numerically
  double continuity_modulus = 0.0;
};

/// Closed, simple, positively oriented curve gamma: [0,1] -> C.
class JordanCurve {
 public:
  using Param = std::function<cplx(double)>;
  using Density = std::function<double(double)>;

  JordanCurve(std::string name, std::vector<std::pair<std::string, double>> params, Param point,
              Param tangent, double speed_bound, cplx interior_hint, CurveSmoothness smoothness = {},
              Density node_density = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        point_(std::move(point)),
        tangent_(std::move(tangent)),
        speed_bound_(speed_bound),
        hint_(interior_hint),
        smoothness_(smoothness),
        density_(std::move(node_density)) {
    validate();
  }

  const std::string& name() const { return name_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  cplx point(double s) const { return point_(wrap(s)); }
  cplx tangent(double s) const { return tangent_(wrap(s)); }
  double speed_bound() const { return speed_bound_; }
  cplx interior_hint() const { return hint_; }
  const CurveSmoothness& smoothness() const { return smoothness_; }

  /// Relative node density used when sampling the curve for conformal mapping.
  double node_density(double s) const {
    return density_ ? density_(wrap(s)) : std::abs(tangent_(wrap(s)));
  }

  std::vector<cplx> sample(std::size_t n) const {
    std::vector<cplx> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = point(static_cast<double>(i) / n);
    return pts;
  }

  /// Parameters s_0 = 0 < s_1 < ... < s_{n-1} equidistributed in the cumulative node density.
  std::vector<double> equidistributed(std::size_t n) const {
    const std::size_t fine = std::max<std::size_t>(16 * n, 8192);
    std::vector<double> cum(fine + 1, 0.0);
    double prev = node_density(0.0);
    for (std::size_t i = 1; i <= fine; ++i) {
      const double cur = node_density(static_cast<double>(i) / fine);
      cum[i] = cum[i - 1] + 0.5 * (prev + cur) / fine;
      prev = cur;
    }
    std::vector<double> out(n);
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double target = cum[fine] * static_cast<double>(k) / n;
      while (j + 1 < fine && cum[j + 1] < target) ++j;
      const double span = cum[j + 1] - cum[j];
      const double frac = span > 0 ? (target - cum[j]) / span : 0.0;
      out[k] = (static_cast<double>(j) + frac) / fine;
    }
    out[0] = 0.0;
    return out;
  }

  /// Winding number of the sampled boundary about z; resolution doubles until the value is stable.
  int winding_number(cplx z) const {
    int last = winding_at(z, 256);
    for (std::size_t n = 512; n <= (1u << 16); n *= 2) {
      const int cur = winding_at(z, n);
      if (cur == last) return cur;
      last = cur;
    }
    return last;
  }

 private:
  static double wrap(double s) {
    double t = s - std::floor(s);
    return t;
  }

  int winding_at(cplx z, std::size_t n) const {
    double total = 0.0;
    cplx prev = point(0.0) - z;
    for (std::size_t i = 1; i <= n; ++i) {
      const cplx cur = point(static_cast<double>(i) / n) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
  }

  // Proper crossings only: orientations within rounding of zero (collinear pieces of straight boundary
  // segments) count as touching.
  static bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto orient = [](cplx p, cplx q, cplx r) {
      const double o = (q - p).real() * (r - p).imag() - (q - p).imag() * (r - p).real();
      return std::abs(o) <= 1e-12 * std::abs(q - p) * std::abs(r - p) ? 0.0 : o;
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
  }

  void validate() const {
    const cplx start = point_(0.0), end = point_(1.0);
    const double scale = std::max(1.0, std::abs(start));
    if (std::abs(start - end) > 1e-9 * scale) fail(ErrorCode::InvalidDomain, name_ + ": curve is not closed");
    if (!(speed_bound_ > 0.0)) fail(ErrorCode::InvalidDomain, name_ + ": speed bound must be positive");

    constexpr std::size_t n = 256;
    const auto pts = sample(n);
    double area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a = pts[i], b = pts[(i + 1) % n];
      area += a.real() * b.imag() - b.real() * a.imag();
    }
    if (!(area > 0.0)) fail(ErrorCode::InvalidDomain, name_ + ": boundary is not positively oriented");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (segments_cross(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n]))
          fail(ErrorCode::InvalidDomain, name_ + ": self-intersecting boundary");
      }
    }
    if (winding_number(hint_) != 1) fail(ErrorCode::InvalidDomain, name_ + ": interior hint is not inside");
  }

  std::string name_;
  std::vector<std::pair<std::string, double>> params_;
  Param point_;
  Param tangent_;
  double speed_bound_;
  cplx hint_;
  CurveSmoothness smoothness_;
  Density density_;
};

namespace curves {

inline std::shared_ptr<const JordanCurve> ellipse(double a, double b) {
  if (!(a > 0 && b > 0)) fail(ErrorCode::DegenerateInput, "ellipse semi-axes must be positive");
  const double tau = 2.0 * pi;
  return std::make_shared<const JordanCurve>(
      "ellipse", std::vector<std::pair<std::string, double>>{{"a", a}, {"b", b}},
      [=](double s) { return cplx(a * std::cos(tau * s), b * std::sin(tau * s)); },
      [=](double s) { return tau * cplx(-a * std::sin(tau * s), b * std::cos(tau * s)); },
      tau * std::max(a, b), cplx(0.0, 0.0));
}

inline std::shared_ptr<const JordanCurve> circle(cplx center, double radius) {
  if (!(radius > 0)) fail(ErrorCode::DegenerateInput, "circle radius must be positive");
  const double tau = 2.0 * pi;
  return std::make_shared<const JordanCurve>(
      "circle",
      std::vector<std::pair<std::string, double>>{
          {"cx", center.real()}, {"cy", center.imag()}, {"radius", radius}},
      [=](double s) { return center + radius * std::polar(1.0, tau * s); },
      [=](double s) { return I * tau * radius * std::polar(1.0, tau * s); }, tau * radius, center);
}

struct FourierMode {
  int k;
  double amplitude;
  double phase;
};

/// Star-shaped curve r(t) = r0 (1 + sum a_k cos(k t + phase_k)) about `center`.
inline std::shared_ptr<const JordanCurve> fourier(double r0, std::vector<FourierMode> modes,
                                                  cplx center = 0.0) {
  double total = 0.0, speed = 0.0;
  for (const auto& m : modes) {
    if (m.k < 1) fail(ErrorCode::DegenerateInput, "fourier modes must have k >= 1");
    total += std::abs(m.amplitude);
    speed += std::abs(m.amplitude) * m.k;
  }
  if (!(r0 > 0) || total >= 1.0) fail(ErrorCode::DegenerateInput, "fourier curve must stay star-shaped");
  const double tau = 2.0 * pi;
  auto radius = [=](double t) {
    double r = 1.0;
    for (const auto& m : modes) r += m.amplitude * std::cos(m.k * t + m.phase);
    return r0 * r;
  };
  auto dradius = [=](double t) {
    double r = 0.0;
    for (const auto& m : modes) r -= m.amplitude * m.k * std::sin(m.k * t + m.phase);
    return r0 * r;
  };
  std::vector<std::pair<std::string, double>> params{{"r0", r0}};
  for (const auto& m : modes) {
    params.emplace_back("k", m.k);
    params.emplace_back("amplitude", m.amplitude);
    params.emplace_back("phase", m.phase);
  }
  return std::make_shared<const JordanCurve>(
      "fourier", std::move(params),
      [=](double s) { return center + radius(tau * s) * std::polar(1.0, tau * s); },
      [=](double s) {
        const double t = tau * s;
        return tau * (dradius(t) + I * radius(t)) * std::polar(1.0, t);
      },
      tau * r0 * (1.0 + total + speed), center);
}

/// Boundary of the lens UnitDisc ∩ Disc(1, rho), 0 < rho < sqrt(2).
inline std::shared_ptr<const JordanCurve> lens(double rho) {
  if (!(rho > 0 && rho < std::sqrt(2.0))) fail(ErrorCode::DegenerateInput, "lens requires 0 < rho < sqrt 2");
  const double x = 1.0 - 0.5 * rho * rho;
  const double y = rho * std::sqrt(1.0 - 0.25 * rho * rho);
  const double psi = std::atan2(y, x);            // half-angle of the unit-circle arc
  const double chi = std::atan2(y, 1.0 - x);      // half-angle of the small arc, seen from 1
  const double len_outer = 2.0 * psi, len_inner = 2.0 * rho * chi;
  const double split = len_outer / (len_outer + len_inner);
  const double total = len_outer + len_inner;
  auto point = [=](double s) -> cplx {
    if (s < split) return std::polar(1.0, -psi + 2.0 * psi * s / split);
    const double u = (s - split) / (1.0 - split);
    return 1.0 + rho * std::polar(1.0, pi - chi + 2.0 * chi * u);
  };
  auto tangent = [=](double s) -> cplx {
    if (s < split) return I * std::polar(1.0, -psi + 2.0 * psi * s / split) * total;
    const double u = (s - split) / (1.0 - split);
    return I * std::polar(1.0, pi - chi + 2.0 * chi * u) * total;
  };
  return std::make_shared<const JordanCurve>(
      "lens", std::vector<std::pair<std::string, double>>{{"rho", rho}}, point, tangent, total,
      cplx(1.0 - 0.5 * rho, 0.0), CurveSmoothness{false, false, 0.0});
}

}  // namespace curves

// ---------------------------------------------------------------------------
// Planar domains
// ---------------------------------------------------------------------------

struct UnitDisc {};

struct Disc {
  cplx center;
  double radius;
  Disc(cplx c, double r) : center(c), radius(r) {
    if (!(r > 0)) fail(ErrorCode::DegenerateInput, "disc radius must be positive");
  }
};

/// {z : Re(z conj(normal)) > 0}; normal is the unit inward normal of the boundary line through 0.
struct HalfPlane {
  cplx normal;
  explicit HalfPlane(cplx n) : normal(n) {
    if (!(std::abs(n) > 0)) fail(ErrorCode::DegenerateInput, "half-plane normal must be nonzero");
    normal /= std::abs(n);
  }
};

/// {z != 0 : |arg z| < half_angle}.
struct Sector {
  double half_angle;
  explicit Sector(double theta) : half_angle(theta) {
    if (!(theta > 0 && theta < pi)) fail(ErrorCode::DegenerateInput, "sector requires 0 < theta < pi");
  }
};

/// C minus the closed ray [0, +inf).
struct SlitPlane {};

/// {1/r < |z| < r}.
struct Annulus {
  double r;
  explicit Annulus(double modulus) : r(modulus) {
    if (!(modulus > 1)) fail(ErrorCode::DegenerateInput, "annulus requires r > 1");
  }
};

/// Convex hull of Disc(z, rz) ∪ Disc(w, rw) when neither disc contains the other.
struct TwoDiscHull {
  cplx z;
  double rz;
  cplx w;
  double rw;
  TwoDiscHull(cplx z_, double rz_, cplx w_, double rw_) : z(z_), rz(rz_), w(w_), rw(rw_) {
    if (!(rz > 0 && rw > 0)) fail(ErrorCode::DegenerateInput, "hull radii must be positive");
    if (std::abs(w - z) <= std::abs(rz - rw))
      fail(ErrorCode::DegenerateInput, "one disc contains the other; use two_disc_hull()");
  }
};

struct JordanDomain {
  std::shared_ptr<const JordanCurve> curve;
  explicit JordanDomain(std::shared_ptr<const JordanCurve> c) : curve(std::move(c)) {
    if (!curve) fail(ErrorCode::DegenerateInput, "null curve");
  }
};

using PlanarDomain =
    std::variant<UnitDisc, Disc, HalfPlane, Sector, SlitPlane, Annulus, TwoDiscHull, JordanDomain>;

inline PlanarDomain make_disc(cplx center, double radius) {
  if (center == cplx(0.0) && radius == 1.0) return UnitDisc{};
  return Disc(center, radius);
}

inline bool is_simply_connected(const PlanarDomain& d) { return !std::holds_alternative<Annulus>(d); }

struct BoundaryContact {
  cplx point;
  double distance;
  cplx inward;  // unit vector from the foot point towards the query point
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Angle of v in [0, 2pi); used for the nearest-contact tie-break.
inline double scan_angle(cplx v) {
  double a = std::arg(v);
  if (a < 0) a += 2.0 * pi;
  return a;
}

// Picks the nearest candidate; equal distances resolve to the smallest scan angle of (p - w).
inline BoundaryContact pick_contact(cplx w, const std::vector<cplx>& candidates) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : candidates) best = std::min(best, std::abs(w - p));
  const double slack = 1e-13 * std::max(1.0, best);
  cplx chosen = candidates.front();
  double chosen_angle = std::numeric_limits<double>::infinity();
  for (const auto& p : candidates) {
    if (std::abs(w - p) > best + slack) continue;
    const double a = scan_angle(p - w);
    if (a < chosen_angle) {
      chosen_angle = a;
      chosen = p;
    }
  }
  const double d = std::abs(w - chosen);
  const cplx dir = d > 0 ? (w - chosen) / d : cplx(-1.0, 0.0);
  return {chosen, d, dir};
}

inline cplx nearest_on_segment(cplx x, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0) return a;
  const double t = std::clamp(((x - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return a + t * ab;
}

// Nearest point on the circular arc {c + r e^{it} : t in [t0, t0 + span]}.
inline cplx nearest_on_arc(cplx x, cplx c, double r, double t0, double span) {
  const cplx v = x - c;
  if (std::abs(v) > 0) {
    double t = std::arg(v) - t0;
    t -= 2.0 * pi * std::floor(t / (2.0 * pi));
    if (t <= span) return c + r * v / std::abs(v);
  }
  const cplx a = c + r * std::polar(1.0, t0), b = c + r * std::polar(1.0, t0 + span);
  return std::abs(x - a) <= std::abs(x - b) ? a : b;
}

/// Tangent-point geometry of a non-degenerate two-disc hull.
struct HullGeometry {
  cplx c1, c2;      // centers: c1 = z, c2 = w
  double r1, r2;
  cplx e;           // unit vector c1 -> c2
  double alpha;     // angle between outward tangent normals and e
  cplx n_plus, n_minus;
  double arc1_len, arc2_len, seg_len;

  explicit HullGeometry(const TwoDiscHull& h) : c1(h.z), c2(h.w), r1(h.rz), r2(h.rw) {
    const double L = std::abs(c2 - c1);
    e = (c2 - c1) / L;
    alpha = std::acos(std::clamp((r1 - r2) / L, -1.0, 1.0));
    n_plus = e * std::polar(1.0, alpha);
    n_minus = e * std::polar(1.0, -alpha);
    arc1_len = r1 * (2.0 * pi - 2.0 * alpha);
    arc2_len = r2 * 2.0 * alpha;
    seg_len = std::abs((c1 + r1 * n_plus) - (c2 + r2 * n_plus));
  }

  double arg_e() const { return std::arg(e); }

  bool contains(cplx x) const {
    if (std::abs(x - c1) < r1 || std::abs(x - c2) < r2) return true;
    // Inside the tangent quadrilateral: between both tangent lines and between the two normals.
    const double s_plus = ((x - c1) * std::conj(n_plus)).real() - r1;
    const double s_minus = ((x - c1) * std::conj(n_minus)).real() - r1;
    const double along = ((x - c1) * std::conj(e)).real();
    const double L = std::abs(c2 - c1);
    const double ca = std::cos(alpha);
    return s_plus < 0 && s_minus < 0 && along > r1 * ca && along < L + r2 * ca;
  }

  cplx nearest_boundary_point(cplx x) const {
    const double ae = arg_e();
    std::vector<cplx> cand{
        nearest_on_arc(x, c2, r2, ae - alpha, 2.0 * alpha),
        nearest_on_arc(x, c1, r1, ae + alpha, 2.0 * pi - 2.0 * alpha),
        nearest_on_segment(x, c1 + r1 * n_plus, c2 + r2 * n_plus),
        nearest_on_segment(x, c1 + r1 * n_minus, c2 + r2 * n_minus),
    };
    return pick_contact(x, cand).point;
  }

  std::vector<cplx> boundary_candidates(cplx x) const {
    const double ae = arg_e();
    return {nearest_on_arc(x, c2, r2, ae - alpha, 2.0 * alpha),
            nearest_on_arc(x, c1, r1, ae + alpha, 2.0 * pi - 2.0 * alpha),
            nearest_on_segment(x, c1 + r1 * n_plus, c2 + r2 * n_plus),
            nearest_on_segment(x, c1 + r1 * n_minus, c2 + r2 * n_minus)};
  }
};

struct JordanSearch {
  double distance;
  double parameter;
};

// Branch and bound over the boundary parameter with the Lipschitz bound |gamma'| <= L.
inline JordanSearch jordan_min_distance(const JordanCurve& c, cplx z, double tol) {
  const double L = c.speed_bound();
  struct Cell {
    double a, b, mid_value;
  };
  auto key = [L](const Cell& cell) { return cell.mid_value - 0.5 * L * (cell.b - cell.a); };
  auto cmp = [&](const Cell& x, const Cell& y) { return key(x) > key(y); };
  std::vector<Cell> heap;
  constexpr int initial = 512;
  JordanSearch best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < initial; ++i) {
    const double a = static_cast<double>(i) / initial, b = static_cast<double>(i + 1) / initial;
    const double m = 0.5 * (a + b);
    const double v = std::abs(c.point(m) - z);
    if (v < best.distance) best = {v, m};
    heap.push_back({a, b, v});
  }
  std::make_heap(heap.begin(), heap.end(), cmp);
  constexpr std::size_t cap = 2'000'000;
  std::size_t iterations = 0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const Cell cell = heap.back();
    heap.pop_back();
    if (key(cell) >= best.distance - tol) break;
    if (++iterations > cap) fail(ErrorCode::NonConvergence, "jordan boundary distance did not certify");
    const double m = 0.5 * (cell.a + cell.b);
    for (const auto& [a, b] : {std::pair{cell.a, m}, std::pair{m, cell.b}}) {
      const double mm = 0.5 * (a + b);
      const double v = std::abs(c.point(mm) - z);
      if (v < best.distance) best = {v, mm};
      heap.push_back({a, b, v});
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
  }
  return best;
}

}  // namespace detail

inline constexpr double default_jordan_tolerance = 1e-8;

inline bool contains(const PlanarDomain& d, cplx z) {
  return std::visit(
      detail::overloaded{
          [&](const UnitDisc&) { return std::abs(z) < 1.0; },
          [&](const Disc& s) { return std::abs(z - s.center) < s.radius; },
          [&](const HalfPlane& h) { return (z * std::conj(h.normal)).real() > 0.0; },
          [&](const Sector& s) { return z != cplx(0.0) && std::abs(std::arg(z)) < s.half_angle; },
          [&](const SlitPlane&) { return !(z.imag() == 0.0 && z.real() >= 0.0); },
          [&](const Annulus& a) { return std::abs(z) > 1.0 / a.r && std::abs(z) < a.r; },
          [&](const TwoDiscHull& h) { return detail::HullGeometry(h).contains(z); },
          [&](const JordanDomain& j) { return j.curve->winding_number(z) == 1; },
      },
      d);
}

/// Nearest boundary point; ties resolve to the smallest angle of (p - w) in [0, 2pi).
inline BoundaryContact nearest_boundary_contact(const PlanarDomain& d, cplx w,
                                                double tol = default_jordan_tolerance) {
  using detail::pick_contact;
  return std::visit(
      detail::overloaded{
          // Radial distance r - |v| directly: forming the foot point first loses relative accuracy near the circle.
          [&](const UnitDisc&) {
            const double a = std::abs(w);
            BoundaryContact c = pick_contact(w, {a == 0 ? cplx(1.0) : w / a});
            c.distance = std::abs(1.0 - a);
            return c;
          },
          [&](const Disc& s) {
            const cplx v = w - s.center;
            const double a = std::abs(v);
            BoundaryContact c = pick_contact(w, {s.center + s.radius * (a == 0 ? cplx(1.0) : v / a)});
            c.distance = std::abs(s.radius - a);
            return c;
          },
          [&](const HalfPlane& h) {
            const double s = (w * std::conj(h.normal)).real();
            return pick_contact(w, {w - s * h.normal});
          },
          [&](const Sector& s) {
            std::vector<cplx> c;
            for (double sign : {1.0, -1.0}) {
              const cplx dir = std::polar(1.0, sign * s.half_angle);
              c.push_back(std::max(0.0, (w * std::conj(dir)).real()) * dir);
            }
            return pick_contact(w, c);
          },
          [&](const SlitPlane&) {
            return pick_contact(w, {cplx(std::max(0.0, w.real()), 0.0)});
          },
          [&](const Annulus& a) {
            const double m = std::abs(w);
            const cplx u = m == 0 ? cplx(1.0) : w / m;
            return pick_contact(w, {a.r * u, u / a.r});
          },
          [&](const TwoDiscHull& h) {
            return pick_contact(w, detail::HullGeometry(h).boundary_candidates(w));
          },
          [&](const JordanDomain& j) {
            const auto found = detail::jordan_min_distance(*j.curve, w, tol);
            return pick_contact(w, {j.curve->point(found.parameter)});
          },
      },
      d);
}

/// Euclidean distance to the boundary; zero (or minus the exterior distance when `signed_distance`)
/// outside the domain.
inline double boundary_distance(const PlanarDomain& d, cplx z, bool signed_distance = false,
                                double tol = default_jordan_tolerance) {
  const double dist = nearest_boundary_contact(d, z, tol).distance;
  if (contains(d, z)) return dist;
  return signed_distance ? -dist : 0.0;
}

/// Convex hull of Disc(z, dz) ∪ Disc(w, dw); the larger disc when one contains the other.
inline PlanarDomain two_disc_hull(cplx z, double dz, cplx w, double dw) {
  if (!(dz > 0 && dw > 0)) fail(ErrorCode::DegenerateInput, "two_disc_hull radii must be positive");
  if (z == w) fail(ErrorCode::DegenerateInput, "two_disc_hull requires z != w");
  if (std::abs(w - z) <= std::abs(dz - dw)) return dz >= dw ? make_disc(z, dz) : make_disc(w, dw);
  return TwoDiscHull(z, dz, w, dw);
}

/// Boundary of a two-disc hull as a Jordan curve; nodes are concentrated where the hull is thin.
inline std::shared_ptr<const JordanCurve> hull_curve(const TwoDiscHull& h) {
  const detail::HullGeometry g(h);
  const double total = g.arc1_len + g.arc2_len + 2.0 * g.seg_len;
  const double b1 = g.arc2_len / total;                 // end of arc around c2
  const double b2 = b1 + g.seg_len / total;             // end of upper segment
  const double b3 = b2 + g.arc1_len / total;            // end of arc around c1
  const double ae = g.arg_e();
  const cplx t2p = g.c2 + g.r2 * g.n_plus, t1p = g.c1 + g.r1 * g.n_plus;
  const cplx t1m = g.c1 + g.r1 * g.n_minus, t2m = g.c2 + g.r2 * g.n_minus;
  auto point = [=](double s) -> cplx {
    if (s < b1) return g.c2 + g.r2 * std::polar(1.0, ae - g.alpha + 2.0 * g.alpha * s / b1);
    if (s < b2) return t2p + (t1p - t2p) * ((s - b1) / (b2 - b1));
    if (s < b3) {
      const double u = (s - b2) / (b3 - b2);
      return g.c1 + g.r1 * std::polar(1.0, ae + g.alpha + (2.0 * pi - 2.0 * g.alpha) * u);
    }
    return t1m + (t2m - t1m) * ((s - b3) / (1.0 - b3));
  };
  auto tangent = [=](double s) -> cplx {
    if (s < b1) return I * std::polar(total, ae - g.alpha + 2.0 * g.alpha * s / b1);
    if (s < b2) return (t1p - t2p) / std::abs(t1p - t2p) * total;
    if (s < b3) {
      const double u = (s - b2) / (b3 - b2);
      return I * std::polar(total, ae + g.alpha + (2.0 * pi - 2.0 * g.alpha) * u);
    }
    return (t2m - t1m) / std::abs(t2m - t1m) * total;
  };
  auto width = [=](double s) -> double {
    if (s < b1) return g.r2;
    if (s < b2) return g.r2 + (g.r1 - g.r2) * ((s - b1) / (b2 - b1));
    if (s < b3) return g.r1;
    return g.r1 + (g.r2 - g.r1) * ((s - b3) / (1.0 - b3));
  };
  auto density = [=](double s) { return total / width(s); };
  return std::make_shared<const JordanCurve>(
      "hull",
      std::vector<std::pair<std::string, double>>{{"zx", h.z.real()},
                                                  {"zy", h.z.imag()},
                                                  {"rz", h.rz},
                                                  {"wx", h.w.real()},
                                                  {"wy", h.w.imag()},
                                                  {"rw", h.rw}},
      point, tangent, total, 0.5 * (h.z + h.w), CurveSmoothness{true, true, 0.0}, density);
}

// ---------------------------------------------------------------------------
// Domains in C^n
// ---------------------------------------------------------------------------

struct Ball {
  CVec center;
  double radius;
  Ball(CVec c, double r) : center(std::move(c)), radius(r) {
    if (!(r > 0)) fail(ErrorCode::DegenerateInput, "ball radius must be positive");
    if (center.empty()) fail(ErrorCode::DegenerateInput, "ball dimension must be positive");
  }
};

struct Polydisc {
  CVec center;
  std::vector<double> radii;
  Polydisc(CVec c, std::vector<double> r) : center(std::move(c)), radii(std::move(r)) {
    if (center.size() != radii.size() || radii.empty())
      fail(ErrorCode::DegenerateInput, "polydisc center/radii size mismatch");
    for (double x : radii)
      if (!(x > 0)) fail(ErrorCode::DegenerateInput, "polydisc radii must be positive");
  }
};

/// Real half-space {x : Re<x, normal> < offset}.
struct HalfSpace {
  CVec normal;
  double offset;
};

struct ConvexBody {
  std::vector<HalfSpace> faces;
  explicit ConvexBody(std::vector<HalfSpace> f);
  std::size_t dim() const { return faces.front().normal.size(); }
  /// Strictly interior point found during validation.
  CVec interior_point;
};

using CnDomain = std::variant<Ball, Polydisc, ConvexBody>;

inline std::size_t dimension(const CnDomain& d) {
  return std::visit(detail::overloaded{[](const Ball& b) { return b.center.size(); },
                                       [](const Polydisc& p) { return p.center.size(); },
                                       [](const ConvexBody& c) { return c.dim(); }},
                    d);
}

namespace detail {

inline double face_slack(const HalfSpace& h, const CVec& x) {
  return (h.offset - hermitian(x, h.normal).real()) / norm2(h.normal);
}

}  // namespace detail

inline ConvexBody::ConvexBody(std::vector<HalfSpace> f) : faces(std::move(f)) {
  if (faces.empty()) fail(ErrorCode::InvalidDomain, "convex body needs at least one face");
  const std::size_t n = faces.front().normal.size();
  for (const auto& h : faces) {
    if (h.normal.size() != n || n == 0) fail(ErrorCode::InvalidDomain, "face dimension mismatch");
    if (!(norm2(h.normal) > 0)) fail(ErrorCode::InvalidDomain, "face normal must be nonzero");
  }
  // Boundedness: every sampled direction must be blocked by some face.
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 4000; ++k) {
    CVec u(n);
    if (k < static_cast<int>(4 * n)) {
      u.assign(n, 0.0);
      const std::size_t axis = static_cast<std::size_t>(k) / 4;
      const int sign = (k % 2 == 0) ? 1 : -1;
      u[axis] = (k % 4 < 2) ? cplx(sign, 0) : cplx(0, sign);
    } else {
      for (auto& x : u) x = cplx(gauss(rng), gauss(rng));
    }
    bool blocked = false;
    for (const auto& h : faces) blocked = blocked || hermitian(u, h.normal).real() > 0;
    if (!blocked) fail(ErrorCode::InvalidDomain, "convex body is unbounded");
  }
  // Nonempty interior: relaxation towards the most violated shrunken face.
  CVec x(n, 0.0);
  const double margin = 1e-9;
  bool found = false;
  for (int it = 0; it < 100000 && !found; ++it) {
    std::size_t worst = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < faces.size(); ++j) {
      const double s = detail::face_slack(faces[j], x);
      if (s < worst_slack) {
        worst_slack = s;
        worst = j;
      }
    }
    if (worst_slack > margin) {
      found = true;
      break;
    }
    const double nn = norm2(faces[worst].normal);
    x = x - ((2.0 * margin - worst_slack) / nn) * faces[worst].normal;
  }
  if (!found) fail(ErrorCode::InvalidDomain, "convex body has empty interior");
  interior_point = x;
}

inline bool contains(const CnDomain& d, const CVec& x) {
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) { return norm2(x - b.center) < b.radius; },
          [&](const Polydisc& p) {
            for (std::size_t j = 0; j < x.size(); ++j)
              if (!(std::abs(x[j] - p.center[j]) < p.radii[j])) return false;
            return true;
          },
          [&](const ConvexBody& c) {
            for (const auto& h : c.faces)
              if (!(detail::face_slack(h, x) > 0)) return false;
            return true;
          },
      },
      d);
}

struct CnBoundaryContact {
  CVec point;
  double distance;
  CVec inward;
};

inline CnBoundaryContact nearest_boundary_contact(const CnDomain& d, const CVec& w) {
  if (w.size() != dimension(d)) fail(ErrorCode::DomainViolation, "point dimension mismatch");
  if (!contains(d, w)) fail(ErrorCode::DomainViolation, "point is not in the domain");
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            CVec v = w - b.center;
            const double a = norm2(v);
            if (a == 0) {
              v.assign(v.size(), 0.0);
              v[0] = 1.0;
            } else {
              v = (1.0 / a) * v;
            }
            CnBoundaryContact c{b.center + b.radius * v, b.radius - a, {}};
            c.inward = cplx(-1.0) * v;
            return c;
          },
          [&](const Polydisc& p) {
            std::size_t j = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < w.size(); ++k) {
              const double s = p.radii[k] - std::abs(w[k] - p.center[k]);
              if (s < best) {
                best = s;
                j = k;
              }
            }
            const cplx v = w[j] - p.center[j];
            const cplx u = std::abs(v) == 0 ? cplx(1.0) : v / std::abs(v);
            CVec foot = w;
            foot[j] = p.center[j] + p.radii[j] * u;
            CVec inward(w.size(), 0.0);
            inward[j] = -u;
            return CnBoundaryContact{foot, best, inward};
          },
          [&](const ConvexBody& c) {
            std::size_t j = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < c.faces.size(); ++k) {
              const double s = detail::face_slack(c.faces[k], w);
              if (s < best) {
                best = s;
                j = k;
              }
            }
            const CVec unit = (1.0 / norm2(c.faces[j].normal)) * c.faces[j].normal;
            return CnBoundaryContact{w + cplx(best) * unit, best, cplx(-1.0) * unit};
          },
      },
      d);
}

namespace detail {

// Dykstra's alternating projections onto the faces; converges to the projection onto the body.
inline CVec project_onto_body(const ConvexBody& c, const CVec& x0) {
  const std::size_t m = c.faces.size();
  std::vector<CVec> corr(m, CVec(x0.size(), 0.0));
  CVec x = x0;
  for (int sweep = 0; sweep < 20000; ++sweep) {
    const CVec before = x;
    for (std::size_t j = 0; j < m; ++j) {
      const CVec y = x + corr[j];
      const auto& h = c.faces[j];
      const double nn = norm2(h.normal);
      const double excess = hermitian(y, h.normal).real() - h.offset;
      CVec p = y;
      if (excess > 0) p = y - (excess / (nn * nn)) * h.normal;
      corr[j] = y - p;
      x = p;
    }
    if (norm2(x - before) < 1e-15 * (1.0 + norm2(x))) break;
  }
  return x;
}

}  // namespace detail

inline double boundary_distance(const CnDomain& d, const CVec& z, bool signed_distance = false) {
  if (z.size() != dimension(d)) fail(ErrorCode::DomainViolation, "point dimension mismatch");
  if (contains(d, z)) return nearest_boundary_contact(d, z).distance;
  if (!signed_distance) return 0.0;
  const double outside = std::visit(
      detail::overloaded{
          [&](const Ball& b) { return norm2(z - b.center) - b.radius; },
          [&](const Polydisc& p) {
            double s = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) {
              const double e = std::max(0.0, std::abs(z[j] - p.center[j]) - p.radii[j]);
              s += e * e;
            }
            return std::sqrt(s);
          },
          [&](const ConvexBody& c) { return norm2(z - detail::project_onto_body(c, z)); },
      },
      d);
  return -outside;
}

/// Real supporting hyperplane {x : Re<x - point, normal> = 0}; the domain lies where it is < 0.
struct Hyperplane {
  CVec point;
  CVec normal;
};

inline Hyperplane supporting_hyperplane(const CnDomain& d, const CVec& p, double tol = 1e-9) {
  if (p.size() != dimension(d)) fail(ErrorCode::DomainViolation, "point dimension mismatch");
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            const CVec v = p - b.center;
            const double a = norm2(v);
            if (std::abs(a - b.radius) > tol * std::max(1.0, b.radius))
              fail(ErrorCode::DomainViolation, "point is not on the ball boundary");
            return Hyperplane{p, (1.0 / a) * v};
          },
          [&](const Polydisc& pd) {
            CVec n(p.size(), 0.0);
            int active = 0;
            for (std::size_t j = 0; j < p.size(); ++j) {
              const double m = std::abs(p[j] - pd.center[j]);
              if (m > pd.radii[j] * (1.0 + tol)) fail(ErrorCode::DomainViolation, "point outside the polydisc");
              if (std::abs(m - pd.radii[j]) <= tol * std::max(1.0, pd.radii[j])) {
                n[j] = (p[j] - pd.center[j]) / m;
                ++active;
              }
            }
            if (active == 0) fail(ErrorCode::DomainViolation, "point is not on the polydisc boundary");
            return Hyperplane{p, (1.0 / norm2(n)) * n};
          },
          [&](const ConvexBody& c) {
            CVec n(p.size(), 0.0);
            int active = 0;
            for (const auto& h : c.faces) {
              const double s = detail::face_slack(h, p);
              if (s < -tol) fail(ErrorCode::DomainViolation, "point outside the convex body");
              if (std::abs(s) <= tol) {
                n = n + cplx(1.0 / norm2(h.normal)) * h.normal;
                ++active;
              }
            }
            if (active == 0) fail(ErrorCode::DomainViolation, "point is not on the body boundary");
            return Hyperplane{p, (1.0 / norm2(n)) * n};
          },
      },
      d);
}

/// Image of a domain under the complex-affine projection onto the line through w and p(w),
/// along the complex supporting hyperplane at p(w). `coordinate(x)` is the planar coordinate.
struct ProjectedDomain {
  PlanarDomain image;
  CVec direction;  // unit vector spanning the complex line
  CVec normal;     // complex normal of the supporting hyperplane
  cplx scale;      // <direction, normal>

  cplx coordinate(const CVec& x) const { return hermitian(x, normal) / scale; }
};

inline ProjectedDomain project_domain(const CnDomain& d, const CVec& w, const CVec& foot) {
  if (!contains(d, w)) fail(ErrorCode::DomainViolation, "projection base point is not in the domain");
  CVec u = foot - w;
  const double len = norm2(u);
  if (len == 0) fail(ErrorCode::DegenerateInput, "foot point coincides with w");
  u = (1.0 / len) * u;
  // Canonical phase: the largest component of the direction is real positive.
  std::size_t big = 0;
  for (std::size_t j = 1; j < u.size(); ++j)
    if (std::abs(u[j]) > std::abs(u[big])) big = j;
  u = (std::conj(u[big]) / std::abs(u[big])) * u;
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            const CVec nu = supporting_hyperplane(d, foot).normal;
            const cplx k = hermitian(u, nu);
            return ProjectedDomain{make_disc(hermitian(b.center, nu) / k, b.radius / std::abs(k)), u, nu, k};
          },
          [&](const Polydisc& p) -> ProjectedDomain {
            const CVec nu = supporting_hyperplane(d, foot).normal;
            std::size_t j = 0;
            int active = 0;
            for (std::size_t k = 0; k < nu.size(); ++k)
              if (std::abs(nu[k]) > 0) {
                j = k;
                ++active;
              }
            if (active != 1) fail(ErrorCode::Unsupported, "polydisc projection at a corner point");
            const cplx k = hermitian(u, nu);
            // Coordinate is x_j / u_j; image is the j-th coordinate disc rescaled.
            return ProjectedDomain{make_disc(p.center[j] * std::conj(nu[j]) / k,
                                             p.radii[j] / std::abs(k)),
                                   u, nu, k};
          },
          [&](const ConvexBody&) -> ProjectedDomain {
            fail(ErrorCode::Unsupported, "projection of a general convex body is not a catalog shape");
          },
      },
      d);
}

/// Planar domains project to themselves.
inline PlanarDomain project_domain(const PlanarDomain& d) { return d; }

}  // namespace invmetric
