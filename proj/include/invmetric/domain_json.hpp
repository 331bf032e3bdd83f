#pragma once

#include <cstdio>
#include <regex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"

namespace invmetric {

using json = nlohmann::json;
using AnyDomain = std::variant<PlanarDomain, CnDomain>;

/// Shortest round-trip formatting with 17 significant digits.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(cplx z) {
  const std::string im = format_real(z.imag());
  return format_real(z.real()) + (std::signbit(z.imag()) ? "" : "+") + im + "i";
}

/// Complex literal "a+bi" (sign between the parts is mandatory).
inline cplx parse_complex(const std::string& s) {
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) fail(ErrorCode::ParseError, "complex literal must look like a+bi: '" + s + "'");
  return {std::stod(m[1].str()), std::stod(m[2].str())};
}

inline cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected a complex number, got " + j.dump());
}

/// A point of C^n: JSON array of complex values, or a single complex literal for n = 1.
inline CVec parse_point(const json& j) {
  if (j.is_array()) {
    CVec v;
    for (const auto& x : j) v.push_back(parse_complex(x));
    if (v.empty()) fail(ErrorCode::ParseError, "empty point");
    return v;
  }
  return {parse_complex(j)};
}

inline CVec parse_point(const std::string& s) {
  const auto t = s.find_first_not_of(" \t");
  if (t != std::string::npos && s[t] == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    return parse_point(j);
  }
  return {parse_complex(s)};
}

namespace detail {

class FieldReader {
 public:
  explicit FieldReader(const json& j) : j_(j) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "domain description must be a JSON object");
  }

  bool has(const char* key) {
    used_.insert(key);
    return j_.contains(key);
  }
  const json& at(const char* key) {
    used_.insert(key);
    if (!j_.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return j_.at(key);
  }
  double number(const char* key) {
    const json& v = at(key);
    if (!v.is_number()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }
  double number(const char* key, double fallback) { return has(key) ? number(key) : fallback; }
  std::string text(const char* key) {
    const json& v = at(key);
    if (!v.is_string()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }
  cplx complex(const char* key, cplx fallback) { return has(key) ? parse_complex(at(key)) : fallback; }
  cplx complex(const char* key) { return parse_complex(at(key)); }
  std::vector<double> numbers(const char* key) {
    const json& v = at(key);
    if (!v.is_array()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must hold numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) fail(ErrorCode::ParseError, "unknown field '" + k + "'");
  }

 private:
  const json& j_;
  std::set<std::string> used_;
};

inline std::shared_ptr<const JordanCurve> parse_curve(FieldReader& f) {
  const std::string curve = f.text("curve");
  if (curve == "ellipse") return curves::ellipse(f.number("a"), f.number("b"));
  if (curve == "circle") return curves::circle(f.complex("center", 0.0), f.number("radius"));
  if (curve == "lens") return curves::lens(f.number("rho"));
  if (curve == "fourier") {
    std::vector<curves::FourierMode> modes;
    const json& ms = f.at("modes");
    if (!ms.is_array()) fail(ErrorCode::ParseError, "fourier modes must be an array");
    for (const auto& m : ms) {
      FieldReader g(m);
      curves::FourierMode mode{static_cast<int>(g.number("k")), g.number("amplitude"), g.number("phase", 0.0)};
      g.finish();
      modes.push_back(mode);
    }
    return curves::fourier(f.number("r0", 1.0), std::move(modes), f.complex("center", 0.0));
  }
  fail(ErrorCode::ParseError, "unknown curve '" + curve + "'");
}

inline CVec center_or_zero(FieldReader& f, std::size_t n) {
  if (!f.has("center")) return CVec(n, 0.0);
  CVec c = parse_point(f.at("center"));
  if (c.size() != n) fail(ErrorCode::ParseError, "center dimension mismatch");
  return c;
}

}  // namespace detail

/// Build a domain from its JSON description; unknown fields are rejected.
inline AnyDomain parse_domain(const json& j) {
  detail::FieldReader f(j);
  const std::string kind = f.text("kind");
  AnyDomain out = PlanarDomain(UnitDisc{});
  if (kind == "disc") {
    if (f.has("center") || f.has("radius")) out = make_disc(f.complex("center", 0.0), f.number("radius", 1.0));
    else out = PlanarDomain(UnitDisc{});
  } else if (kind == "halfplane") {
    const cplx n = f.complex("normal", I);
    if (!(std::abs(n) > 0)) fail(ErrorCode::InvalidDomain, "half-plane normal must be nonzero");
    out = PlanarDomain(HalfPlane(n / std::abs(n)));
  } else if (kind == "sector") {
    out = PlanarDomain(Sector(f.number("theta")));
  } else if (kind == "slit") {
    out = PlanarDomain(SlitPlane{});
  } else if (kind == "annulus") {
    out = PlanarDomain(Annulus(f.number("r")));
  } else if (kind == "hull") {
    out = two_disc_hull(f.complex("z"), f.number("rz"), f.complex("w"), f.number("rw"));
  } else if (kind == "jordan") {
    out = PlanarDomain(JordanDomain(detail::parse_curve(f)));
  } else if (kind == "ball") {
    const auto n = static_cast<std::size_t>(f.number("dim", 2.0));
    if (n < 1) fail(ErrorCode::ParseError, "dim must be positive");
    out = CnDomain(Ball(detail::center_or_zero(f, n), f.number("radius", 1.0)));
  } else if (kind == "polydisc") {
    std::vector<double> radii;
    if (f.has("radii")) {
      radii = f.numbers("radii");
    } else {
      const auto n = static_cast<std::size_t>(f.number("dim", 2.0));
      radii.assign(n, f.number("radius", 1.0));
    }
    out = CnDomain(Polydisc(detail::center_or_zero(f, radii.size()), radii));
  } else if (kind == "convex") {
    std::vector<HalfSpace> faces;
    const json& fs = f.at("faces");
    if (!fs.is_array()) fail(ErrorCode::ParseError, "faces must be an array");
    for (const auto& face : fs) {
      detail::FieldReader g(face);
      HalfSpace h{parse_point(g.at("normal")), g.number("offset")};
      g.finish();
      faces.push_back(std::move(h));
    }
    out = CnDomain(ConvexBody(std::move(faces)));
  } else {
    fail(ErrorCode::ParseError, "unknown domain kind '" + kind + "'");
  }
  f.finish();
  return out;
}

inline AnyDomain parse_domain(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("domain JSON: ") + e.what());
  }
  return parse_domain(j);
}

inline json point_to_json(const CVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(format_complex(x));
  return a;
}

inline json to_json(const PlanarDomain& d) {
  return std::visit(
      detail::overloaded{
          [](const UnitDisc&) { return json{{"kind", "disc"}}; },
          [](const Disc& c) {
            return json{{"kind", "disc"}, {"center", format_complex(c.center)}, {"radius", c.radius}};
          },
          [](const HalfPlane& h) { return json{{"kind", "halfplane"}, {"normal", format_complex(h.normal)}}; },
          [](const Sector& s) { return json{{"kind", "sector"}, {"theta", s.half_angle}}; },
          [](const SlitPlane&) { return json{{"kind", "slit"}}; },
          [](const Annulus& a) { return json{{"kind", "annulus"}, {"r", a.r}}; },
          [](const TwoDiscHull& h) {
            return json{{"kind", "hull"},
                        {"z", format_complex(h.z)},
                        {"rz", h.rz},
                        {"w", format_complex(h.w)},
                        {"rw", h.rw}};
          },
          [](const JordanDomain& j) {
            json out{{"kind", "jordan"}, {"curve", j.curve->name()}};
            const auto& ps = j.curve->params();
            if (j.curve->name() == "fourier") {
              json modes = json::array();
              for (std::size_t i = 1; i + 2 < ps.size(); i += 3)
                modes.push_back({{"k", ps[i].second}, {"amplitude", ps[i + 1].second}, {"phase", ps[i + 2].second}});
              out["r0"] = ps[0].second;
              out["modes"] = modes;
            } else if (j.curve->name() == "circle") {
              out["center"] = format_complex(cplx(ps[0].second, ps[1].second));
              out["radius"] = ps[2].second;
            } else {
              for (const auto& [k, v] : ps) out[k] = v;
            }
            return out;
          },
      },
      d);
}

inline json to_json(const CnDomain& d) {
  return std::visit(
      detail::overloaded{
          [](const Ball& b) {
            return json{{"kind", "ball"}, {"dim", b.center.size()}, {"center", point_to_json(b.center)},
                        {"radius", b.radius}};
          },
          [](const Polydisc& p) {
            return json{{"kind", "polydisc"}, {"center", point_to_json(p.center)}, {"radii", p.radii}};
          },
          [](const ConvexBody& c) {
            json faces = json::array();
            for (const auto& f : c.faces) faces.push_back({{"normal", point_to_json(f.normal)}, {"offset", f.offset}});
            return json{{"kind", "convex"}, {"faces", faces}};
          },
      },
      d);
}

inline json to_json(const AnyDomain& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

/// Short label such as "disc", "sector(0.05)", "jordan:ellipse(2,1)", "ball(2)".
inline std::string describe(const AnyDomain& d) {
  const json j = to_json(d);
  std::string s = j.at("kind").get<std::string>();
  if (s == "jordan") {
    s += ":" + j.at("curve").get<std::string>();
    if (j.at("curve") == "ellipse") s += "(" + format_real(j.at("a").get<double>()) + "," + format_real(j.at("b").get<double>()) + ")";
    if (j.at("curve") == "lens") s += "(" + format_real(j.at("rho").get<double>()) + ")";
  } else if (s == "sector") {
    s += "(" + format_real(j.at("theta").get<double>()) + ")";
  } else if (s == "annulus") {
    s += "(" + format_real(j.at("r").get<double>()) + ")";
  } else if (s == "ball") {
    s += "(" + std::to_string(j["dim"].get<std::size_t>()) + ")";
  } else if (s == "polydisc") {
    s += "(" + std::to_string(j["radii"].size()) + ")";
  }
  return s;
}

}  // namespace invmetric
