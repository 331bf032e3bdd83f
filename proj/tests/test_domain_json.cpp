#include <gtest/gtest.h>

#include "invmetric/domain_json.hpp"
#include "invmetric/report.hpp"

using namespace invmetric;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::DegenerateInput;
}

const PlanarDomain& planar(const AnyDomain& d) { return std::get<PlanarDomain>(d); }

}  // namespace

TEST(ComplexLiteral, Parses) {
  EXPECT_EQ(parse_complex(std::string("0.5+0i")), cplx(0.5, 0));
  EXPECT_EQ(parse_complex(std::string("-1e-3-2.5i")), cplx(-1e-3, -2.5));
  EXPECT_EQ(parse_complex(std::string(" .5+.25i ")), cplx(0.5, 0.25));
  EXPECT_EQ(parse_complex(json(2.0)), cplx(2.0, 0));
}

TEST(ComplexLiteral, RejectsMalformed) {
  for (const char* bad : {"0.5", "i", "1+i", "1+2j", "1 + 2i", "abc", ""})
    EXPECT_EQ(code_of([&] { parse_complex(std::string(bad)); }), ErrorCode::ParseError) << bad;
}

TEST(ComplexLiteral, FormatRoundTrips) {
  for (cplx z : {cplx(0.1, -0.3), cplx(1e-300, 7), cplx(-2, 0)}) EXPECT_EQ(parse_complex(format_complex(z)), z);
}

TEST(Points, VectorAndScalarForms) {
  EXPECT_EQ(parse_point(std::string("[\"1+0i\", \"0+2i\"]")), (CVec{cplx(1, 0), cplx(0, 2)}));
  EXPECT_EQ(parse_point(std::string("0.5-0.5i")), (CVec{cplx(0.5, -0.5)}));
  EXPECT_EQ(code_of([] { parse_point(std::string("[")); }), ErrorCode::ParseError);
}

TEST(ParseDomain, PlanarKinds) {
  EXPECT_TRUE(std::holds_alternative<UnitDisc>(planar(parse_domain(std::string(R"({"kind":"disc"})")))));
  const auto d = planar(parse_domain(std::string(R"({"kind":"disc","center":"1+1i","radius":2})")));
  EXPECT_EQ(std::get<Disc>(d).center, cplx(1, 1));
  EXPECT_EQ(std::get<Annulus>(planar(parse_domain(std::string(R"({"kind":"annulus","r":2})")))).r, 2.0);
  EXPECT_EQ(std::get<Sector>(planar(parse_domain(std::string(R"({"kind":"sector","theta":0.5})")))).half_angle, 0.5);
  EXPECT_TRUE(std::holds_alternative<SlitPlane>(planar(parse_domain(std::string(R"({"kind":"slit"})")))));
  const auto e = planar(parse_domain(std::string(R"({"kind":"jordan","curve":"ellipse","a":2,"b":1})")));
  EXPECT_NEAR(boundary_distance(e, 0.0), 1.0, 1e-8);
  const auto f = planar(parse_domain(
      std::string(R"({"kind":"jordan","curve":"fourier","r0":1,"modes":[{"k":3,"amplitude":0.1}]})")));
  EXPECT_TRUE(contains(f, 0.0));
}

TEST(ParseDomain, CnKinds) {
  const auto b = std::get<CnDomain>(parse_domain(std::string(R"({"kind":"ball","dim":3})")));
  EXPECT_EQ(dimension(b), 3u);
  const auto p = std::get<CnDomain>(parse_domain(std::string(R"({"kind":"polydisc","radii":[1,2]})")));
  EXPECT_EQ(std::get<Polydisc>(p).radii[1], 2.0);
  const auto c = std::get<CnDomain>(parse_domain(std::string(
      R"({"kind":"convex","faces":[{"normal":["1+0i"],"offset":1},{"normal":["-1+0i"],"offset":1},)"
      R"({"normal":["0+1i"],"offset":1},{"normal":["0-1i"],"offset":1}]})")));
  EXPECT_EQ(std::get<ConvexBody>(c).faces.size(), 4u);
}

TEST(ParseDomain, RejectsUnknownFieldsAndKinds) {
  EXPECT_EQ(code_of([] { parse_domain(std::string(R"({"kind":"disc","radius":1,"colour":"red"})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_domain(std::string(R"({"kind":"torus"})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_domain(std::string(R"({"kind":"annulus"})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_domain(std::string("{not json")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              parse_domain(std::string(R"({"kind":"jordan","curve":"fourier","modes":[{"k":1,"amplitude":0.1,"x":1}]})"));
            }),
            ErrorCode::ParseError);
}

TEST(ParseDomain, RejectsInvalidParameters) {
  EXPECT_EQ(code_of([] { parse_domain(std::string(R"({"kind":"annulus","r":0.5})")); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([] { parse_domain(std::string(R"({"kind":"halfplane","normal":"0+0i"})")); }),
            ErrorCode::InvalidDomain);
}

TEST(ParseDomain, SerializationRoundTrips) {
  for (const char* text : {R"({"kind":"disc","center":"1+1i","radius":2})", R"({"kind":"annulus","r":3})",
                           R"({"kind":"jordan","curve":"lens","rho":0.5})", R"({"kind":"ball","dim":2})"}) {
    const AnyDomain d = parse_domain(std::string(text));
    const json j = to_json(d);
    EXPECT_EQ(to_json(parse_domain(j)), j) << text;
  }
}

TEST(Report, JsonIsDeterministicAndExcludesRuntime) {
  BoundReport r;
  r.suite = "x";
  r.check(0.1, 0.0);
  r.constants.emplace_back("c", std::numeric_limits<double>::infinity());
  r.runtime = 1.5;
  const json j = to_json(r);
  EXPECT_FALSE(j.contains("runtime"));
  EXPECT_EQ(j["constants"]["c"], "inf");
  EXPECT_EQ(to_json(r, true)["runtime"], 1.5);
  EXPECT_EQ(dump(j), dump(to_json(r)));
}

TEST(Report, CertifiedValueScales) {
  const CertifiedValue v = CertifiedValue::exact(std::atanh(0.5), Method::closed_form);
  EXPECT_NEAR(to_json(v)["lo"].get<double>(), 0.549306144334055, 1e-15);
  EXPECT_NEAR(to_json(v, Scale::mobius)["hi"].get<double>(), 0.5, 1e-15);
  EXPECT_EQ(to_json(v)["method"], "closed_form");
}

TEST(Report, Csv) {
  Table t{{"a", "b"}, {}};
  t.add({1.0, 0.5});
  EXPECT_EQ(to_csv(t), "a,b\n1,0.5\n");
}
