// Tests for Lagrangian cycles: the document format, canonical ordering,
// additive chi evaluation, and the chi = gdeg identity checker.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "gaussrr/cycles.hpp"
#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"

using namespace gaussrr;

namespace {

Eigen::VectorXcd point2(double a, double b) {
  Eigen::VectorXcd p(2);
  p << Complex(a), Complex(b);
  return p;
}

}  // namespace

TEST_CASE("parse and serialize a mixed cycle") {
  const std::string doc = R"({"n": 2, "components": [
    {"hypersurface": "1 + x + y", "mult": 2},
    {"point": [1, 1], "mult": 3},
    {"zero_section": true, "mult": -1}
  ]})";
  const LagrangianCycle cycle = parse_cycle(doc);
  CHECK(cycle.dimension() == 2);
  REQUIRE(cycle.components().size() == 3);
  // Canonical order: zero section, then points, then hypersurfaces.
  CHECK(std::holds_alternative<ZeroSectionComponent>(cycle.components()[0].geometry));
  CHECK(cycle.components()[0].multiplicity == -1);
  CHECK(std::holds_alternative<PointComponent>(cycle.components()[1].geometry));
  CHECK(std::holds_alternative<HypersurfaceComponent>(cycle.components()[2].geometry));

  const std::string bytes = serialize_cycle(cycle);
  // Round trip is the identity on canonical bytes.
  CHECK(serialize_cycle(parse_cycle(bytes)) == bytes);
  // Points are always serialized as [re, im] pairs.
  CHECK(bytes.find("[[1.0,0.0],[1.0,0.0]]") != std::string::npos);
}

TEST_CASE("serialization canonicalizes component order and polynomials") {
  const std::string a = R"({"n": 2, "components": [
    {"hypersurface": "y + x + 1", "mult": 1},
    {"point": [2, 3], "mult": 5}
  ]})";
  const std::string b = R"({"n": 2, "components": [
    {"point": [[2, 0], [3, 0]], "mult": 5},
    {"hypersurface": "1 + y + x", "mult": 1}
  ]})";
  CHECK(serialize_cycle(parse_cycle(a)) == serialize_cycle(parse_cycle(b)));
}

TEST_CASE("points sort lexicographically by (re, im) pairs") {
  const std::string doc = R"({"n": 1, "components": [
    {"point": [[0, 1]], "mult": 1},
    {"point": [[-2, 0]], "mult": 1},
    {"point": [[0, -1]], "mult": 1}
  ]})";
  const LagrangianCycle cycle = parse_cycle(doc);
  REQUIRE(cycle.components().size() == 3);
  const auto coord = [&](std::size_t i) {
    return std::get<PointComponent>(cycle.components()[i].geometry).coordinates(0);
  };
  CHECK(coord(0) == Complex(-2.0, 0.0));
  CHECK(coord(1) == Complex(0.0, -1.0));
  CHECK(coord(2) == Complex(0.0, 1.0));
}

TEST_CASE("document validation failures") {
  // Unknown field.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [], "extra": 1})"), CycleParseError);
  // Missing mult.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [{"zero_section": true}]})"),
                  CycleParseError);
  // Zero mult.
  CHECK_THROWS_AS(
      parse_cycle(R"({"n": 2, "components": [{"zero_section": true, "mult": 0}]})"),
      CycleParseError);
  // Two geometries in one component.
  CHECK_THROWS_AS(
      parse_cycle(
          R"({"n": 2, "components": [{"zero_section": true, "point": [1, 1], "mult": 1}]})"),
      CycleParseError);
  // Point with a zero coordinate is not a torus point.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [{"point": [0, 1], "mult": 1}]})"),
                  CycleParseError);
  // Wrong point dimension.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [{"point": [1], "mult": 1}]})"),
                  CycleParseError);
  // Duplicate descriptors.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [
    {"point": [1, 1], "mult": 1}, {"point": [[1, 0], [1, 0]], "mult": 2}]})"),
                  CycleParseError);
  // Polynomial syntax error inside a hypersurface component.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [
    {"hypersurface": "1 + (x", "mult": 1}]})"),
                  CycleParseError);
  // Monomial hypersurface (empty variety) is rejected.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [
    {"hypersurface": "3*x*y", "mult": 1}]})"),
                  CycleParseError);
  // Complete intersection with too many equations.
  CHECK_THROWS_AS(parse_cycle(R"({"n": 2, "components": [
    {"complete_intersection": ["x - 1", "y - 1", "x + y - 2"], "mult": 1}]})"),
                  CycleParseError);
  // Not JSON at all.
  CHECK_THROWS_AS(parse_cycle("not json"), CycleParseError);
}

TEST_CASE("cc of the constant sheaf is a single unit component") {
  const LagrangianCycle cc = cc_of_constant_on_smooth(
      2, HypersurfaceComponent{parse("1 + x + y", 2)});
  REQUIRE(cc.components().size() == 1);
  CHECK(cc.components()[0].multiplicity == 1);
  CHECK(std::holds_alternative<HypersurfaceComponent>(cc.components()[0].geometry));
}

TEST_CASE("chi of exact cycles needs no sampling") {
  const GdegConfig cfg;
  {
    const LagrangianCycle zs(2, {CycleComponent{ZeroSectionComponent{}, 4}});
    const CycleChiReport report = chi_via_cc(zs, cfg);
    CHECK(report.chi == 0);  // gdeg(zero section) = 0
    CHECK(report.all_agreed);
    REQUIRE(report.components.size() == 1);
    CHECK(report.components[0].exact);
  }
  {
    const LagrangianCycle pts(2, {CycleComponent{PointComponent{point2(1, 1)}, 2},
                                  CycleComponent{PointComponent{point2(2, 3)}, 3}});
    const CycleChiReport report = chi_via_cc(pts, cfg);
    CHECK(report.chi == 5);  // each point conormal has gdeg 1
    CHECK(report.all_agreed);
  }
}

TEST_CASE("chi is additive over components") {
  const GdegConfig cfg;
  const LaurentPolynomial f = parse("1 + x + y", 2);
  const LagrangianCycle mixed(
      2, {CycleComponent{HypersurfaceComponent{f}, 2},
          CycleComponent{PointComponent{point2(1, 1)}, -1}});
  const CycleChiReport report = chi_via_cc(mixed, cfg);
  // 2 * gdeg(conormal of line) - 1 * gdeg(point conormal) = 2*1 - 1.
  CHECK(report.chi == 1);
  CHECK(report.all_agreed);
  REQUIRE(report.components.size() == 2);
  CHECK(report.components[0].exact);        // point sorts first
  CHECK_FALSE(report.components[1].exact);  // hypersurface is sampled
  CHECK(report.components[1].gdeg == 1);
}

TEST_CASE("complete intersection point component evaluates exactly like a point") {
  const GdegConfig cfg;
  const LagrangianCycle ci(
      2, {CycleComponent{
             CompleteIntersectionComponent{{parse("x - 2", 2), parse("y - 3", 2)}}, 1}});
  const CycleChiReport report = chi_via_cc(ci, cfg);
  CHECK(report.chi == 1);
  CHECK(report.all_agreed);
}

TEST_CASE("constructor rejects invalid component data") {
  CHECK_THROWS_AS(LagrangianCycle(2, {CycleComponent{ZeroSectionComponent{}, 0}}),
                  std::invalid_argument);
  Eigen::VectorXcd bad(2);
  bad << Complex(1.0), Complex(0.0);
  CHECK_THROWS_AS(LagrangianCycle(2, {CycleComponent{PointComponent{bad}, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LagrangianCycle(2, {CycleComponent{HypersurfaceComponent{parse("x", 2)}, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LagrangianCycle(0, {}), std::invalid_argument);
}

TEST_CASE("verify_chi_identity on nondegenerate curves") {
  const GdegConfig cfg;
  const IdentityCheckReport line = verify_chi_identity(parse("1 + x + y", 2), cfg);
  CHECK(line.verdict == IdentityVerdict::Equal);
  CHECK(line.gdeg == 1);
  CHECK(line.chi == -1);
  CHECK(line.signed_chi == 1);
  CHECK(line.nondegeneracy.verdict == NondegeneracyVerdict::Nondegenerate);

  const IdentityCheckReport bilinear =
      verify_chi_identity(parse("1 + x + y + 3*x*y", 2), cfg);
  CHECK(bilinear.verdict == IdentityVerdict::Equal);
  CHECK(bilinear.gdeg == 2);
  CHECK(bilinear.signed_chi == 2);
}

TEST_CASE("verify_chi_identity at n = 1 and n = 3") {
  const GdegConfig cfg;
  const IdentityCheckReport points = verify_chi_identity(parse("z^2 - 3*z + 2", 1), cfg);
  CHECK(points.verdict == IdentityVerdict::Equal);
  CHECK(points.chi == 2);
  CHECK(points.signed_chi == 2);  // (-1)^0 * chi

  const IdentityCheckReport plane = verify_chi_identity(parse("1 + x + y + z", 3), cfg);
  CHECK(plane.verdict == IdentityVerdict::Equal);
  CHECK(plane.gdeg == 1);
  CHECK(plane.chi == 1);
  CHECK(plane.signed_chi == 1);  // (-1)^2 * chi
}

TEST_CASE("verify_chi_identity reports degenerate input as not applicable") {
  const GdegConfig cfg;
  const IdentityCheckReport report = verify_chi_identity(parse("1 + x + y + x*y", 2), cfg);
  CHECK(report.verdict == IdentityVerdict::NotApplicable);
  CHECK(report.nondegeneracy.verdict == NondegeneracyVerdict::Degenerate);
  CHECK_FALSE(report.note.empty());
}

TEST_CASE("verify_chi_identity on single-term input is vacuously equal") {
  const GdegConfig cfg;
  const IdentityCheckReport report = verify_chi_identity(parse("5*x^2*y", 2), cfg);
  CHECK(report.verdict == IdentityVerdict::Equal);
  CHECK(report.gdeg == 0);
  CHECK(report.chi == 0);
  CHECK_FALSE(report.note.empty());
}
