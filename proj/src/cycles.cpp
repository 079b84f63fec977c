#include "gaussrr/cycles.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gaussrr/polytope.hpp"

namespace gaussrr {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

//---------------------------------------------------------------------------
// Canonical component order: descriptor kind (variant order), then content.
//---------------------------------------------------------------------------

bool complex_pair_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<std::string> ci_formats(const CompleteIntersectionComponent& ci) {
  std::vector<std::string> out;
  out.reserve(ci.fs.size());
  for (const LaurentPolynomial& f : ci.fs) out.push_back(format(f));
  return out;
}

// Strict weak order on geometries; contents compared only within a kind.
bool geometry_less(const ComponentGeometry& a, const ComponentGeometry& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  switch (a.index()) {
    case 0:
      return false;  // zero sections are identical
    case 1: {
      const auto& pa = std::get<PointComponent>(a).coordinates;
      const auto& pb = std::get<PointComponent>(b).coordinates;
      for (int i = 0; i < pa.size(); ++i) {
        if (pa(i) != pb(i)) return complex_pair_less(pa(i), pb(i));
      }
      return false;
    }
    case 2:
      return format(std::get<HypersurfaceComponent>(a).f) <
             format(std::get<HypersurfaceComponent>(b).f);
    default:
      return ci_formats(std::get<CompleteIntersectionComponent>(a)) <
             ci_formats(std::get<CompleteIntersectionComponent>(b));
  }
}

bool geometry_equal(const ComponentGeometry& a, const ComponentGeometry& b) {
  return !geometry_less(a, b) && !geometry_less(b, a);
}

void validate_member_polynomial(const LaurentPolynomial& f, int dimension) {
  if (f.dimension() != dimension) {
    throw std::invalid_argument("component polynomial dimension differs from the cycle's");
  }
  if (f.is_zero()) throw std::invalid_argument("zero polynomial is not a hypersurface");
  // A single term never vanishes on the torus, so it cuts out the empty set
  // rather than a variety; rejecting it here keeps cycle evaluation total.
  if (f.term_count() == 1) {
    throw std::invalid_argument("monomial defines an empty set, not a component");
  }
}

//---------------------------------------------------------------------------
// Document parsing helpers.
//---------------------------------------------------------------------------

Complex parse_coordinate(const json& value) {
  if (value.is_number()) return Complex(value.get<double>(), 0.0);
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return Complex(value[0].get<double>(), value[1].get<double>());
  }
  throw CycleParseError("point coordinate must be a number or a [re, im] pair");
}

ComponentGeometry parse_geometry(const json& component, int dimension) {
  int geometry_keys = 0;
  for (const auto& [key, value] : component.items()) {
    if (key == "mult") continue;
    if (key == "zero_section" || key == "point" || key == "hypersurface" ||
        key == "complete_intersection") {
      ++geometry_keys;
    } else {
      throw CycleParseError("unknown component field '" + key + "'");
    }
  }
  if (geometry_keys != 1) {
    throw CycleParseError("component must carry exactly one geometry field");
  }

  if (component.contains("zero_section")) {
    if (!component["zero_section"].is_boolean() || !component["zero_section"].get<bool>()) {
      throw CycleParseError("zero_section must be literally true");
    }
    return ZeroSectionComponent{};
  }

  if (component.contains("point")) {
    const json& coords = component["point"];
    if (!coords.is_array() || static_cast<int>(coords.size()) != dimension) {
      throw CycleParseError("point must list exactly n coordinates");
    }
    Eigen::VectorXcd point(dimension);
    for (int i = 0; i < dimension; ++i) point(i) = parse_coordinate(coords[static_cast<std::size_t>(i)]);
    return PointComponent{std::move(point)};
  }

  if (component.contains("hypersurface")) {
    const json& text = component["hypersurface"];
    if (!text.is_string()) throw CycleParseError("hypersurface must be a polynomial string");
    try {
      return HypersurfaceComponent{parse(text.get<std::string>(), dimension)};
    } catch (const ParseError& error) {
      throw CycleParseError(std::string("hypersurface: ") + error.what());
    }
  }

  const json& list = component["complete_intersection"];
  if (!list.is_array() || list.empty()) {
    throw CycleParseError("complete_intersection must be a nonempty array of polynomial strings");
  }
  CompleteIntersectionComponent ci;
  for (const json& text : list) {
    if (!text.is_string()) {
      throw CycleParseError("complete_intersection entries must be polynomial strings");
    }
    try {
      ci.fs.push_back(parse(text.get<std::string>(), dimension));
    } catch (const ParseError& error) {
      throw CycleParseError(std::string("complete_intersection: ") + error.what());
    }
  }
  return ci;
}

ordered_json geometry_to_json(const ComponentGeometry& geometry) {
  ordered_json out = ordered_json::object();
  if (std::holds_alternative<ZeroSectionComponent>(geometry)) {
    out["zero_section"] = true;
  } else if (const auto* point = std::get_if<PointComponent>(&geometry)) {
    ordered_json coords = ordered_json::array();
    for (int i = 0; i < point->coordinates.size(); ++i) {
      coords.push_back({point->coordinates(i).real(), point->coordinates(i).imag()});
    }
    out["point"] = std::move(coords);
  } else if (const auto* hyper = std::get_if<HypersurfaceComponent>(&geometry)) {
    out["hypersurface"] = format(hyper->f);
  } else {
    out["complete_intersection"] = ci_formats(std::get<CompleteIntersectionComponent>(geometry));
  }
  return out;
}

ComponentChiRecord component_degree(const ComponentGeometry& geometry, std::int64_t multiplicity,
                                    const GdegConfig& cfg) {
  ComponentChiRecord record;
  record.multiplicity = multiplicity;
  if (std::holds_alternative<ZeroSectionComponent>(geometry)) {
    record.gdeg = gaussian_degree_special(SpecialDescriptor::ZeroSection);
    record.agreed = true;
    record.exact = true;
  } else if (std::holds_alternative<PointComponent>(geometry)) {
    record.gdeg = gaussian_degree_special(SpecialDescriptor::Point);
    record.agreed = true;
    record.exact = true;
  } else if (const auto* hyper = std::get_if<HypersurfaceComponent>(&geometry)) {
    record.report = gaussian_degree_hypersurface(hyper->f, cfg);
    record.gdeg = record.report.gdeg;
    record.agreed = record.report.agreed;
  } else {
    record.report = gaussian_degree_complete_intersection(
        std::get<CompleteIntersectionComponent>(geometry).fs, cfg);
    record.gdeg = record.report.gdeg;
    record.agreed = record.report.agreed;
  }
  return record;
}

}  // namespace

//---------------------------------------------------------------------------
// LagrangianCycle.
//---------------------------------------------------------------------------

LagrangianCycle::LagrangianCycle(int dimension, std::vector<CycleComponent> components)
    : dimension_(dimension), components_(std::move(components)) {
  if (dimension_ < 1) throw std::invalid_argument("cycle dimension must be at least 1");
  for (CycleComponent& component : components_) {
    if (component.multiplicity == 0) throw std::invalid_argument("zero multiplicity");
    if (auto* point = std::get_if<PointComponent>(&component.geometry)) {
      if (point->coordinates.size() != dimension_) {
        throw std::invalid_argument("point dimension differs from the cycle's");
      }
      static_cast<void>(TorusPoint(point->coordinates));  // rejects zero coordinates
    } else if (const auto* hyper = std::get_if<HypersurfaceComponent>(&component.geometry)) {
      validate_member_polynomial(hyper->f, dimension_);
    } else if (auto* ci = std::get_if<CompleteIntersectionComponent>(&component.geometry)) {
      if (ci->fs.empty() || static_cast<int>(ci->fs.size()) > dimension_) {
        throw std::invalid_argument("complete intersection needs 1 <= c <= n equations");
      }
      for (const LaurentPolynomial& f : ci->fs) validate_member_polynomial(f, dimension_);
      std::sort(ci->fs.begin(), ci->fs.end(),
                [](const LaurentPolynomial& a, const LaurentPolynomial& b) {
                  return format(a) < format(b);
                });
    }
  }
  std::stable_sort(components_.begin(), components_.end(),
                   [](const CycleComponent& a, const CycleComponent& b) {
                     return geometry_less(a.geometry, b.geometry);
                   });
  for (std::size_t i = 1; i < components_.size(); ++i) {
    if (geometry_equal(components_[i - 1].geometry, components_[i].geometry)) {
      throw std::invalid_argument("duplicate component descriptor");
    }
  }
}

//---------------------------------------------------------------------------
// Documents.
//---------------------------------------------------------------------------

LagrangianCycle parse_cycle(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& error) {
    throw CycleParseError(std::string("invalid document: ") + error.what());
  }
  if (!doc.is_object()) throw CycleParseError("document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "components") {
      throw CycleParseError("unknown top-level field '" + key + "'");
    }
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw CycleParseError("field 'n' must be an integer");
  }
  const int dimension = doc["n"].get<int>();
  if (dimension < 1) throw CycleParseError("field 'n' must be positive");
  if (!doc.contains("components") || !doc["components"].is_array()) {
    throw CycleParseError("field 'components' must be an array");
  }

  std::vector<CycleComponent> components;
  for (const json& entry : doc["components"]) {
    if (!entry.is_object()) throw CycleParseError("components must be objects");
    if (!entry.contains("mult") || !entry["mult"].is_number_integer()) {
      throw CycleParseError("component field 'mult' must be an integer");
    }
    CycleComponent component;
    component.multiplicity = entry["mult"].get<std::int64_t>();
    component.geometry = parse_geometry(entry, dimension);
    components.push_back(std::move(component));
  }

  try {
    return LagrangianCycle(dimension, std::move(components));
  } catch (const std::invalid_argument& error) {
    throw CycleParseError(error.what());
  }
}

std::string serialize_cycle(const LagrangianCycle& cycle) {
  ordered_json doc;
  doc["n"] = cycle.dimension();
  ordered_json components = ordered_json::array();
  for (const CycleComponent& component : cycle.components()) {
    ordered_json entry = geometry_to_json(component.geometry);
    entry["mult"] = component.multiplicity;
    components.push_back(std::move(entry));
  }
  doc["components"] = std::move(components);
  return doc.dump();
}

LagrangianCycle cc_of_constant_on_smooth(int dimension, ComponentGeometry geometry) {
  std::vector<CycleComponent> components;
  components.push_back(CycleComponent{std::move(geometry), 1});
  return LagrangianCycle(dimension, std::move(components));
}

//---------------------------------------------------------------------------
// Evaluation.
//---------------------------------------------------------------------------

CycleChiReport evaluate_cycle(const LagrangianCycle& cycle, const GdegConfig& cfg) {
  CycleChiReport report;
  report.all_agreed = true;
  for (const CycleComponent& component : cycle.components()) {
    ComponentChiRecord record = component_degree(component.geometry, component.multiplicity, cfg);
    report.chi += record.multiplicity * record.gdeg;
    report.all_agreed = report.all_agreed && record.agreed;
    report.components.push_back(std::move(record));
  }
  return report;
}

CycleChiReport chi_via_cc(const LagrangianCycle& cycle, const GdegConfig& cfg) {
  CycleChiReport report = evaluate_cycle(cycle, cfg);
  if (!report.all_agreed) {
    for (std::size_t i = 0; i < report.components.size(); ++i) {
      if (!report.components[i].agreed) {
        std::ostringstream message;
        message << "component " << i << ": Gaussian-degree samples did not agree";
        throw AgreementError(message.str());
      }
    }
  }
  return report;
}

//---------------------------------------------------------------------------
// Two-sided identity check for hypersurfaces.
//---------------------------------------------------------------------------

IdentityCheckReport verify_chi_identity(const LaurentPolynomial& f, const GdegConfig& cfg) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no hypersurface");
  const int n = f.dimension();
  if (n < 1 || n > 3) throw std::invalid_argument("identity check supports 1 <= n <= 3");

  IdentityCheckReport report;
  if (f.is_monomial()) {
    report.verdict = IdentityVerdict::Equal;
    report.nondegeneracy.note = "not applicable for single-term input";
    report.note = "single-term polynomial: empty variety, both sides vanish";
    report.gdeg_report.agreed = true;
    report.gdeg_report.warning = report.note;
    return report;
  }

  report.nondegeneracy = nondegeneracy_check(f, cfg);

  const LatticePolytope np = newton_polytope(f);
  const ChiReport chi = (n == 2 && np.affine_dimension() == 2)
                            ? chi_curve_pick(f)
                            : chi_nondegenerate_hypersurface(f);
  report.chi = chi.chi;
  report.signed_chi = ((n - 1) % 2 == 0 ? 1 : -1) * chi.chi;

  if (report.nondegeneracy.verdict == NondegeneracyVerdict::Degenerate) {
    report.verdict = IdentityVerdict::NotApplicable;
    report.note = "degenerate input: " + report.nondegeneracy.note;
    report.gdeg_report.agreed = true;  // nothing was sampled
    return report;
  }

  report.gdeg_report = gaussian_degree_hypersurface(f, cfg);
  report.gdeg = report.gdeg_report.gdeg;

  if (!report.gdeg_report.agreed) {
    report.verdict = IdentityVerdict::NotApplicable;
    report.note = "Gaussian-degree samples did not agree";
    return report;
  }

  report.verdict =
      report.gdeg == report.signed_chi ? IdentityVerdict::Equal : IdentityVerdict::NotEqual;
  if (report.nondegeneracy.verdict == NondegeneracyVerdict::Inconclusive) {
    report.note = report.note.empty() ? report.nondegeneracy.note
                                      : report.note + "; " + report.nondegeneracy.note;
  }
  return report;
}

}  // namespace gaussrr
