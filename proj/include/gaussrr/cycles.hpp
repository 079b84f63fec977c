#pragma once

// Conic Lagrangian cycles: formal integer combinations of conormal varieties
// (zero section, point conormals, hypersurface and complete-intersection
// conormals), their canonical document format, and the additive chi
// evaluator chi = sum_nu n_nu * gdeg(Lambda_nu).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "gaussrr/euler.hpp"
#include "gaussrr/gauss.hpp"
#include "gaussrr/laurent.hpp"

namespace gaussrr {

struct ZeroSectionComponent {};

struct PointComponent {
  Eigen::VectorXcd coordinates;  // a torus point; every entry nonzero
};

struct HypersurfaceComponent {
  LaurentPolynomial f;
};

struct CompleteIntersectionComponent {
  std::vector<LaurentPolynomial> fs;  // 1 <= c <= n equations
};

using ComponentGeometry = std::variant<ZeroSectionComponent, PointComponent,
                                       HypersurfaceComponent, CompleteIntersectionComponent>;

struct CycleComponent {
  ComponentGeometry geometry;
  std::int64_t multiplicity = 1;  // nonzero; negative permitted
};

// Validated cycle with components in canonical order (descriptor kind in
// variant order, then lexicographic content); descriptors must be distinct.
class LagrangianCycle {
 public:
  LagrangianCycle(int dimension, std::vector<CycleComponent> components);

  int dimension() const { return dimension_; }
  const std::vector<CycleComponent>& components() const { return components_; }

 private:
  int dimension_;
  std::vector<CycleComponent> components_;
};

class CycleParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a numerical Gaussian degree fails to reach sample agreement.
class AgreementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Document format: {"n": <int>, "components": [<component>...]} where each
// component carries exactly one of "zero_section": true, "point": [coord...]
// (coord = number or [re, im]), "hypersurface": "<poly>",
// "complete_intersection": ["<poly>", ...], plus "mult": <nonzero int>.
LagrangianCycle parse_cycle(std::string_view document);

// Canonical bytes: fixed field order, components in canonical order, point
// coordinates always as [re, im], polynomials in canonical formatting.
std::string serialize_cycle(const LagrangianCycle& cycle);

// The characteristic cycle of the (shifted) constant sheaf on a smooth
// subvariety: the single conormal component with multiplicity 1.
LagrangianCycle cc_of_constant_on_smooth(int dimension, ComponentGeometry geometry);

struct ComponentChiRecord {
  std::int64_t multiplicity = 0;
  std::int64_t gdeg = 0;
  bool agreed = false;
  bool exact = false;  // true for zero section / point (no sampling needed)
  GaussDegreeReport report;  // default-constructed for exact components
};

struct CycleChiReport {
  std::int64_t chi = 0;
  bool all_agreed = false;
  std::vector<ComponentChiRecord> components;
};

// Per-component Gaussian degrees and the weighted sum; never throws on
// sample disagreement (all_agreed reports it instead).
CycleChiReport evaluate_cycle(const LagrangianCycle& cycle, const GdegConfig& cfg);

// As evaluate_cycle, but fails loudly: throws AgreementError when any
// component's numerical degree did not reach agreement.
CycleChiReport chi_via_cc(const LagrangianCycle& cycle, const GdegConfig& cfg);

enum class IdentityVerdict { Equal, NotEqual, NotApplicable };

// Two-sided check for a hypersurface: the numerical Gaussian degree of the
// conormal cycle against the combinatorial (-1)^{n-1} * chi(Z) oracle.
struct IdentityCheckReport {
  IdentityVerdict verdict = IdentityVerdict::NotApplicable;
  std::int64_t gdeg = 0;        // numerical side
  std::int64_t signed_chi = 0;  // oracle side: (-1)^{n-1} * chi
  std::int64_t chi = 0;         // the oracle chi itself
  NondegeneracyReport nondegeneracy;
  GaussDegreeReport gdeg_report;
  std::string note;
};

IdentityCheckReport verify_chi_identity(const LaurentPolynomial& f, const GdegConfig& cfg);

}  // namespace gaussrr
