#pragma once

// Gaussian degrees of conic Lagrangian cycles: the degree of the logarithmic
// Gauss map, computed by intersecting a conormal variety with the graph of a
// generic invariant 1-form sum_i gamma_i dz_i/z_i and counting torus
// solutions across several independent gamma draws.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gaussrr/homotopy.hpp"
#include "gaussrr/laurent.hpp"

namespace gaussrr {

// Coefficients gamma of an invariant 1-form; all entries nonzero.
struct InvariantCovector {
  explicit InvariantCovector(Eigen::VectorXcd gamma);
  const Eigen::VectorXcd& gamma() const { return gamma_; }
  int dimension() const { return static_cast<int>(gamma_.size()); }

 private:
  Eigen::VectorXcd gamma_;
};

// The intersection system of a conormal variety with the graph of the
// 1-form: unknowns are (z_1..z_n, lambda_1..lambda_c), equations are the
// defining polynomials and the cleared covector-matching conditions
// sum_j lambda_j theta_i f_j = gamma_i.
struct GaussFiberSystem {
  PolynomialSystem system;
  int torus_dimension = 0;  // n
  int codimension = 0;      // c
  Eigen::VectorXcd gamma;
  // Monomial z^s multiplied into each covector equation to clear negative
  // exponents (z-axes only; identity when the inputs are already polynomial).
  std::vector<ExponentVector> clearing_shifts;
};

// Raised by inputs whose torus variety is empty (single-term polynomials).
class MonomialInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

GaussFiberSystem build_gauss_fiber_system(const LaurentPolynomial& f,
                                          const InvariantCovector& gamma);

// Complete-intersection conormal system for 1 <= c <= n defining equations;
// with c = 1 this coincides with build_gauss_fiber_system.
GaussFiberSystem build_ci_conormal_system(const std::vector<LaurentPolynomial>& fs,
                                          const InvariantCovector& gamma);

struct GdegConfig {
  int samples = 3;          // independent gamma draws required to agree
  int escalated_samples = 5;
  int agreement_quorum = 4;  // modal frequency needed after escalation
  int max_attempts = 12;     // total gamma draws before giving up
  double torus_filter = 1e-8;
  std::uint64_t seed = 42;
  TrackerConfig tracker;     // tracker.seed is overridden per sample
};

struct SampleRecord {
  std::uint64_t gamma_seed = 0;
  int count = 0;           // torus solutions passing all filters
  bool valid = false;      // sample counted toward the agreement quorum
  bool singular_seen = false;
  PathStats paths;
};

struct GaussDegreeReport {
  std::int64_t gdeg = 0;
  bool agreed = false;
  std::optional<std::int64_t> bkk;  // present when n + c <= 4
  bool degenerate_newton = false;   // lower-dimensional Newton polytope
  std::string warning;
  std::vector<SampleRecord> samples;
  PathStats path_stats;  // aggregate over all samples
};

// Numerical Gaussian degree of a hypersurface conormal cycle, 1 <= n <= 3.
// Throws MonomialInputError for single-term input; a lower-dimensional
// Newton polytope short-circuits to gdeg 0 with a warning.
GaussDegreeReport gaussian_degree_hypersurface(const LaurentPolynomial& f,
                                               const GdegConfig& cfg);

// Numerical Gaussian degree of a complete-intersection conormal cycle.
GaussDegreeReport gaussian_degree_complete_intersection(
    const std::vector<LaurentPolynomial>& fs, const GdegConfig& cfg);

// Exact n = 1 route: roots of the cleared polynomial via the companion
// matrix; roots with |z| < 1e-8 are excluded and near-duplicates merged.
std::int64_t gaussian_degree_1d(const LaurentPolynomial& f);

enum class SpecialDescriptor { ZeroSection, Point };

// Exact values for the two distinguished cycles: zero section 0, point 1.
std::int64_t gaussian_degree_special(SpecialDescriptor descriptor);

}  // namespace gaussrr
