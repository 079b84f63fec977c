#pragma once

// Total-degree (Bezout) homotopy continuation for small square polynomial
// systems over C: RK4 prediction on the Davidenko ODE, Newton correction,
// adaptive step control, endpoint refinement and deduplication.  All
// randomness is derived from the configured seed, so identical inputs give
// identical solution sets.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gaussrr/laurent.hpp"

namespace gaussrr {

struct TrackerConfig {
  double initial_step = 0.05;
  double min_step = 1e-8;
  double corrector_tolerance = 1e-11;   // relative residual after correction
  int max_corrector_iterations = 3;
  double divergence_threshold = 1e8;    // on the sup-norm of the point
  double endpoint_tolerance = 1e-12;    // Newton refinement target at t = 1
  double dedup_radius = 1e-6;           // relative, single-linkage clustering
  double singular_condition_threshold = 1e10;
  std::uint64_t seed = 42;
};

// Square-system limits; beyond these the solver refuses loudly.
inline constexpr int kMaxUnknowns = 6;
inline constexpr std::int64_t kMaxBezoutPaths = 20000;

// A polynomial system with nonnegative exponents, evaluated together with
// its Jacobian from flattened per-equation term tables.
class PolynomialSystem {
 public:
  PolynomialSystem(int unknowns, std::vector<LaurentPolynomial> equations);

  int unknowns() const { return unknowns_; }
  int equation_count() const { return static_cast<int>(source_.size()); }
  const std::vector<LaurentPolynomial>& equations() const { return source_; }

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const;

  // Max total degree per equation (the Bezout degrees).
  const std::vector<int>& total_degrees() const { return degrees_; }

  // Per-equation residual scale max(1, sum |coeff|).
  const Eigen::VectorXd& residual_scales() const { return scales_; }

  // max_i |f_i(x)| / scale_i.
  double relative_residual(const Eigen::VectorXcd& x) const;

 private:
  struct TermTable {
    Eigen::MatrixXi exponents;  // one row per term
    Eigen::VectorXcd coefficients;
  };

  int unknowns_;
  std::vector<LaurentPolynomial> source_;
  std::vector<TermTable> tables_;
  std::vector<int> degrees_;
  Eigen::VectorXd scales_;
};

struct StartSystem {
  PolynomialSystem system;
  std::vector<Eigen::VectorXcd> roots;
};

// Start system { x_i^{d_i} = c_i } with random unit-modulus constants and
// its complete solution set.  Throws when a degree is < 1, there are more
// than kMaxUnknowns unknowns, or the Bezout count exceeds kMaxBezoutPaths.
StartSystem bezout_start(const std::vector<int>& degrees, std::uint64_t seed);

enum class PathOutcome { Converged, Diverged, StepUnderflow };

struct PathResult {
  PathOutcome outcome = PathOutcome::StepUnderflow;
  Eigen::VectorXcd point;  // meaningful only when outcome == Converged
  int steps = 0;
};

// Tracks one start root from the start system to the target system along
// H(x,t) = (1-t) gamma G(x) + t F(x); gamma is unit-modulus, derived from
// cfg.seed.  Failures are classified results, not errors.
PathResult track_path(const PolynomialSystem& target, const PolynomialSystem& start,
                      const Eigen::VectorXcd& start_point, const TrackerConfig& cfg);

struct PathStats {
  int converged = 0;
  int diverged = 0;
  int failed = 0;
};

struct SolutionSet {
  std::vector<Eigen::VectorXcd> points;  // canonical order, deduplicated
  std::vector<bool> singular;            // Jacobian condition > threshold
  std::vector<double> residuals;         // relative residual per point
  PathStats path_stats;                  // stats of the final tracking sweep
};

// Full Bezout solve of a square system: track every start root, refine the
// converged endpoints by Newton, sort canonically, cluster duplicates, flag
// singular solutions.  Sweeps with stalled paths are retried under fresh
// homotopy constants (endpoints from all sweeps are merged by the clustering),
// so path_stats describes the last sweep.  Deterministic for fixed
// (system, cfg).
SolutionSet solve_square_system(const PolynomialSystem& system, const TrackerConfig& cfg);

// BKK/Bernstein bound: the mixed volume of the Newton polytopes of a square
// Laurent system (at most 4 equations, matching the mixed-volume cap).
std::int64_t bkk_bound(const std::vector<LaurentPolynomial>& equations);

}  // namespace gaussrr
