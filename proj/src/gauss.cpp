#include "gaussrr/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaussrr/polytope.hpp"
#include "gaussrr/rng.hpp"

namespace gaussrr {

namespace {

constexpr std::uint64_t kSampleTag = 0x6764656753ULL;

// Embeds an n-variable Laurent polynomial into n + c variables (lambda
// slots appended with exponent zero), optionally multiplied by lambda_j.
LaurentPolynomial lift_to_fiber(const LaurentPolynomial& f, int n, int c, int lambda_index) {
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : f.terms()) {
    ExponentVector lifted = ExponentVector::Zero(n + c);
    lifted.head(n) = exps;
    if (lambda_index >= 0) lifted(n + lambda_index) = 1;
    terms.emplace(std::move(lifted), coeff);
  }
  return LaurentPolynomial(n + c, std::move(terms));
}

// Raise-only clearing: multiplies by z^s with s_i = max(0, -min exponent)
// over the z-axes, leaving lambda exponents untouched.
std::pair<LaurentPolynomial, ExponentVector> raise_to_nonnegative(const LaurentPolynomial& f,
                                                                  int n) {
  ExponentVector shift = ExponentVector::Zero(f.dimension());
  for (const auto& [exps, coeff] : f.terms()) {
    for (int i = 0; i < n; ++i) shift(i) = std::max(shift(i), -exps(i));
  }
  if (shift.isZero()) return {f, shift.head(n)};
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : f.terms()) terms.emplace(exps + shift, coeff);
  return {LaurentPolynomial(f.dimension(), std::move(terms)), shift.head(n)};
}

InvariantCovector random_covector(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd gamma(n);
  for (int i = 0; i < n; ++i) gamma(i) = rng.complex_normal();
  return InvariantCovector(std::move(gamma));
}

// Divides out the monomial content (the componentwise-minimal exponent).  A
// monomial is a unit on the torus, so the variety and its Gaussian degree are
// untouched, while cleared fiber systems stay small and free of the spurious
// coordinate-hyperplane components a leftover monomial factor would create.
LaurentPolynomial strip_monomial_content(const LaurentPolynomial& f) {
  if (f.is_zero()) return f;
  ExponentVector mins;
  bool first = true;
  for (const auto& [exps, coeff] : f.terms()) {
    if (first) {
      mins = exps;
      first = false;
    } else {
      mins = mins.cwiseMin(exps);
    }
  }
  if (mins.isZero()) return f;
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : f.terms()) terms.emplace(exps - mins, coeff);
  return LaurentPolynomial(f.dimension(), std::move(terms));
}

// Joint size of the content-stripped supports: primarily the sum of total
// degrees (which drives the Bezout path count of the fiber system), with the
// L1 exponent mass as a tie-break.
std::pair<long, long> support_cost(const std::vector<LaurentPolynomial>& fs) {
  long degree_sum = 0;
  long mass = 0;
  for (const LaurentPolynomial& f : fs) {
    const LaurentPolynomial stripped = strip_monomial_content(f);
    degree_sum += stripped.total_degree();
    for (const auto& [exps, coeff] : stripped.terms()) {
      mass += exps.cwiseAbs().sum();
    }
  }
  return {degree_sum, mass};
}

// Normalizes the defining equations before sampling: strips monomial content
// and greedily shrinks the joint support with elementary unimodular
// substitutions z^a -> z^{Ua} (torus automorphisms, under which the Gaussian
// degree is invariant).  A sheared support whose cleared fiber system would
// need thousands of Bezout paths typically collapses back to a small box.
std::vector<LaurentPolynomial> reduce_supports(std::vector<LaurentPolynomial> fs) {
  for (LaurentPolynomial& f : fs) f = strip_monomial_content(f);
  const int n = fs.front().dimension();
  if (n < 2) return fs;

  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n);
  std::pair<long, long> cost = support_cost(fs);
  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < n && !improved; ++i) {
      for (int j = 0; j < n && !improved; ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          Eigen::MatrixXi op = Eigen::MatrixXi::Identity(n, n);
          op(i, j) = sign;
          std::vector<LaurentPolynomial> candidate;
          candidate.reserve(fs.size());
          for (const LaurentPolynomial& f : fs) {
            candidate.push_back(strip_monomial_content(substitute(f, op, TorusPoint(ones))));
          }
          const std::pair<long, long> candidate_cost = support_cost(candidate);
          if (candidate_cost < cost) {
            fs = std::move(candidate);
            cost = candidate_cost;
            improved = true;
            break;
          }
        }
      }
    }
  }
  return fs;
}

// Counts solutions with every coordinate (z and lambda) away from zero and a
// regular Jacobian.  Singular endpoints mark ghost components left by
// denominator clearing, multiple roots, or a non-generic draw; they are
// excluded from the count and surfaced through singular_seen.
struct FilteredCount {
  int count = 0;
  bool singular_seen = false;
};

FilteredCount filtered_torus_count(const SolutionSet& sols, double torus_filter) {
  FilteredCount out;
  for (std::size_t i = 0; i < sols.points.size(); ++i) {
    bool on_torus = true;
    for (Eigen::Index j = 0; j < sols.points[i].size(); ++j) {
      if (std::abs(sols.points[i](j)) <= torus_filter) {
        on_torus = false;
        break;
      }
    }
    if (!on_torus) continue;
    if (sols.singular[i]) {
      out.singular_seen = true;
      continue;
    }
    ++out.count;
  }
  return out;
}

void accumulate(PathStats& total, const PathStats& part) {
  total.converged += part.converged;
  total.diverged += part.diverged;
  total.failed += part.failed;
}

// Shared gamma-sampling protocol: draw covectors until `cfg.samples` valid
// counts are collected, escalate to `cfg.escalated_samples` on disagreement,
// take the modal count.
GaussDegreeReport sample_gaussian_degree(const std::vector<LaurentPolynomial>& input_fs,
                                         const GdegConfig& cfg) {
  if (cfg.samples < 3) throw std::invalid_argument("at least 3 gamma samples are required");
  // Normalize the equations first (degenerate inputs pass through so that the
  // system builder raises its usual errors): the count is invariant under the
  // normalization, and the tracker sees far fewer, far tamer paths.
  const bool reducible = std::none_of(input_fs.begin(), input_fs.end(),
                                      [](const LaurentPolynomial& f) { return f.is_zero(); });
  const std::vector<LaurentPolynomial> fs =
      reducible ? reduce_supports(input_fs) : input_fs;
  const int n = fs.front().dimension();
  const int c = static_cast<int>(fs.size());

  GaussDegreeReport report;
  {
    // The supports, hence the Newton polytopes and the BKK bound, do not
    // depend on the sampled gamma values.
    const GaussFiberSystem probe =
        build_ci_conormal_system(fs, random_covector(n, derive_seed(cfg.seed, 0)));
    if (n + c <= 4) report.bkk = bkk_bound(probe.system.equations());
  }

  std::vector<int> valid_counts;
  int attempts = 0;
  bool escalated = false;
  while (attempts < cfg.max_attempts) {
    const int quorum = escalated ? cfg.escalated_samples : cfg.samples;
    if (static_cast<int>(valid_counts.size()) >= quorum) {
      const bool all_equal =
          std::adjacent_find(valid_counts.begin(), valid_counts.end(),
                             std::not_equal_to<int>()) == valid_counts.end();
      if (all_equal || escalated) break;
      escalated = true;
      continue;
    }

    SampleRecord sample;
    sample.gamma_seed = derive_seed(cfg.seed, kSampleTag + attempts);
    ++attempts;

    const InvariantCovector gamma = random_covector(n, sample.gamma_seed);
    const GaussFiberSystem fiber = build_ci_conormal_system(fs, gamma);
    TrackerConfig tracker = cfg.tracker;
    tracker.seed = sample.gamma_seed;
    const SolutionSet sols = solve_square_system(fiber.system, tracker);
    sample.paths = sols.path_stats;
    accumulate(report.path_stats, sample.paths);

    const FilteredCount filtered = filtered_torus_count(sols, cfg.torus_filter);
    sample.count = filtered.count;
    sample.singular_seen = filtered.singular_seen;
    // A sample is trustworthy when its regular-solution count respects the
    // Bernstein bound; singular endpoints were already excluded from it.
    sample.valid = !report.bkk || filtered.count <= *report.bkk;
    if (sample.valid) valid_counts.push_back(sample.count);
    report.samples.push_back(sample);
  }

  if (valid_counts.empty()) {
    report.agreed = false;
    report.warning = "no valid samples: every gamma draw exceeded the Bernstein bound";
    return report;
  }

  // Modal count; ties resolved toward the smaller value for determinism.
  std::map<int, int> frequency;
  for (int count : valid_counts) ++frequency[count];
  int mode = valid_counts.front();
  int best = 0;
  for (const auto& [value, freq] : frequency) {
    if (freq > best) {
      best = freq;
      mode = value;
    }
  }
  report.gdeg = mode;
  if (frequency.size() == 1 && static_cast<int>(valid_counts.size()) >= cfg.samples) {
    report.agreed = true;
  } else {
    report.agreed = best >= cfg.agreement_quorum;
    if (!report.agreed) {
      const bool singular_seen =
          std::any_of(report.samples.begin(), report.samples.end(),
                      [](const SampleRecord& s) { return s.singular_seen; });
      report.warning = singular_seen
                           ? "gamma samples did not agree and singular intersections "
                             "were seen: possibly non-reduced or non-generic input"
                           : "gamma samples did not agree on an intersection count";
    }
  }
  return report;
}

}  // namespace

InvariantCovector::InvariantCovector(Eigen::VectorXcd gamma) : gamma_(std::move(gamma)) {
  if (gamma_.size() == 0) throw std::invalid_argument("empty covector");
  for (Eigen::Index i = 0; i < gamma_.size(); ++i) {
    if (gamma_(i) == Complex(0.0)) {
      throw std::invalid_argument("invariant covector has a zero coordinate");
    }
  }
}

GaussFiberSystem build_gauss_fiber_system(const LaurentPolynomial& f,
                                          const InvariantCovector& gamma) {
  return build_ci_conormal_system({f}, gamma);
}

GaussFiberSystem build_ci_conormal_system(const std::vector<LaurentPolynomial>& fs,
                                          const InvariantCovector& gamma) {
  if (fs.empty()) throw std::invalid_argument("no defining equations");
  const int n = fs.front().dimension();
  const int c = static_cast<int>(fs.size());
  if (c > n) throw std::invalid_argument("codimension exceeds torus dimension");
  if (gamma.dimension() != n) {
    throw std::invalid_argument("covector dimension does not match the torus");
  }
  for (const auto& f : fs) {
    if (f.dimension() != n) throw std::invalid_argument("mixed-dimension defining equations");
    if (f.is_zero()) throw std::invalid_argument("zero defining equation");
    if (f.is_monomial()) {
      throw MonomialInputError("monomial defines an empty torus hypersurface");
    }
  }

  std::vector<LaurentPolynomial> equations;
  std::vector<ExponentVector> shifts;
  equations.reserve(n + c);
  shifts.reserve(n + c);

  for (const auto& f : fs) {
    auto [cleared, shift] = raise_to_nonnegative(lift_to_fiber(f, n, c, -1), n);
    equations.push_back(std::move(cleared));
    shifts.push_back(std::move(shift));
  }
  for (int i = 0; i < n; ++i) {
    LaurentPolynomial covector_eq(n + c);
    for (int j = 0; j < c; ++j) {
      const LaurentPolynomial theta = log_derivative(fs[j], i);
      if (theta.is_zero()) continue;
      covector_eq = covector_eq + lift_to_fiber(theta, n, c, j);
    }
    covector_eq = covector_eq - LaurentPolynomial::constant(n + c, gamma.gamma()(i));
    auto [cleared, shift] = raise_to_nonnegative(covector_eq, n);
    equations.push_back(std::move(cleared));
    shifts.push_back(std::move(shift));
  }

  GaussFiberSystem fiber{PolynomialSystem(n + c, std::move(equations)), n, c,
                         gamma.gamma(), std::move(shifts)};
  return fiber;
}

GaussDegreeReport gaussian_degree_hypersurface(const LaurentPolynomial& f,
                                               const GdegConfig& cfg) {
  const int n = f.dimension();
  if (n > 3) throw std::invalid_argument("numerical Gaussian degree limited to n <= 3");
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");
  if (f.is_monomial()) {
    throw MonomialInputError("monomial defines an empty torus hypersurface");
  }

  if (newton_polytope(f).affine_dimension() < n) {
    GaussDegreeReport report;
    report.gdeg = 0;
    report.agreed = true;
    report.degenerate_newton = true;
    report.warning =
        "Newton polytope is lower-dimensional: the logarithmic Gauss map is not "
        "dominant and the Gaussian degree vanishes";
    return report;
  }
  return sample_gaussian_degree({f}, cfg);
}

GaussDegreeReport gaussian_degree_complete_intersection(
    const std::vector<LaurentPolynomial>& fs, const GdegConfig& cfg) {
  if (fs.empty()) throw std::invalid_argument("no defining equations");
  const int n = fs.front().dimension();
  if (n > 3) throw std::invalid_argument("numerical Gaussian degree limited to n <= 3");
  return sample_gaussian_degree(fs, cfg);
}

std::int64_t gaussian_degree_1d(const LaurentPolynomial& f) {
  if (f.dimension() != 1) throw std::invalid_argument("gaussian_degree_1d requires n = 1");
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");

  const LaurentPolynomial cleared = clear_denominators(f).poly;
  const int degree = cleared.total_degree();
  if (degree == 0) return 0;  // monomial input: empty torus variety

  // Dense coefficients c_0..c_d of the cleared polynomial.
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(degree + 1);
  for (const auto& [exps, coeff] : cleared.terms()) coeffs(exps(0)) = coeff;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = Complex(1.0);
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs(i) / coeffs(degree);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + degree);

  // Exclude roots at the origin puncture, then merge numerical duplicates.
  constexpr double kRootTolerance = 1e-8;
  std::erase_if(roots, [](Complex z) { return std::abs(z) < kRootTolerance; });
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::int64_t count = 0;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    while (j < roots.size() && std::abs(roots[j] - roots[j - 1]) < kRootTolerance) ++j;
    ++count;
    i = j;
  }
  return count;
}

std::int64_t gaussian_degree_special(SpecialDescriptor descriptor) {
  return descriptor == SpecialDescriptor::ZeroSection ? 0 : 1;
}

}  // namespace gaussrr
