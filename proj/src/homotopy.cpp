#include "gaussrr/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gaussrr/polytope.hpp"
#include "gaussrr/rng.hpp"

namespace gaussrr {

namespace {

// Step-control constants of the tracker (fixed by design, not configured).
constexpr int kSuccessesBeforeIncrease = 5;
constexpr double kStepIncreaseFactor = 1.5;
constexpr double kMaxStep = 0.25;
constexpr int kMaxTrackerSteps = 50000;
constexpr int kMaxRefinementIterations = 30;

// A sweep tracks every start root under one homotopy constant.  If some paths
// stall (step underflow), further sweeps re-randomize the constant: the same
// endpoints are reachable along different paths, so a stalled root is usually
// recovered by a fresh sweep.  Endpoints accumulate across sweeps and are
// deduplicated together, which can only improve coverage, never overcount.
constexpr int kMaxGammaSweeps = 4;

// Substream tags for seed derivation.
constexpr std::uint64_t kGammaTrickTag = 0x67616d6d61ULL;   // homotopy constant
constexpr std::uint64_t kStartSystemTag = 0x7374617274ULL;  // start constants
constexpr std::uint64_t kGammaRetryTag = 0x72657472ULL;     // retry sweeps

Complex int_pow_nonneg(Complex base, int exponent) {
  Complex result(1.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

bool is_finite(const Eigen::VectorXcd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i).real()) || !std::isfinite(x(i).imag())) return false;
  }
  return true;
}

double sup_norm(const Eigen::VectorXcd& x) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x(i)));
  return m;
}

// Lexicographic order on (re, im) coordinate pairs; the canonical solution
// ordering used before deduplication and in reports.
bool canonical_point_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

struct Homotopy {
  const PolynomialSystem& target;
  const PolynomialSystem& start;
  Complex gamma;

  Eigen::VectorXcd value(const Eigen::VectorXcd& x, double t) const {
    return (1.0 - t) * gamma * start.evaluate(x) + t * target.evaluate(x);
  }

  Eigen::MatrixXcd jac(const Eigen::VectorXcd& x, double t) const {
    return (1.0 - t) * gamma * start.jacobian(x) + t * target.jacobian(x);
  }

  // dH/dt is independent of t.
  Eigen::VectorXcd dt(const Eigen::VectorXcd& x) const {
    return target.evaluate(x) - gamma * start.evaluate(x);
  }

  double relative_residual(const Eigen::VectorXcd& x, double t) const {
    const Eigen::VectorXcd h = value(x, t);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      const double scale = std::max(
          1.0, (1.0 - t) * start.residual_scales()(i) + t * target.residual_scales()(i));
      worst = std::max(worst, std::abs(h(i)) / scale);
    }
    return worst;
  }
};

// One RK4 predictor step on H_x dx/dt = -H_t; empty result when a linear
// solve produces non-finite values.
std::optional<Eigen::VectorXcd> rk4_predict(const Homotopy& h, const Eigen::VectorXcd& x,
                                            double t, double dt) {
  const auto derivative = [&](const Eigen::VectorXcd& xs,
                              double ts) -> std::optional<Eigen::VectorXcd> {
    if (!is_finite(xs)) return std::nullopt;
    const Eigen::VectorXcd rhs = -h.dt(xs);
    const Eigen::VectorXcd v = h.jac(xs, ts).partialPivLu().solve(rhs);
    if (!is_finite(v)) return std::nullopt;
    return v;
  };

  const auto k1 = derivative(x, t);
  if (!k1) return std::nullopt;
  const auto k2 = derivative(x + 0.5 * dt * *k1, t + 0.5 * dt);
  if (!k2) return std::nullopt;
  const auto k3 = derivative(x + 0.5 * dt * *k2, t + 0.5 * dt);
  if (!k3) return std::nullopt;
  const auto k4 = derivative(x + dt * *k3, t + dt);
  if (!k4) return std::nullopt;
  Eigen::VectorXcd out = x + (dt / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
  if (!is_finite(out)) return std::nullopt;
  return out;
}

// Newton correction at fixed t; true when the relative residual meets tol.
bool newton_correct(const Homotopy& h, Eigen::VectorXcd& x, double t, double tol,
                    int max_iterations) {
  for (int it = 0; it < max_iterations; ++it) {
    if (h.relative_residual(x, t) <= tol) return true;
    const Eigen::VectorXcd step = h.jac(x, t).partialPivLu().solve(h.value(x, t));
    if (!is_finite(step)) return false;
    x -= step;
    if (!is_finite(x)) return false;
  }
  return h.relative_residual(x, t) <= tol;
}

struct Refinement {
  Eigen::VectorXcd point;
  double residual = std::numeric_limits<double>::infinity();
};

// Newton polish against the target system; keeps the best iterate seen.
Refinement refine_endpoint(const PolynomialSystem& system, Eigen::VectorXcd x,
                           double target_tol) {
  Refinement best{x, system.relative_residual(x)};
  for (int it = 0; it < kMaxRefinementIterations && best.residual > target_tol; ++it) {
    const Eigen::VectorXcd step =
        system.jacobian(x).partialPivLu().solve(system.evaluate(x));
    if (!is_finite(step)) break;
    x -= step;
    if (!is_finite(x)) break;
    const double res = system.relative_residual(x);
    if (res < best.residual) {
      best.point = x;
      best.residual = res;
    } else if (res > 10.0 * best.residual) {
      break;  // Newton is wandering; keep the best iterate
    }
  }
  return best;
}

// Condition of the Jacobian measured against the system's coefficient scale.
// Plain smax/smin is blind whenever the whole Jacobian is small — it is
// identically 1 for univariate systems, and stays moderate on the ghost
// endpoints that raise-only denominator clearing can leave near coordinate
// hyperplanes — so the numerator is floored at the equations' natural scale.
double scaled_condition(const PolynomialSystem& system, const Eigen::VectorXcd& x) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system.jacobian(x));
  const auto& sv = svd.singularValues();
  const double smax = std::max(sv(0), system.residual_scales().maxCoeff());
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || !std::isfinite(smin)) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace

PolynomialSystem::PolynomialSystem(int unknowns, std::vector<LaurentPolynomial> equations)
    : unknowns_(unknowns), source_(std::move(equations)) {
  if (unknowns < 1 || unknowns > kMaxUnknowns) {
    throw std::invalid_argument("system must have between 1 and 6 unknowns");
  }
  scales_.resize(source_.size());
  for (std::size_t e = 0; e < source_.size(); ++e) {
    const LaurentPolynomial& poly = source_[e];
    if (poly.dimension() != unknowns) {
      throw std::invalid_argument("equation dimension does not match unknown count");
    }
    if (poly.is_zero()) {
      throw std::invalid_argument("identically zero equation in polynomial system");
    }
    TermTable table;
    table.exponents.resize(poly.term_count(), unknowns);
    table.coefficients.resize(poly.term_count());
    double coeff_sum = 0.0;
    int row = 0;
    for (const auto& [exps, coeff] : poly.terms()) {
      if (exps.minCoeff() < 0) {
        throw std::invalid_argument("polynomial system requires nonnegative exponents");
      }
      table.exponents.row(row) = exps.transpose();
      table.coefficients(row) = coeff;
      coeff_sum += std::abs(coeff);
      ++row;
    }
    tables_.push_back(std::move(table));
    degrees_.push_back(poly.total_degree());
    scales_(e) = std::max(1.0, coeff_sum);
  }
}

Eigen::VectorXcd PolynomialSystem::evaluate(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd out(tables_.size());
  for (std::size_t e = 0; e < tables_.size(); ++e) {
    const TermTable& table = tables_[e];
    Complex acc(0.0);
    for (Eigen::Index term = 0; term < table.coefficients.size(); ++term) {
      Complex value = table.coefficients(term);
      for (int j = 0; j < unknowns_; ++j) {
        const int exp = table.exponents(term, j);
        if (exp != 0) value *= int_pow_nonneg(x(j), exp);
      }
      acc += value;
    }
    out(e) = acc;
  }
  return out;
}

Eigen::MatrixXcd PolynomialSystem::jacobian(const Eigen::VectorXcd& x) const {
  Eigen::MatrixXcd out(tables_.size(), unknowns_);
  out.setZero();
  for (std::size_t e = 0; e < tables_.size(); ++e) {
    const TermTable& table = tables_[e];
    for (Eigen::Index term = 0; term < table.coefficients.size(); ++term) {
      for (int j = 0; j < unknowns_; ++j) {
        const int ej = table.exponents(term, j);
        if (ej == 0) continue;
        Complex value = table.coefficients(term) * static_cast<double>(ej);
        for (int k = 0; k < unknowns_; ++k) {
          const int exp = (k == j) ? table.exponents(term, k) - 1 : table.exponents(term, k);
          if (exp != 0) value *= int_pow_nonneg(x(k), exp);
        }
        out(e, j) += value;
      }
    }
  }
  return out;
}

double PolynomialSystem::relative_residual(const Eigen::VectorXcd& x) const {
  const Eigen::VectorXcd f = evaluate(x);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(f(i)) / scales_(i));
  }
  return worst;
}

StartSystem bezout_start(const std::vector<int>& degrees, std::uint64_t seed) {
  const int m = static_cast<int>(degrees.size());
  if (m < 1 || m > kMaxUnknowns) {
    throw std::invalid_argument("start system must have between 1 and 6 unknowns");
  }
  std::int64_t paths = 1;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("start system degree must be >= 1");
    paths *= d;
    if (paths > kMaxBezoutPaths) {
      throw std::invalid_argument("Bezout path count exceeds cap 20000");
    }
  }

  Rng rng(seed);
  std::vector<Complex> constants(m);
  for (int i = 0; i < m; ++i) constants[i] = rng.unit_complex();

  std::vector<LaurentPolynomial> equations;
  equations.reserve(m);
  for (int i = 0; i < m; ++i) {
    ExponentVector exps = ExponentVector::Zero(m);
    exps(i) = degrees[i];
    equations.push_back(LaurentPolynomial::monomial(m, exps, Complex(1.0)) -
                        LaurentPolynomial::constant(m, constants[i]));
  }

  // d_i-th roots of c_i per coordinate, enumerated odometer-style.
  std::vector<std::vector<Complex>> roots(m);
  for (int i = 0; i < m; ++i) {
    const double radius = std::pow(std::abs(constants[i]), 1.0 / degrees[i]);
    const double base_angle = std::arg(constants[i]) / degrees[i];
    for (int k = 0; k < degrees[i]; ++k) {
      const double angle = base_angle + 2.0 * std::numbers::pi * k / degrees[i];
      roots[i].push_back(Complex(radius * std::cos(angle), radius * std::sin(angle)));
    }
  }
  std::vector<Eigen::VectorXcd> points;
  points.reserve(static_cast<std::size_t>(paths));
  std::vector<int> odo(m, 0);
  for (;;) {
    Eigen::VectorXcd p(m);
    for (int i = 0; i < m; ++i) p(i) = roots[i][odo[i]];
    points.push_back(std::move(p));
    int axis = m - 1;
    while (axis >= 0 && ++odo[axis] == degrees[axis]) {
      odo[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return {PolynomialSystem(m, std::move(equations)), std::move(points)};
}

PathResult track_path(const PolynomialSystem& target, const PolynomialSystem& start,
                      const Eigen::VectorXcd& start_point, const TrackerConfig& cfg) {
  if (target.unknowns() != start.unknowns() ||
      target.equation_count() != start.equation_count()) {
    throw std::invalid_argument("start and target systems have mismatched shape");
  }
  if (start.relative_residual(start_point) > 1e-10) {
    throw std::invalid_argument("start point does not solve the start system");
  }

  Homotopy h{target, start, Rng(derive_seed(cfg.seed, kGammaTrickTag)).unit_complex()};

  PathResult result;
  Eigen::VectorXcd x = start_point;
  double t = 0.0;
  double dt = cfg.initial_step;
  int consecutive = 0;

  while (t < 1.0) {
    if (++result.steps > kMaxTrackerSteps) {
      result.outcome = PathOutcome::StepUnderflow;
      return result;
    }
    const double step = std::min(dt, 1.0 - t);
    bool ok = false;
    Eigen::VectorXcd candidate;
    if (auto predicted = rk4_predict(h, x, t, step)) {
      candidate = std::move(*predicted);
      ok = newton_correct(h, candidate, t + step, cfg.corrector_tolerance,
                          cfg.max_corrector_iterations);
    }
    if (ok) {
      x = candidate;
      t += step;
      if (++consecutive >= kSuccessesBeforeIncrease) {
        dt = std::min(dt * kStepIncreaseFactor, kMaxStep);
        consecutive = 0;
      }
      if (sup_norm(x) > cfg.divergence_threshold) {
        result.outcome = PathOutcome::Diverged;
        return result;
      }
    } else {
      dt *= 0.5;
      consecutive = 0;
      if (dt < cfg.min_step) {
        result.outcome = PathOutcome::StepUnderflow;
        return result;
      }
    }
  }
  result.outcome = PathOutcome::Converged;
  result.point = std::move(x);
  return result;
}

SolutionSet solve_square_system(const PolynomialSystem& system, const TrackerConfig& cfg) {
  if (system.equation_count() != system.unknowns()) {
    throw std::invalid_argument("solve_square_system requires a square system");
  }

  SolutionSet out;

  // A nonzero constant equation has no roots at all.
  for (int d : system.total_degrees()) {
    if (d == 0) return out;
  }

  const StartSystem start =
      bezout_start(system.total_degrees(), derive_seed(cfg.seed, kStartSystemTag));

  struct Endpoint {
    Eigen::VectorXcd point;
    double residual;
    double condition;  // scale-aware Jacobian condition estimate
  };
  std::vector<Endpoint> endpoints;
  const auto is_new_endpoint = [&](const Eigen::VectorXcd& p) {
    for (const Endpoint& e : endpoints) {
      const double scale = std::max({1.0, sup_norm(e.point), sup_norm(p)});
      if (sup_norm(e.point - p) <= cfg.dedup_radius * scale) return false;
    }
    return true;
  };

  // Sweep all paths; on stalled paths, repeat the whole sweep with a fresh
  // homotopy constant.  Stalled paths are artifacts of one constant's path
  // geometry, but a new constant also permutes which start root reaches which
  // endpoint, so only full sweeps (not per-path retries) are sound to merge.
  // Stats report the final sweep, i.e. what remains unresolved after retries.
  for (int sweep = 0; sweep < kMaxGammaSweeps; ++sweep) {
    TrackerConfig sweep_cfg = cfg;
    if (sweep > 0) {
      sweep_cfg.seed = derive_seed(cfg.seed, kGammaRetryTag + static_cast<std::uint64_t>(sweep));
    }
    PathStats stats;
    bool found_new = false;
    for (const auto& root : start.roots) {
      const PathResult path = track_path(system, start.system, root, sweep_cfg);
      switch (path.outcome) {
        case PathOutcome::Converged: {
          const Refinement refined =
              refine_endpoint(system, path.point, cfg.endpoint_tolerance);
          if (refined.residual <= cfg.corrector_tolerance) {
            const double condition = scaled_condition(system, refined.point);
            // Only regular novel endpoints count as retry progress: ghost
            // endpoints on spurious components move with every sweep and
            // would otherwise keep retries alive forever.
            if (condition <= cfg.singular_condition_threshold &&
                is_new_endpoint(refined.point)) {
              found_new = true;
            }
            endpoints.push_back({refined.point, refined.residual, condition});
            ++stats.converged;
          } else {
            ++stats.failed;
          }
          break;
        }
        case PathOutcome::Diverged:
          ++stats.diverged;
          break;
        case PathOutcome::StepUnderflow:
          ++stats.failed;
          break;
      }
    }
    out.path_stats = stats;
    if (stats.failed == 0) break;            // clean sweep: nothing left to recover
    if (sweep > 0 && !found_new) break;      // retries stopped paying off
  }

  std::sort(endpoints.begin(), endpoints.end(), [](const Endpoint& a, const Endpoint& b) {
    return canonical_point_less(a.point, b.point);
  });

  // Single-linkage clustering at the relative dedup radius.  A multiplicity-k
  // root is only locatable to about tol^(1/k), so two endpoints of the same
  // multiple root can land ~sqrt(tol) apart; pairs where both endpoints look
  // ill-conditioned (condition beyond the square root of the singularity
  // threshold) therefore merge at the square-root-scale radius instead.
  const int k = static_cast<int>(endpoints.size());
  const double suspicion_threshold = std::sqrt(cfg.singular_condition_threshold);
  const double singular_radius = std::sqrt(cfg.dedup_radius);
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<char> wide_merge(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double scale =
          std::max({1.0, sup_norm(endpoints[i].point), sup_norm(endpoints[j].point)});
      const double radius = (endpoints[i].condition > suspicion_threshold &&
                             endpoints[j].condition > suspicion_threshold)
                                ? singular_radius
                                : cfg.dedup_radius;
      const double distance = sup_norm(endpoints[i].point - endpoints[j].point);
      if (distance <= radius * scale) {
        // A pair that only merges thanks to the widened radius is spread at
        // multiple-root scale; remember that as a singularity witness.
        if (distance > cfg.dedup_radius * scale) wide_merge[i] = wide_merge[j] = 1;
        parent[find(i)] = find(j);
      }
    }
  }
  // Emit one representative per cluster (smallest residual, ties broken by
  // canonical order); clusters are ordered by their first member, which keeps
  // the output canonical because the endpoints are already sorted.
  std::vector<int> representative(k, -1);
  for (int i = 0; i < k; ++i) {
    int& rep = representative[find(i)];
    if (rep < 0 || endpoints[i].residual < endpoints[rep].residual) rep = i;
  }
  std::vector<bool> emitted(k, false);
  for (int i = 0; i < k; ++i) {
    const int root = find(i);
    if (emitted[root]) continue;
    emitted[root] = true;
    const Endpoint& e = endpoints[representative[root]];
    bool singular = e.condition > cfg.singular_condition_threshold;
    if (!singular) {
      // A wide merge anywhere in the cluster means its endpoints were spread
      // at multiple-root scale, which a tame representative condition does
      // not rule out (e.g. a double root of a univariate system).
      for (int j = 0; j < k; ++j) {
        if (wide_merge[j] && find(j) == root) {
          singular = true;
          break;
        }
      }
    }
    out.points.push_back(e.point);
    out.residuals.push_back(e.residual);
    out.singular.push_back(singular);
  }
  return out;
}

std::int64_t bkk_bound(const std::vector<LaurentPolynomial>& equations) {
  if (equations.empty()) throw std::invalid_argument("bkk_bound of empty system");
  const int n = equations.front().dimension();
  if (static_cast<int>(equations.size()) != n) {
    throw std::invalid_argument("bkk_bound requires a square system");
  }
  if (n > 4) throw std::invalid_argument("bkk_bound limited to dimension <= 4");
  std::vector<LatticePolytope> polytopes;
  polytopes.reserve(equations.size());
  for (const auto& eq : equations) polytopes.push_back(newton_polytope(eq));
  return mixed_volume(polytopes);
}

}  // namespace gaussrr
