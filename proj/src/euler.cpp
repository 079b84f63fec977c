#include "gaussrr/euler.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>

#include "gaussrr/rng.hpp"

namespace gaussrr {

namespace {

// Residual threshold for accepting a candidate as a genuine common zero of
// the full face system.
constexpr double kFaceResidualTolerance = 1e-9;
// Looser threshold used only to validate the back-mapped witness before
// attaching it to the report.
constexpr double kWitnessResidualTolerance = 1e-6;

std::int64_t sign_for_dimension(int n) { return (n - 1) % 2 == 0 ? 1 : -1; }

void require_hypersurface_input(const LaurentPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no hypersurface");
  if (f.is_monomial()) {
    throw MonomialInputError("single-term polynomial cuts out the empty variety");
  }
  if (f.dimension() < 1 || f.dimension() > 3) {
    throw std::invalid_argument("Euler-characteristic oracles support 1 <= n <= 3");
  }
}

double residual_scale(const LaurentPolynomial& poly) {
  double sum = 0.0;
  for (const auto& [exponents, coeff] : poly.terms()) sum += std::abs(coeff);
  return std::max(1.0, sum);
}

//---------------------------------------------------------------------------
// Face enumeration.
//---------------------------------------------------------------------------

struct FaceData {
  std::vector<std::pair<ExponentVector, Complex>> terms;
  std::vector<LatticeVector> vertices;  // lex-sorted face vertices
  bool is_full_polytope = false;
};

bool on_segment(const LatticeVector& a, const LatticeVector& b, const ExponentVector& p) {
  const std::int64_t ux = b(0) - a(0), uy = b(1) - a(1);
  const std::int64_t vx = p(0) - a(0), vy = p(1) - a(1);
  if (ux * vy - uy * vx != 0) return false;
  const std::int64_t dot = ux * vx + uy * vy;
  return dot >= 0 && dot <= ux * ux + uy * uy;
}

bool lattice_lex_less(const LatticeVector& a, const LatticeVector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

// Proper positive-dimensional faces followed by the full polytope; vertex
// faces are single monomials and never degenerate, so they are omitted.
std::vector<FaceData> enumerate_faces(const LaurentPolynomial& f, const LatticePolytope& np) {
  const int n = f.dimension();
  std::vector<FaceData> faces;

  FaceData full;
  for (const auto& [exponents, coeff] : f.terms()) full.terms.emplace_back(exponents, coeff);
  full.vertices = np.vertices();
  full.is_full_polytope = true;

  if (n == 2 && np.affine_dimension() == 2) {
    const std::vector<LatticeVector> ring = ccw_vertex_ring(np);
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
      const LatticeVector& a = ring[i];
      const LatticeVector& b = ring[(i + 1) % m];
      FaceData edge;
      for (const auto& [exponents, coeff] : f.terms()) {
        if (on_segment(a, b, exponents)) edge.terms.emplace_back(exponents, coeff);
      }
      edge.vertices = lattice_lex_less(a, b) ? std::vector<LatticeVector>{a, b}
                                             : std::vector<LatticeVector>{b, a};
      faces.push_back(std::move(edge));
    }
  }

  faces.push_back(std::move(full));
  return faces;
}

//---------------------------------------------------------------------------
// Intrinsic lattice coordinates of a face.
//---------------------------------------------------------------------------

// Integer row-echelon basis of the lattice spanned by the input rows:
// row i has its pivot at column pivots[i], positive there, with zeros in
// that column on every later row.  Row operations are invertible over the
// integers, so the row lattice is preserved.
struct EchelonBasis {
  std::vector<ExponentVector> rows;
  std::vector<int> pivots;
};

EchelonBasis integer_row_echelon(std::vector<ExponentVector> rows, int n) {
  EchelonBasis basis;
  std::size_t r = 0;
  for (int col = 0; col < n && r < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i](col) != 0 &&
            (best == rows.size() || std::abs(rows[i](col)) < std::abs(rows[best](col)))) {
          best = i;
        }
      }
      if (best == rows.size()) break;  // column already clear below r
      std::swap(rows[r], rows[best]);
      bool column_clear = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i](col) == 0) continue;
        rows[i] -= (rows[i](col) / rows[r](col)) * rows[r];
        if (rows[i](col) != 0) column_clear = false;  // Euclidean remainder
      }
      if (column_clear) {
        if (rows[r](col) < 0) rows[r] = -rows[r];
        basis.rows.push_back(rows[r]);
        basis.pivots.push_back(col);
        ++r;
        break;
      }
    }
  }
  return basis;
}

// Exact coordinates of a lattice vector in the echelon basis; the input is
// guaranteed to lie in the row lattice, so every division is exact.
ExponentVector coordinates_in_basis(const EchelonBasis& basis, ExponentVector v) {
  const int k = static_cast<int>(basis.rows.size());
  ExponentVector u(k);
  for (int i = 0; i < k; ++i) {
    const int pivot = basis.pivots[static_cast<std::size_t>(i)];
    const int divisor = basis.rows[static_cast<std::size_t>(i)](pivot);
    if (v(pivot) % divisor != 0) {
      throw std::logic_error("face support point escapes its difference lattice");
    }
    u(i) = v(pivot) / divisor;
    v -= u(i) * basis.rows[static_cast<std::size_t>(i)];
  }
  if (k > 0 && v.cwiseAbs().maxCoeff() != 0) {
    throw std::logic_error("face support point escapes its difference lattice");
  }
  return u;
}

struct ReducedFace {
  LaurentPolynomial g;  // face polynomial in intrinsic coordinates w_1..w_k
  EchelonBasis basis;   // k lattice rows of length n
  ExponentVector base;  // subtracted support point a_0
};

ReducedFace reduce_face(const FaceData& face, int n) {
  const ExponentVector& base = face.terms.front().first;
  std::vector<ExponentVector> differences;
  differences.reserve(face.terms.size() - 1);
  for (std::size_t t = 1; t < face.terms.size(); ++t) {
    differences.push_back(face.terms[t].first - base);
  }
  EchelonBasis basis = integer_row_echelon(std::move(differences), n);

  const int k = static_cast<int>(basis.rows.size());
  LaurentPolynomial::TermMap terms;
  for (const auto& [exponents, coeff] : face.terms) {
    terms.emplace(coordinates_in_basis(basis, exponents - base), coeff);
  }
  return ReducedFace{LaurentPolynomial(k, std::move(terms)), std::move(basis), base};
}

//---------------------------------------------------------------------------
// Critical-point search on a reduced face.
//---------------------------------------------------------------------------

// Searches for a common torus zero of {g, theta_1 g, ..., theta_k g} by
// solving each of the k+1 square subsystems obtained by dropping one
// equation, then screening every torus candidate against the full system.
std::optional<Eigen::VectorXcd> face_critical_point(const LaurentPolynomial& g,
                                                    const GdegConfig& cfg,
                                                    std::uint64_t face_tag) {
  const int k = g.dimension();
  std::vector<LaurentPolynomial> equations;
  equations.reserve(static_cast<std::size_t>(k) + 1);
  equations.push_back(g);
  for (int j = 0; j < k; ++j) equations.push_back(log_derivative(g, j));

  std::vector<Eigen::VectorXcd> candidates;
  for (int drop = 0; drop <= k; ++drop) {
    std::vector<LaurentPolynomial> subsystem;
    subsystem.reserve(static_cast<std::size_t>(k));
    bool empty_by_constant = false;
    for (int e = 0; e <= k; ++e) {
      if (e == drop) continue;
      LaurentPolynomial cleared = clear_denominators(equations[static_cast<std::size_t>(e)]).poly;
      if (cleared.total_degree() == 0) {
        empty_by_constant = true;  // nonzero constant: no torus zeros
        break;
      }
      subsystem.push_back(std::move(cleared));
    }
    if (empty_by_constant) continue;

    TrackerConfig tracker = cfg.tracker;
    tracker.seed = derive_seed(cfg.seed, face_tag * 16 + static_cast<std::uint64_t>(drop) + 1);
    const SolutionSet solutions = solve_square_system(PolynomialSystem(k, subsystem), tracker);
    for (const Eigen::VectorXcd& point : solutions.points) {
      if (point.cwiseAbs().minCoeff() > cfg.torus_filter) candidates.push_back(point);
    }
  }

  for (const Eigen::VectorXcd& candidate : candidates) {
    const TorusPoint point(candidate);
    double worst = 0.0;
    for (const LaurentPolynomial& equation : equations) {
      worst = std::max(worst, std::abs(evaluate(equation, point)) / residual_scale(equation));
    }
    if (worst <= kFaceResidualTolerance) return candidate;
  }
  return std::nullopt;
}

// Maps a critical point w of the reduced face back to the original torus:
// z = exp(B^T (B B^T)^{-1} log w), so that z^{a - a_0} = w^{u(a)} exactly for
// every face exponent a.
Eigen::VectorXcd map_witness(const EchelonBasis& basis, int n, const Eigen::VectorXcd& w) {
  const int k = static_cast<int>(basis.rows.size());
  Eigen::MatrixXd b(k, n);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = static_cast<double>(basis.rows[static_cast<std::size_t>(i)](j));
  }
  Eigen::VectorXd log_re(k);
  Eigen::VectorXd log_im(k);
  for (int i = 0; i < k; ++i) {
    const Complex logw = std::log(w(i));
    log_re(i) = logw.real();
    log_im(i) = logw.imag();
  }
  const Eigen::LLT<Eigen::MatrixXd> gram((b * b.transpose()).eval());
  const Eigen::VectorXd exponent_re = b.transpose() * gram.solve(log_re);
  const Eigen::VectorXd exponent_im = b.transpose() * gram.solve(log_im);
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z(j) = std::exp(Complex(exponent_re(j), exponent_im(j)));
  return z;
}

}  // namespace

//---------------------------------------------------------------------------
// Euler-characteristic oracles.
//---------------------------------------------------------------------------

ChiReport chi_nondegenerate_hypersurface(const LaurentPolynomial& f) {
  require_hypersurface_input(f);
  const int n = f.dimension();
  ChiReport report;
  report.chi = sign_for_dimension(n) * normalized_volume(newton_polytope(f));
  report.method = n == 1 ? ChiMethod::OneDim : ChiMethod::Khovanskii;
  return report;
}

ChiReport chi_curve_pick(const LaurentPolynomial& f) {
  require_hypersurface_input(f);
  if (f.dimension() != 2) {
    throw std::invalid_argument("the Pick route requires a curve in the 2-torus");
  }
  const LatticePolytope np = newton_polytope(f);
  if (np.affine_dimension() != 2) {
    throw std::invalid_argument("the Pick route requires a full-dimensional Newton polygon");
  }
  const LatticePointCounts counts = lattice_point_counts(np);
  ChiReport report;
  report.chi = -(2 * counts.interior + counts.boundary - 2);
  report.method = ChiMethod::Pick;
  if (report.chi != -normalized_volume(np)) {
    throw std::logic_error("Pick count disagrees with the polygon volume");
  }
  return report;
}

std::int64_t chi_complement(const LaurentPolynomial& f) {
  return -chi_nondegenerate_hypersurface(f).chi;
}

//---------------------------------------------------------------------------
// Nondegeneracy.
//---------------------------------------------------------------------------

NondegeneracyReport nondegeneracy_check(const LaurentPolynomial& f, const GdegConfig& cfg) {
  require_hypersurface_input(f);
  const int n = f.dimension();
  const LatticePolytope np = newton_polytope(f);

  NondegeneracyReport report;
  if (n == 3 && np.affine_dimension() < 3) {
    report.verdict = NondegeneracyVerdict::Inconclusive;
    report.note =
        "lower-dimensional Newton polytope: at n = 3 only the full-dimensional "
        "face can be examined";
    return report;
  }

  const std::vector<FaceData> faces = enumerate_faces(f, np);
  for (std::size_t tag = 0; tag < faces.size(); ++tag) {
    const FaceData& face = faces[tag];
    const ReducedFace reduced = reduce_face(face, n);
    const std::optional<Eigen::VectorXcd> critical =
        face_critical_point(reduced.g, cfg, static_cast<std::uint64_t>(tag));
    if (!critical) continue;

    report.verdict = NondegeneracyVerdict::Degenerate;
    report.face_vertices = face.vertices;
    report.face_is_full_polytope = face.is_full_polytope;
    report.note = face.is_full_polytope
                      ? "critical torus point on the full-dimensional face"
                      : "critical torus point on a proper face";

    // Back-map the intrinsic witness and re-verify it against the face
    // polynomial in the original coordinates before reporting it.
    const Eigen::VectorXcd z = map_witness(reduced.basis, n, *critical);
    LaurentPolynomial::TermMap face_terms;
    for (const auto& [exponents, coeff] : face.terms) face_terms.emplace(exponents, coeff);
    const LaurentPolynomial face_poly(n, std::move(face_terms));
    const TorusPoint point(z);
    double worst = std::abs(evaluate(face_poly, point)) / residual_scale(face_poly);
    for (int i = 0; i < n; ++i) {
      const LaurentPolynomial derivative = log_derivative(face_poly, i);
      if (derivative.is_zero()) continue;
      worst = std::max(worst, std::abs(evaluate(derivative, point)) / residual_scale(derivative));
    }
    if (worst <= kWitnessResidualTolerance) {
      report.witness = z;
    } else {
      report.note += "; witness back-mapping did not re-verify and was withheld";
    }
    return report;
  }

  if (n == 3) {
    report.verdict = NondegeneracyVerdict::Inconclusive;
    report.note =
        "full-dimensional face has no critical torus point; proper faces are "
        "not examined at n = 3";
  } else {
    report.verdict = NondegeneracyVerdict::Nondegenerate;
  }
  return report;
}

}  // namespace gaussrr
