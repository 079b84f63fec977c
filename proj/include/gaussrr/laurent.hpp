#pragma once

// Sparse Laurent polynomials over C in up to a handful of torus variables,
// plus the calculus the rest of the library is built on: parsing, evaluation
// at torus points, logarithmic derivatives, denominator clearing and monomial
// substitutions.

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gaussrr {

using Complex = std::complex<double>;

// Integer exponent vector of a Laurent monomial; entries may be negative.
using ExponentVector = Eigen::VectorXi;

// Relative threshold below which coefficients are dropped at construction.
inline constexpr double kCoefficientPrune = 1e-14;

// Magnitude below which a torus coordinate raised to a negative power is
// treated as an underflow error during evaluation.
inline constexpr double kEvaluationUnderflow = 1e-300;

// Graded lexicographic order: total degree first, then lex with earlier
// variables ranking higher.  Canonical term order for storage and printing.
struct GradedLexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

bool exponents_equal(const ExponentVector& a, const ExponentVector& b);

// A point of the algebraic torus (C*)^n: every coordinate is nonzero.
class TorusPoint {
 public:
  explicit TorusPoint(Eigen::VectorXcd coords);

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Eigen::VectorXcd& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_(i); }

 private:
  Eigen::VectorXcd coords_;
};

class LaurentPolynomial {
 public:
  using TermMap = std::map<ExponentVector, Complex, GradedLexLess>;

  // Zero polynomial in `dimension` variables.
  explicit LaurentPolynomial(int dimension);
  LaurentPolynomial(int dimension, TermMap terms);

  static LaurentPolynomial constant(int dimension, Complex value);
  static LaurentPolynomial monomial(int dimension, const ExponentVector& exponents,
                                    Complex coefficient);

  int dimension() const { return dimension_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int term_count() const { return static_cast<int>(terms_.size()); }

  // Support of the polynomial in canonical (graded-lex) order.
  std::vector<ExponentVector> support() const;

  // Maximum over terms of the sum of (possibly negative) exponents;
  // for polynomials with nonnegative exponents this is the total degree.
  // Zero polynomial has degree -1 by convention.
  int total_degree() const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial operator+(const LaurentPolynomial& rhs) const;
  LaurentPolynomial operator-(const LaurentPolynomial& rhs) const;
  LaurentPolynomial operator*(const LaurentPolynomial& rhs) const;
  LaurentPolynomial operator*(Complex scalar) const;

  friend LaurentPolynomial operator*(Complex scalar, const LaurentPolynomial& p) {
    return p * scalar;
  }

  // Exact structural equality of the normalized term maps.
  bool operator==(const LaurentPolynomial& rhs) const;

 private:
  void normalize();

  int dimension_;
  TermMap terms_;
};

// Parse failure; `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Parses the textual grammar
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*            (implicit '*' accepted)
//   factor := number | var ('^' int)? | '(' expr ')'
//   number := decimal, optional 'i' suffix
//   var    := 'x'|'y'|'z'|'w' | 'x'digits      (x1 is the first variable)
// into a polynomial in `dimension` variables.  Whitespace is insignificant.
LaurentPolynomial parse(std::string_view text, int dimension);

// Canonical formatting: terms in graded-lex order, deterministic coefficient
// rendering; parse(format(f), n) == f.
std::string format(const LaurentPolynomial& poly);

// Evaluates at a torus point.  Throws std::domain_error when a coordinate of
// magnitude < 1e-300 is raised to a negative power.
Complex evaluate(const LaurentPolynomial& poly, const TorusPoint& point);

// Logarithmic derivative along `axis` (0-based): theta_i f = z_i d f / d z_i,
// i.e. the coefficient of z^a picks up a factor a_i.
LaurentPolynomial log_derivative(const LaurentPolynomial& poly, int axis);

struct ClearedForm {
  LaurentPolynomial poly;   // z^shift * f, all exponents >= 0
  ExponentVector shift;     // may have negative entries when f had excess
};

// Multiplies by the unique monomial that makes every exponent nonnegative
// with at least one zero exponent per axis.
ClearedForm clear_denominators(const LaurentPolynomial& poly);

// Monomial substitution z_i -> c_i * z^{M e_i} for a unimodular integer
// matrix M (columns M e_i) and torus point c: each term c_a z^a becomes
// (c_a prod_i c_i^{a_i}) z^{M a}.  Throws std::invalid_argument when M is
// not unimodular or dimensions disagree.
LaurentPolynomial substitute(const LaurentPolynomial& poly, const Eigen::MatrixXi& M,
                             const TorusPoint& c);

// Integer determinant via fraction-free expansion; small matrices only.
std::int64_t integer_determinant(const Eigen::MatrixXi& M);

}  // namespace gaussrr
