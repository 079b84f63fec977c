#include "gaussrr/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gaussrr {

namespace {

// Largest exponent magnitude accepted by the parser; inputs beyond this are
// outside the supported envelope and rejected loudly.
constexpr int kExponentCap = 32;

Complex int_pow(Complex base, int exponent) {
  if (exponent < 0) {
    if (std::abs(base) < kEvaluationUnderflow) {
      throw std::domain_error(
          "evaluation underflow: near-zero coordinate raised to negative power");
    }
    base = Complex(1.0) / base;
    exponent = -exponent;
  }
  Complex result(1.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

bool GradedLexLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
  const int da = a.sum();
  const int db = b.sum();
  if (da != db) return da < db;
  // Within a grade, earlier variables rank higher (so x precedes y in print).
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return a.size() < b.size();
}

bool exponents_equal(const ExponentVector& a, const ExponentVector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

TorusPoint::TorusPoint(Eigen::VectorXcd coords) : coords_(std::move(coords)) {
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (coords_(i) == Complex(0.0)) {
      throw std::invalid_argument("torus point has a zero coordinate");
    }
  }
}

LaurentPolynomial::LaurentPolynomial(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
}

LaurentPolynomial::LaurentPolynomial(int dimension, TermMap terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  normalize();
}

LaurentPolynomial LaurentPolynomial::constant(int dimension, Complex value) {
  TermMap terms;
  terms.emplace(ExponentVector::Zero(dimension), value);
  return LaurentPolynomial(dimension, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::monomial(int dimension, const ExponentVector& exponents,
                                              Complex coefficient) {
  TermMap terms;
  terms.emplace(exponents, coefficient);
  return LaurentPolynomial(dimension, std::move(terms));
}

void LaurentPolynomial::normalize() {
  double max_mag = 0.0;
  for (const auto& [exps, coeff] : terms_) {
    if (exps.size() != dimension_) {
      throw std::logic_error("exponent vector size does not match polynomial dimension");
    }
    max_mag = std::max(max_mag, std::abs(coeff));
  }
  const double threshold = kCoefficientPrune * max_mag;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= threshold || it->second == Complex(0.0)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<ExponentVector> LaurentPolynomial::support() const {
  std::vector<ExponentVector> result;
  result.reserve(terms_.size());
  for (const auto& [exps, coeff] : terms_) result.push_back(exps);
  return result;
}

int LaurentPolynomial::total_degree() const {
  int degree = -1;
  for (const auto& [exps, coeff] : terms_) degree = std::max(degree, exps.sum());
  return degree;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  TermMap terms = terms_;
  for (auto& [exps, coeff] : terms) coeff = -coeff;
  return LaurentPolynomial(dimension_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& rhs) const {
  if (dimension_ != rhs.dimension_) {
    throw std::invalid_argument("polynomial dimension mismatch in +");
  }
  TermMap terms = terms_;
  for (const auto& [exps, coeff] : rhs.terms_) terms[exps] += coeff;
  return LaurentPolynomial(dimension_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& rhs) const {
  return *this + (-rhs);
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& rhs) const {
  if (dimension_ != rhs.dimension_) {
    throw std::invalid_argument("polynomial dimension mismatch in *");
  }
  TermMap terms;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      terms[ea + eb] += ca * cb;
    }
  }
  return LaurentPolynomial(dimension_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::operator*(Complex scalar) const {
  TermMap terms = terms_;
  for (auto& [exps, coeff] : terms) coeff *= scalar;
  return LaurentPolynomial(dimension_, std::move(terms));
}

bool LaurentPolynomial::operator==(const LaurentPolynomial& rhs) const {
  if (dimension_ != rhs.dimension_ || terms_.size() != rhs.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = rhs.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (!exponents_equal(it->first, jt->first) || it->second != jt->second) return false;
  }
  return true;
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
      position_(position) {}

namespace {

// --- Recursive-descent parser over the term grammar ---

struct Token {
  enum Kind { Number, Var, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  std::size_t pos = 0;
  Complex value;  // Number
  int axis = -1;  // Var
};

class Lexer {
 public:
  Lexer(std::string_view text, int dimension) : text_(text), dimension_(dimension) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::End;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '+': current_.kind = Token::Plus; ++pos_; return;
      case '-': current_.kind = Token::Minus; ++pos_; return;
      case '*': current_.kind = Token::Star; ++pos_; return;
      case '^': current_.kind = Token::Caret; ++pos_; return;
      case '(': current_.kind = Token::LParen; ++pos_; return;
      case ')': current_.kind = Token::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
      lex_variable();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void lex_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    // Optional exponent part, e.g. 2.5e-3.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t e = pos_ + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        ++e;
        while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
        pos_ = e;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      throw ParseError("malformed number", start);
    }
    bool imaginary = false;
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      imaginary = true;
      ++pos_;
    }
    current_.kind = Token::Number;
    current_.pos = start;
    current_.value = imaginary ? Complex(0.0, value) : Complex(value);
  }

  void lex_variable() {
    const std::size_t start = pos_;
    const char c = text_[pos_++];
    int axis;
    if (c == 'x' && pos_ < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      // Indexed form x1, x2, ...
      int index = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + (text_[pos_] - '0');
        if (index > 1000) throw ParseError("variable index out of range", start);
        ++pos_;
      }
      if (index < 1) throw ParseError("variable index must be >= 1", start);
      axis = index - 1;
    } else if (dimension_ == 1) {
      axis = 0;  // univariate input may use any of the four letters
    } else {
      axis = (c == 'x') ? 0 : (c == 'y') ? 1 : (c == 'z') ? 2 : 3;
    }
    if (axis >= dimension_) {
      throw ParseError(std::string("variable '") + std::string(text_.substr(start, pos_ - start)) +
                           "' exceeds dimension " + std::to_string(dimension_),
                       start);
    }
    current_.kind = Token::Var;
    current_.pos = start;
    current_.axis = axis;
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view text, int dimension) : lexer_(text, dimension), dimension_(dimension) {}

  LaurentPolynomial run() {
    LaurentPolynomial result = parse_expr();
    if (lexer_.peek().kind != Token::End) {
      throw ParseError("unexpected trailing input", lexer_.peek().pos);
    }
    return result;
  }

 private:
  LaurentPolynomial parse_expr() {
    bool negate = false;
    if (lexer_.peek().kind == Token::Plus) {
      lexer_.next();
    } else if (lexer_.peek().kind == Token::Minus) {
      negate = true;
      lexer_.next();
    }
    LaurentPolynomial acc = parse_term();
    if (negate) acc = -acc;
    while (lexer_.peek().kind == Token::Plus || lexer_.peek().kind == Token::Minus) {
      const bool minus = lexer_.next().kind == Token::Minus;
      LaurentPolynomial term = parse_term();
      acc = minus ? acc - term : acc + term;
    }
    return acc;
  }

  LaurentPolynomial parse_term() {
    LaurentPolynomial acc = parse_factor();
    for (;;) {
      const Token::Kind k = lexer_.peek().kind;
      if (k == Token::Star) {
        lexer_.next();
        acc = acc * parse_factor();
      } else if (k == Token::Number || k == Token::Var || k == Token::LParen) {
        acc = acc * parse_factor();  // implicit multiplication, e.g. "2x"
      } else {
        return acc;
      }
    }
  }

  LaurentPolynomial parse_factor() {
    const Token t = lexer_.peek();
    switch (t.kind) {
      case Token::Number:
        lexer_.next();
        return LaurentPolynomial::constant(dimension_, t.value);
      case Token::Var: {
        lexer_.next();
        int exponent = 1;
        if (lexer_.peek().kind == Token::Caret) {
          lexer_.next();
          exponent = parse_integer();
        }
        ExponentVector exps = ExponentVector::Zero(dimension_);
        exps(t.axis) = exponent;
        return LaurentPolynomial::monomial(dimension_, exps, Complex(1.0));
      }
      case Token::LParen: {
        lexer_.next();
        LaurentPolynomial inner = parse_expr();
        if (lexer_.peek().kind != Token::RParen) {
          throw ParseError("expected ')'", lexer_.peek().pos);
        }
        lexer_.next();
        return inner;
      }
      default:
        throw ParseError("expected number, variable or '('", t.pos);
    }
  }

  int parse_integer() {
    int sign = 1;
    if (lexer_.peek().kind == Token::Minus) {
      sign = -1;
      lexer_.next();
    } else if (lexer_.peek().kind == Token::Plus) {
      lexer_.next();
    }
    const Token t = lexer_.peek();
    if (t.kind != Token::Number || t.value.imag() != 0.0 ||
        t.value.real() != std::floor(t.value.real())) {
      throw ParseError("expected integer exponent", t.pos);
    }
    lexer_.next();
    const double v = sign * t.value.real();
    if (std::abs(v) > kExponentCap) {
      throw ParseError("exponent magnitude exceeds cap " + std::to_string(kExponentCap), t.pos);
    }
    return static_cast<int>(v);
  }

  Lexer lexer_;
  int dimension_;
};

// --- Canonical formatting helpers ---

std::string format_real(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string variable_name(int axis, int dimension) {
  if (dimension <= 4) {
    static const char* names[4] = {"x", "y", "z", "w"};
    return names[axis];
  }
  return "x" + std::to_string(axis + 1);
}

std::string format_monomial(const ExponentVector& exps, int dimension) {
  std::string out;
  for (int i = 0; i < dimension; ++i) {
    if (exps(i) == 0) continue;
    if (!out.empty()) out += "*";
    out += variable_name(i, dimension);
    if (exps(i) != 1) out += "^" + std::to_string(exps(i));
  }
  return out;
}

// Renders one term as (negative-sign flag, body without sign).
std::pair<bool, std::string> format_term(const ExponentVector& exps, Complex coeff,
                                         int dimension) {
  const std::string mono = format_monomial(exps, dimension);
  const double re = coeff.real();
  const double im = coeff.imag();
  if (im == 0.0) {
    const bool neg = re < 0.0;
    const double mag = std::abs(re);
    if (mono.empty()) return {neg, format_real(mag)};
    if (mag == 1.0) return {neg, mono};
    return {neg, format_real(mag) + "*" + mono};
  }
  if (re == 0.0) {
    const bool neg = im < 0.0;
    const std::string body = format_real(std::abs(im)) + "i";
    if (mono.empty()) return {neg, body};
    return {neg, body + "*" + mono};
  }
  std::string body = "(" + format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) +
                     "i" + ")";
  if (!mono.empty()) body += "*" + mono;
  return {false, body};
}

}  // namespace

LaurentPolynomial parse(std::string_view text, int dimension) {
  if (dimension < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("empty input", 0);
  }
  return Parser(text, dimension).run();
}

std::string format(const LaurentPolynomial& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [exps, coeff] : poly.terms()) {
    const auto [neg, body] = format_term(exps, coeff, poly.dimension());
    if (first) {
      if (neg) out += "-";
      out += body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

Complex evaluate(const LaurentPolynomial& poly, const TorusPoint& point) {
  if (point.dimension() != poly.dimension()) {
    throw std::invalid_argument("point dimension does not match polynomial");
  }
  Complex acc(0.0);
  for (const auto& [exps, coeff] : poly.terms()) {
    Complex term = coeff;
    for (int i = 0; i < poly.dimension(); ++i) {
      if (exps(i) != 0) term *= int_pow(point[i], exps(i));
    }
    acc += term;
  }
  return acc;
}

LaurentPolynomial log_derivative(const LaurentPolynomial& poly, int axis) {
  if (axis < 0 || axis >= poly.dimension()) {
    throw std::invalid_argument("log_derivative axis out of range");
  }
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : poly.terms()) {
    if (exps(axis) != 0) terms.emplace(exps, coeff * static_cast<double>(exps(axis)));
  }
  return LaurentPolynomial(poly.dimension(), std::move(terms));
}

ClearedForm clear_denominators(const LaurentPolynomial& poly) {
  const int n = poly.dimension();
  ExponentVector shift = ExponentVector::Zero(n);
  if (poly.is_zero()) return {poly, shift};
  ExponentVector min_exps = poly.terms().begin()->first;
  for (const auto& [exps, coeff] : poly.terms()) {
    min_exps = min_exps.cwiseMin(exps);
  }
  shift = -min_exps;
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : poly.terms()) {
    terms.emplace(exps + shift, coeff);
  }
  return {LaurentPolynomial(n, std::move(terms)), shift};
}

LaurentPolynomial substitute(const LaurentPolynomial& poly, const Eigen::MatrixXi& M,
                             const TorusPoint& c) {
  const int n = poly.dimension();
  if (M.rows() != n || M.cols() != n) {
    throw std::invalid_argument("substitution matrix must be n x n");
  }
  if (c.dimension() != n) {
    throw std::invalid_argument("translation point dimension mismatch");
  }
  const std::int64_t det = integer_determinant(M);
  if (det != 1 && det != -1) {
    throw std::invalid_argument("substitution matrix is not unimodular (det = " +
                                std::to_string(det) + ")");
  }
  LaurentPolynomial::TermMap terms;
  for (const auto& [exps, coeff] : poly.terms()) {
    Complex scaled = coeff;
    for (int i = 0; i < n; ++i) {
      if (exps(i) != 0) scaled *= int_pow(c[i], exps(i));
    }
    terms.emplace(M * exps, scaled);  // injective since M is unimodular
  }
  return LaurentPolynomial(n, std::move(terms));
}

std::int64_t integer_determinant(const Eigen::MatrixXi& M) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return M(0, 0);
  if (n == 2) {
    return static_cast<std::int64_t>(M(0, 0)) * M(1, 1) -
           static_cast<std::int64_t>(M(0, 1)) * M(1, 0);
  }
  // Cofactor expansion along the first row; fine for the small n used here.
  std::int64_t det = 0;
  Eigen::MatrixXi minor(n - 1, n - 1);
  for (int j = 0; j < n; ++j) {
    if (M(0, j) == 0) continue;
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int col = 0; col < n; ++col) {
        if (col == j) continue;
        minor(r - 1, cc++) = M(r, col);
      }
    }
    const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    det += sign * M(0, j) * integer_determinant(minor);
  }
  return det;
}

}  // namespace gaussrr
