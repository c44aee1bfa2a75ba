#pragma once

// Exact multivariate polynomials over Q, standing in for smooth functions on R^n.


#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clinf/rational.hpp"

namespace clinf {


/// Parses `p/q` or an integer. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Exponent vector packed one byte per variable.
class Monomial {
 public:
  static constexpr std::size_t kMaxVars = 8;
  static constexpr unsigned kMaxExponent = 255;

  Monomial() = default;
  static Monomial variable(std::size_t i);

  unsigned exponent(std::size_t i) const { return static_cast<unsigned>((bits_ >> (8 * i)) & 0xffu); }
  void set_exponent(std::size_t i, unsigned e);
  unsigned total_degree() const;
  bool is_one() const { return bits_ == 0; }

  /// Throws std::overflow_error if some exponent would exceed kMaxExponent.
  Monomial operator*(const Monomial& other) const;

  std::uint64_t bits() const { return bits_; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.bits_ < b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// Polynomial in x_1..x_n with rational coefficients. Variables are 0-based in
/// the C++ API and 1-based (`x1`, `x2`, ...) in text.
///
/// Invariant: no stored term has a zero coefficient, so structural equality is
/// equality of polynomials.
class Poly {
 public:
  /// Sorted by Monomial, no zero coefficients, no repeated monomials.
  using Terms = std::vector<std::pair<Monomial, Rational>>;

  Poly() = default;
  explicit Poly(std::size_t nvars);
  Poly(std::size_t nvars, const Rational& c);

  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(std::size_t nvars, const Monomial& m, const Rational& c);

  /// Parses sums of terms `c * x1^a1 * x2^a2 ...`, e.g. `3/2*x1^2*x2 - x3`.
  static Poly parse(std::string_view text, std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  /// Largest total degree; -1 for the zero polynomial.
  int total_degree() const;

  /// Formal partial derivative with respect to x_i (0-based).
  Poly derivative(std::size_t i) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// Graded-lex descending, `x1` largest; zero prints as `0`.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void merge(const Poly& other, bool subtract);
  void check_same_ring(const Poly& other, const char* op) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Applies `op` to the operands; the string-tagged form used by the CLI.
enum class PolyOp { add, sub, mul };
Poly poly_arith(const Poly& p, const Poly& q, PolyOp op);

/// 1-based variable index, as written in input files. Throws std::out_of_range.
Poly partial_derivative(const Poly& p, std::size_t one_based_index);

}  // namespace clinf
