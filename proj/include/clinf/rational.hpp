#pragma once

// Exact rational numbers. Values that fit a reduced int64 fraction stay inline;
// anything larger is held as a GMP mpq_class. Results are always canonical
// (lowest terms, positive denominator) and demoted back to the inline form
// whenever they fit, so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace clinf {

class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      num_ = static_cast<std::int64_t>(n);
    } else {
      if (static_cast<std::uint64_t>(n) > static_cast<std::uint64_t>(INT64_MAX)) {
        set_big(mpq_class(mpz_class(std::to_string(n))));
        return;
      }
      num_ = static_cast<std::int64_t>(n);
    }
  }
  /// n/d in lowest terms. Throws std::invalid_argument if d == 0.
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses `p/q` or an integer of any size. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  bool is_small() const { return !big_; }
  mpq_class to_mpq() const;
  int sign() const;
  bool is_integer() const;
  /// `p/q` or `p`.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void set_big(const mpq_class& q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& q);

}  // namespace clinf
