#include "clinf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace clinf {

Rational parse_rational(std::string_view text) { return Rational::parse(text); }

std::string to_string(const Rational& q) { return q.to_string(); }

Monomial Monomial::variable(std::size_t i) {
  Monomial m;
  m.set_exponent(i, 1);
  return m;
}

void Monomial::set_exponent(std::size_t i, unsigned e) {
  if (i >= kMaxVars) throw std::out_of_range("variable index exceeds Monomial::kMaxVars");
  if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
  bits_ = (bits_ & ~(std::uint64_t{0xff} << (8 * i))) | (std::uint64_t{e} << (8 * i));
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) d += exponent(i);
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;
  if (((bits_ | other.bits_) & kHighBits) == 0) {
    r.bits_ = bits_ + other.bits_;
    return r;
  }
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = exponent(i) + other.exponent(i);
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    r.bits_ |= std::uint64_t{e} << (8 * i);
  }
  return r;
}

Poly::Poly(std::size_t nvars) : nvars_(nvars) {
  if (nvars > Monomial::kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(Monomial::kMaxVars) + " variables supported");
}

Poly::Poly(std::size_t nvars, const Rational& c) : Poly(nvars) { add_term(Monomial{}, c); }

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::variable(i), 1);
}

Poly Poly::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  Poly p(nvars);
  for (std::size_t i = nvars; i < Monomial::kMaxVars; ++i)
    if (m.exponent(i) != 0) throw std::out_of_range("monomial uses a variable outside the ring");
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  return !terms_.empty() && terms_.front().first.is_one() ? terms_.front().second : Rational{0};
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
  return d;
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("partial derivative index out of range");
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(i);
    if (e == 0) continue;
    Monomial dm = m;
    dm.set_exponent(i, e - 1);
    // Lowering the same exponent in every term keeps the monomial order.
    r.terms_.emplace_back(dm, c * e);
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const auto& t, const Monomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.emplace(it, m, c);
  }
}

void Poly::merge(const Poly& other, bool subtract) {
  if (other.terms_.empty()) return;
  if (terms_.empty() && !subtract) {
    terms_ = other.terms_;
    return;
  }
  Terms out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, subtract ? -b->second : b->second);
      ++b;
    } else {
      Rational sum = std::move(a->second);
      if (subtract) sum -= b->second;
      else sum += b->second;
      if (sum != 0) out.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

void Poly::check_same_ring(const Poly& other, const char* op) const {
  if (nvars_ != other.nvars_)
    throw std::invalid_argument(std::string{"dimension mismatch in polynomial "} + op + ": " +
                                std::to_string(nvars_) + " vs " + std::to_string(other.nvars_));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_same_ring(other, "addition");
  merge(other, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same_ring(other, "subtraction");
  merge(other, true);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_ring(b, "multiplication");
  Poly r(a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<std::pair<Monomial, Rational>> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) products.emplace_back(ma * mb, ca * cb);
  std::sort(products.begin(), products.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < products.size();) {
    Rational sum = std::move(products[i].second);
    std::size_t j = i + 1;
    for (; j < products.size() && products[j].first == products[i].first; ++j) sum += products[j].second;
    if (sum != 0) r.terms_.emplace_back(products[i].first, std::move(sum));
    i = j;
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  Terms sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [this](const auto& a, const auto& b) {
    unsigned da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (a.first.exponent(i) != b.first.exponent(i)) return a.first.exponent(i) > b.first.exponent(i);
    return false;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || m.is_one()) {
      out << mag.to_string();
      need_star = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      unsigned e = m.exponent(i);
      if (e == 0) continue;
      if (need_star) out << "*";
      out << "x" << (i + 1);
      if (e > 1) out << "^" << e;
      need_star = true;
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Poly parse() {
    Poly result(nvars_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Poly t = term();
      if (sign < 0) t = -t;
      result += t;
      skip_ws();
    }
    return result;
  }

 private:
  Poly term() {
    Poly t = factor();
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      t = t * factor();
      skip_ws();
    }
    return t;
  }

  Poly factor() {
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = digits();
      }
      if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
      return Poly(nvars_, Rational::parse(num + "/" + den));
    }
    if (c == 'x') {
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
      std::size_t start = pos_;
      unsigned long idx = std::stoul(digits());
      if (idx < 1 || idx > nvars_) {
        pos_ = start;
        fail("variable x" + std::to_string(idx) + " outside x1..x" + std::to_string(nvars_));
      }
      unsigned long e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        e = std::stoul(digits());
        if (e > Monomial::kMaxExponent) fail("exponent too large");
      }
      Monomial m;
      m.set_exponent(idx - 1, static_cast<unsigned>(e));
      return Poly::monomial(nvars_, m, 1);
    }
    fail(std::string{"unexpected character '"} + c + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string{text_.substr(start, pos_ - start)};
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + std::string{text_} + "' column " + std::to_string(pos_ + 1) + ": " +
                                what);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, std::size_t nvars) { return PolyParser(text, nvars).parse(); }

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::sub: return p - q;
    case PolyOp::mul: return p * q;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

Poly partial_derivative(const Poly& p, std::size_t one_based_index) {
  if (one_based_index < 1 || one_based_index > p.nvars())
    throw std::out_of_range("partial derivative index " + std::to_string(one_based_index) + " outside 1.." +
                            std::to_string(p.nvars()));
  return p.derivative(one_based_index - 1);
}

}  // namespace clinf
