#include "clinf/graded.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace clinf {

namespace {

int swap_sign(int a, int b) { return ((a * b) & 1) != 0 ? 1 : -1; }

}  // namespace

void validate_permutation(const Permutation& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t v : sigma) {
    if (v >= sigma.size() || seen[v]) throw std::invalid_argument("malformed permutation " + to_string(sigma));
    seen[v] = true;
  }
}

int permutation_sign(const Permutation& sigma) {
  validate_permutation(sigma);
  int inversions = 0;
  for (std::size_t p = 0; p < sigma.size(); ++p)
    for (std::size_t q = p + 1; q < sigma.size(); ++q)
      if (sigma[p] > sigma[q]) ++inversions;
  return (inversions & 1) != 0 ? -1 : 1;
}

int koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  validate_permutation(sigma);
  if (degrees.size() != sigma.size()) throw std::invalid_argument("koszul_sign: degree list length mismatch");
  int parity = 0;
  for (std::size_t p = 0; p < sigma.size(); ++p)
    for (std::size_t q = p + 1; q < sigma.size(); ++q)
      if (sigma[p] > sigma[q]) parity ^= (degrees[sigma[p]] * degrees[sigma[q]]) & 1;
  return parity != 0 ? -1 : 1;
}

int antisymmetric_koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  return permutation_sign(sigma) * koszul_sign(sigma, degrees);
}

std::vector<Permutation> unshuffles(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) throw std::invalid_argument("unshuffles: need 1 <= i <= n");
  // Choose the first block as an increasing i-subset, in lexicographic order;
  // the rest follows in increasing order.
  std::vector<Permutation> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(i), true);
  do {
    Permutation sigma;
    sigma.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      if (pick[k]) sigma.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
      if (!pick[k]) sigma.push_back(k);
    out.push_back(std::move(sigma));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

int GradedWord::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.degree;
  return d;
}

GradedWord GradedWord::swapped(std::size_t k) const {
  if (k + 1 >= factors_.size()) throw std::out_of_range("GradedWord::swapped: position out of range");
  GradedWord r = *this;
  std::swap(r.factors_[k], r.factors_[k + 1]);
  r.sign_ *= swap_sign(factors_[k].degree, factors_[k + 1].degree);
  return r;
}

GradedWord GradedWord::normalized() const {
  GradedWord r = *this;
  if (r.sign_ == 0) return r;
  auto& f = r.factors_;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (std::size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      r.sign_ *= swap_sign(f[j].degree, f[j - 1].degree);
      std::swap(f[j], f[j - 1]);
    }
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1] && (f[i].degree & 1) == 0) {
      r.sign_ = 0;
      break;
    }
  return r;
}

void GradedSum::add(const GradedWord& w, const Rational& coeff) {
  GradedWord n = w.normalized();
  if (n.is_zero() || coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(n.factors(), coeff * n.sign());
  if (!inserted) {
    it->second += coeff * n.sign();
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedSum::add(const GradedSum& other, const Rational& coeff) {
  for (const auto& [factors, c] : other.terms_) add(GradedWord(factors), c * coeff);
}

GradedSum extend_coderivation(std::size_t arity, const KaryMap& l, const GradedWord& w) {
  const std::size_t n = w.size();
  if (arity == 0) throw std::invalid_argument("extend_coderivation: arity must be positive");
  if (arity > n)
    throw std::invalid_argument("extend_coderivation: arity " + std::to_string(arity) + " exceeds word length " +
                                std::to_string(n));
  GradedSum out;
  if (w.is_zero()) return out;
  std::vector<int> degrees;
  degrees.reserve(n);
  for (const auto& f : w.factors()) degrees.push_back(f.degree);

  std::vector<Factor> args(arity);
  for (const Permutation& sigma : unshuffles(arity, n)) {
    for (std::size_t k = 0; k < arity; ++k) args[k] = w.factors()[sigma[k]];
    std::optional<Factor> head = l(args);
    if (!head) continue;
    int expected = static_cast<int>(arity) - 2;
    for (const auto& a : args) expected += a.degree;
    if (head->degree != expected)
      throw std::logic_error("extend_coderivation: map returned degree " + std::to_string(head->degree) +
                             ", expected " + std::to_string(expected));
    std::vector<Factor> word;
    word.reserve(n - arity + 1);
    word.push_back(*head);
    for (std::size_t k = arity; k < n; ++k) word.push_back(w.factors()[sigma[k]]);
    out.add(GradedWord(std::move(word), w.sign() * antisymmetric_koszul_sign(sigma, degrees)));
  }
  return out;
}

std::string to_string(const Permutation& sigma) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < sigma.size(); ++k) out << (k ? "," : "") << sigma[k] + 1;
  out << ")";
  return out.str();
}

}  // namespace clinf
