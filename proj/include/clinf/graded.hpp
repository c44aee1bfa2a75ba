#pragma once

// Graded exterior algebra ⋀(V): Koszul signs, unshuffles and the extension of
// a k-ary map to ⋀(V) as a coderivation.
//
// Words are built from opaque factors (degree, id); callers keep the actual
// values in their own pool keyed by id. Adjacent factors swap as
//   v∧w = -(-1)^{|v||w|} w∧v,
// so even-degree factors anticommute and odd-degree factors commute.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clinf/poly.hpp"

namespace clinf {

/// 0-based one-line notation: sigma[k] is the index of the factor placed at
/// position k, i.e. the word x_{σ(1)} ∧ ... ∧ x_{σ(n)}.
using Permutation = std::vector<std::size_t>;

/// Throws std::invalid_argument unless `sigma` is a permutation of 0..n-1.
void validate_permutation(const Permutation& sigma);

/// (-1)^σ.
int permutation_sign(const Permutation& sigma);

/// ε(σ): the product of (-1)^{|x_a||x_b|} over the pairs of factors that cross
/// when x_1..x_n is rearranged into x_{σ(1)}..x_{σ(n)}. `degrees[a]` is the
/// degree of x_a.
int koszul_sign(const Permutation& sigma, std::span<const int> degrees);

/// (-1)^σ ε(σ), the sign of the rearrangement inside ⋀(V).
int antisymmetric_koszul_sign(const Permutation& sigma, std::span<const int> degrees);

/// All (i, n-i)-unshuffles in lexicographic order; binomial(n, i) of them.
/// Throws std::invalid_argument unless 1 <= i <= n.
std::vector<Permutation> unshuffles(std::size_t i, std::size_t n);

struct Factor {
  int degree = 0;
  std::size_t id = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor& a, const Factor& b) {
    if (a.degree != b.degree) return a.degree <=> b.degree;
    return a.id <=> b.id;
  }
};

class GradedWord {
 public:
  GradedWord() = default;
  explicit GradedWord(std::vector<Factor> factors, int sign = 1) : factors_(std::move(factors)), sign_(sign) {}

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  /// ±1, or 0 once the word is known to vanish.
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  int total_degree() const;

  /// Sorts factors by (degree, id), tracking the sign; a repeated
  /// even-degree factor makes the word zero. Idempotent.
  GradedWord normalized() const;

  /// Swaps the factors at positions k and k+1, multiplying the sign by
  /// -(-1)^{|v||w|}.
  GradedWord swapped(std::size_t k) const;

 private:
  std::vector<Factor> factors_;
  int sign_ = 1;
};

/// Q-linear combination of normalized words, like words merged.
class GradedSum {
 public:
  void add(const GradedWord& w, const Rational& coeff = 1);
  void add(const GradedSum& other, const Rational& coeff = 1);

  const std::map<std::vector<Factor>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const GradedSum&, const GradedSum&) = default;

 private:
  std::map<std::vector<Factor>, Rational> terms_;
};

/// A k-ary map on factors taken in the given order. Returns the factor that
/// holds the (already signed) result, or nullopt for zero. The result degree
/// must be Σ|x_i| + k - 2.
using KaryMap = std::function<std::optional<Factor>(std::span<const Factor>)>;

/// l extended to ⋀(V) as a coderivation, on a word of length n >= arity:
///   Σ_σ (-1)^σ ε(σ) l(x_{σ(1)},..,x_{σ(k)}) ∧ x_{σ(k+1)} ∧ .. ∧ x_{σ(n)}
/// over (k, n-k)-unshuffles, each output word normalized.
/// Throws std::invalid_argument if arity > n or arity == 0.
GradedSum extend_coderivation(std::size_t arity, const KaryMap& l, const GradedWord& w);

std::string to_string(const Permutation& sigma);

}  // namespace clinf
