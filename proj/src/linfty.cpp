#include "clinf/linfty.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace clinf {

bool ResElement::is_zero() const {
  switch (payload_.index()) {
    case 0: return as_section().is_zero();
    case 1: return as_function().is_zero();
    default: return as_kernel().value.is_zero();
  }
}

std::string ResElement::to_string() const {
  switch (payload_.index()) {
    case 0: return as_section().to_string();
    case 1: return as_function().to_string();
    default: return "ker(" + as_kernel().value.to_string() + ")";
  }
}

std::string ShlaDefect::to_string() const {
  return "degree " + std::to_string(degree) + ": " + (value ? value->to_string() : std::string{"0"});
}

ResElement add(const ResElement& a, const ResElement& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("add: elements of different degree");
  switch (a.degree()) {
    case 0: return ResElement::section(a.as_section() + b.as_section());
    case 1: return ResElement::function(a.as_function() + b.as_function());
    default: return ResElement::kernel(KernelElement{a.as_kernel().value + b.as_kernel().value});
  }
}

ResElement scale(const Rational& q, const ResElement& a) {
  switch (a.degree()) {
    case 0: return ResElement::section(q * a.as_section());
    case 1: return ResElement::function(q * a.as_function());
    default: return ResElement::kernel(KernelElement{q * a.as_kernel().value});
  }
}

Resolution::Resolution(std::shared_ptr<const CourantAlgebroid> c) : courant_(std::move(c)) {
  if (!courant_) throw std::invalid_argument("Resolution without a Courant instance");
}

KernelElement Resolution::kernel_element(const Poly& p) const {
  if (p.nvars() != courant_->nvars()) throw std::invalid_argument("kernel_element: function in the wrong ring");
  if (!courant_->D(p).is_zero()) throw std::invalid_argument("kernel_element: D(" + p.to_string() + ") != 0");
  return KernelElement{p};
}

ResElement Resolution::zero(int degree) const {
  switch (degree) {
    case 0: return ResElement::section(courant_->zero_section());
    case 1: return ResElement::function(courant_->zero_function());
    case 2: return ResElement::kernel(KernelElement{courant_->zero_function()});
    default: throw std::invalid_argument("no resolution space in degree " + std::to_string(degree));
  }
}

std::optional<ResElement> Resolution::l1(const ResElement& x) const { return apply(std::span(&x, 1)); }

std::optional<ResElement> Resolution::l2(const ResElement& x, const ResElement& y) const {
  const ResElement xs[] = {x, y};
  return apply(xs);
}

std::optional<ResElement> Resolution::l3(const ResElement& x, const ResElement& y, const ResElement& z) const {
  const ResElement xs[] = {x, y, z};
  return apply(xs);
}

std::optional<ResElement> Resolution::apply(std::span<const ResElement> xs) const {
  if (xs.empty() || xs.size() > 3) return std::nullopt;
  // Bring the arguments into ascending degree; the maps are graded
  // antisymmetric, so this costs the sign (-1)^σ ε(σ).
  Permutation sigma(xs.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> degrees;
  for (const auto& x : xs) degrees.push_back(x.degree());
  std::stable_sort(sigma.begin(), sigma.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
  std::vector<ResElement> sorted;
  for (std::size_t k : sigma) sorted.push_back(xs[k]);
  auto r = dispatch(sorted);
  if (!r || r->is_zero()) return std::nullopt;
  return antisymmetric_koszul_sign(sigma, degrees) > 0 ? r : scale(-1, *r);
}

std::optional<ResElement> Resolution::dispatch(std::span<const ResElement> x) const {
  const CourantAlgebroid& c = *courant_;
  switch (x.size()) {
    case 1:
      if (x[0].degree() == 2) return ResElement::function(x[0].as_kernel().value);
      if (x[0].degree() == 1) return ResElement::section(c.D(x[0].as_function()));
      return std::nullopt;
    case 2:
      if (x[0].degree() == 0 && x[1].degree() == 0)
        return ResElement::section(c.bracket(x[0].as_section(), x[1].as_section()));
      if (x[0].degree() == 0 && x[1].degree() == 1)
        return ResElement::function(c.pairing(x[0].as_section(), c.D(x[1].as_function())));
      return std::nullopt;
    case 3:
      if (x[0].degree() == 0 && x[1].degree() == 0 && x[2].degree() == 0)
        return ResElement::function(-T_op(c, x[0].as_section(), x[1].as_section(), x[2].as_section()));
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::optional<ResElement> Resolution::shla_term(std::size_t i, std::span<const ResElement> word) const {
  const std::size_t n = word.size();
  if (i < 1 || i > n) throw std::invalid_argument("shla_term: inner arity out of range");
  const std::size_t j = n + 1 - i;

  std::vector<ResElement> pool(word.begin(), word.end());
  std::vector<Factor> factors;
  for (std::size_t k = 0; k < n; ++k) factors.push_back(Factor{pool[k].degree(), k});

  KaryMap inner = [&](std::span<const Factor> args) -> std::optional<Factor> {
    std::vector<ResElement> xs;
    for (const auto& f : args) xs.push_back(pool[f.id]);
    auto r = apply(xs);
    if (!r) return std::nullopt;
    pool.push_back(std::move(*r));
    return Factor{pool.back().degree(), pool.size() - 1};
  };
  GradedSum once = extend_coderivation(i, inner, GradedWord(factors));

  std::optional<ResElement> acc;
  for (const auto& [fs, coeff] : once.terms()) {
    if (fs.size() != j) throw std::logic_error("shla_term: unexpected word length");
    std::vector<ResElement> xs;
    for (const auto& f : fs) xs.push_back(pool[f.id]);
    auto r = apply(xs);
    if (!r) continue;
    ResElement term = scale(coeff, *r);
    acc = acc ? add(*acc, term) : term;
  }
  if (!acc || acc->is_zero()) return std::nullopt;
  const bool negative = ((i * (j - 1)) & 1) != 0;
  return negative ? scale(-1, *acc) : *acc;
}

ShlaDefect Resolution::shla_defect(std::span<const ResElement> word) const {
  const std::size_t n = word.size();
  if (n == 0) throw std::invalid_argument("shla_defect: empty word");
  ShlaDefect d;
  d.degree = static_cast<int>(n) - 3;
  for (const auto& x : word) d.degree += x.degree();
  for (std::size_t i = 1; i <= n; ++i) {
    auto part = shla_term(i, word);
    if (part) {
      if (part->degree() != d.degree) throw std::logic_error("shla_defect: term of unexpected degree");
      d.value = d.value ? add(*d.value, *part) : *part;
    }
    d.parts.push_back(std::move(part));
  }
  if (d.value && d.value->is_zero()) d.value.reset();
  return d;
}

}  // namespace clinf
