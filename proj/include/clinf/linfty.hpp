#pragma once

// The resolution ker D -> C^∞(M) -> Γ(E) of a Courant instance as an L∞
// algebra (homological grading: sections in degree 0, functions in degree 1,
// ker D in degree 2) and an evaluator for the coherence relations
//   Σ_{i+j=n+1} (-1)^{i(j-1)} l_j ∘ l_i = 0.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "clinf/courant.hpp"
#include "clinf/graded.hpp"

namespace clinf {

/// A constant function c with D c = 0.
struct KernelElement {
  Poly value;
  friend bool operator==(const KernelElement&, const KernelElement&) = default;
};

class ResElement {
 public:
  using Payload = std::variant<Section, Poly, KernelElement>;

  static ResElement section(Section s) { return ResElement(std::move(s)); }
  static ResElement function(Poly f) { return ResElement(std::move(f)); }
  static ResElement kernel(KernelElement k) { return ResElement(std::move(k)); }

  int degree() const { return static_cast<int>(payload_.index()); }
  const Payload& payload() const { return payload_; }
  const Section& as_section() const { return std::get<Section>(payload_); }
  const Poly& as_function() const { return std::get<Poly>(payload_); }
  const KernelElement& as_kernel() const { return std::get<KernelElement>(payload_); }
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const ResElement&, const ResElement&) = default;

 private:
  explicit ResElement(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

/// Value of a relation: an element of one degree, or zero when that degree
/// lies outside 0..2.
struct ShlaDefect {
  int degree = 0;
  std::optional<ResElement> value;
  /// Contribution of each (i, j) term, already signed, indexed by i - 1.
  std::vector<std::optional<ResElement>> parts;
  bool is_zero() const { return !value || value->is_zero(); }
  std::string to_string() const;
};

class Resolution {
 public:
  explicit Resolution(std::shared_ptr<const CourantAlgebroid> c);

  const CourantAlgebroid& courant() const { return *courant_; }

  /// Throws std::invalid_argument unless D p = 0.
  KernelElement kernel_element(const Poly& p) const;
  ResElement zero(int degree) const;

  /// Structure maps on elements taken in the given order. nullopt is zero.
  std::optional<ResElement> l1(const ResElement& x) const;
  std::optional<ResElement> l2(const ResElement& x, const ResElement& y) const;
  std::optional<ResElement> l3(const ResElement& x, const ResElement& y, const ResElement& z) const;
  /// l_k for any k (zero for k >= 4).
  std::optional<ResElement> apply(std::span<const ResElement> xs) const;

  /// Σ_{i+j=n+1} (-1)^{i(j-1)} l_j(l_i extended as a coderivation) on
  /// x_1 ∧ ... ∧ x_n, with every term contracted to a single element.
  ShlaDefect shla_defect(std::span<const ResElement> word) const;

  /// The same relation restricted to one (i, j) term, signed.
  std::optional<ResElement> shla_term(std::size_t i, std::span<const ResElement> word) const;

 private:
  std::optional<ResElement> dispatch(std::span<const ResElement> sorted) const;

  std::shared_ptr<const CourantAlgebroid> courant_;
};

/// Sum of two elements of equal degree.
ResElement add(const ResElement& a, const ResElement& b);
ResElement scale(const Rational& q, const ResElement& a);

}  // namespace clinf
