#pragma once

// Lie algebroids over R^n with a global frame, and Lie bialgebroid pairs.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clinf/cartan.hpp"
#include "clinf/section.hpp"

namespace clinf {

/// Structure constants of a finite-dimensional Lie algebra:
/// [e_i, e_j] = Σ_k c(i, j, k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

  std::size_t dim() const { return dim_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& value);

  std::vector<Rational> bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  bool is_antisymmetric() const;
  bool satisfies_jacobi() const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

enum class AlgebroidKind { tangent, cotangent_poisson, point_lie_algebra, zero_bracket_cotangent, restricted };

std::string to_string(AlgebroidKind kind);

/// A Lie algebroid on a trivial bundle of rank r over R^n. Sections are
/// Section values of rank r with coefficients in n variables; the anchor
/// returns a vector field on R^n (rank n, empty when n == 0).
class LieAlgebroid {
 public:
  using AnchorFn = std::function<Multivector(const Section&)>;
  using BracketFn = std::function<Section(const Section&, const Section&)>;

  static LieAlgebroid tangent(std::size_t n);
  /// Throws std::invalid_argument if [π, π] != 0.
  static LieAlgebroid cotangent_poisson(const Multivector& pi);
  static LieAlgebroid point_lie_algebra(const StructureConstants& c);
  static LieAlgebroid zero_bracket_cotangent(std::size_t n);
  /// A structure given by evaluators, e.g. a Dirac subbundle with the
  /// restricted bracket and anchor.
  static LieAlgebroid restricted(std::string description, std::size_t rank, std::size_t nvars, AnchorFn anchor,
                                 BracketFn bracket);

  AlgebroidKind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return nvars_; }
  /// The Poisson tensor for cotangent_poisson, else nullptr.
  const Multivector* poisson_tensor() const { return pi_ ? &*pi_ : nullptr; }
  const StructureConstants* structure_constants() const { return constants_ ? &*constants_ : nullptr; }
  std::string describe() const;

  Multivector anchor(const Section& a) const;
  Section bracket(const Section& a, const Section& b) const;
  /// ρ(a) f.
  Poly act(const Section& a, const Poly& f) const;

  Section zero_section() const { return Section(rank_, nvars_); }
  Section unit(std::size_t i) const { return Section::unit(rank_, nvars_, i); }
  /// [e_i, e_j] in frame coordinates.
  const Section& frame_bracket(std::size_t i, std::size_t j) const { return frame_brackets_[i * rank_ + j]; }
  const Multivector& frame_anchor(std::size_t i) const { return frame_anchors_[i]; }

 private:
  LieAlgebroid(AlgebroidKind kind, std::size_t rank, std::size_t nvars) : kind_(kind), rank_(rank), nvars_(nvars) {}
  void cache_frame_data();

  AlgebroidKind kind_;
  std::size_t rank_;
  std::size_t nvars_;
  std::optional<Multivector> pi_;
  std::optional<StructureConstants> constants_;
  std::string description_;
  AnchorFn anchor_fn_;
  BracketFn bracket_fn_;
  std::vector<Section> frame_brackets_;
  std::vector<Multivector> frame_anchors_;
};

/// Eq. for the cotangent bracket of a Poisson manifold:
/// [α, β] = L_{sharp α} β - L_{sharp β} α - d(π(α, β)).
/// Throws std::invalid_argument if π is not Poisson.
DiffForm cotangent_bracket(const Multivector& pi, const DiffForm& alpha, const DiffForm& beta);

/// d_L f as a section of L*, so that ⟨d_L f, a⟩ = ρ(a) f.
Section algebroid_d(const LieAlgebroid& l, const Poly& f);

/// d_L on Γ(∧^k L*), in the dual frame, by the invariant Cartan formula.
DiffForm algebroid_differential(const LieAlgebroid& l, const DiffForm& w);

/// Schouten bracket on Γ(∧L), extending [·,·] and ρ by the graded Leibniz
/// rule with the conventions of cartan.hpp. For the tangent algebroid this is
/// schouten_bracket.
Multivector algebroid_schouten(const LieAlgebroid& l, const Multivector& p, const Multivector& q);
/// The same bracket computed from decomposable expansions for every kind.
Multivector algebroid_schouten_generic(const LieAlgebroid& l, const Multivector& p, const Multivector& q);

/// L_a ξ on sections of L*: ⟨L_a ξ, b⟩ = ρ(a)⟨ξ, b⟩ - ⟨ξ, [a, b]⟩.
Section lie_derivative_dual(const LieAlgebroid& l, const Section& a, const Section& xi);

/// L_ξ X for ξ ∈ Γ(A*), X ∈ Γ(A), where `astar` is the algebroid A*:
/// ⟨L_ξ X, η⟩ = a_*(ξ)⟨X, η⟩ - ⟨X, [ξ, η]_*⟩.
inline Section lie_derivative_mixed(const LieAlgebroid& astar, const Section& xi, const Section& x) {
  return lie_derivative_dual(astar, xi, x);
}

/// Lie algebroid axioms as defects (zero when the axiom holds).
Multivector anchor_defect(const LieAlgebroid& l, const Section& a1, const Section& a2);
Section leibniz_defect(const LieAlgebroid& l, const Section& a1, const Section& a2, const Poly& f);
Section jacobi_defect(const LieAlgebroid& l, const Section& a1, const Section& a2, const Section& a3);

/// Two Lie algebroids in duality through their frames (the frame of A* is
/// dual to the frame of A).
class LieBialgebroidPair {
 public:
  /// Throws std::invalid_argument if ranks or base dimensions differ.
  LieBialgebroidPair(LieAlgebroid a, LieAlgebroid astar);

  const LieAlgebroid& a() const { return a_; }
  const LieAlgebroid& astar() const { return astar_; }
  std::size_t rank() const { return a_.rank(); }
  std::size_t nvars() const { return a_.nvars(); }
  LieBialgebroidPair dual() const { return LieBialgebroidPair(astar_, a_); }

  /// d_* on Γ(∧A): the differential of A* with Γ(∧A) read as cochains of A*.
  Multivector d_star(const Multivector& p) const;

 private:
  LieAlgebroid a_;
  LieAlgebroid astar_;
};

/// d_*[X, Y] - [d_*X, Y] - [X, d_*Y]; zero for a Lie bialgebroid.
Multivector bialgebroid_compat_check(const LieBialgebroidPair& pair, const Section& x, const Section& y);

}  // namespace clinf
