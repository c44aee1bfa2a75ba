#pragma once

// Courant algebroid instances on trivial bundles over R^n (n = 0 for a point),
// the operators D and T, the Jacobiator, and defect evaluators for the five
// axioms and the derived identities.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "clinf/lie_algebroid.hpp"

namespace clinf {

enum class CourantKind { quadratic, drinfeld_double, standard, bialgebroid_double };

std::string to_string(CourantKind kind);

/// Deliberate corruptions used to check that the verification suites detect
/// errors. Never set outside tests and the CLI's --inject-fault.
enum class Fault {
  none,
  flip_d_term,        ///< sign of the d(e1,e2)_- term of the double bracket
  drop_pairing_half,  ///< the 1/2 in (e1,e2)_±
  drop_axiom3_term,   ///< the <e1,e2> D f term in the axiom 3 checker
};

std::string to_string(Fault fault);
/// Throws std::invalid_argument for unknown names.
Fault parse_fault(const std::string& name);

using RationalMatrix = std::vector<std::vector<Rational>>;

class CourantAlgebroid {
 public:
  /// Quadratic Lie algebra: constant bracket, zero anchor, invariant pairing.
  /// Throws if the pairing is not symmetric and nondegenerate.
  static CourantAlgebroid quadratic(const StructureConstants& c, const RationalMatrix& pairing,
                                    Fault fault = Fault::none);

  /// TM ⊕ T*M on R^n with Courant's bracket in closed form.
  static CourantAlgebroid standard(std::size_t n, Fault fault = Fault::none);

  /// A ⊕ A* with the double bracket, anchor a + a_* and pairing (·,·)_+.
  static CourantAlgebroid bialgebroid_double(const LieBialgebroidPair& pair, Fault fault = Fault::none);

  /// The double of a Lie bialgebra (g, g*) as a quadratic Lie algebra on
  /// g ⊕ g*. Throws std::invalid_argument if the assembled bracket fails
  /// Jacobi, which signals an invalid bialgebra.
  static CourantAlgebroid drinfeld_double(const StructureConstants& g, const StructureConstants& gstar,
                                          Fault fault = Fault::none);

  CourantKind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return nvars_; }
  Fault fault() const { return fault_; }
  /// True for A ⊕ A* instances (standard, bialgebroid and Drinfeld doubles).
  bool is_split() const { return kind_ != CourantKind::quadratic; }
  std::size_t half_rank() const { return rank_ / 2; }
  const RationalMatrix& pairing_matrix() const { return pairing_; }
  const LieBialgebroidPair* pair() const { return pair_ ? &*pair_ : nullptr; }
  const StructureConstants* structure_constants() const { return constants_ ? &*constants_ : nullptr; }
  std::string describe() const;

  Section zero_section() const { return Section(rank_, nvars_); }
  Section unit(std::size_t i) const { return Section::unit(rank_, nvars_, i); }
  Poly zero_function() const { return Poly(nvars_); }
  /// X + ξ from the A-part and A*-part (split instances only).
  Section split_section(const Section& x, const Section& xi) const;

  Poly pairing(const Section& e1, const Section& e2) const;
  /// (e1, e2)_± = 1/2(⟨ξ1, X2⟩ ± ⟨ξ2, X1⟩); split instances only.
  Poly pairing_pm(const Section& e1, const Section& e2, int sign) const;
  Multivector anchor(const Section& e) const;
  /// ρ(e) f.
  Poly act(const Section& e, const Poly& f) const;
  Section bracket(const Section& e1, const Section& e2) const;
  /// The section with ⟨D f, e⟩ = 1/2 ρ(e) f for all e.
  Section D(const Poly& f) const;

 private:
  CourantAlgebroid(CourantKind kind, std::size_t rank, std::size_t nvars) : kind_(kind), rank_(rank), nvars_(nvars) {}
  void set_pairing(RationalMatrix g);
  void set_split_pairing();

  CourantKind kind_;
  std::size_t rank_;
  std::size_t nvars_;
  Fault fault_ = Fault::none;
  RationalMatrix pairing_;
  RationalMatrix pairing_inverse_;
  std::optional<StructureConstants> constants_;
  std::optional<LieBialgebroidPair> pair_;
  std::vector<Multivector> frame_anchors_;
};

/// The bracket on Γ(A ⊕ A*) built from a bialgebroid pair:
///   A-part:  [X1,X2] + L_ξ1 X2 - L_ξ2 X1 - d_*(e1,e2)_-
///   A*-part: [ξ1,ξ2] + L_X1 ξ2 - L_X2 ξ1 + d(e1,e2)_-
Section double_bracket(const LieBialgebroidPair& pair, const Section& e1, const Section& e2, Fault fault = Fault::none);

/// 1/3 ⟨[e1,e2],e3⟩ + cyclic.
Poly T_op(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3);
Section jacobiator(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3);
Section D_op(const CourantAlgebroid& c, const Poly& f);

/// A defect value: a function, a section or a vector field.
class Defect {
 public:
  using Value = std::variant<Poly, Section, Multivector>;
  Defect(Poly v) : value_(std::move(v)) {}
  Defect(Section v) : value_(std::move(v)) {}
  Defect(Multivector v) : value_(std::move(v)) {}
  const Value& value() const { return value_; }
  bool is_zero() const;
  std::string to_string() const;

 private:
  Value value_;
};

/// LHS - RHS of axiom k (1..5). Arity: 1: three sections; 2: two; 3: two and
/// one function; 4: two functions; 5: three sections (e, h1, h2).
/// Throws std::invalid_argument on a bad axiom number or arity.
Defect check_axiom(const CourantAlgebroid& c, int k, std::span<const Section> sections, std::span<const Poly> functions);

Section antisymmetry_defect(const CourantAlgebroid& c, const Section& e1, const Section& e2);
/// [e, D f] - D⟨e, D f⟩.
Section check_prop_main(const CourantAlgebroid& c, const Section& e, const Poly& f);
/// T(e1, e2, D f) - 1/4 ρ([e1, e2]) f.
Poly check_lemma_a1(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Poly& f);

struct LemmaA2Terms {
  Poly j;  ///< alternating sum of ⟨J(·,·,·), ·⟩
  Poly k;  ///< alternating sum of ⟨[·,·], [·,·]⟩
};
LemmaA2Terms lemma_a2_terms(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3,
                            const Section& e4);
/// K + 2J.
Poly check_lemma_a2(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3,
                    const Section& e4);

/// Inverse of a square rational matrix; nullopt if singular.
std::optional<RationalMatrix> invert(const RationalMatrix& m);

}  // namespace clinf
