#pragma once

// Cartan calculus on R^n with polynomial coefficients: multivector fields in
// the frame ∂_1..∂_n, forms in dx_1..dx_n.
//
// Sign conventions (used everywhere downstream):
//   * Schouten bracket: [X, f] = X(f), [X, Y] is the Lie bracket of vector
//     fields, [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P] and
//     [P, Q∧R] = [P, Q]∧R + (-1)^{(p-1)q} Q∧[P, R].
//     In odd coordinates θ_i = ∂_i this is
//       [P, Q] = Σ_i (P ∂⃖/∂θ_i) ∧ ∂Q/∂x_i - (-1)^{(p-1)(q-1)} (Q ∂⃖/∂θ_i) ∧ ∂P/∂x_i
//     with right derivatives in θ. So [∂1∧∂2, f] = (∂2 f)∂1 - (∂1 f)∂2.
//   * sharp(π, α) is defined by ⟨sharp(π, α), β⟩ = π(α, β), where
//     π(α, β) = Σ_{i<j} π^{ij}(α_i β_j - α_j β_i). Hence sharp(∂1∧∂2, dx1) = ∂2.
//   * kPoissonDifferentialSign: for the cotangent Lie algebroid of π (anchor
//     sharp), the induced differential on functions satisfies
//     d_π f = [π, f] = kPoissonDifferentialSign * sharp(π, df).

#include <vector>

#include "clinf/exterior.hpp"

namespace clinf {

inline constexpr int kPoissonDifferentialSign = -1;

Multivector vector_field(const std::vector<Poly>& coeffs);
DiffForm one_form(const std::vector<Poly>& coeffs);

/// X(f) for a degree-1 multivector X.
Poly apply_vector_field(const Multivector& x, const Poly& f);

/// df as a 1-form.
DiffForm differential(const Poly& f, std::size_t dim);
DiffForm de_rham_d(const DiffForm& w);

Multivector vf_bracket(const Multivector& x, const Multivector& y);

/// ι_X ω for X of degree 1. Throws std::invalid_argument on a degree-0 form.
DiffForm interior_product(const Multivector& x, const DiffForm& w);

/// L_X ω by the coordinate formula (not via Cartan's formula).
DiffForm lie_derivative(const Multivector& x, const DiffForm& w);

Multivector schouten_bracket(const Multivector& p, const Multivector& q);

/// ⟨α, X⟩ for a 1-form and a vector field.
Poly evaluate(const DiffForm& alpha, const Multivector& x);
/// π(α, β) for a bivector.
Poly evaluate(const Multivector& pi, const DiffForm& alpha, const DiffForm& beta);

Multivector sharp(const Multivector& pi, const DiffForm& alpha);

/// [π, π] == 0.
bool is_poisson(const Multivector& pi);

}  // namespace clinf
