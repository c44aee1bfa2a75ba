#include "clinf/cartan.hpp"

#include <bit>

namespace clinf {

namespace {

void require_degree(const Multivector& x, std::size_t k, const char* what) {
  if (x.degree() != k) throw std::invalid_argument(std::string{what} + ": wrong multivector degree");
}

void require_same_base(std::size_t rank_a, std::size_t nvars_a, std::size_t rank_b, std::size_t nvars_b) {
  if (rank_a != rank_b || nvars_a != nvars_b) throw std::invalid_argument("dimension mismatch in Cartan calculus");
}

// Right derivative ∂⃖/∂θ_i of P.
Multivector right_theta_derivative(const Multivector& p, std::size_t i) {
  Multivector r(p.rank(), p.nvars(), p.degree() == 0 ? 0 : p.degree() - 1);
  if (p.degree() == 0) return r;
  IndexMask bit = IndexMask{1} << i;
  for (const auto& [m, c] : p.components()) {
    if ((m & bit) == 0) continue;
    r.add(m & ~bit, (count_above(m, i) & 1) != 0 ? -c : c);
  }
  return r;
}

}  // namespace

Multivector vector_field(const std::vector<Poly>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("vector field needs at least one component");
  return Multivector::from_coords(coeffs, coeffs.front().nvars());
}

DiffForm one_form(const std::vector<Poly>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("1-form needs at least one component");
  return DiffForm::from_coords(coeffs, coeffs.front().nvars());
}

Poly apply_vector_field(const Multivector& x, const Poly& f) {
  require_degree(x, 1, "apply_vector_field");
  require_same_base(x.rank(), x.nvars(), f.nvars(), f.nvars());
  Poly r(f.nvars());
  for (const auto& [m, c] : x.components()) r += c * f.derivative(static_cast<std::size_t>(std::countr_zero(m)));
  return r;
}

DiffForm differential(const Poly& f, std::size_t dim) {
  if (dim != f.nvars()) throw std::invalid_argument("differential: dimension mismatch");
  DiffForm r(dim, dim, 1);
  for (std::size_t j = 0; j < dim; ++j) r.add(IndexMask{1} << j, f.derivative(j));
  return r;
}

DiffForm de_rham_d(const DiffForm& w) {
  require_same_base(w.rank(), w.nvars(), w.nvars(), w.nvars());
  DiffForm r(w.rank(), w.nvars(), w.degree() + 1);
  for (const auto& [m, c] : w.components())
    for (std::size_t j = 0; j < w.rank(); ++j) {
      IndexMask bit = IndexMask{1} << j;
      if ((m & bit) != 0) continue;
      Poly dc = c.derivative(j);
      if (dc.is_zero()) continue;
      r.add(m | bit, (count_below(m, j) & 1) != 0 ? -dc : dc);
    }
  return r;
}

Multivector vf_bracket(const Multivector& x, const Multivector& y) {
  require_degree(x, 1, "vf_bracket");
  require_degree(y, 1, "vf_bracket");
  require_same_base(x.rank(), x.nvars(), y.rank(), y.nvars());
  require_same_base(x.rank(), x.nvars(), x.nvars(), x.nvars());
  Multivector r(x.rank(), x.nvars(), 1);
  for (std::size_t i = 0; i < x.rank(); ++i) {
    IndexMask bit = IndexMask{1} << i;
    r.add(bit, apply_vector_field(x, y.component(bit)) - apply_vector_field(y, x.component(bit)));
  }
  return r;
}

DiffForm interior_product(const Multivector& x, const DiffForm& w) {
  require_degree(x, 1, "interior_product");
  require_same_base(x.rank(), x.nvars(), w.rank(), w.nvars());
  if (w.degree() == 0) throw std::invalid_argument("interior product of a degree-0 form");
  DiffForm r(w.rank(), w.nvars(), w.degree() - 1);
  for (const auto& [mx, cx] : x.components()) {
    std::size_t i = static_cast<std::size_t>(std::countr_zero(mx));
    for (const auto& [m, c] : w.components()) {
      if ((m & mx) == 0) continue;
      Poly t = cx * c;
      r.add(m & ~mx, (count_below(m, i) & 1) != 0 ? -t : t);
    }
  }
  return r;
}

DiffForm lie_derivative(const Multivector& x, const DiffForm& w) {
  require_degree(x, 1, "lie_derivative");
  require_same_base(x.rank(), x.nvars(), w.rank(), w.nvars());
  const std::size_t n = w.rank();
  DiffForm r(n, w.nvars(), w.degree());
  // L_X(f dx_I) = X(f) dx_I + f Σ_m dx_{i1}∧..∧d(X^{i_m})∧..∧dx_{ik}
  for (const auto& [m, f] : w.components()) {
    r.add(m, apply_vector_field(x, f));
    for (std::size_t im : mask_indices(m)) {
      Poly xi = x.component(IndexMask{1} << im);
      IndexMask rest = m & ~(IndexMask{1} << im);
      for (std::size_t j = 0; j < n; ++j) {
        IndexMask bj = IndexMask{1} << j;
        if ((rest & bj) != 0) continue;
        Poly dxij = xi.derivative(j);
        if (dxij.is_zero()) continue;
        // dx_j sits where dx_{im} was; sorting it into place crosses the
        // earlier indices above j and the later indices below j.
        IndexMask before = m & ((IndexMask{1} << im) - 1);
        IndexMask after = rest & ~before;
        int crossings = count_above(before, j) + count_below(after, j);
        Poly t = f * dxij;
        r.add(rest | bj, (crossings & 1) != 0 ? -t : t);
      }
    }
  }
  return r;
}

Multivector schouten_bracket(const Multivector& p, const Multivector& q) {
  require_same_base(p.rank(), p.nvars(), q.rank(), q.nvars());
  require_same_base(p.rank(), p.nvars(), p.nvars(), p.nvars());
  const int pd = static_cast<int>(p.degree());
  const int qd = static_cast<int>(q.degree());
  Multivector r(p.rank(), p.nvars(), pd + qd >= 1 ? static_cast<std::size_t>(pd + qd - 1) : 0);
  if (pd + qd == 0) return r;
  const bool flip = (((pd - 1) * (qd - 1)) & 1) != 0;
  for (std::size_t i = 0; i < p.rank(); ++i) {
    if (pd > 0) {
      Multivector dp = right_theta_derivative(p, i);
      if (!dp.is_zero()) r += wedge(dp, q.map_coefficients([i](const Poly& c) { return c.derivative(i); }));
    }
    if (qd > 0) {
      Multivector dq = right_theta_derivative(q, i);
      if (!dq.is_zero()) {
        Multivector t = wedge(dq, p.map_coefficients([i](const Poly& c) { return c.derivative(i); }));
        if (flip) r += t;
        else r -= t;
      }
    }
  }
  return r;
}

Poly evaluate(const DiffForm& alpha, const Multivector& x) {
  if (alpha.degree() != 1 || x.degree() != 1) throw std::invalid_argument("evaluate: expected a 1-form and a vector");
  require_same_base(alpha.rank(), alpha.nvars(), x.rank(), x.nvars());
  Poly r(x.nvars());
  for (const auto& [m, c] : alpha.components()) {
    auto it = x.components().find(m);
    if (it != x.components().end()) r += c * it->second;
  }
  return r;
}

Poly evaluate(const Multivector& pi, const DiffForm& alpha, const DiffForm& beta) {
  require_degree(pi, 2, "evaluate");
  return evaluate(beta, sharp(pi, alpha));
}

Multivector sharp(const Multivector& pi, const DiffForm& alpha) {
  require_degree(pi, 2, "sharp");
  if (alpha.degree() != 1) throw std::invalid_argument("sharp: expected a 1-form");
  require_same_base(pi.rank(), pi.nvars(), alpha.rank(), alpha.nvars());
  // sharp(π, α)^j = Σ_i π^{ij} α_i with π^{ji} = -π^{ij}
  Multivector r(pi.rank(), pi.nvars(), 1);
  for (const auto& [m, c] : pi.components()) {
    auto idx = mask_indices(m);
    IndexMask bi = IndexMask{1} << idx[0], bj = IndexMask{1} << idx[1];
    r.add(bj, c * alpha.component(bi));
    r.add(bi, -(c * alpha.component(bj)));
  }
  return r;
}

bool is_poisson(const Multivector& pi) {
  require_degree(pi, 2, "is_poisson");
  return schouten_bracket(pi, pi).is_zero();
}

}  // namespace clinf
