#include "clinf/lie_algebroid.hpp"

#include <stdexcept>

namespace clinf {

void StructureConstants::set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& value) {
  if (i >= dim_ || j >= dim_ || value.size() != dim_) throw std::out_of_range("structure constant index out of range");
  if (i == j) {
    for (const auto& v : value)
      if (v != 0) throw std::invalid_argument("[e_i, e_i] must vanish");
    return;
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = value[k];
    c_[(j * dim_ + i) * dim_ + k] = -value[k];
  }
}

std::vector<Rational> StructureConstants::bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      Rational ab = a[i] * b[j];
      for (std::size_t k = 0; k < dim_; ++k) r[k] += ab * (*this)(i, j, k);
    }
  }
  return r;
}

bool StructureConstants::is_antisymmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if ((*this)(i, j, k) != -(*this)(j, i, k)) return false;
  return true;
}

bool StructureConstants::satisfies_jacobi() const {
  // Σ_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l = 0
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t l = 0; l < dim_; ++l) {
          Rational s = 0;
          for (std::size_t m = 0; m < dim_; ++m)
            s += (*this)(i, j, m) * (*this)(m, k, l) + (*this)(j, k, m) * (*this)(m, i, l) +
                 (*this)(k, i, m) * (*this)(m, j, l);
          if (s != 0) return false;
        }
  return true;
}

std::string to_string(AlgebroidKind kind) {
  switch (kind) {
    case AlgebroidKind::tangent: return "tangent";
    case AlgebroidKind::cotangent_poisson: return "cotangent_poisson";
    case AlgebroidKind::point_lie_algebra: return "point_lie_algebra";
    case AlgebroidKind::zero_bracket_cotangent: return "zero_bracket_cotangent";
    case AlgebroidKind::restricted: return "restricted";
  }
  return "unknown";
}

namespace {

Section to_section(const Multivector& v) { return Section(v.coords(), v.nvars()); }
Section to_section(const DiffForm& w) { return Section(w.coords(), w.nvars()); }

DiffForm cotangent_bracket_unchecked(const Multivector& pi, const DiffForm& alpha, const DiffForm& beta) {
  return lie_derivative(sharp(pi, alpha), beta) - lie_derivative(sharp(pi, beta), alpha) -
         differential(evaluate(pi, alpha, beta), pi.nvars());
}

Multivector empty_vector_field(std::size_t nvars) { return Multivector(nvars, nvars, 1); }

Multivector one_vector(const LieAlgebroid& l, const Section& s) {
  return Multivector::from_coords(s.coords(), l.nvars());
}

Multivector unit_multivector(const LieAlgebroid& l) { return Multivector::scalar(l.rank(), Poly(l.nvars(), 1)); }

}  // namespace

LieAlgebroid LieAlgebroid::tangent(std::size_t n) {
  LieAlgebroid l(AlgebroidKind::tangent, n, n);
  l.cache_frame_data();
  return l;
}

LieAlgebroid LieAlgebroid::cotangent_poisson(const Multivector& pi) {
  if (pi.degree() != 2 || pi.rank() != pi.nvars()) throw std::invalid_argument("cotangent_poisson: need a bivector field");
  if (!is_poisson(pi)) throw std::invalid_argument("bivector " + pi.to_string() + " is not Poisson: [pi,pi] != 0");
  LieAlgebroid l(AlgebroidKind::cotangent_poisson, pi.rank(), pi.nvars());
  l.pi_ = pi;
  l.cache_frame_data();
  return l;
}

LieAlgebroid LieAlgebroid::point_lie_algebra(const StructureConstants& c) {
  if (!c.is_antisymmetric()) throw std::invalid_argument("structure constants are not antisymmetric");
  if (!c.satisfies_jacobi()) throw std::invalid_argument("structure constants violate the Jacobi identity");
  LieAlgebroid l(AlgebroidKind::point_lie_algebra, c.dim(), 0);
  l.constants_ = c;
  l.cache_frame_data();
  return l;
}

LieAlgebroid LieAlgebroid::zero_bracket_cotangent(std::size_t n) {
  LieAlgebroid l(AlgebroidKind::zero_bracket_cotangent, n, n);
  l.cache_frame_data();
  return l;
}

LieAlgebroid LieAlgebroid::restricted(std::string description, std::size_t rank, std::size_t nvars, AnchorFn anchor,
                                      BracketFn bracket) {
  LieAlgebroid l(AlgebroidKind::restricted, rank, nvars);
  l.description_ = std::move(description);
  l.anchor_fn_ = std::move(anchor);
  l.bracket_fn_ = std::move(bracket);
  l.cache_frame_data();
  return l;
}

void LieAlgebroid::cache_frame_data() {
  frame_anchors_.clear();
  frame_brackets_.clear();
  for (std::size_t i = 0; i < rank_; ++i) frame_anchors_.push_back(anchor(unit(i)));
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) frame_brackets_.push_back(bracket(unit(i), unit(j)));
}

std::string LieAlgebroid::describe() const {
  switch (kind_) {
    case AlgebroidKind::tangent: return "tangent(" + std::to_string(nvars_) + ")";
    case AlgebroidKind::cotangent_poisson: return "cotangent_poisson(pi = " + pi_->to_string() + ")";
    case AlgebroidKind::point_lie_algebra: return "point_lie_algebra(dim " + std::to_string(rank_) + ")";
    case AlgebroidKind::zero_bracket_cotangent: return "zero_bracket_cotangent(" + std::to_string(nvars_) + ")";
    case AlgebroidKind::restricted: return "restricted(" + description_ + ")";
  }
  return "unknown";
}

Multivector LieAlgebroid::anchor(const Section& a) const {
  if (a.rank() != rank_ || a.nvars() != nvars_) throw std::invalid_argument("anchor: section of the wrong bundle");
  switch (kind_) {
    case AlgebroidKind::tangent: return Multivector::from_coords(a.coords(), nvars_);
    case AlgebroidKind::cotangent_poisson: return sharp(*pi_, DiffForm::from_coords(a.coords(), nvars_));
    case AlgebroidKind::point_lie_algebra:
    case AlgebroidKind::zero_bracket_cotangent: return empty_vector_field(nvars_);
    case AlgebroidKind::restricted: return anchor_fn_(a);
  }
  throw std::logic_error("unknown algebroid kind");
}

Section LieAlgebroid::bracket(const Section& a, const Section& b) const {
  if (a.rank() != rank_ || b.rank() != rank_ || a.nvars() != nvars_ || b.nvars() != nvars_)
    throw std::invalid_argument("bracket: section of the wrong bundle");
  switch (kind_) {
    case AlgebroidKind::tangent:
      return to_section(vf_bracket(Multivector::from_coords(a.coords(), nvars_),
                                   Multivector::from_coords(b.coords(), nvars_)));
    case AlgebroidKind::cotangent_poisson:
      return to_section(cotangent_bracket_unchecked(*pi_, DiffForm::from_coords(a.coords(), nvars_),
                                                    DiffForm::from_coords(b.coords(), nvars_)));
    case AlgebroidKind::point_lie_algebra: {
      std::vector<Rational> av, bv;
      for (const auto& c : a.coords()) av.push_back(c.constant_term());
      for (const auto& c : b.coords()) bv.push_back(c.constant_term());
      std::vector<Poly> out;
      for (const auto& q : constants_->bracket(av, bv)) out.emplace_back(0, q);
      return Section(std::move(out), 0);
    }
    case AlgebroidKind::zero_bracket_cotangent: return zero_section();
    case AlgebroidKind::restricted: return bracket_fn_(a, b);
  }
  throw std::logic_error("unknown algebroid kind");
}

Poly LieAlgebroid::act(const Section& a, const Poly& f) const {
  if (nvars_ == 0) return Poly(0);
  return apply_vector_field(anchor(a), f);
}

DiffForm cotangent_bracket(const Multivector& pi, const DiffForm& alpha, const DiffForm& beta) {
  if (!is_poisson(pi)) throw std::invalid_argument("cotangent_bracket: bivector is not Poisson");
  return cotangent_bracket_unchecked(pi, alpha, beta);
}

Section algebroid_d(const LieAlgebroid& l, const Poly& f) {
  Section r(l.rank(), l.nvars());
  if (l.nvars() == 0) return r;
  for (std::size_t i = 0; i < l.rank(); ++i) r[i] = apply_vector_field(l.frame_anchor(i), f);
  return r;
}

DiffForm algebroid_differential(const LieAlgebroid& l, const DiffForm& w) {
  if (w.rank() != l.rank() || w.nvars() != l.nvars()) throw std::invalid_argument("algebroid_differential: wrong bundle");
  const std::size_t r = l.rank();
  const std::size_t k = w.degree();
  DiffForm out(r, l.nvars(), k + 1);
  if (k + 1 > r) return out;

  // ω(e_c, e_K) for sorted K
  auto eval_with = [&](std::size_t c, IndexMask rest) -> Poly {
    IndexMask bit = IndexMask{1} << c;
    if ((rest & bit) != 0) return Poly(l.nvars());
    Poly v = w.component(rest | bit);
    return (count_below(rest, c) & 1) != 0 ? -v : v;
  };

  for (IndexMask j = 0; j < (IndexMask{1} << r); ++j) {
    if (static_cast<std::size_t>(mask_degree(j)) != k + 1) continue;
    auto idx = mask_indices(j);
    Poly total(l.nvars());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Poly coeff = w.component(j & ~(IndexMask{1} << idx[i]));
      if (coeff.is_zero() || l.nvars() == 0) continue;
      Poly t = apply_vector_field(l.frame_anchor(idx[i]), coeff);
      total += (i & 1) != 0 ? -t : t;
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t m = i + 1; m < idx.size(); ++m) {
        IndexMask rest = j & ~(IndexMask{1} << idx[i]) & ~(IndexMask{1} << idx[m]);
        const Section& br = l.frame_bracket(idx[i], idx[m]);
        Poly t(l.nvars());
        for (std::size_t c = 0; c < r; ++c)
          if (!br[c].is_zero()) t += br[c] * eval_with(c, rest);
        total += ((i + m) & 1) != 0 ? -t : t;
      }
    out.add(j, total);
  }
  return out;
}

Multivector algebroid_schouten(const LieAlgebroid& l, const Multivector& p, const Multivector& q) {
  if (l.kind() == AlgebroidKind::tangent) return schouten_bracket(p, q);
  return algebroid_schouten_generic(l, p, q);
}

namespace {

// [X_1∧..∧X_p, g] = Σ_i (-1)^{p-i} ρ(X_i)(g) X_1∧..X̂_i..∧X_p  (1-based i)
Multivector bracket_with_function(const LieAlgebroid& l, const std::vector<Section>& xs, const Poly& g) {
  const std::size_t p = xs.size();
  Multivector out(l.rank(), l.nvars(), p - 1);
  if (l.nvars() == 0) return out;
  for (std::size_t i = 0; i < p; ++i) {
    Poly gi = l.act(xs[i], g);
    if (gi.is_zero()) continue;
    Multivector rest = unit_multivector(l);
    for (std::size_t k = 0; k < p; ++k)
      if (k != i) rest = wedge(rest, one_vector(l, xs[k]));
    Multivector t = gi * rest;
    if (((p - 1 - i) & 1) != 0) out -= t;
    else out += t;
  }
  return out;
}

std::vector<Section> decompose(const LieAlgebroid& l, IndexMask m, const Poly& coeff) {
  std::vector<Section> xs;
  for (std::size_t i : mask_indices(m)) xs.push_back(l.unit(i));
  if (!xs.empty()) xs.front() = coeff * xs.front();
  return xs;
}

}  // namespace

Multivector algebroid_schouten_generic(const LieAlgebroid& l, const Multivector& p, const Multivector& q) {
  if (p.rank() != l.rank() || q.rank() != l.rank() || p.nvars() != l.nvars() || q.nvars() != l.nvars())
    throw std::invalid_argument("algebroid_schouten: multisections of the wrong bundle");
  const std::size_t pd = p.degree(), qd = q.degree();
  Multivector out(l.rank(), l.nvars(), pd + qd >= 1 ? pd + qd - 1 : 0);
  if (pd + qd == 0) return out;
  for (const auto& [mp, cp] : p.components())
    for (const auto& [mq, cq] : q.components()) {
      if (pd == 0) {
        // [f, Q] = -(-1)^{q-1} [Q, f]
        Multivector t = bracket_with_function(l, decompose(l, mq, cq), cp);
        if (((qd - 1) & 1) != 0) out += t;
        else out -= t;
        continue;
      }
      auto xs = decompose(l, mp, cp);
      if (qd == 0) {
        out += bracket_with_function(l, xs, cq);
        continue;
      }
      auto ys = decompose(l, mq, cq);
      // Σ_{i,j} (-1)^{i+j} [X_i, Y_j] ∧ X_1..X̂_i..X_p ∧ Y_1..Ŷ_j..Y_q
      for (std::size_t i = 0; i < pd; ++i)
        for (std::size_t j = 0; j < qd; ++j) {
          Section b = l.bracket(xs[i], ys[j]);
          if (b.is_zero()) continue;
          Multivector t = one_vector(l, b);
          for (std::size_t k = 0; k < pd; ++k)
            if (k != i) t = wedge(t, one_vector(l, xs[k]));
          for (std::size_t k = 0; k < qd; ++k)
            if (k != j) t = wedge(t, one_vector(l, ys[k]));
          if (((i + j) & 1) != 0) out -= t;
          else out += t;
        }
    }
  return out;
}

Section lie_derivative_dual(const LieAlgebroid& l, const Section& a, const Section& xi) {
  // [a, e_k] = Σ_i a^i [e_i, e_k] - ρ(e_k)(a^i) e_i
  const std::size_t r = l.rank();
  const std::size_t n = l.nvars();
  Section out(r, n);
  Multivector rho_a = n != 0 ? l.anchor(a) : empty_vector_field(0);
  for (std::size_t k = 0; k < r; ++k) {
    Poly v = n != 0 ? apply_vector_field(rho_a, xi[k]) : Poly(n);
    for (std::size_t i = 0; i < r; ++i) {
      if (!a[i].is_zero()) v -= a[i] * dual_pairing(xi, l.frame_bracket(i, k));
      if (n != 0 && !xi[i].is_zero()) v += apply_vector_field(l.frame_anchor(k), a[i]) * xi[i];
    }
    out[k] = std::move(v);
  }
  return out;
}

Multivector anchor_defect(const LieAlgebroid& l, const Section& a1, const Section& a2) {
  if (l.nvars() == 0) return empty_vector_field(0);
  return l.anchor(l.bracket(a1, a2)) - vf_bracket(l.anchor(a1), l.anchor(a2));
}

Section leibniz_defect(const LieAlgebroid& l, const Section& a1, const Section& a2, const Poly& f) {
  return l.bracket(a1, f * a2) - f * l.bracket(a1, a2) - l.act(a1, f) * a2;
}

Section jacobi_defect(const LieAlgebroid& l, const Section& a1, const Section& a2, const Section& a3) {
  return l.bracket(l.bracket(a1, a2), a3) + l.bracket(l.bracket(a2, a3), a1) + l.bracket(l.bracket(a3, a1), a2);
}

LieBialgebroidPair::LieBialgebroidPair(LieAlgebroid a, LieAlgebroid astar) : a_(std::move(a)), astar_(std::move(astar)) {
  if (a_.rank() != astar_.rank() || a_.nvars() != astar_.nvars())
    throw std::invalid_argument("bialgebroid pair: A and A* must have equal rank over the same base");
}

Multivector LieBialgebroidPair::d_star(const Multivector& p) const {
  return algebroid_differential(astar_, p.retag<FormTag>()).retag<VectorTag>();
}

Multivector bialgebroid_compat_check(const LieBialgebroidPair& pair, const Section& x, const Section& y) {
  const LieAlgebroid& a = pair.a();
  Multivector xm = one_vector(a, x), ym = one_vector(a, y);
  Multivector xy = one_vector(a, a.bracket(x, y));
  return pair.d_star(xy) - algebroid_schouten(a, pair.d_star(xm), ym) - algebroid_schouten(a, xm, pair.d_star(ym));
}

}  // namespace clinf
