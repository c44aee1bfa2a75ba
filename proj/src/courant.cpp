#include "clinf/courant.hpp"

#include <stdexcept>

namespace clinf {

std::string to_string(CourantKind kind) {
  switch (kind) {
    case CourantKind::quadratic: return "quadratic";
    case CourantKind::drinfeld_double: return "drinfeld_double";
    case CourantKind::standard: return "standard";
    case CourantKind::bialgebroid_double: return "bialgebroid_double";
  }
  return "unknown";
}

std::string to_string(Fault fault) {
  switch (fault) {
    case Fault::none: return "none";
    case Fault::flip_d_term: return "flip-d-term";
    case Fault::drop_pairing_half: return "drop-pairing-half";
    case Fault::drop_axiom3_term: return "drop-axiom3-term";
  }
  return "unknown";
}

Fault parse_fault(const std::string& name) {
  for (Fault f : {Fault::none, Fault::flip_d_term, Fault::drop_pairing_half, Fault::drop_axiom3_term})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown fault '" + name + "'");
}

std::optional<RationalMatrix> invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("invert: matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational factor = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= factor * a[col][k];
        inv[row][k] -= factor * inv[col][k];
      }
    }
  }
  return inv;
}

namespace {

Rational pairing_half(Fault fault) { return fault == Fault::drop_pairing_half ? Rational{1} : Rational{1, 2}; }
int d_term_sign(Fault fault) { return fault == Fault::flip_d_term ? -1 : 1; }

Multivector to_vf(const Section& s) { return Multivector::from_coords(s.coords(), s.nvars()); }
DiffForm to_form(const Section& s) { return DiffForm::from_coords(s.coords(), s.nvars()); }
Section from_vf(const Multivector& v) { return Section(v.coords(), v.nvars()); }
Section from_form(const DiffForm& w) { return Section(w.coords(), w.nvars()); }

// (e1, e2)_- on split coordinates.
Poly minus_pairing(const Section& x1, const Section& xi1, const Section& x2, const Section& xi2, Fault fault) {
  return pairing_half(fault) * (dual_pairing(xi1, x2) - dual_pairing(xi2, x1));
}

}  // namespace

void CourantAlgebroid::set_pairing(RationalMatrix g) {
  if (g.size() != rank_) throw std::invalid_argument("pairing matrix has the wrong size");
  for (std::size_t i = 0; i < rank_; ++i) {
    if (g[i].size() != rank_) throw std::invalid_argument("pairing matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) throw std::invalid_argument("pairing matrix is not symmetric");
  }
  auto inv = invert(g);
  if (!inv) throw std::invalid_argument("pairing matrix is degenerate");
  pairing_ = std::move(g);
  pairing_inverse_ = std::move(*inv);
}

void CourantAlgebroid::set_split_pairing() {
  const std::size_t m = rank_ / 2;
  RationalMatrix g(rank_, std::vector<Rational>(rank_));
  for (std::size_t i = 0; i < m; ++i) g[i][m + i] = g[m + i][i] = pairing_half(fault_);
  set_pairing(std::move(g));
}

CourantAlgebroid CourantAlgebroid::quadratic(const StructureConstants& c, const RationalMatrix& pairing, Fault fault) {
  if (!c.is_antisymmetric()) throw std::invalid_argument("quadratic: structure constants are not antisymmetric");
  CourantAlgebroid ca(CourantKind::quadratic, c.dim(), 0);
  ca.fault_ = fault;
  ca.set_pairing(pairing);
  ca.constants_ = c;
  for (std::size_t i = 0; i < ca.rank_; ++i) ca.frame_anchors_.emplace_back(0, 0, 1);
  return ca;
}

CourantAlgebroid CourantAlgebroid::standard(std::size_t n, Fault fault) {
  if (n == 0) throw std::invalid_argument("standard instance needs dimension >= 1");
  CourantAlgebroid ca(CourantKind::standard, 2 * n, n);
  ca.fault_ = fault;
  ca.set_split_pairing();
  for (std::size_t i = 0; i < n; ++i) ca.frame_anchors_.push_back(Multivector::basis(n, {i}, Poly(n, 1)));
  for (std::size_t i = 0; i < n; ++i) ca.frame_anchors_.emplace_back(n, n, 1);
  return ca;
}

CourantAlgebroid CourantAlgebroid::bialgebroid_double(const LieBialgebroidPair& pair, Fault fault) {
  CourantAlgebroid ca(CourantKind::bialgebroid_double, 2 * pair.rank(), pair.nvars());
  ca.fault_ = fault;
  ca.pair_ = pair;
  ca.set_split_pairing();
  for (std::size_t i = 0; i < pair.rank(); ++i) ca.frame_anchors_.push_back(pair.a().frame_anchor(i));
  for (std::size_t i = 0; i < pair.rank(); ++i) ca.frame_anchors_.push_back(pair.astar().frame_anchor(i));
  return ca;
}

CourantAlgebroid CourantAlgebroid::drinfeld_double(const StructureConstants& g, const StructureConstants& gstar,
                                                   Fault fault) {
  if (g.dim() != gstar.dim()) throw std::invalid_argument("drinfeld_double: g and g* differ in dimension");
  LieBialgebroidPair pair(LieAlgebroid::point_lie_algebra(g), LieAlgebroid::point_lie_algebra(gstar));
  const std::size_t m = g.dim();
  const std::size_t r = 2 * m;
  StructureConstants c(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      Section br = double_bracket(pair, Section::unit(r, 0, a), Section::unit(r, 0, b), fault);
      std::vector<Rational> v;
      for (const auto& p : br.coords()) v.push_back(p.constant_term());
      c.set_bracket(a, b, v);
    }
  CourantAlgebroid ca(CourantKind::drinfeld_double, r, 0);
  ca.fault_ = fault;
  ca.set_split_pairing();
  ca.constants_ = c;
  ca.pair_ = pair;
  for (std::size_t i = 0; i < r; ++i) ca.frame_anchors_.emplace_back(0, 0, 1);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (std::size_t d = b + 1; d < r; ++d) {
        Section j = jacobiator(ca, ca.unit(a), ca.unit(b), ca.unit(d));
        if (!j.is_zero())
          throw std::invalid_argument("drinfeld_double: the double bracket fails Jacobi on basis (" +
                                      std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                      std::to_string(d + 1) + "); (g, g*) is not a Lie bialgebra");
      }
  return ca;
}

std::string CourantAlgebroid::describe() const {
  switch (kind_) {
    case CourantKind::quadratic: return "quadratic(dim " + std::to_string(rank_) + ")";
    case CourantKind::drinfeld_double: return "drinfeld_double(dim " + std::to_string(rank_) + ")";
    case CourantKind::standard: return "standard(R^" + std::to_string(nvars_) + ")";
    case CourantKind::bialgebroid_double:
      return "bialgebroid_double(" + pair_->a().describe() + ", " + pair_->astar().describe() + ")";
  }
  return "unknown";
}

Section CourantAlgebroid::split_section(const Section& x, const Section& xi) const {
  if (!is_split() || x.rank() != half_rank() || xi.rank() != half_rank())
    throw std::invalid_argument("split_section: wrong ranks");
  return Section::concat(x, xi);
}

Poly CourantAlgebroid::pairing(const Section& e1, const Section& e2) const {
  if (e1.rank() != rank_ || e2.rank() != rank_) throw std::invalid_argument("pairing: sections of the wrong bundle");
  Poly r(nvars_);
  for (std::size_t a = 0; a < rank_; ++a) {
    if (e1[a].is_zero()) continue;
    for (std::size_t b = 0; b < rank_; ++b)
      if (pairing_[a][b] != 0 && !e2[b].is_zero()) r += pairing_[a][b] * (e1[a] * e2[b]);
  }
  return r;
}

Poly CourantAlgebroid::pairing_pm(const Section& e1, const Section& e2, int sign) const {
  if (!is_split()) throw std::invalid_argument("pairing_pm needs a split instance");
  const std::size_t m = half_rank();
  Poly t1 = dual_pairing(e1.slice(m, m), e2.slice(0, m));
  Poly t2 = dual_pairing(e2.slice(m, m), e1.slice(0, m));
  return pairing_half(fault_) * (sign >= 0 ? t1 + t2 : t1 - t2);
}

Multivector CourantAlgebroid::anchor(const Section& e) const {
  if (e.rank() != rank_) throw std::invalid_argument("anchor: section of the wrong bundle");
  Multivector r(nvars_, nvars_, 1);
  for (std::size_t a = 0; a < rank_; ++a)
    if (!e[a].is_zero()) r += e[a] * frame_anchors_[a];
  return r;
}

Poly CourantAlgebroid::act(const Section& e, const Poly& f) const {
  if (nvars_ == 0) return Poly(0);
  return apply_vector_field(anchor(e), f);
}

Section CourantAlgebroid::bracket(const Section& e1, const Section& e2) const {
  if (e1.rank() != rank_ || e2.rank() != rank_ || e1.nvars() != nvars_ || e2.nvars() != nvars_)
    throw std::invalid_argument("bracket: sections of the wrong bundle");
  switch (kind_) {
    case CourantKind::quadratic:
    case CourantKind::drinfeld_double: {
      std::vector<Rational> a, b;
      for (const auto& p : e1.coords()) a.push_back(p.constant_term());
      for (const auto& p : e2.coords()) b.push_back(p.constant_term());
      std::vector<Poly> out;
      for (const auto& q : constants_->bracket(a, b)) out.emplace_back(0, q);
      return Section(std::move(out), 0);
    }
    case CourantKind::standard: {
      // [X1,X2] + (L_X1 ξ2 - L_X2 ξ1 + d (e1,e2)_-)
      const std::size_t n = nvars_;
      Section x1 = e1.slice(0, n), xi1 = e1.slice(n, n), x2 = e2.slice(0, n), xi2 = e2.slice(n, n);
      Multivector v1 = to_vf(x1), v2 = to_vf(x2);
      DiffForm covec = lie_derivative(v1, to_form(xi2)) - lie_derivative(v2, to_form(xi1));
      DiffForm dterm = differential(minus_pairing(x1, xi1, x2, xi2, fault_), n);
      if (d_term_sign(fault_) > 0) covec += dterm;
      else covec -= dterm;
      return Section::concat(from_vf(vf_bracket(v1, v2)), from_form(covec));
    }
    case CourantKind::bialgebroid_double: return double_bracket(*pair_, e1, e2, fault_);
  }
  throw std::logic_error("unknown Courant kind");
}

Section CourantAlgebroid::D(const Poly& f) const {
  Section r(rank_, nvars_);
  if (nvars_ == 0) return r;
  if (f.nvars() != nvars_) throw std::invalid_argument("D: function in the wrong ring");
  // ⟨Df, E_b⟩ = 1/2 ρ(E_b) f  =>  Df = 1/2 G^{-1} (ρ(E_b) f)_b
  std::vector<Poly> rho_f;
  for (const auto& v : frame_anchors_) rho_f.push_back(apply_vector_field(v, f));
  for (std::size_t a = 0; a < rank_; ++a) {
    Poly s(nvars_);
    for (std::size_t b = 0; b < rank_; ++b)
      if (pairing_inverse_[a][b] != 0 && !rho_f[b].is_zero()) s += pairing_inverse_[a][b] * rho_f[b];
    r[a] = Rational{1, 2} * s;
  }
  return r;
}

Section double_bracket(const LieBialgebroidPair& pair, const Section& e1, const Section& e2, Fault fault) {
  const std::size_t m = pair.rank();
  if (e1.rank() != 2 * m || e2.rank() != 2 * m) throw std::invalid_argument("double_bracket: wrong section rank");
  const LieAlgebroid& a = pair.a();
  const LieAlgebroid& astar = pair.astar();
  Section x1 = e1.slice(0, m), xi1 = e1.slice(m, m), x2 = e2.slice(0, m), xi2 = e2.slice(m, m);
  Poly minus = minus_pairing(x1, xi1, x2, xi2, fault);

  Section vec = a.bracket(x1, x2) + lie_derivative_mixed(astar, xi1, x2) - lie_derivative_mixed(astar, xi2, x1) -
                algebroid_d(astar, minus);
  Section covec = astar.bracket(xi1, xi2) + lie_derivative_dual(a, x1, xi2) - lie_derivative_dual(a, x2, xi1);
  Section dterm = algebroid_d(a, minus);
  if (d_term_sign(fault) > 0) covec += dterm;
  else covec -= dterm;
  return Section::concat(vec, covec);
}

Poly T_op(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3) {
  Poly s = c.pairing(c.bracket(e1, e2), e3) + c.pairing(c.bracket(e2, e3), e1) + c.pairing(c.bracket(e3, e1), e2);
  return Rational{1, 3} * s;
}

Section jacobiator(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3) {
  return c.bracket(c.bracket(e1, e2), e3) + c.bracket(c.bracket(e2, e3), e1) + c.bracket(c.bracket(e3, e1), e2);
}

Section D_op(const CourantAlgebroid& c, const Poly& f) { return c.D(f); }

bool Defect::is_zero() const {
  return std::visit([](const auto& v) { return v.is_zero(); }, value_);
}

std::string Defect::to_string() const {
  return std::visit([](const auto& v) { return v.to_string(); }, value_);
}

Defect check_axiom(const CourantAlgebroid& c, int k, std::span<const Section> s, std::span<const Poly> f) {
  auto arity = [&](std::size_t ns, std::size_t nf) {
    if (s.size() != ns || f.size() != nf)
      throw std::invalid_argument("axiom " + std::to_string(k) + " takes " + std::to_string(ns) + " sections and " +
                                  std::to_string(nf) + " functions");
  };
  switch (k) {
    case 1:
      arity(3, 0);
      return jacobiator(c, s[0], s[1], s[2]) - c.D(T_op(c, s[0], s[1], s[2]));
    case 2: {
      arity(2, 0);
      if (c.nvars() == 0) return Multivector(0, 0, 1);
      return c.anchor(c.bracket(s[0], s[1])) - vf_bracket(c.anchor(s[0]), c.anchor(s[1]));
    }
    case 3: {
      arity(2, 1);
      const Section& e1 = s[0];
      const Section& e2 = s[1];
      Section rhs = f[0] * c.bracket(e1, e2) + c.act(e1, f[0]) * e2;
      if (c.fault() != Fault::drop_axiom3_term) rhs -= c.pairing(e1, e2) * c.D(f[0]);
      return c.bracket(e1, f[0] * e2) - rhs;
    }
    case 4:
      arity(0, 2);
      return c.pairing(c.D(f[0]), c.D(f[1]));
    case 5: {
      arity(3, 0);
      const Section& e = s[0];
      const Section& h1 = s[1];
      const Section& h2 = s[2];
      Poly rhs = c.pairing(c.bracket(e, h1) + c.D(c.pairing(e, h1)), h2) +
                 c.pairing(h1, c.bracket(e, h2) + c.D(c.pairing(e, h2)));
      return c.act(e, c.pairing(h1, h2)) - rhs;
    }
    default: throw std::invalid_argument("no Courant axiom numbered " + std::to_string(k));
  }
}

Section antisymmetry_defect(const CourantAlgebroid& c, const Section& e1, const Section& e2) {
  return c.bracket(e1, e2) + c.bracket(e2, e1);
}

Section check_prop_main(const CourantAlgebroid& c, const Section& e, const Poly& f) {
  Section df = c.D(f);
  return c.bracket(e, df) - c.D(c.pairing(e, df));
}

Poly check_lemma_a1(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Poly& f) {
  return T_op(c, e1, e2, c.D(f)) - Rational{1, 4} * c.act(c.bracket(e1, e2), f);
}

LemmaA2Terms lemma_a2_terms(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3,
                            const Section& e4) {
  const Section* e[4] = {&e1, &e2, &e3, &e4};
  // The six pairwise brackets are shared by every term below.
  Section b[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      b[i][j] = c.bracket(*e[i], *e[j]);
      b[j][i] = -b[i][j];
    }
  auto jac = [&](int i, int j, int k) {
    return c.bracket(b[i][j], *e[k]) + c.bracket(b[j][k], *e[i]) + c.bracket(b[k][i], *e[j]);
  };
  Poly j = c.pairing(jac(0, 1, 2), e4) - c.pairing(jac(0, 1, 3), e3) + c.pairing(jac(0, 2, 3), e2) -
           c.pairing(jac(1, 2, 3), e1);
  Poly k = c.pairing(b[0][1], b[2][3]) - c.pairing(b[0][2], b[1][3]) + c.pairing(b[0][3], b[1][2]);
  return {std::move(j), std::move(k)};
}

Poly check_lemma_a2(const CourantAlgebroid& c, const Section& e1, const Section& e2, const Section& e3,
                    const Section& e4) {
  auto t = lemma_a2_terms(c, e1, e2, e3, e4);
  return t.k + Rational{2} * t.j;
}

}  // namespace clinf
