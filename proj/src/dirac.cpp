#include "clinf/dirac.hpp"

#include <stdexcept>

namespace clinf {

namespace {

std::size_t constant_rank(const std::vector<Section>& frame) {
  if (frame.empty()) return 0;
  RationalMatrix m;
  for (const auto& s : frame) {
    std::vector<Rational> row;
    for (const auto& p : s.coords()) row.push_back(p.constant_term());
    m.push_back(std::move(row));
  }
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t row = rank + 1; row < m.size(); ++row) {
      if (m[row][col] == 0) continue;
      Rational f = m[row][col] / m[rank][col];
      for (std::size_t k = col; k < cols; ++k) m[row][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

void require_standard(const CourantAlgebroid& c, const char* what) {
  if (c.kind() != CourantKind::standard) throw std::invalid_argument(std::string{what} + " needs a standard instance");
}

void require_dirac(const DiracCandidate& l, const char* role) {
  auto iso = is_isotropic(l);
  if (!iso.ok) throw std::invalid_argument(std::string{role} + " is not maximal isotropic: " + iso.message);
  auto integ = is_integrable(l);
  if (!integ.ok) throw std::invalid_argument(std::string{role} + " is not integrable: " + integ.message);
}

/// The restriction of the ambient structure to a Dirac frame, with `dual`
/// satisfying 2⟨frame_i, dual_j⟩ = δ_ij for coordinate extraction.
LieAlgebroid restrict_to(const std::shared_ptr<const CourantAlgebroid>& c, std::vector<Section> frame,
                         std::vector<Section> dual, std::string description) {
  const std::size_t r = frame.size();
  const std::size_t n = c->nvars();
  auto combine = [c, frame](const Section& a) {
    Section s = c->zero_section();
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (!a[i].is_zero()) s += a[i] * frame[i];
    return s;
  };
  auto anchor = [c, combine](const Section& a) { return c->anchor(combine(a)); };
  auto bracket = [c, frame, dual, combine, r, n, description](const Section& a, const Section& b) {
    Section amb = c->bracket(combine(a), combine(b));
    Section coords(r, n);
    for (std::size_t i = 0; i < r; ++i) coords[i] = Rational{2} * c->pairing(amb, dual[i]);
    Section back = c->zero_section();
    for (std::size_t i = 0; i < r; ++i)
      if (!coords[i].is_zero()) back += coords[i] * frame[i];
    if (back != amb) throw std::logic_error("bracket leaves the subbundle " + description);
    return coords;
  };
  return LieAlgebroid::restricted(std::move(description), r, n, anchor, bracket);
}

}  // namespace

DiracCandidate::DiracCandidate(std::shared_ptr<const CourantAlgebroid> ambient, std::vector<Section> frame,
                               std::string description)
    : ambient_(std::move(ambient)), frame_(std::move(frame)), description_(std::move(description)) {
  if (!ambient_) throw std::invalid_argument("Dirac candidate without an ambient instance");
  for (const auto& s : frame_)
    if (s.rank() != ambient_->rank() || s.nvars() != ambient_->nvars())
      throw std::invalid_argument("Dirac candidate " + description_ + ": frame section of the wrong bundle");
  if (constant_rank(frame_) != frame_.size())
    throw std::invalid_argument("Dirac candidate " + description_ + ": frame is not pointwise independent");
}

DiracCandidate DiracCandidate::graph_2form(std::shared_ptr<const CourantAlgebroid> ambient, const DiffForm& omega) {
  require_standard(*ambient, "graph_2form");
  const std::size_t n = ambient->nvars();
  if (omega.degree() != 2 || omega.rank() != n || omega.nvars() != n)
    throw std::invalid_argument("graph_2form: need a 2-form on R^" + std::to_string(n));
  std::vector<Section> frame;
  for (std::size_t i = 0; i < n; ++i) {
    Multivector di = Multivector::basis(n, {i}, Poly(n, 1));
    DiffForm iota = interior_product(di, omega);
    frame.push_back(Section::concat(Section(di.coords(), n), Section(iota.coords(), n)));
  }
  return DiracCandidate(std::move(ambient), std::move(frame), "graph of " + omega.to_string());
}

DiracCandidate DiracCandidate::graph_bivector(std::shared_ptr<const CourantAlgebroid> ambient, const Multivector& pi) {
  require_standard(*ambient, "graph_bivector");
  const std::size_t n = ambient->nvars();
  if (pi.degree() != 2 || pi.rank() != n || pi.nvars() != n)
    throw std::invalid_argument("graph_bivector: need a bivector on R^" + std::to_string(n));
  std::vector<Section> frame;
  for (std::size_t i = 0; i < n; ++i) {
    DiffForm dxi = DiffForm::basis(n, {i}, Poly(n, 1));
    Multivector v = sharp(pi, dxi);
    frame.push_back(Section::concat(Section(v.coords(), n), Section(dxi.coords(), n)));
  }
  return DiracCandidate(std::move(ambient), std::move(frame), "graph of " + pi.to_string());
}

DiracCandidate DiracCandidate::vector_part(std::shared_ptr<const CourantAlgebroid> ambient) {
  if (!ambient->is_split()) throw std::invalid_argument("vector_part needs a split instance");
  std::vector<Section> frame;
  for (std::size_t i = 0; i < ambient->half_rank(); ++i) frame.push_back(ambient->unit(i));
  return DiracCandidate(std::move(ambient), std::move(frame), "A");
}

DiracCandidate DiracCandidate::covector_part(std::shared_ptr<const CourantAlgebroid> ambient) {
  if (!ambient->is_split()) throw std::invalid_argument("covector_part needs a split instance");
  std::vector<Section> frame;
  for (std::size_t i = 0; i < ambient->half_rank(); ++i) frame.push_back(ambient->unit(ambient->half_rank() + i));
  return DiracCandidate(std::move(ambient), std::move(frame), "A*");
}

Section DiracCandidate::combine(const Section& coords) const {
  if (coords.rank() != frame_.size()) throw std::invalid_argument("combine: wrong coordinate count");
  Section s = ambient_->zero_section();
  for (std::size_t i = 0; i < frame_.size(); ++i)
    if (!coords[i].is_zero()) s += coords[i] * frame_[i];
  return s;
}

DiracCheck is_isotropic(const DiracCandidate& l) {
  const auto& c = l.ambient();
  const auto& f = l.frame();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i; j < f.size(); ++j) {
      Poly v = c.pairing(f[i], f[j]);
      if (!v.is_zero()) {
        DiracCheck r{false, {i + 1, j + 1}, v, ""};
        r.message = "<s" + std::to_string(i + 1) + ", s" + std::to_string(j + 1) + "> = " + v.to_string();
        return r;
      }
    }
  if (2 * f.size() != c.rank()) {
    DiracCheck r{false, {}, std::nullopt, ""};
    r.message = "rank " + std::to_string(f.size()) + " is not half of " + std::to_string(c.rank());
    return r;
  }
  return {};
}

DiracCheck is_integrable(const DiracCandidate& l) {
  auto iso = is_isotropic(l);
  if (!iso.ok) throw std::invalid_argument("is_integrable: candidate is not maximal isotropic (" + iso.message + ")");
  const auto& c = l.ambient();
  const auto& f = l.frame();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      Section b = c.bracket(f[i], f[j]);
      for (std::size_t k = 0; k < f.size(); ++k) {
        Poly v = c.pairing(b, f[k]);
        if (!v.is_zero()) {
          DiracCheck r{false, {i + 1, j + 1, k + 1}, v, ""};
          r.message = "<[s" + std::to_string(i + 1) + ", s" + std::to_string(j + 1) + "], s" + std::to_string(k + 1) +
                      "> = " + v.to_string();
          return r;
        }
      }
    }
  return {};
}

Section ExtractedBialgebroid::to_ambient(const Section& e) const {
  const std::size_t m = frame_a.size();
  if (e.rank() != 2 * m) throw std::invalid_argument("to_ambient: wrong section rank");
  Section s(frame_a.front().rank(), frame_a.front().nvars());
  for (std::size_t i = 0; i < m; ++i) {
    if (!e[i].is_zero()) s += e[i] * frame_a[i];
    if (!e[m + i].is_zero()) s += e[m + i] * frame_astar[i];
  }
  return s;
}

ExtractedBialgebroid extract_bialgebroid(const DiracCandidate& l1, const DiracCandidate& l2) {
  if (l1.ambient_ptr() != l2.ambient_ptr()) throw std::invalid_argument("extract_bialgebroid: different ambient instances");
  require_dirac(l1, "L1");
  require_dirac(l2, "L2");
  const auto& c = l1.ambient();
  const auto& s = l1.frame();
  const auto& t = l2.frame();
  const std::size_t m = s.size();

  RationalMatrix pairing(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Poly v = Rational{2} * c.pairing(s[i], t[j]);
      if (!v.is_constant())
        throw std::invalid_argument("extract_bialgebroid: 2<s" + std::to_string(i + 1) + ", t" + std::to_string(j + 1) +
                                    "> = " + v.to_string() + " is not constant");
      pairing[i][j] = v.constant_term();
    }
  auto inv = invert(pairing);
  if (!inv) throw std::invalid_argument("extract_bialgebroid: L1 and L2 are not transversal");

  // t~_j = Σ_k (M^{-1})_{kj} t_k, so that 2<s_i, t~_j> = δ_ij.
  std::vector<Section> dual;
  for (std::size_t j = 0; j < m; ++j) {
    Section acc = c.zero_section();
    for (std::size_t k = 0; k < m; ++k)
      if ((*inv)[k][j] != 0) acc += (*inv)[k][j] * t[k];
    dual.push_back(std::move(acc));
  }

  LieAlgebroid a = restrict_to(l1.ambient_ptr(), s, dual, l1.describe());
  LieAlgebroid astar = restrict_to(l1.ambient_ptr(), dual, s, l2.describe());
  return ExtractedBialgebroid{LieBialgebroidPair(std::move(a), std::move(astar)), s, std::move(dual)};
}

}  // namespace clinf
