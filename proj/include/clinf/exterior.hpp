#pragma once

// Sparse elements of Γ(∧^k V) over a global frame e_1..e_r of a trivial bundle
// on R^n, with polynomial coefficients. A basis k-vector e_{i1}∧...∧e_{ik}
// (i1 < ... < ik) is keyed by the bitmask of its indices.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clinf/poly.hpp"

namespace clinf {

using IndexMask = std::uint32_t;

inline constexpr std::size_t kMaxRank = 31;

inline int mask_degree(IndexMask m) { return std::popcount(m); }

/// Indices set in `m`, ascending, 0-based.
inline std::vector<std::size_t> mask_indices(IndexMask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// Sign of e_a ∧ e_b relative to e_{a ∪ b}; 0 if the masks overlap.
inline int wedge_sign(IndexMask a, IndexMask b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (IndexMask rest = b; rest != 0; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a & ~((IndexMask{2} << j) - 1));
  }
  return (inversions & 1) != 0 ? -1 : 1;
}

/// Number of indices in `m` strictly below `i`.
inline int count_below(IndexMask m, std::size_t i) { return std::popcount(m & ((IndexMask{1} << i) - 1)); }
/// Number of indices in `m` strictly above `i`.
inline int count_above(IndexMask m, std::size_t i) { return std::popcount(m & ~((IndexMask{2} << i) - 1)); }

struct VectorTag {};
struct FormTag {};

template <class Tag>
class Exterior {
 public:
  using Components = std::map<IndexMask, Poly>;

  Exterior() = default;
  Exterior(std::size_t rank, std::size_t nvars, std::size_t degree) : rank_(rank), nvars_(nvars), degree_(degree) {
    if (rank > kMaxRank) throw std::invalid_argument("frame rank too large");
  }

  /// Degree-0 element.
  static Exterior scalar(std::size_t rank, const Poly& f) {
    Exterior e(rank, f.nvars(), 0);
    e.add(0, f);
    return e;
  }

  /// Degree-1 element from frame coordinates.
  static Exterior from_coords(const std::vector<Poly>& coords, std::size_t nvars) {
    Exterior e(coords.size(), nvars, 1);
    for (std::size_t i = 0; i < coords.size(); ++i) e.add(IndexMask{1} << i, coords[i]);
    return e;
  }

  /// Basis element e_{i1}∧...∧e_{ik} scaled by `coeff`; the tuple need not be
  /// sorted (the sign is normalized) and repeated indices give zero.
  static Exterior basis(std::size_t rank, std::initializer_list<std::size_t> indices, const Poly& coeff) {
    return basis(rank, std::vector<std::size_t>(indices), coeff);
  }
  static Exterior basis(std::size_t rank, const std::vector<std::size_t>& indices, const Poly& coeff) {
    Exterior e(rank, coeff.nvars(), indices.size());
    e.add_tuple(indices, coeff);
    return e;
  }

  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t degree() const { return degree_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Poly component(IndexMask m) const {
    auto it = comps_.find(m);
    return it == comps_.end() ? Poly(nvars_) : it->second;
  }

  /// Frame coordinates of a degree-1 element.
  std::vector<Poly> coords() const {
    if (degree_ != 1) throw std::logic_error("coords() requires a degree-1 element");
    std::vector<Poly> out(rank_, Poly(nvars_));
    for (const auto& [m, c] : comps_) out[static_cast<std::size_t>(std::countr_zero(m))] = c;
    return out;
  }

  /// Adds `coeff` to the component at `m` (which must have this degree).
  void add(IndexMask m, const Poly& coeff) {
    if (static_cast<std::size_t>(mask_degree(m)) != degree_) throw std::logic_error("component degree mismatch");
    if (m >> rank_ != 0) throw std::out_of_range("frame index out of range");
    if (coeff.nvars() != nvars_) throw std::invalid_argument("coefficient ring mismatch");
    if (coeff.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(m, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  void add_tuple(const std::vector<std::size_t>& indices, const Poly& coeff) {
    IndexMask m = 0;
    int sign = 1;
    for (std::size_t i : indices) {
      if (i >= rank_) throw std::out_of_range("frame index out of range");
      IndexMask bit = IndexMask{1} << i;
      if ((m & bit) != 0) return;
      if ((count_above(m, i) & 1) != 0) sign = -sign;
      m |= bit;
    }
    add(m, sign > 0 ? coeff : -coeff);
  }

  Exterior& operator+=(const Exterior& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.comps_) add(m, c);
    return *this;
  }
  Exterior& operator-=(const Exterior& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.comps_) add(m, -c);
    return *this;
  }
  friend Exterior operator+(Exterior a, const Exterior& b) { return a += b; }
  friend Exterior operator-(Exterior a, const Exterior& b) { return a -= b; }
  Exterior operator-() const {
    Exterior r = *this;
    for (auto& [m, c] : r.comps_) c = -c;
    return r;
  }
  friend Exterior operator*(const Poly& f, const Exterior& e) {
    Exterior r(e.rank_, e.nvars_, e.degree_);
    if (f.is_zero()) return r;
    for (const auto& [m, c] : e.comps_) r.add(m, f * c);
    return r;
  }
  friend Exterior operator*(const Rational& q, const Exterior& e) {
    Exterior r = e;
    if (q == 0) return Exterior(e.rank_, e.nvars_, e.degree_);
    for (auto& [m, c] : r.comps_) c *= q;
    return r;
  }
  friend bool operator==(const Exterior& a, const Exterior& b) {
    return a.rank_ == b.rank_ && a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  /// Applies `fn` to every coefficient (e.g. a partial derivative).
  template <class Fn>
  Exterior map_coefficients(Fn&& fn) const {
    Exterior r(rank_, nvars_, degree_);
    for (const auto& [m, c] : comps_) r.add(m, fn(c));
    return r;
  }

  /// Same data viewed under another tag (e.g. Γ(∧A) read as cochains of A*).
  template <class Other>
  Exterior<Other> retag() const {
    Exterior<Other> r(rank_, nvars_, degree_);
    for (const auto& [m, c] : comps_) r.add(m, c);
    return r;
  }

  /// `{ (1,2): x3; (1,3): -1 }` with 1-based indices.
  std::string to_string() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [m, c] : comps_) {
      out << (first ? " " : "; ") << "(";
      auto idx = mask_indices(m);
      for (std::size_t k = 0; k < idx.size(); ++k) out << (k ? "," : "") << idx[k] + 1;
      out << "): " << c.to_string();
      first = false;
    }
    out << (first ? "}" : " }");
    return out.str();
  }

 private:
  void check_compatible(const Exterior& o) const {
    if (rank_ != o.rank_ || nvars_ != o.nvars_ || degree_ != o.degree_)
      throw std::invalid_argument("incompatible exterior elements");
  }

  std::size_t rank_ = 0;
  std::size_t nvars_ = 0;
  std::size_t degree_ = 0;
  Components comps_;
};

template <class Tag>
Exterior<Tag> wedge(const Exterior<Tag>& a, const Exterior<Tag>& b) {
  if (a.rank() != b.rank() || a.nvars() != b.nvars()) throw std::invalid_argument("wedge of incompatible elements");
  Exterior<Tag> r(a.rank(), a.nvars(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.components())
    for (const auto& [mb, cb] : b.components()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Poly c = ca * cb;
      r.add(ma | mb, s > 0 ? c : -c);
    }
  return r;
}

/// Sections of ∧^k of the tangent-like side (∂_i, or the frame of A).
using Multivector = Exterior<VectorTag>;
/// Sections of ∧^k of the dual side (dx_i, or the dual frame of A*).
using DiffForm = Exterior<FormTag>;

}  // namespace clinf
