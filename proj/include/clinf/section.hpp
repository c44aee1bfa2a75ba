#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "clinf/poly.hpp"

namespace clinf {

/// A section of a trivial bundle, stored as coordinates in its global frame.
/// For split bundles A ⊕ A* the A-frame comes first.
class Section {
 public:
  Section() = default;
  Section(std::size_t rank, std::size_t nvars) : coords_(rank, Poly(nvars)), nvars_(nvars) {}
  Section(std::vector<Poly> coords, std::size_t nvars);

  static Section unit(std::size_t rank, std::size_t nvars, std::size_t i);
  static Section concat(const Section& head, const Section& tail);

  std::size_t rank() const { return coords_.size(); }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Poly>& coords() const { return coords_; }
  const Poly& operator[](std::size_t i) const { return coords_.at(i); }
  Poly& operator[](std::size_t i) { return coords_.at(i); }

  /// Coordinates [offset, offset + count).
  Section slice(std::size_t offset, std::size_t count) const;

  bool is_zero() const;
  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  Section operator-() const;
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Poly& f, const Section& s);
  friend Section operator*(const Rational& q, const Section& s);
  friend bool operator==(const Section&, const Section&) = default;

  /// `[p1, p2, ...]`.
  std::string to_string() const;

 private:
  void check(const Section& o) const;

  std::vector<Poly> coords_;
  std::size_t nvars_ = 0;
};

/// Σ ξ_i a^i for a section of the dual bundle against a section.
Poly dual_pairing(const Section& xi, const Section& a);

}  // namespace clinf
