#include "clinf/section.hpp"

#include <sstream>
#include <stdexcept>

namespace clinf {

Section::Section(std::vector<Poly> coords, std::size_t nvars) : coords_(std::move(coords)), nvars_(nvars) {
  for (const auto& c : coords_)
    if (c.nvars() != nvars_) throw std::invalid_argument("section coordinate in the wrong polynomial ring");
}

Section Section::unit(std::size_t rank, std::size_t nvars, std::size_t i) {
  if (i >= rank) throw std::out_of_range("unit section index out of range");
  Section s(rank, nvars);
  s.coords_[i] = Poly(nvars, 1);
  return s;
}

Section Section::concat(const Section& head, const Section& tail) {
  if (head.nvars_ != tail.nvars_) throw std::invalid_argument("concat: polynomial ring mismatch");
  std::vector<Poly> c = head.coords_;
  c.insert(c.end(), tail.coords_.begin(), tail.coords_.end());
  return Section(std::move(c), head.nvars_);
}

Section Section::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > coords_.size()) throw std::out_of_range("section slice out of range");
  return Section(std::vector<Poly>(coords_.begin() + static_cast<std::ptrdiff_t>(offset),
                                   coords_.begin() + static_cast<std::ptrdiff_t>(offset + count)),
                 nvars_);
}

bool Section::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

void Section::check(const Section& o) const {
  if (coords_.size() != o.coords_.size() || nvars_ != o.nvars_)
    throw std::invalid_argument("sections of different bundles: rank " + std::to_string(coords_.size()) + " vs " +
                                std::to_string(o.coords_.size()));
}

Section& Section::operator+=(const Section& o) {
  check(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Section& Section::operator-=(const Section& o) {
  check(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Section Section::operator-() const {
  Section r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Section operator*(const Poly& f, const Section& s) {
  Section r = s;
  for (auto& c : r.coords_) c = f * c;
  return r;
}

Section operator*(const Rational& q, const Section& s) {
  Section r = s;
  for (auto& c : r.coords_) c *= q;
  return r;
}

std::string Section::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? ", " : "") << coords_[i].to_string();
  out << "]";
  return out.str();
}

Poly dual_pairing(const Section& xi, const Section& a) {
  if (xi.rank() != a.rank() || xi.nvars() != a.nvars()) throw std::invalid_argument("dual_pairing: rank mismatch");
  Poly r(a.nvars());
  for (std::size_t i = 0; i < a.rank(); ++i) r += xi[i] * a[i];
  return r;
}

}  // namespace clinf
