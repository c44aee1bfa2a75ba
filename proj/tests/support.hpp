#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <memory>
#include <vector>

#include "clinf/cartan.hpp"
#include "clinf/courant.hpp"
#include "clinf/lie_algebroid.hpp"
#include "clinf/poly.hpp"
#include "clinf/random.hpp"

namespace clinf::test {

inline Poly P(const char* text, std::size_t n = 3) { return Poly::parse(text, n); }

/// Evaluates p at an integer point by direct substitution.
inline Rational eval_at(const Poly& p, const std::vector<std::int64_t>& x) {
  Rational acc;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (unsigned e = 0; e < m.exponent(i); ++e) t *= Rational(x[i]);
    acc += t;
  }
  return acc;
}

inline Multivector d(std::size_t i, std::size_t n = 3) { return Multivector::basis(n, {i - 1}, Poly(n, 1)); }
inline DiffForm dx(std::size_t i, std::size_t n = 3) { return DiffForm::basis(n, {i - 1}, Poly(n, 1)); }

inline Multivector so3_bivector() {
  return Multivector::basis(3, {0, 1}, Poly::variable(3, 2)) + Multivector::basis(3, {1, 2}, Poly::variable(3, 0)) +
         Multivector::basis(3, {2, 0}, Poly::variable(3, 1));
}

inline StructureConstants so3_constants() {
  StructureConstants c(3);
  c.set_bracket(0, 1, {0, 0, 1});
  c.set_bracket(1, 2, {1, 0, 0});
  c.set_bracket(2, 0, {0, 1, 0});
  return c;
}

inline RationalMatrix identity(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::shared_ptr<const CourantAlgebroid> standard3(Fault f = Fault::none) {
  return std::make_shared<const CourantAlgebroid>(CourantAlgebroid::standard(3, f));
}

inline std::shared_ptr<const CourantAlgebroid> poisson_double(const Multivector& pi, Fault f = Fault::none) {
  return std::make_shared<const CourantAlgebroid>(CourantAlgebroid::bialgebroid_double(
      LieBialgebroidPair(LieAlgebroid::tangent(pi.nvars()), LieAlgebroid::cotangent_poisson(pi)), f));
}

inline std::shared_ptr<const CourantAlgebroid> quadratic_so3(Fault f = Fault::none) {
  return std::make_shared<const CourantAlgebroid>(CourantAlgebroid::quadratic(so3_constants(), identity(3), f));
}

inline std::shared_ptr<const CourantAlgebroid> drinfeld2(Fault f = Fault::none) {
  StructureConstants g(2), gs(2);
  g.set_bracket(0, 1, {0, 1});
  return std::make_shared<const CourantAlgebroid>(CourantAlgebroid::drinfeld_double(g, gs, f));
}

/// The five instances named in the acceptance criteria.
inline std::vector<std::pair<const char*, std::shared_ptr<const CourantAlgebroid>>> all_instances(Fault f = Fault::none) {
  return {{"standard", standard3(f)},
          {"poisson12", poisson_double(Multivector::basis(3, {0, 1}, Poly(3, 1)), f)},
          {"poisson_so3", poisson_double(so3_bivector(), f)},
          {"drinfeld2", drinfeld2(f)},
          {"quadratic_so3", quadratic_so3(f)}};
}

}  // namespace clinf::test
