#include "clinf/linfty.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace clinf;
using clinf::test::P;
using clinf::test::d;
using clinf::test::dx;

namespace {

const RandomBounds kB{2, 2};

Section vec(const Multivector& x) { return Section::concat(Section(x.coords(), 3), Section(3, 3)); }
Section cov(const DiffForm& a) { return Section::concat(Section(3, 3), Section(a.coords(), 3)); }

ResElement S(Section s) { return ResElement::section(std::move(s)); }
ResElement F(Poly f) { return ResElement::function(std::move(f)); }

bool same(const std::optional<ResElement>& a, const std::optional<ResElement>& b) {
  if (a && b) return *a == *b;
  if (a) return a->is_zero();
  if (b) return b->is_zero();
  return true;
}

std::optional<ResElement> sum(std::optional<ResElement> a, const std::optional<ResElement>& b) {
  if (!b) return a;
  if (!a) return b;
  return add(*a, *b);
}

ResElement random_element(Rng& r, const Resolution& res, int degree) {
  const auto& c = res.courant();
  if (degree == 0) return S(random_section(r, c.rank(), c.nvars(), kB));
  if (degree == 1) return F(random_poly(r, c.nvars(), kB));
  return ResElement::kernel(res.kernel_element(Poly(c.nvars(), r.uniform(-3, 3))));
}

// (-1)^{i(j-1)} Σ_σ (-1)^σ ε(σ) l_j(l_i(x_σ(1..i)), x_σ(i+1), ..., x_σ(n)) with
// signs from the brute-force oracles.
std::optional<ResElement> expanded_term(const Resolution& res, std::size_t i, const std::vector<ResElement>& w) {
  const std::size_t n = w.size(), j = n + 1 - i;
  std::vector<int> deg;
  for (const auto& x : w) deg.push_back(x.degree());
  std::optional<ResElement> acc;
  for (const auto& s : test::unshuffles_by_filter(i, n)) {
    std::vector<ResElement> inner;
    for (std::size_t k = 0; k < i; ++k) inner.push_back(w[s[k]]);
    auto head = res.apply(inner);
    if (!head) continue;
    std::vector<ResElement> outer{*head};
    for (std::size_t k = i; k < n; ++k) outer.push_back(w[s[k]]);
    auto v = res.apply(outer);
    if (!v) continue;
    int sign = test::sign_by_cycles(s) * test::koszul_by_transpositions(s, deg, 7);
    if ((i * (j - 1)) % 2) sign = -sign;
    acc = sum(acc, scale(sign, *v));
  }
  return acc;
}

}  // namespace

TEST_CASE("l1") {
  Resolution res(test::standard3());
  CHECK(res.l1(F(P("x1"))) == S(cov(dx(1))));
  auto c5 = ResElement::kernel(res.kernel_element(Poly(3, 5)));
  CHECK(res.l1(c5) == F(Poly(3, 5)));
  CHECK(same(res.l1(*res.l1(c5)), std::nullopt));
  CHECK(same(res.l1(S(vec(d(1)))), std::nullopt));
  CHECK_THROWS_AS(res.kernel_element(P("x1")), std::invalid_argument);
}

TEST_CASE("l2") {
  Resolution res(test::standard3());
  CHECK(same(res.l2(S(vec(d(1))), S(vec(d(2)))), std::nullopt));
  CHECK(res.l2(S(vec(d(1))), F(P("x1"))) == F(Poly(3, Rational(1, 2))));
  CHECK(res.l2(F(P("x1")), S(vec(d(1)))) == F(Poly(3, Rational(-1, 2))));
  auto c = ResElement::kernel(res.kernel_element(Poly(3, 2)));
  CHECK(same(res.l2(F(P("x1")), F(P("x2"))), std::nullopt));
  CHECK(same(res.l2(c, S(vec(d(1)))), std::nullopt));
  Rng r(51);
  for (int t = 0; t < 10; ++t) {
    ResElement a = random_element(r, res, 0), b = random_element(r, res, 0);
    CHECK(same(res.l2(a, b), scale(-1, *res.l2(b, a))));
  }
}

TEST_CASE("l3") {
  Resolution so3(test::quadratic_so3());
  const auto& q = so3.courant();
  CHECK(so3.l3(S(q.unit(0)), S(q.unit(1)), S(q.unit(2))) == F(Poly(0, -1)));
  CHECK(so3.l3(S(q.unit(1)), S(q.unit(0)), S(q.unit(2))) == F(Poly(0, 1)));
  Resolution res(test::standard3());
  Rng r(52);
  for (int t = 0; t < 10; ++t) {
    ResElement a = random_element(r, res, 0), b = random_element(r, res, 0), f = random_element(r, res, 1),
               k = random_element(r, res, 2);
    CHECK(same(res.l3(a, b, f), std::nullopt));
    CHECK(same(res.l3(k, a, b), std::nullopt));
    CHECK(same(res.l3(a, a, b), std::nullopt));
    auto l3 = res.l3(a, b, random_element(r, res, 0));
    if (l3) CHECK(l3->degree() == 1);
  }
  std::vector<ResElement> four{random_element(r, res, 0), random_element(r, res, 0), random_element(r, res, 0),
                               random_element(r, res, 0)};
  CHECK(same(res.apply(four), std::nullopt));
}

TEST_CASE("Lemma-level cancellations") {
  Rng r(53);
  for (auto c : {test::standard3(), test::poisson_double(test::so3_bivector())}) {
    Resolution res(c);
    for (int t = 0; t < 4; ++t) {
      std::vector<ResElement> w3{random_element(r, res, 0), random_element(r, res, 0), random_element(r, res, 1)};
      CHECK(same(sum(res.shla_term(1, w3), res.shla_term(2, w3)), std::nullopt));
      CHECK(same(res.shla_term(3, w3), std::nullopt));
      std::vector<ResElement> w4{random_element(r, res, 0), random_element(r, res, 0), random_element(r, res, 0),
                                 random_element(r, res, 0)};
      CHECK(same(sum(res.shla_term(2, w4), res.shla_term(3, w4)), std::nullopt));
    }
  }
  Resolution res(test::standard3());
  auto c = ResElement::kernel(res.kernel_element(Poly(3, 4)));
  CHECK(res.shla_defect(std::vector<ResElement>{c}).is_zero());
}

TEST_CASE("coderivation evaluation matches the unshuffle expansion") {
  Rng r(54);
  for (const auto& [name, c] : test::all_instances()) {
    CAPTURE(name);
    Resolution res(c);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int t = 0; t < (n <= 3 ? 4 : 2); ++t) {
        std::vector<ResElement> w;
        for (std::size_t k = 0; k < n; ++k) {
          std::int64_t pick = r.uniform(0, 5);
          w.push_back(random_element(r, res, pick < 3 ? 0 : pick < 5 ? 1 : 2));
        }
        std::optional<ResElement> total;
        for (std::size_t i = 1; i <= n; ++i) {
          auto lib = res.shla_term(i, w);
          CHECK(same(lib, expanded_term(res, i, w)));
          total = sum(total, lib);
        }
        ShlaDefect d = res.shla_defect(w);
        CHECK(d.is_zero());
        CHECK(same(total, std::nullopt));
        int expected_degree = static_cast<int>(n) - 3;
        for (const auto& x : w) expected_degree += x.degree();
        CHECK(d.degree == expected_degree);
      }
    }
  }
}

TEST_CASE("the relations detect a corrupted instance") {
  Rng r(55);
  for (Fault f : {Fault::flip_d_term, Fault::drop_pairing_half}) {
    Resolution res(test::standard3(f));
    bool broken = false;
    for (int t = 0; t < 5 && !broken; ++t) {
      std::vector<ResElement> w{random_element(r, res, 0), random_element(r, res, 0), random_element(r, res, 0)};
      broken = !res.shla_defect(w).is_zero();
    }
    CHECK(broken);
  }
}
