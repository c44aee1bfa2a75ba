#include "doctest.h"
#include "support.hpp"

using namespace clinf;
using clinf::test::P;
using clinf::test::d;
using clinf::test::dx;

namespace {

const RandomBounds kB{2, 3};

Section sec(Rng& r, const LieAlgebroid& l) { return random_section(r, l.rank(), l.nvars(), kB); }

std::vector<LieAlgebroid> algebroids() {
  return {LieAlgebroid::tangent(3), LieAlgebroid::cotangent_poisson(wedge(d(1), d(2))),
          LieAlgebroid::cotangent_poisson(test::so3_bivector()), LieAlgebroid::point_lie_algebra(test::so3_constants()),
          LieAlgebroid::zero_bracket_cotangent(3)};
}

}  // namespace

TEST_CASE("structure constants") {
  CHECK(test::so3_constants().is_antisymmetric());
  CHECK(test::so3_constants().satisfies_jacobi());
  StructureConstants bad(3);
  bad.set_bracket(0, 1, {0, 0, 1});
  bad.set_bracket(1, 2, {0, 1, 0});
  CHECK_FALSE(bad.satisfies_jacobi());
  CHECK_THROWS(LieAlgebroid::point_lie_algebra(bad));
  CHECK(test::so3_constants().bracket({1, 0, 0}, {0, 1, 0}) == std::vector<Rational>{0, 0, 1});
  CHECK_THROWS(bad.set_bracket(0, 3, {0, 0, 0}));
}

TEST_CASE("algebroid differential on functions") {
  CHECK(algebroid_d(LieAlgebroid::tangent(3), P("x1")) == Section::unit(3, 3, 0));
  auto g = LieAlgebroid::point_lie_algebra(test::so3_constants());
  CHECK(algebroid_d(g, Poly(0, 5)).is_zero());
  // d_pi x1 is the vector field kPoissonDifferentialSign * sharp(pi, dx1) = -d2.
  auto tp = LieAlgebroid::cotangent_poisson(wedge(d(1), d(2)));
  Multivector expected = Rational(kPoissonDifferentialSign) * sharp(wedge(d(1), d(2)), dx(1));
  CHECK(algebroid_d(tp, P("x1")) == Section(expected.coords(), 3));
  CHECK(algebroid_d(tp, P("x1")) == Section({Poly(3), P("-1"), Poly(3)}, 3));
}

TEST_CASE("cotangent bracket examples") {
  Multivector pi = wedge(d(1), d(2));
  CHECK(cotangent_bracket(pi, dx(1), dx(2)).is_zero());
  DiffForm a = DiffForm::basis(3, {1}, P("x1*x3"));
  CHECK(cotangent_bracket(pi, a, a).is_zero());
  // Leibniz: [dx1, x1 dx2] = x1 [dx1, dx2] + (pi#dx1)(x1) dx2 = 0.
  CHECK(cotangent_bracket(pi, dx(1), DiffForm::basis(3, {1}, P("x1"))).is_zero());
  CHECK_THROWS(cotangent_bracket(wedge(d(1), d(2)) + Multivector::basis(3, {1, 2}, P("x2")), dx(1), dx(2)));
}

TEST_CASE("exact forms bracket to the differential of the Poisson bracket") {
  Multivector pi = test::so3_bivector();
  Rng r(21);
  for (int t = 0; t < 10; ++t) {
    Poly f = random_poly(r, 3, kB), g = random_poly(r, 3, kB);
    DiffForm df = differential(f, 3), dg = differential(g, 3);
    CHECK(cotangent_bracket(pi, df, dg) == differential(evaluate(pi, df, dg), 3));
  }
}

TEST_CASE("non-Poisson bivectors are rejected") {
  CHECK_THROWS_AS(LieAlgebroid::cotangent_poisson(wedge(d(1), d(2)) + Multivector::basis(3, {1, 2}, P("x2"))),
                  std::invalid_argument);
}

TEST_CASE("Lie algebroid axioms on random sections") {
  Rng r(22);
  for (const auto& l : algebroids()) {
    CAPTURE(l.describe());
    for (int t = 0; t < 8; ++t) {
      Section a = sec(r, l), b = sec(r, l), c = sec(r, l);
      Poly f = random_poly(r, l.nvars(), kB);
      CHECK(l.bracket(a, b) == -l.bracket(b, a));
      CHECK(anchor_defect(l, a, b).is_zero());
      CHECK(leibniz_defect(l, a, b, f).is_zero());
      CHECK(jacobi_defect(l, a, b, c).is_zero());
    }
  }
}

TEST_CASE("algebroid differential squares to zero and matches de Rham for the tangent bundle") {
  Rng r(23);
  auto tm = LieAlgebroid::tangent(3);
  for (int t = 0; t < 8; ++t) {
    DiffForm w = random_exterior<FormTag>(r, 3, 3, 1, kB);
    CHECK(algebroid_differential(tm, w) == de_rham_d(w));
  }
  for (const auto& l : algebroids()) {
    CAPTURE(l.describe());
    for (int t = 0; t < 4; ++t) {
      Poly f = random_poly(r, l.nvars(), kB);
      DiffForm w0 = DiffForm::scalar(l.rank(), f);
      DiffForm w1 = random_exterior<FormTag>(r, l.rank(), l.nvars(), 1, kB);
      CHECK(algebroid_differential(l, w0).coords() == algebroid_d(l, f).coords());
      CHECK(algebroid_differential(l, algebroid_differential(l, w0)).is_zero());
      CHECK(algebroid_differential(l, algebroid_differential(l, w1)).is_zero());
    }
  }
}

TEST_CASE("algebroid Schouten bracket") {
  Rng r(24);
  auto tm = LieAlgebroid::tangent(3);
  for (int t = 0; t < 5; ++t) {
    Multivector p = random_exterior<VectorTag>(r, 3, 3, 2, kB), q = random_exterior<VectorTag>(r, 3, 3, 1, kB);
    CHECK(algebroid_schouten(tm, p, q) == schouten_bracket(p, q));
  }
  for (const auto& l : algebroids()) {
    CAPTURE(l.describe());
    for (int t = 0; t < 3; ++t) {
      Multivector p = random_exterior<VectorTag>(r, l.rank(), l.nvars(), 2, kB);
      Multivector q = random_exterior<VectorTag>(r, l.rank(), l.nvars(), 1, kB);
      CHECK(algebroid_schouten(l, p, q) == algebroid_schouten_generic(l, p, q));
      Section a = sec(r, l), b = sec(r, l);
      CHECK(algebroid_schouten(l, Multivector::from_coords(a.coords(), l.nvars()),
                               Multivector::from_coords(b.coords(), l.nvars()))
                .coords() == l.bracket(a, b).coords());
    }
  }
}

TEST_CASE("dual Lie derivative satisfies its defining identity") {
  // <L_a xi, b> = rho(a)<xi, b> - <xi, [a, b]>.
  Rng r(25);
  for (const auto& l : algebroids()) {
    CAPTURE(l.describe());
    for (int t = 0; t < 5; ++t) {
      Section a = sec(r, l), xi = sec(r, l);
      Section lx = lie_derivative_dual(l, a, xi);
      for (std::size_t k = 0; k < l.rank(); ++k) {
        Section b = l.unit(k);
        Poly rhs = l.act(a, dual_pairing(xi, b)) - dual_pairing(xi, l.bracket(a, b));
        CHECK(dual_pairing(lx, b) == rhs);
      }
    }
  }
  auto zero = LieAlgebroid::zero_bracket_cotangent(3);
  CHECK(lie_derivative_dual(zero, Section::unit(3, 3, 0), random_section(r, 3, 3, kB)).is_zero());
}

TEST_CASE("coadjoint action for a point algebra") {
  auto g = LieAlgebroid::point_lie_algebra(test::so3_constants());
  auto c = test::so3_constants();
  Rng r(26);
  for (int t = 0; t < 10; ++t) {
    Section a = sec(r, g), xi = sec(r, g);
    Section got = lie_derivative_dual(g, a, xi);
    // (ad*_a xi)_k = -sum_{i,j} a_i xi_j c_{ik}^j
    for (std::size_t k = 0; k < 3; ++k) {
      Rational v;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) v -= a[i].constant_term() * xi[j].constant_term() * c(i, k, j);
      CHECK(got[k] == Poly(0, v));
    }
  }
}

TEST_CASE("bialgebroid compatibility") {
  Rng r(27);
  LieBialgebroidPair zero(LieAlgebroid::tangent(3), LieAlgebroid::zero_bracket_cotangent(3));
  LieBialgebroidPair p12(LieAlgebroid::tangent(3), LieAlgebroid::cotangent_poisson(wedge(d(1), d(2))));
  LieBialgebroidPair pso3(LieAlgebroid::tangent(3), LieAlgebroid::cotangent_poisson(test::so3_bivector()));
  for (const auto* pair : {&zero, &p12, &pso3}) {
    for (int t = 0; t < 5; ++t) {
      Section x = random_section(r, 3, 3, kB), y = random_section(r, 3, 3, kB);
      CHECK(bialgebroid_compat_check(*pair, x, y).is_zero());
      CHECK(bialgebroid_compat_check(pair->dual(), x, y).is_zero());
    }
  }
  Section x = random_section(r, 3, 3, kB);
  CHECK(zero.d_star(Multivector::from_coords(x.coords(), 3)).is_zero());
  CHECK_THROWS(LieBialgebroidPair(LieAlgebroid::tangent(3), LieAlgebroid::tangent(2)));
}

TEST_CASE("a pair that is not a bialgebroid fails compatibility") {
  // T*M with the linear so(3) bracket on both sides is not a bialgebroid.
  LieBialgebroidPair bad(LieAlgebroid::cotangent_poisson(test::so3_bivector()),
                         LieAlgebroid::cotangent_poisson(test::so3_bivector()));
  Rng r(28);
  bool found = false;
  for (int t = 0; t < 10 && !found; ++t) {
    Section x = random_section(r, 3, 3, kB), y = random_section(r, 3, 3, kB);
    found = !bialgebroid_compat_check(bad, x, y).is_zero();
  }
  CHECK(found);
}

TEST_CASE("Poisson sign calibration") {
  // d_pi f = [pi, f] = kPoissonDifferentialSign * sharp(pi, df), and with this
  // convention both Poisson pairs pass the compatibility check above.
  Rng r(29);
  for (const Multivector& pi : {wedge(d(1), d(2)), test::so3_bivector()}) {
    auto tp = LieAlgebroid::cotangent_poisson(pi);
    for (int t = 0; t < 5; ++t) {
      Poly f = random_poly(r, 3, kB);
      Multivector via_sharp = Rational(kPoissonDifferentialSign) * sharp(pi, differential(f, 3));
      CHECK(schouten_bracket(pi, Multivector::scalar(3, f)) == via_sharp);
      CHECK(algebroid_d(tp, f) == Section(via_sharp.coords(), 3));
      Section a = random_section(r, 3, 3, kB);
      CHECK(tp.anchor(a) == sharp(pi, DiffForm::from_coords(a.coords(), 3)));
    }
  }
}
