#include "doctest.h"
#include "support.hpp"

using namespace clinf;
using clinf::test::P;
using clinf::test::d;
using clinf::test::dx;

namespace {

const RandomBounds kSmall{2, 3};

Multivector random_vf(Rng& r, std::size_t deg = 1) { return random_exterior<VectorTag>(r, 3, 3, deg, kSmall); }
DiffForm random_form(Rng& r, std::size_t deg) { return random_exterior<FormTag>(r, 3, 3, deg, kSmall); }

// Coordinate formula (L_X a)_j = X^i d_i a_j + a_i d_j X^i.
DiffForm lie_derivative_oracle(const Multivector& x, const DiffForm& a) {
  auto xc = x.coords();
  auto ac = a.coords();
  std::vector<Poly> out(3, Poly(3));
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) out[j] += xc[i] * ac[j].derivative(i) + ac[i] * xc[i].derivative(j);
  return one_form(out);
}

// {f, g} = pi(df, dg); Jacobi on the coordinate functions decides Poisson-ness.
bool jacobi_oracle(const Multivector& pi) {
  auto br = [&](const Poly& f, const Poly& g) { return evaluate(pi, differential(f, 3), differential(g, 3)); };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        Poly a = Poly::variable(3, i), b = Poly::variable(3, j), c = Poly::variable(3, k);
        if (!(br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()) return false;
      }
  return true;
}

int schouten_sign(std::size_t p, std::size_t q) { return ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("de Rham differential examples") {
  CHECK(differential(P("x1"), 3) == dx(1));
  DiffForm w = DiffForm::basis(3, {0, 1}, P("x3"));
  CHECK(de_rham_d(w) == DiffForm::basis(3, {0, 1, 2}, Poly(3, 1)));
  CHECK(de_rham_d(wedge(dx(1), dx(2))).is_zero());
}

TEST_CASE("d squares to zero") {
  Rng r(1);
  for (int t = 0; t < 20; ++t) {
    CHECK(de_rham_d(differential(random_poly(r, 3, kSmall), 3)).is_zero());
    CHECK(de_rham_d(de_rham_d(random_form(r, 1))).is_zero());
  }
}

TEST_CASE("d is a graded derivation of the wedge product") {
  Rng r(2);
  for (int t = 0; t < 10; ++t) {
    DiffForm a = random_form(r, 1), b = random_form(r, 1);
    CHECK(de_rham_d(wedge(a, b)) == wedge(de_rham_d(a), b) - wedge(a, de_rham_d(b)));
  }
}

TEST_CASE("vector field bracket") {
  CHECK(vf_bracket(d(1), d(2)).is_zero());
  CHECK(vf_bracket(d(1), Multivector::basis(3, {1}, P("x1"))) == d(2));
  Rng r(3);
  for (int t = 0; t < 20; ++t) {
    Multivector x = random_vf(r), y = random_vf(r);
    Poly f = random_poly(r, 3, kSmall);
    CHECK(vf_bracket(x, x).is_zero());
    CHECK(apply_vector_field(vf_bracket(x, y), f) ==
          apply_vector_field(x, apply_vector_field(y, f)) - apply_vector_field(y, apply_vector_field(x, f)));
  }
}

TEST_CASE("interior product and Lie derivative examples") {
  CHECK(interior_product(d(1), dx(1)) == DiffForm::scalar(3, Poly(3, 1)));
  CHECK(interior_product(d(2), wedge(dx(1), dx(2))) == -dx(1));
  CHECK(interior_product(Multivector::basis(3, {0}, P("x2")), dx(1)) == DiffForm::scalar(3, P("x2")));
  CHECK(lie_derivative(d(1), DiffForm::basis(3, {1}, P("x1"))) == dx(2));
  CHECK(lie_derivative(d(1), dx(2)).is_zero());
  Poly f = P("x1^2*x3 - x2");
  Multivector x = Multivector::basis(3, {2}, P("x1")) + d(1);
  CHECK(lie_derivative(x, DiffForm::scalar(3, f)) == DiffForm::scalar(3, apply_vector_field(x, f)));
}

TEST_CASE("Lie derivative matches the coordinate formula and Cartan's identity") {
  Rng r(4);
  for (int t = 0; t < 20; ++t) {
    Multivector x = random_vf(r);
    DiffForm a = random_form(r, 1), w = random_form(r, 2);
    CHECK(lie_derivative(x, a) == lie_derivative_oracle(x, a));
    CHECK(lie_derivative(x, w) == interior_product(x, de_rham_d(w)) + de_rham_d(interior_product(x, w)));
  }
}

TEST_CASE("Schouten bracket") {
  Poly f = P("x1^2*x2 + x3");
  Multivector pi = wedge(d(1), d(2));
  Multivector expected = Multivector::basis(3, {0}, f.derivative(1)) - Multivector::basis(3, {1}, f.derivative(0));
  Multivector got = schouten_bracket(pi, Multivector::scalar(3, f));
  CHECK((got == expected || got == -expected));

  Rng r(5);
  for (int t = 0; t < 10; ++t) {
    Multivector x = random_vf(r), y = random_vf(r);
    CHECK(schouten_bracket(x, y) == vf_bracket(x, y));
    CHECK(schouten_bracket(x, Multivector::scalar(3, f)) == Multivector::scalar(3, apply_vector_field(x, f)));
  }
  for (int t = 0; t < 6; ++t) {
    Multivector a = random_vf(r, 2), b = random_vf(r, 1), c = random_vf(r, 2);
    CHECK(schouten_bracket(a, b) == -schouten_sign(2, 1) * schouten_bracket(b, a));
    CHECK(schouten_bracket(a, c) == -schouten_sign(2, 2) * schouten_bracket(c, a));
    Multivector lhs = schouten_bracket(a, schouten_bracket(b, c));
    Multivector rhs = schouten_bracket(schouten_bracket(a, b), c) +
                      schouten_sign(2, 1) * schouten_bracket(b, schouten_bracket(a, c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Poisson bivectors") {
  CHECK(is_poisson(wedge(d(1), d(2))));
  CHECK(is_poisson(test::so3_bivector()));
  CHECK(is_poisson(Multivector(3, 3, 2)));
  // x2 d1^d3 commutes past d1^d2; the x2 d2^d3 variant does not.
  CHECK(is_poisson(wedge(d(1), d(2)) + Multivector::basis(3, {0, 2}, P("x2"))));
  CHECK_FALSE(is_poisson(wedge(d(1), d(2)) + Multivector::basis(3, {1, 2}, P("x2"))));
  CHECK_FALSE(is_poisson(Multivector::basis(3, {0, 1}, P("x3")) + Multivector::basis(3, {0, 2}, P("x1"))));

  Rng r(6);
  int poisson = 0, other = 0;
  for (int t = 0; t < 30; ++t) {
    Multivector pi = t % 2 ? random_vf(r, 2) : Multivector::basis(3, {0, 2}, random_poly(r, 3, kSmall));
    bool p = is_poisson(pi);
    CHECK(p == jacobi_oracle(pi));
    (p ? poisson : other)++;
  }
  CHECK(poisson >= 3);
  CHECK(other >= 3);
}

TEST_CASE("sharp") {
  Multivector pi = wedge(d(1), d(2));
  CHECK(sharp(pi, dx(1)) == d(2));
  CHECK(sharp(Multivector(3, 3, 2), dx(3)).is_zero());
  Rng r(7);
  for (int t = 0; t < 10; ++t) {
    Multivector q = random_vf(r, 2);
    DiffForm a = random_form(r, 1), b = random_form(r, 1);
    CHECK(evaluate(q, a, a).is_zero());
    CHECK(evaluate(b, sharp(q, a)) == evaluate(q, a, b));
  }
}
