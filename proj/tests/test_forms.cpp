#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace linrel;
using namespace testutil;
using Catch::Approx;

TEST_CASE("make_form validates and snaps the declared kind") {
  Mat sym(2, 2);
  sym << 1, 2, 2, -1;
  Form fs = make_form(sym, Field::Real, FormKind::Symmetric);
  REQUIRE(fs.kind == FormKind::Symmetric);
  REQUIRE((fs.matrix - fs.matrix.adjoint()).norm() == 0.0);

  Mat skew(2, 2);
  skew << 0, 3, -3, 0;
  REQUIRE_NOTHROW(make_form(skew, Field::Real, FormKind::Skew));
  REQUIRE_THROWS_AS(make_form(skew, Field::Real, FormKind::Symmetric), Error);
  REQUIRE_THROWS_AS(make_form(sym, Field::Real, FormKind::Skew), Error);

  // complex skew means skew-Hermitian under this pairing
  Mat csk(1, 1);
  csk(0, 0) = Complex(0, 2);
  REQUIRE_NOTHROW(make_form(csk, Field::Complex, FormKind::Skew));
}

TEST_CASE("evaluation is linear in the first slot, conjugate-linear in the second") {
  std::mt19937_64 g(3);
  Form q = random_nondegenerate_form(4, Field::Complex, g);
  Vec x = gaussian(4, 1, Field::Complex, g);
  Vec y = gaussian(4, 1, Field::Complex, g);
  Complex a(0.3, -1.1), b(2.0, 0.7);
  REQUIRE(std::abs(q.eval(a * x, y) - a * q.eval(x, y)) < 1e-10);
  REQUIRE(std::abs(q.eval(x, b * y) - std::conj(b) * q.eval(x, y)) < 1e-10);
  REQUIRE(std::abs(q.eval(x, y) - Complex((x.transpose() * q.matrix * y.conjugate())(0, 0))) <
          1e-14);
}

TEST_CASE("the graph form of a one-dimensional pairing induces a rotation") {
  Mat g1(1, 1);
  g1(0, 0) = 1;
  Form omega = make_form(g1, Field::Real, FormKind::General);
  Form w = graph_symplectic(omega);
  REQUIRE(w.kind == FormKind::Skew);
  Mat expected(2, 2);
  expected << 0, -1, 1, 0;
  REQUIRE((w.l_matrix() - expected).norm() < 1e-14);

  g1(0, 0) = 2;
  Form omega2 = make_form(g1, Field::Real, FormKind::General);
  Mat expected2(2, 2);
  expected2 << 0, -2, 2, 0;
  REQUIRE((graph_symplectic(omega2).l_matrix() - expected2).norm() < 1e-14);
}

TEST_CASE("graph form evaluation matches its definition") {
  std::mt19937_64 g(17);
  Form omega = random_nondegenerate_form(3, Field::Complex, g);
  Form w = graph_symplectic(omega);
  for (int i = 0; i < 10; ++i) {
    Vec x = gaussian(3, 1, Field::Complex, g), y = gaussian(3, 1, Field::Complex, g);
    Vec u = gaussian(3, 1, Field::Complex, g), v = gaussian(3, 1, Field::Complex, g);
    Vec p(6), q(6);
    p << x, y;
    q << u, v;
    Complex lhs = w.eval(p, q);
    Complex rhs = omega.eval(x, v) - std::conj(omega.eval(u, y));
    REQUIRE(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("annihilator dimensions and the double annihilator") {
  std::mt19937_64 g(23);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 15; ++trial) {
      int d = 2 + static_cast<int>(g() % 5);
      Form q = random_nondegenerate_form(d, f, g);
      Subspace s = random_subspace(d, static_cast<int>(g() % (d + 1)), f, g);
      Subspace ra = annihilator(s, q, Side::Right);
      Subspace la = annihilator(s, q, Side::Left);
      REQUIRE(ra.dim() == d - s.dim());
      REQUIRE(la.dim() == d - s.dim());
      // pairing really vanishes
      REQUIRE((s.basis.transpose() * q.matrix * ra.basis.conjugate()).norm() < 1e-9);
      REQUIRE((la.basis.transpose() * q.matrix * s.basis.conjugate()).norm() < 1e-9);
      // double annihilator recovers the space when the form is nondegenerate
      REQUIRE(approx_equal(annihilator(ra, q, Side::Left), s));
    }
  }
}

TEST_CASE("symplectic annihilator contains isotropic subspaces") {
  std::mt19937_64 g(31);
  for (int trial = 0; trial < 10; ++trial) {
    Form omega = random_symplectic_form(6, Field::Real, g);
    Subspace lam = random_isotropic(omega.matrix, Field::Real, 2, g);
    REQUIRE(lam.dim() == 2);
    Subspace ann = omega_annihilator(lam, omega);
    REQUIRE(ann.dim() == 4);
    REQUIRE(approx_subset(lam, ann));
  }
}

TEST_CASE("degeneracy detection") {
  Mat dgn(2, 2);
  dgn << 0, 1, -1, 0;
  dgn *= 0;
  dgn(0, 1) = 1;
  dgn(1, 0) = -1;
  Form ok = make_form(dgn, Field::Real, FormKind::Skew);
  REQUIRE(ok.nondegenerate());
  REQUIRE_NOTHROW(check_nondegenerate(ok, "form"));

  Mat zero = Mat::Zero(2, 2);
  Form bad = make_form(zero, Field::Real, FormKind::Skew);
  REQUIRE_FALSE(bad.nondegenerate());
  REQUIRE_THROWS_AS(check_nondegenerate(bad, "form"), Error);
  try {
    check_nondegenerate(bad, "form");
  } catch (const Error& e) {
    REQUIRE(e.code() == Err::DegenerateForm);
  }
}

TEST_CASE("operator norms of the induced maps match the Gram norm") {
  std::mt19937_64 g(37);
  Form q = random_nondegenerate_form(5, Field::Complex, g);
  REQUIRE(q.l_norm() == Approx(op_norm(q.matrix)).margin(1e-12));
  REQUIRE(op_norm(q.l_matrix()) == Approx(op_norm(q.r_matrix())).margin(1e-12));
}
