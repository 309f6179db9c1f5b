#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace linrel;
using namespace testutil;
using Catch::Approx;

static Form standard_symplectic(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return make_form(j, Field::Real, FormKind::Skew);
}

TEST_CASE("a real Lagrangian line classifies as maximal isotropic") {
  Form omega = standard_symplectic(1);
  Mat b(2, 1);
  b << 1, 0;
  IsotropicReport r = classify_subspace(Subspace::span(b, Field::Real), omega);
  REQUIRE(r.isotropic);
  REQUIRE(r.lagrangian);
  REQUIRE(r.maximal_isotropic);
  REQUIRE(r.h_lambda == 0);
  REQUIRE(r.gamma_lambda == 0.0);
  REQUIRE(r.annihilator.dim() == 1);
}

TEST_CASE("a real isotropic line in dimension four is not maximal") {
  Form omega = standard_symplectic(2);
  Mat b(4, 1);
  b.setZero();
  b(0, 0) = 1;
  IsotropicReport r = classify_subspace(Subspace::span(b, Field::Real), omega);
  REQUIRE(r.isotropic);
  REQUIRE_FALSE(r.lagrangian);
  REQUIRE_FALSE(r.maximal_isotropic);
}

TEST_CASE("the zero subspace is maximal for a definite complex skew form") {
  Mat g1(1, 1);
  g1(0, 0) = Complex(0, 1);
  Form omega = make_form(g1, Field::Complex, FormKind::Skew);
  IsotropicReport r = classify_subspace(Subspace::zero(1, Field::Complex), omega);
  REQUIRE(r.isotropic);
  REQUIRE(r.maximal_isotropic);
  REQUIRE(r.h_lambda == -1);
  REQUIRE(r.gamma_lambda == Approx(1.0));
}

TEST_CASE("a symplectic subspace is recognized and is not isotropic") {
  Form omega = standard_symplectic(2);
  Mat b(4, 2);
  b.setZero();
  b(0, 0) = 1;
  b(2, 1) = 1;  // span{e1, e3}: omega(e1, e3) = 1
  IsotropicReport r = classify_subspace(Subspace::span(b, Field::Real), omega);
  REQUIRE_FALSE(r.isotropic);
  REQUIRE(r.symplectic_subspace);
}

TEST_CASE("randomly built maximal isotropic subspaces classify as maximal") {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(g() % 3);
    Form omega = random_symplectic_form(n, Field::Complex, g);
    Subspace lam = paired_maximal_isotropic(omega);
    IsotropicReport r = classify_subspace(lam, omega);
    REQUIRE(r.isotropic);
    REQUIRE(r.maximal_isotropic);
    REQUIRE(r.gamma_lambda >= 0.0);
  }
  for (int trial = 0; trial < 6; ++trial) {
    int n = 1 + static_cast<int>(g() % 3);
    Form omega = random_symplectic_form(2 * n, Field::Real, g);
    Subspace lam = random_maximal_isotropic(omega, g);
    IsotropicReport r = classify_subspace(lam, omega);
    REQUIRE(r.isotropic);
    REQUIRE(r.maximal_isotropic);
    REQUIRE(r.lagrangian);
  }
}

TEST_CASE("reduction by an isotropic subspace drops two dimensions per direction") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + static_cast<int>(g() % 2);
    Form omega = random_symplectic_form(2 * n, Field::Real, g);
    Subspace lam = random_isotropic(omega.matrix, Field::Real, 1 + static_cast<int>(g() % n),
                                    g);
    Reduction red = reduce(lam, omega);
    REQUIRE(red.reduced.nx() == 2 * n - 2 * lam.dim());
    if (red.reduced.nx() > 0) {
      REQUIRE(red.reduced.kind == FormKind::Skew);
      REQUIRE(red.reduced.nondegenerate());
    }
    // the reducing subspace maps to zero, its annihilator onto everything
    REQUIRE(reduce_subspace(lam, red, omega).dim() == 0);
    REQUIRE(reduce_subspace(omega_annihilator(lam, omega), red, omega).dim() ==
            red.reduced.nx());
  }
}

TEST_CASE("reduction rejects non-isotropic subspaces") {
  Form omega = standard_symplectic(1);
  REQUIRE_THROWS_AS(reduce(Subspace::full(2, Field::Real), omega), Error);
}

TEST_CASE("the two expressions for the reduced image agree") {
  // (alpha + lambda) cap lambda^omega = (alpha cap lambda^omega) + lambda,
  // because lambda sits inside lambda^omega
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 10; ++trial) {
    Form omega = random_symplectic_form(6, Field::Real, g);
    Subspace lam = random_isotropic(omega.matrix, Field::Real, 1, g);
    Subspace alpha = random_subspace(6, 1 + static_cast<int>(g() % 4), Field::Real, g);
    Reduction red = reduce(lam, omega);
    Subspace ann = omega_annihilator(lam, omega);
    Subspace left = intersect(sum(alpha, lam), ann);
    Subspace right = sum(intersect(alpha, ann), lam);
    REQUIRE(approx_equal(left, right));
    Subspace image = reduce_subspace(alpha, red, omega);
    REQUIRE(image.dim() == left.dim() - lam.dim());
  }
}

TEST_CASE("reduction maps isotropic subspaces to isotropic subspaces") {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 8; ++trial) {
    Form omega = random_symplectic_form(6, Field::Complex, g);
    Subspace lam = random_isotropic(omega.matrix, Field::Complex, 1, g);
    Subspace alpha = random_isotropic(omega.matrix, Field::Complex, 2, g);
    Reduction red = reduce(lam, omega);
    Subspace image = reduce_subspace(alpha, red, omega);
    if (red.reduced.nx() == 0 || image.dim() == 0) continue;
    IsotropicReport r = classify_subspace(image, red.reduced);
    REQUIRE(r.isotropic);
  }
}

TEST_CASE("transversal split of a skew-adjoint relation") {
  std::mt19937_64 g(17);
  int splits_done = 0;
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(g() % 3);
    Form omega = random_symplectic_form(2 * n, Field::Real, g);
    Relation t = random_h_symmetric(2 * n, 2 * n, omega, Complex(-1, 0), 2 * n, g);
    if (t.dim() != 2 * n) continue;  // only exactly skew-adjoint instances
    SymmetryReport sym = classify_symmetry(t, omega, Complex(-1, 0));
    if (!sym.is_h_selfadjoint) continue;
    REQUIRE(index_and_parity(t).index == 0);
    TransversalSplit sp = transversal_split(t, omega);
    ++splits_done;
    REQUIRE(approx_equal(sp.x0, t.kernel()));
    REQUIRE(approx_equal(sp.y1, t.range()));
    // the range is the annihilator of the kernel
    REQUIRE(approx_equal(annihilator(sp.x0, omega, Side::Right), sp.y1));
    // the split pieces reassemble and have the right sizes
    REQUIRE(sp.t0.dim() + sp.t1.dim() == t.dim());
    // T1 is invertible as a relation: trivial kernel and full range,
    // so its inverse is an everywhere-defined operator Y1 -> X1
    REQUIRE(sp.t1.kernel().dim() == 0);
    REQUIRE(approx_equal(sp.t1.range(), sp.y1));
    REQUIRE(rel_inverse(sp.t1).multivalued_part().dim() == 0);
    REQUIRE(approx_equal(sum(sp.t0.graph, sp.t1.graph), t.graph));
    // complement structure
    REQUIRE(intersect(sp.x0, sp.x1).dim() == 0);
    REQUIRE(sum(sp.x0, sp.x1).dim() == 2 * n);
  }
  REQUIRE(splits_done >= 3);
}

TEST_CASE("transversal split rejects non-skew-adjoint input") {
  Form omega = standard_symplectic(1);
  Mat a(2, 2);
  a << 1, 0, 0, 2;
  Relation t = Relation::from_operator(a, Field::Real);
  REQUIRE_THROWS_AS(transversal_split(t, omega), Error);
}

TEST_CASE("the operator correspondence satisfies its defining identity") {
  std::mt19937_64 g(23);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 8; ++trial) {
      int d = 4;
      Form omega = random_nondegenerate_form(d, f, g);
      Subspace x0 = random_subspace(d, 2, f, g);
      Subspace y0 = random_subspace(d, 2, f, g);
      Mat m00 = x0.basis.transpose() * omega.matrix * y0.basis.conjugate();
      if (sigma_min(m00) < 1e-3) continue;
      Subspace x1 = annihilator(y0, omega, Side::Left);
      Mat a = gaussian(x1.dim(), x0.dim(), f, g);
      FOmegaData fo = f_omega(a, x0, y0, omega);
      // Omega(x0, F y1) = Omega(A x0, y1) on basis pairs
      for (int i = 0; i < x0.dim(); ++i) {
        for (int j = 0; j < fo.y1.dim(); ++j) {
          Vec xv = x0.basis.col(i);
          Vec yv = fo.y1.basis.col(j);
          Vec fy = y0.basis * fo.f_matrix.col(j);
          Vec ax = fo.x1.basis * a.col(i);
          Complex lhs = omega.eval(xv, fy);
          Complex rhs = omega.eval(ax, yv);
          REQUIRE(std::abs(lhs - rhs) < 1e-8);
        }
      }
      // linearity in A
      Mat b = gaussian(x1.dim(), x0.dim(), f, g);
      FOmegaData fb = f_omega(b, x0, y0, omega);
      FOmegaData fab = f_omega(Mat(a + b), x0, y0, omega);
      REQUIRE((fab.f_matrix - fo.f_matrix - fb.f_matrix).norm() < 1e-8);
    }
  }
}
