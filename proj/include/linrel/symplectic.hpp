#pragma once

// Classification of subspaces of a symplectic space (X, omega), symplectic
// reduction by an isotropic subspace, the transversal splitting of an
// index-zero skew-adjoint relation, and the operator correspondence f_Omega.

#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/subspace.hpp"

namespace linrel {

inline void check_symplectic(const Form& omega, const char* what) {
  require(omega.kind == FormKind::Skew, Err::KindViolation,
          std::string(what) + ": form must be skew");
  check_nondegenerate(omega, what);
}

struct IsotropicReport {
  bool isotropic = false;
  bool coisotropic = false;
  bool lagrangian = false;
  bool symplectic_subspace = false;  // lambda cap lambda^omega = 0
  bool maximal_isotropic = false;
  int h_lambda = 0;        // +-1 when +-i*omega is definite on the reduction, else 0
  double gamma_lambda = 0; // definiteness margin; 0 in the Lagrangian case
  bool indeterminate = false;      // borderline eigenvalues prevented a call
  bool tolerance_warning = false;
  Subspace annihilator;            // lambda^omega
};

namespace detail {

/// Orthonormal basis of lambda^omega cap lambda^perp: concrete
/// representatives for the symplectic reduction lambda^omega / lambda.
inline Mat reduction_basis(const Subspace& lambda, const Subspace& ann, double tol) {
  Mat raw = ann.basis - lambda.basis * (lambda.basis.adjoint() * ann.basis);
  Mat r = orthonormal_range(raw, tol);
  if (lambda.field == Field::Real) r = realify_columns(r, tol);
  return r;
}

}  // namespace detail

inline IsotropicReport classify_subspace(const Subspace& lambda, const Form& omega) {
  check_symplectic(omega, "classify_subspace");
  require(lambda.ambient == omega.nx(), Err::DimensionMismatch,
          "subspace ambient dimension does not match the form");
  require(lambda.field == omega.field, Err::DimensionMismatch, "scalar fields differ");
  IsotropicReport rep;
  rep.annihilator = omega_annihilator(lambda, omega);
  rep.isotropic = approx_subset(lambda, rep.annihilator);
  rep.coisotropic = approx_subset(rep.annihilator, lambda);
  rep.lagrangian = rep.isotropic && rep.coisotropic;
  rep.symplectic_subspace = intersect(lambda, rep.annihilator).dim() == 0;
  if (!rep.isotropic) return rep;
  if (rep.lagrangian) {
    rep.maximal_isotropic = true;  // over R; over C only when the reduction is trivial
    rep.h_lambda = 0;
    rep.gamma_lambda = 0.0;
    return rep;
  }
  if (lambda.field == Field::Real) {
    // real maximal isotropic subspaces are exactly the Lagrangian ones
    rep.maximal_isotropic = false;
    return rep;
  }
  Mat r = detail::reduction_basis(lambda, rep.annihilator, lambda.tol);
  // Hermitian matrix of i*omega on the reduction representatives; the
  // quadratic value at coordinates c is conj(c)^H H conj(c)
  Mat k(r.cols(), r.cols());
  k = r.transpose() * omega.matrix * r.conjugate();
  Mat h = Complex(0, 1) * k;
  Inertia in = inertia_of(h, lambda.tol);
  if (in.borderline || (!in.definite() && in.zero > 0 && in.pos + in.neg > 0)) {
    rep.indeterminate = true;
    rep.tolerance_warning = true;
    return rep;
  }
  if (in.positive_definite()) {
    rep.maximal_isotropic = true;
    rep.h_lambda = +1;
    rep.gamma_lambda = in.min_abs_nonzero;
  } else if (in.negative_definite()) {
    rep.maximal_isotropic = true;
    rep.h_lambda = -1;
    rep.gamma_lambda = in.min_abs_nonzero;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// symplectic reduction

struct Reduction {
  Form reduced;        // omega~ on K^r in the section coordinates
  Mat section;         // ambient x r, orthonormal representatives of classes
  Subspace lambda;     // the reducing isotropic subspace
};

inline Reduction reduce(const Subspace& lambda, const Form& omega) {
  check_symplectic(omega, "reduce");
  require(lambda.ambient == omega.nx(), Err::DimensionMismatch,
          "subspace ambient dimension does not match the form");
  Subspace ann = omega_annihilator(lambda, omega);
  require(approx_subset(lambda, ann), Err::NotIsotropic,
          "reduction requires an isotropic subspace");
  Reduction out;
  out.lambda = lambda;
  out.section = detail::reduction_basis(lambda, ann, lambda.tol);
  const Eigen::Index r = out.section.cols();
  Mat gram(r, r);
  gram = out.section.transpose() * omega.matrix * out.section.conjugate();
  if (r == 0) {
    out.reduced.matrix = Mat(0, 0);
    out.reduced.field = omega.field;
    out.reduced.kind = FormKind::Skew;
    out.reduced.tol = omega.tol;
    out.reduced.smin = 0.0;
    return out;
  }
  out.reduced = make_form(gram, omega.field, FormKind::Skew, omega.tol);
  check_nondegenerate(out.reduced, "reduce");
  return out;
}

/// Image of a subspace under the reduction map:
/// pi_lambda(alpha) = ((alpha + lambda) cap lambda^omega) / lambda,
/// in the section coordinates of `red`.
inline Subspace reduce_subspace(const Subspace& alpha, const Reduction& red,
                                const Form& omega) {
  require(alpha.ambient == red.lambda.ambient, Err::DimensionMismatch,
          "subspace ambient dimension does not match the reduction");
  Subspace ann = omega_annihilator(red.lambda, omega);
  Subspace s = intersect(sum(alpha, red.lambda), ann);
  Mat coords = red.section.adjoint() * s.basis;
  const int r = static_cast<int>(red.section.cols());
  if (r == 0) return Subspace::zero(1, alpha.field, alpha.tol);
  // the quotient dimension is known exactly; a relative rank decision on
  // `coords` would misread pure roundoff as extra directions when the
  // image is small
  const int k = s.dim() - red.lambda.dim();
  if (k <= 0) return Subspace::zero(r, alpha.field, alpha.tol);
  Eigen::JacobiSVD<Mat> svd(coords, Eigen::ComputeThinU);
  Mat b = svd.matrixU().leftCols(k);
  if (alpha.field == Field::Real) b = realify_columns(b, alpha.tol);
  return Subspace::span(b, alpha.field, alpha.tol);
}

// ---------------------------------------------------------------------------
// transversal splitting of an index-zero skew-adjoint relation

struct TransversalSplit {
  Subspace x0, x1;  // X = X0 + X1, X0 = ker T
  Subspace y0, y1;  // Y = Y0 + Y1, Y1 = ran T
  Relation t0, t1;  // T = T0 +^ T1 with T0 = X0 x {0}
};

inline TransversalSplit transversal_split(const Relation& t, const Form& omega,
                                          const Subspace* y0_choice = nullptr) {
  check_form_matches(t, omega);
  check_nondegenerate(omega, "transversal_split");
  SymmetryReport sym = classify_symmetry(t, omega, Complex(-1, 0));
  require(sym.is_h_selfadjoint, Err::NotSkewAdjoint,
          "transversal_split requires a skew-adjoint relation");
  IndexReport idx = index_and_parity(t);
  require(idx.index == 0, Err::IndexNonzero, "transversal_split requires index zero");

  TransversalSplit out;
  out.x0 = t.kernel();
  out.y1 = t.range();
  if (y0_choice) {
    out.y0 = *y0_choice;
    require(out.y0.ambient == t.ny, Err::DimensionMismatch, "Y0 lives in the wrong space");
  } else {
    out.y0 = perp(out.y1);
  }
  // direct complement check: Y = Y0 (+) Y1
  require(intersect(out.y0, out.y1).dim() == 0 &&
              sum(out.y0, out.y1).dim() == t.ny,
          Err::SplitFailure, "Y0 is not a direct complement of ran T");
  out.x1 = annihilator(out.y0, omega, Side::Left);

  // T0 = X0 x {0}
  {
    Mat raw = Mat::Zero(t.nx + t.ny, out.x0.dim());
    raw.topRows(t.nx) = out.x0.basis;
    out.t0 = Relation::from_subspace(
        Subspace::span(raw.cols() ? raw : Mat(t.nx + t.ny, 0), t.field(), t.tol()), t.nx,
        t.ny);
  }
  // T1 = T cap (X1 x Y1)
  {
    Mat prod = Mat::Zero(t.nx + t.ny, out.x1.dim() + out.y1.dim());
    prod.block(0, 0, t.nx, out.x1.dim()) = out.x1.basis;
    prod.block(t.nx, out.x1.dim(), t.ny, out.y1.dim()) = out.y1.basis;
    Subspace prod_space = Subspace::span(
        prod.cols() ? prod : Mat(t.nx + t.ny, 0), t.field(), t.tol());
    out.t1 = Relation::from_subspace(intersect(t.graph, prod_space), t.nx, t.ny);
  }
  // reassembly: T = T0 +^ graph-sum T1
  Subspace reassembled = sum(out.t0.graph, out.t1.graph);
  require(approx_equal(reassembled, t.graph, 1e-8), Err::SplitFailure,
          "splitting does not reassemble to T");
  return out;
}

// ---------------------------------------------------------------------------
// operator correspondence f_Omega

/// Given a map A : X0 -> Y0^{Omega,l} (matrix in the given orthonormal
/// bases), return the matrix of f_Omega(A) : X0^{Omega,r} -> Y0 defined by
///   Omega(x0, f(A) y1) = Omega(A x0, y1).
struct FOmegaData {
  Mat f_matrix;        // dim Y0 x dim X0^{Omega,r}
  Subspace x1, y1;     // Y0^{Omega,l} and X0^{Omega,r}
};

inline FOmegaData f_omega(const Mat& a, const Subspace& x0, const Subspace& y0,
                          const Form& omega) {
  require(x0.ambient == omega.nx() && y0.ambient == omega.ny(), Err::DimensionMismatch,
          "X0 / Y0 do not match the form factors");
  check_nondegenerate(omega, "f_omega");
  FOmegaData out;
  out.x1 = annihilator(y0, omega, Side::Left);
  out.y1 = annihilator(x0, omega, Side::Right);
  require(a.rows() == out.x1.dim() && a.cols() == x0.dim(), Err::DimensionMismatch,
          "operator matrix must map X0 coordinates to Y0^{Omega,l} coordinates");
  const int k = x0.dim();
  require(y0.dim() == k, Err::InvalidArgument, "X0 and Y0 must have equal dimension");
  // Omega restricted to X0 x Y0 in the given bases
  Mat m00 = x0.basis.transpose() * omega.matrix * y0.basis.conjugate();
  require(sigma_min(m00) > rank_cutoff(op_norm(m00), k, k, omega.tol),
          Err::SingularRestriction, "Omega restricted to X0 x Y0 is degenerate");
  Mat m11 = out.x1.basis.transpose() * omega.matrix * out.y1.basis.conjugate();
  // M00 conj(F) = A^T M11  =>  F = conj(M00^{-1} A^T M11)
  Mat f = (m00.fullPivLu().solve(a.transpose() * m11)).conjugate();
  out.f_matrix = f;
  return out;
}

}  // namespace linrel
