#pragma once

// Sesquilinear forms Omega : X x Y -> K with the convention
//   Omega(x, y) = x^T * G * conj(y)
// (linear in the first slot, conjugate-linear in the second).  Includes the
// graph symplectic form on X x Y and left/right annihilators.

#include "linrel/core.hpp"
#include "linrel/subspace.hpp"

namespace linrel {

enum class FormKind { General, Symmetric, Skew };

inline const char* kind_name(FormKind k) {
  switch (k) {
    case FormKind::General: return "general";
    case FormKind::Symmetric: return "symmetric";
    case FormKind::Skew: return "skew";
  }
  return "general";
}

struct Form {
  Mat matrix;  // nx x ny Gram matrix G
  Field field = Field::Real;
  FormKind kind = FormKind::General;
  double tol = kDefaultTol;
  double smin = 0.0;  // nondegeneracy certificate, set at construction

  int nx() const { return static_cast<int>(matrix.rows()); }
  int ny() const { return static_cast<int>(matrix.cols()); }

  bool nondegenerate() const {
    if (nx() != ny()) return false;
    return smin > rank_cutoff(op_norm(matrix), nx(), ny(), tol);
  }

  Complex eval(const Vec& x, const Vec& y) const {
    return (x.transpose() * matrix * y.conjugate())(0, 0);
  }

  /// Matrix of the induced operator L : X -> Y^* under the identification of
  /// a semi-linear functional f(y) = a^T conj(y) with the vector a.
  Mat l_matrix() const { return matrix.transpose(); }

  /// Matrix of R : Y -> X^* under the same identification.
  Mat r_matrix() const { return matrix.conjugate(); }

  /// Spectral norm of the induced operator (equals the Gram norm).
  double l_norm() const { return op_norm(matrix); }
};

inline Form make_form(const Mat& g, Field f, FormKind kind, double tol = kDefaultTol) {
  require(g.rows() > 0 && g.cols() > 0, Err::InvalidMatrix, "form matrix must be nonempty");
  require(all_finite(g), Err::InvalidMatrix, "non-finite entry in form matrix");
  if (f == Field::Real)
    require(g.imag().norm() <= 1e-9 * std::max(1.0, g.real().norm()), Err::InvalidMatrix,
            "real-field form has nonzero imaginary part");
  Form out;
  out.matrix = g;
  if (f == Field::Real) out.matrix.imag().setZero();
  out.field = f;
  out.kind = kind;
  out.tol = tol;
  const double scale = std::max(op_norm(g), 1e-300);
  const double cut = rank_cutoff(scale, g.rows(), g.cols(), tol);
  if (kind != FormKind::General) {
    require(g.rows() == g.cols(), Err::KindViolation, "symmetric/skew form must be square");
    Mat defect = (kind == FormKind::Symmetric) ? Mat(g - g.adjoint()) : Mat(g + g.adjoint());
    require(op_norm(defect) <= std::max(cut, 1e-12 * scale), Err::KindViolation,
            "form matrix does not match its declared kind");
    // snap to the exact kind
    out.matrix = (kind == FormKind::Symmetric) ? Mat((g + g.adjoint()) / 2.0)
                                               : Mat((g - g.adjoint()) / 2.0);
    if (f == Field::Real) out.matrix.imag().setZero();
  }
  out.smin = (g.rows() == g.cols()) ? sigma_min(out.matrix) : 0.0;
  return out;
}

inline void check_nondegenerate(const Form& f, const char* what) {
  require(f.nx() == f.ny(), Err::DegenerateForm, std::string(what) + ": form is not square");
  require(f.nondegenerate(), Err::DegenerateForm,
          std::string(what) + ": form matrix is singular at the working tolerance");
}

/// Graph symplectic form on X x Y induced by Omega:
///   omega((x1,y1),(x2,y2)) = Omega(x1,y2) - conj(Omega(x2,y1)),
/// Gram block matrix [[0, G],[-G^H, 0]].
inline Form graph_symplectic(const Form& omega) {
  const int nx = omega.nx(), ny = omega.ny();
  Mat w = Mat::Zero(nx + ny, nx + ny);
  w.block(0, nx, nx, ny) = omega.matrix;
  w.block(nx, 0, ny, nx) = -omega.matrix.adjoint();
  Form out;
  out.matrix = w;
  out.field = omega.field;
  out.kind = FormKind::Skew;
  out.tol = omega.tol;
  out.smin = sigma_min(w);
  return out;
}

enum class Side { Left, Right };

/// Right annihilator of S in Y: {y : Omega(x,y) = 0 for all x in S}.
/// Left annihilator of S in X: {x : Omega(x,y) = 0 for all y in S}.
inline Subspace annihilator(const Subspace& s, const Form& omega, Side side) {
  if (side == Side::Right) {
    require(s.ambient == omega.nx(), Err::DimensionMismatch,
            "subspace does not live in the form's left factor");
    // condition B^T G conj(y) = 0  <=>  conj(B^T G) y = 0
    Mat a = (s.basis.transpose() * omega.matrix).conjugate();
    Mat k = null_space(a, std::min(s.tol, omega.tol));
    if (s.field == Field::Real) k = realify_columns(k, s.tol);
    Subspace out = Subspace::zero(omega.ny(), s.field, s.tol);
    out.basis = k;
    return out;
  }
  require(s.ambient == omega.ny(), Err::DimensionMismatch,
          "subspace does not live in the form's right factor");
  // condition x^T G conj(B) = 0  <=>  (G conj(B))^T x = 0
  Mat a = (omega.matrix * s.basis.conjugate()).transpose();
  Mat k = null_space(a, std::min(s.tol, omega.tol));
  if (s.field == Field::Real) k = realify_columns(k, s.tol);
  Subspace out = Subspace::zero(omega.nx(), s.field, s.tol);
  out.basis = k;
  return out;
}

/// Annihilator of a subspace of Z = X under a square (e.g. symplectic) form:
/// lambda^omega = {v : omega(u, v) = 0 for all u in lambda}.
inline Subspace omega_annihilator(const Subspace& lambda, const Form& omega) {
  return annihilator(lambda, omega, Side::Right);
}

}  // namespace linrel
