#pragma once

// Linear relations A : X -> Y represented by their graphs inside X x Y,
// relation algebra, the Omega-adjoint, h-symmetry classification (including
// a finite maximality test), the Fredholm-style index, and the associated
// form Q_A(x, y) = Omega(x, A y) on dom(A).

#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/subspace.hpp"

namespace linrel {

struct Relation {
  Subspace graph;  // subspace of K^{nx+ny}
  int nx = 0, ny = 0;

  int dim() const { return graph.dim(); }
  Field field() const { return graph.field; }
  double tol() const { return graph.tol; }

  Mat top() const { return graph.basis.topRows(nx); }
  Mat bottom() const { return graph.basis.bottomRows(ny); }

  static Relation from_subspace(const Subspace& g, int nx, int ny) {
    require(g.ambient == nx + ny, Err::DimensionMismatch,
            "graph ambient dimension must equal nx + ny");
    Relation r;
    r.graph = g;
    r.nx = nx;
    r.ny = ny;
    return r;
  }

  static Relation from_graph(const Mat& span_raw, int nx, int ny, Field f,
                             double tol = kDefaultTol) {
    require(nx > 0 && ny > 0, Err::InvalidArgument, "factor dimensions must be positive");
    require(span_raw.rows() == nx + ny, Err::DimensionMismatch,
            "spanning set rows must equal nx + ny");
    return from_subspace(Subspace::span(span_raw, f, tol), nx, ny);
  }

  /// Graph of a (everywhere-defined, single-valued) operator x -> Ax.
  static Relation from_operator(const Mat& a, Field f, double tol = kDefaultTol) {
    const int n = static_cast<int>(a.cols()), m = static_cast<int>(a.rows());
    Mat raw(n + m, n);
    raw.topRows(n) = Mat::Identity(n, n);
    raw.bottomRows(m) = a;
    return from_graph(raw, n, m, f, tol);
  }

  static Relation zero(int nx, int ny, Field f, double tol = kDefaultTol) {
    Relation r;
    r.graph = Subspace::zero(nx + ny, f, tol);
    r.nx = nx;
    r.ny = ny;
    return r;
  }

  Subspace domain() const { return Subspace::span(top(), field(), tol()); }
  Subspace range() const { return Subspace::span(bottom(), field(), tol()); }

  /// ker A = {x : (x, 0) in graph}.
  Subspace kernel() const {
    // graph vectors with vanishing Y component: coefficient kernel of bottom block
    Mat c = null_space(bottom(), tol());
    Mat xs = top() * c;
    return Subspace::span(xs.cols() ? xs : Mat(nx, 0), field(), tol());
  }

  /// mul A = A(0) = {y : (0, y) in graph}.
  Subspace multivalued_part() const {
    Mat c = null_space(top(), tol());
    Mat ys = bottom() * c;
    return Subspace::span(ys.cols() ? ys : Mat(ny, 0), field(), tol());
  }

  /// Minimum-norm selection from A(x); requires x in dom(A).
  Vec apply_min_norm(const Vec& x) const {
    require(x.size() == nx, Err::DimensionMismatch, "vector size must equal nx");
    Mat t = top();
    Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vec c = svd.solve(x);
    require((t * c - x).norm() <= kGapTol * std::max(1.0, x.norm()), Err::InvalidArgument,
            "vector is not in the domain of the relation");
    Vec y = bottom() * c;
    Subspace a0 = multivalued_part();
    if (a0.dim() > 0) y -= a0.basis * (a0.basis.adjoint() * y);
    return y;
  }
};

inline bool approx_equal(const Relation& a, const Relation& b, double eps = kGapTol) {
  return a.nx == b.nx && a.ny == b.ny && approx_equal(a.graph, b.graph, eps);
}

// ---------------------------------------------------------------------------
// relation algebra

inline Relation rel_inverse(const Relation& a) {
  Mat raw(a.nx + a.ny, a.dim());
  raw.topRows(a.ny) = a.bottom();
  raw.bottomRows(a.nx) = a.top();
  Relation out;
  out.graph = Subspace::span(raw.cols() ? raw : Mat(a.nx + a.ny, 0), a.field(), a.tol());
  out.graph.ambient = a.nx + a.ny;
  out.nx = a.ny;
  out.ny = a.nx;
  return out;
}

/// a * A = {(x, a y) : (x, y) in A}; for a = 0 this is dom(A) x {0}.
inline Relation scalar_mult(Complex s, const Relation& a) {
  require(std::isfinite(s.real()) && std::isfinite(s.imag()), Err::InvalidScalar,
          "scalar must be finite");
  if (a.field() == Field::Real)
    require(s.imag() == 0.0, Err::InvalidScalar, "complex scalar on a real-field relation");
  Mat raw(a.nx + a.ny, a.dim());
  raw.topRows(a.nx) = a.top();
  raw.bottomRows(a.ny) = s * a.bottom();
  return Relation::from_subspace(
      Subspace::span(raw.cols() ? raw : Mat(a.nx + a.ny, 0), a.field(), a.tol()), a.nx, a.ny);
}

/// Composition B o A = {(x, z) : exists y with (x, y) in A and (y, z) in B}.
inline Relation compose(const Relation& b, const Relation& a) {
  require(a.ny == b.nx, Err::DimensionMismatch, "inner dimensions differ in composition");
  require(a.field() == b.field(), Err::DimensionMismatch, "scalar fields differ");
  const double tol = std::min(a.tol(), b.tol());
  Mat match(a.ny, a.dim() + b.dim());
  match << a.bottom(), -b.top();
  Mat k = null_space(match, tol);
  Mat raw(a.nx + b.ny, k.cols());
  raw.topRows(a.nx) = a.top() * k.topRows(a.dim());
  raw.bottomRows(b.ny) = b.bottom() * k.bottomRows(b.dim());
  return Relation::from_subspace(
      Subspace::span(raw.cols() ? raw : Mat(a.nx + b.ny, 0), a.field(), tol), a.nx, b.ny);
}

/// A +^ B = {(x, y + z) : (x, y) in A, (x, z) in B}.
inline Relation hat_sum(const Relation& a, const Relation& b) {
  require(a.nx == b.nx && a.ny == b.ny, Err::DimensionMismatch,
          "relations must share both factors");
  require(a.field() == b.field(), Err::DimensionMismatch, "scalar fields differ");
  const double tol = std::min(a.tol(), b.tol());
  Mat match(a.nx, a.dim() + b.dim());
  match << a.top(), -b.top();
  Mat k = null_space(match, tol);
  Mat raw(a.nx + a.ny, k.cols());
  raw.topRows(a.nx) = a.top() * k.topRows(a.dim());
  raw.bottomRows(a.ny) =
      a.bottom() * k.topRows(a.dim()) + b.bottom() * k.bottomRows(b.dim());
  return Relation::from_subspace(
      Subspace::span(raw.cols() ? raw : Mat(a.nx + a.ny, 0), a.field(), tol), a.nx, a.ny);
}

// ---------------------------------------------------------------------------
// Omega-adjoint and h-symmetry

inline void check_form_matches(const Relation& a, const Form& omega) {
  require(omega.nx() == a.nx && omega.ny() == a.ny, Err::DimensionMismatch,
          "form factors do not match the relation");
  require(omega.field == a.field(), Err::DimensionMismatch, "scalar fields differ");
}

/// A^Omega: annihilator of graph(A) under the graph symplectic form.
inline Relation omega_adjoint(const Relation& a, const Form& omega) {
  check_form_matches(a, omega);
  check_nondegenerate(omega, "omega_adjoint");
  Form w = graph_symplectic(omega);
  Subspace adj = omega_annihilator(a.graph, w);
  return Relation::from_subspace(adj, a.nx, a.ny);
}

namespace detail {

/// Graph map (x, y) -> (x, h y) as a diagonal block matrix.
inline Mat h_twist(int nx, int ny, Complex h) {
  Mat d = Mat::Identity(nx + ny, nx + ny);
  d.bottomRightCorner(ny, ny) *= h;
  return d;
}

/// Candidate space for one-dimensional h-symmetric extensions: all u with
/// omega(a, h*u) = 0 and omega(u, h*a) = 0 for every graph vector a.
inline Subspace extension_candidates(const Relation& a, const Form& w, Complex h) {
  const int n = a.nx + a.ny;
  const Mat dh = h_twist(a.nx, a.ny, h);
  const Mat bg = a.graph.basis;
  Mat rows(2 * a.dim(), n);
  // omega(a_i, Dh u) = a_i^T W conj(Dh) conj(u) = 0
  rows.topRows(a.dim()) = (bg.transpose() * w.matrix * dh.conjugate()).conjugate();
  // omega(u, Dh a_i) = (W conj(Dh a_i))^T u = 0
  rows.bottomRows(a.dim()) = (w.matrix * (dh * bg).conjugate()).transpose();
  Mat k = null_space(rows.rows() ? rows : Mat(0, n), a.tol());
  if (a.field() == Field::Real) k = realify_columns(k, a.tol());
  Subspace out = Subspace::zero(n, a.field(), a.tol());
  out.basis = k;
  return out;
}

/// Maximality of an h-symmetric relation: no nonzero u outside A satisfies
/// the linear extension constraints together with omega(u, h*u) = 0.
inline bool maximal_h_symmetric(const Relation& a, const Form& omega, Complex h) {
  if (a.field() == Field::Complex && std::abs(h - Complex(1, 0)) > 1e-14) {
    // A is h-symmetric iff s*A is symmetric for s^2 = h; maximality transports
    Complex s = std::sqrt(h);
    return maximal_h_symmetric(scalar_mult(s, a), omega, Complex(1, 0));
  }
  Form w = graph_symplectic(omega);
  Subspace c = extension_candidates(a, w, h);
  // transverse complement of A inside the candidate space
  Mat d_raw = c.basis - a.graph.basis * (a.graph.basis.adjoint() * c.basis);
  Mat d = orthonormal_range(d_raw, a.tol());
  if (d.cols() == 0) return true;
  const Mat dh = h_twist(a.nx, a.ny, h);
  // quadratic obstruction q(u) = omega(u, h*u) restricted to the complement
  Mat k = d.transpose() * w.matrix * (dh * d).conjugate();
  Mat m;
  if (a.field() == Field::Real) {
    m = (k + k.transpose()) / 2.0;  // real quadratic form: symmetric part decides
  } else {
    // h = 1 here: the twisted form is skew-Hermitian in this convention,
    // so i*K is the Hermitian matrix of the (real-valued) obstruction
    m = Complex(0, 1) * k;
  }
  Inertia in = inertia_of(m, a.tol());
  // a nonzero isotropic vector exists unless the form is definite
  return in.definite();
}

}  // namespace detail

struct SymmetryReport {
  Complex h{1, 0};
  bool is_h_symmetric = false;
  bool is_h_selfadjoint = false;
  bool is_maximal_h_symmetric = false;
  Relation adjoint;
};

/// Classify A against h * A subset A^Omega.
inline SymmetryReport classify_symmetry(const Relation& a, const Form& omega, Complex h) {
  check_form_matches(a, omega);
  require(std::abs(std::abs(h) - 1.0) <= 1e-12 || std::abs(h) == 0.0, Err::InvalidScalar,
          "h must be unimodular (or zero for trivial relations)");
  if (a.field() == Field::Real)
    require(h.imag() == 0.0, Err::InvalidScalar, "real-field relation needs a real h");
  SymmetryReport rep;
  rep.h = h;
  rep.adjoint = omega_adjoint(a, omega);
  Relation ha = scalar_mult(h, a);
  rep.is_h_symmetric = approx_subset(ha.graph, rep.adjoint.graph);
  rep.is_h_selfadjoint =
      rep.is_h_symmetric && ha.dim() == rep.adjoint.dim();
  if (rep.is_h_selfadjoint) {
    rep.is_maximal_h_symmetric = true;
  } else if (rep.is_h_symmetric) {
    rep.is_maximal_h_symmetric = detail::maximal_h_symmetric(a, omega, h);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// index and parity

struct IndexReport {
  int ker_dim = 0;
  int coker_dim = 0;  // codim of ran(A) in Y
  int index = 0;
  int parity = 0;  // ker_dim mod 2
};

inline IndexReport index_and_parity(const Relation& a) {
  IndexReport r;
  r.ker_dim = a.kernel().dim();
  r.coker_dim = a.ny - a.range().dim();
  r.index = r.ker_dim - r.coker_dim;
  r.parity = r.ker_dim % 2;
  return r;
}

// ---------------------------------------------------------------------------
// associated form on dom(A)

/// A form together with the subspace it lives on.  The Gram matrix is taken
/// in the stored orthonormal basis of `space`:
///   Q(space*c, space*d) = sum_ij c_i conj(d_j) gram(i, j).
struct SymmetricPair {
  Subspace space;
  Mat gram;

  bool hermitian(double eps = 1e-9) const {
    if (gram.rows() == 0) return true;
    return op_norm(gram - gram.adjoint()) <= eps * std::max(1.0, op_norm(gram));
  }
  bool skew(double eps = 1e-9) const {
    if (gram.rows() == 0) return true;
    return op_norm(gram + gram.adjoint()) <= eps * std::max(1.0, op_norm(gram));
  }
};

/// Q_A(x, y) = Omega(x, A y) on dom(A), using the minimum-norm selection.
/// Well defined only when the multivalued part annihilates the domain.
inline SymmetricPair associated_form(const Relation& a, const Form& omega) {
  check_form_matches(a, omega);
  Subspace dom = a.domain();
  Subspace a0 = a.multivalued_part();
  // well-definedness: Omega(dom, mul) = 0
  if (a0.dim() > 0 && dom.dim() > 0) {
    Mat cross = dom.basis.transpose() * omega.matrix * a0.basis.conjugate();
    require(cross.norm() <= kGapTol * std::max(1.0, omega.l_norm()), Err::IllDefinedForm,
            "multivalued part does not annihilate the domain");
  }
  SymmetricPair out;
  out.space = dom;
  const int k = dom.dim();
  out.gram = Mat::Zero(k, k);
  std::vector<Vec> images(k);
  for (int j = 0; j < k; ++j) images[j] = a.apply_min_norm(dom.basis.col(j));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.gram(i, j) =
          (dom.basis.col(i).transpose() * omega.matrix * images[j].conjugate())(0, 0);
  return out;
}

}  // namespace linrel
