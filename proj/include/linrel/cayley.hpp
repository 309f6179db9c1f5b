#pragma once

// Cayley parameterization of skew-adjoint relations: the forward map from a
// unitary/orthogonal U to the relation
//   T = { ((I + U) x,  R_Omega^{-1} R_Q (I - U) x ) : x in K^n },
// its inverse, seeded random instances, and connecting paths inside the
// orthogonal group (real field) used to exhibit the two path components.

#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/subspace.hpp"

#include <algorithm>

namespace linrel {

inline bool is_unitary(const Mat& u, double eps = 1e-9) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() <= eps * u.rows();
}

inline void check_unitary(const Mat& u, Field f) {
  require(u.rows() == u.cols() && u.rows() > 0, Err::InvalidMatrix, "U must be square");
  require(all_finite(u), Err::InvalidMatrix, "non-finite entry in U");
  require(is_unitary(u), Err::NotUnitary, "U is not unitary at the working tolerance");
  if (f == Field::Real)
    require(u.imag().norm() <= 1e-9 * std::max(1.0, u.real().norm()), Err::NotUnitary,
            "real-field U must be real orthogonal");
}

inline Form default_q_form(int n, Field f, double tol) {
  return make_form(Mat::Identity(n, n), f, FormKind::Symmetric, tol);
}

/// R_Omega^{-1} R_Q as a matrix.
inline Mat cayley_coupling(const Form& omega, const Form& q) {
  check_nondegenerate(omega, "cayley");
  require(omega.nx() == q.nx() && omega.ny() == q.ny(), Err::DimensionMismatch,
          "Omega and Q must act on the same space");
  return omega.r_matrix().fullPivLu().solve(q.r_matrix());
}

/// Forward Cayley transform; the parametric graph keeps U = -I exact
/// (it yields T = {0} x Y).
inline Relation cayley_forward(const Mat& u, const Form& omega, const Form& q) {
  check_unitary(u, omega.field);
  const int n = static_cast<int>(u.rows());
  require(omega.nx() == n, Err::DimensionMismatch, "U and Omega sizes differ");
  Mat c = cayley_coupling(omega, q);
  Mat id = Mat::Identity(n, n);
  Mat raw(2 * n, n);
  raw.topRows(n) = id + u;
  raw.bottomRows(n) = c * (id - u);
  return Relation::from_graph(raw, n, n, omega.field, omega.tol);
}

inline Relation cayley_forward(const Mat& u, const Form& omega) {
  return cayley_forward(u, omega, default_q_form(omega.nx(), omega.field, omega.tol));
}

/// Inverse of the Cayley transform.  Requires T skew-adjoint with
/// dim graph = n; recovers U from U (p + C^{-1} r) = p - C^{-1} r over the
/// graph basis columns (p, r).
inline Mat cayley_inverse(const Relation& t, const Form& omega, const Form& q) {
  check_form_matches(t, omega);
  require(t.nx == t.ny, Err::DimensionMismatch, "Cayley inverse needs X = Y");
  SymmetryReport sym = classify_symmetry(t, omega, Complex(-1, 0));
  require(sym.is_h_selfadjoint, Err::NotSkewAdjoint,
          "Cayley inverse requires a skew-adjoint relation");
  const int n = t.nx;
  require(t.dim() == n, Err::NotSkewAdjoint, "graph dimension must equal n");
  Mat c = cayley_coupling(omega, q);
  Mat cinv_r = c.fullPivLu().solve(t.bottom());
  Mat mplus = t.top() + cinv_r;
  Mat mminus = t.top() - cinv_r;
  require(rank_of(mplus, t.tol()) == n, Err::NotSkewAdjoint,
          "graph is not in the range of the Cayley map");
  Mat u = mplus.transpose().fullPivLu().solve(mminus.transpose()).transpose();
  require(is_unitary(u, 1e-7), Err::NotUnitary, "recovered parameter is not unitary");
  if (omega.field == Field::Real) u.imag().setZero();
  return u;
}

inline Mat cayley_inverse(const Relation& t, const Form& omega) {
  return cayley_inverse(t, omega, default_q_form(omega.nx(), omega.field, omega.tol));
}

// ---------------------------------------------------------------------------
// random instances

/// Seeded random unitary/orthogonal with an exactly k-dimensional fixed
/// space (eigenvalue 1) and remaining spectrum bounded away from 1.
inline Mat random_unitary_with_fixed_space(int n, int k, Field f, std::mt19937_64& g) {
  require(0 <= k && k <= n, Err::InvalidArgument, "kernel dimension out of range");
  Mat v = haar_unitary(n, f, g);
  Mat core = Mat::Identity(n, n);
  std::uniform_real_distribution<double> angle(0.4, M_PI);
  int m = n - k;
  if (f == Field::Complex) {
    for (int i = 0; i < m; ++i) {
      double th = angle(g);
      std::bernoulli_distribution flip(0.5);
      if (flip(g)) th = -th;
      core(k + i, k + i) = std::polar(1.0, th);
    }
  } else {
    int i = 0;
    if (m % 2 == 1) {
      core(k, k) = -1.0;  // odd leftover forces a -1 eigenvalue
      i = 1;
    }
    for (; i + 1 < m; i += 2) {
      double th = angle(g);
      core(k + i, k + i) = std::cos(th);
      core(k + i, k + i + 1) = -std::sin(th);
      core(k + i + 1, k + i) = std::sin(th);
      core(k + i + 1, k + i + 1) = std::cos(th);
    }
  }
  Mat u = v * core * v.adjoint();
  if (f == Field::Real) u.imag().setZero();
  return u;
}

/// Random skew-adjoint relation with prescribed kernel dimension.
inline Relation random_skew_adjoint(int n, int ker_dim, const Form& omega,
                                    std::uint64_t seed) {
  require(omega.nx() == n && omega.ny() == n, Err::DimensionMismatch,
          "form size does not match n");
  std::mt19937_64 g(seed);
  Mat u = random_unitary_with_fixed_space(n, ker_dim, omega.field, g);
  return cayley_forward(u, omega);
}

// ---------------------------------------------------------------------------
// paths in the orthogonal group

namespace detail {

struct RotationBlock {
  double angle = 0.0;
  Vec a, b;  // orthonormal real pair spanning the rotation plane
};

/// Decompose a real orthogonal W into identity directions plus rotation
/// blocks (angle pi blocks pair up the -1 eigenspace; requires det W = 1).
inline std::vector<RotationBlock> orthogonal_log_blocks(const Mat& w, double tol) {
  const Eigen::Index n = w.rows();
  Eigen::ComplexEigenSolver<Mat> es(w);
  require(es.info() == Eigen::Success, Err::InvalidMatrix, "eigendecomposition failed");
  const Vec ev = es.eigenvalues();
  std::vector<RotationBlock> blocks;
  std::vector<Eigen::Index> minus_ones;
  const double eps = 1e-8;
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex l = ev(j);
    if (std::abs(l - Complex(1, 0)) <= eps) continue;
    if (std::abs(l + Complex(1, 0)) <= eps) {
      minus_ones.push_back(j);
      continue;
    }
    if (l.imag() <= 0) continue;  // keep one of each conjugate pair
    double th = std::arg(l);
    Vec v = es.eigenvectors().col(j);
    Vec a = v.real().cast<Complex>();
    Vec b = v.imag().cast<Complex>();
    double na = a.norm(), nb = b.norm();
    require(na > eps && nb > eps, Err::InvalidMatrix, "degenerate rotation plane");
    blocks.push_back({th, a / na, b / nb});
  }
  // -1 eigenspace: real orthonormal basis, paired into angle-pi rotations
  if (!minus_ones.empty()) {
    Mat span(n, static_cast<Eigen::Index>(minus_ones.size()));
    for (std::size_t i = 0; i < minus_ones.size(); ++i) span.col(i) = es.eigenvectors().col(minus_ones[i]);
    Mat real_basis = realify_columns(orthonormal_range(span, tol), tol);
    require(real_basis.cols() % 2 == 0, Err::ParityMismatch,
            "odd -1 eigenspace: W is not in the identity component");
    for (Eigen::Index i = 0; i + 1 < real_basis.cols(); i += 2)
      blocks.push_back({M_PI, real_basis.col(i), real_basis.col(i + 1)});
  }
  // deterministic ordering: descending angle
  std::sort(blocks.begin(), blocks.end(),
            [](const RotationBlock& x, const RotationBlock& y) { return x.angle > y.angle; });
  return blocks;
}

/// exp(t log W) assembled from the rotation blocks.
inline Mat orthogonal_power(const std::vector<RotationBlock>& blocks, Eigen::Index n,
                            double t) {
  Mat out = Mat::Identity(n, n);
  for (const auto& blk : blocks) {
    double ct = std::cos(t * blk.angle) - 1.0, st = std::sin(t * blk.angle);
    out += ct * (blk.a * blk.a.transpose() + blk.b * blk.b.transpose());
    out += st * (blk.a * blk.b.transpose() - blk.b * blk.a.transpose());
  }
  return out;
}

}  // namespace detail

struct ConnectResult {
  std::vector<Relation> path;   // steps + 1 relations, path.front() = T0, path.back() = T1
  std::vector<double> times;
  int parity = 0;
  std::vector<int> kernel_dims;
};

/// Connect two skew-adjoint index-zero relations with equal kernel parity by
/// a discretized path inside the skew-adjoint class (real field).
inline ConnectResult connect(const Relation& t0, const Relation& t1, const Form& omega,
                             const Form& q, int steps = 16) {
  require(t0.field() == Field::Real, Err::InvalidArgument,
          "connecting paths are provided for the real field");
  require(steps >= 1, Err::InvalidArgument, "steps must be positive");
  IndexReport i0 = index_and_parity(t0), i1 = index_and_parity(t1);
  require(i0.index == 0, Err::IndexNonzero, "first relation has nonzero index");
  require(i1.index == 0, Err::IndexNonzero, "second relation has nonzero index");
  require(i0.parity == i1.parity, Err::ParityMismatch,
          "kernel dimensions have different parity: no path exists");
  Mat u0 = cayley_inverse(t0, omega, q);
  Mat u1 = cayley_inverse(t1, omega, q);
  Mat w = u0.adjoint() * u1;  // in SO(n) when the parities agree
  auto blocks = detail::orthogonal_log_blocks(w, t0.tol());
  // verify the reconstruction before emitting a path
  require((u0 * detail::orthogonal_power(blocks, w.rows(), 1.0) - u1).norm() <=
              1e-7 * w.rows(),
          Err::InvalidMatrix, "orthogonal logarithm failed to reconstruct the endpoint");
  ConnectResult out;
  out.parity = i0.parity;
  for (int s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) / steps;
    Mat ut = u0 * detail::orthogonal_power(blocks, w.rows(), t);
    if (omega.field == Field::Real) ut.imag().setZero();
    Relation rt = cayley_forward(ut, omega, q);
    out.kernel_dims.push_back(rt.kernel().dim());
    out.path.push_back(std::move(rt));
    out.times.push_back(t);
  }
  return out;
}

inline ConnectResult connect(const Relation& t0, const Relation& t1, const Form& omega,
                             int steps = 16) {
  return connect(t0, t1, omega, default_q_form(omega.nx(), omega.field, omega.tol), steps);
}

}  // namespace linrel
