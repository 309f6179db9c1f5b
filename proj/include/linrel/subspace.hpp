#pragma once

// Finite-dimensional subspaces of K^d stored as orthonormal bases, the
// subspace lattice, gap and angular metrics, and the Fredholm pair index.

#include "linrel/core.hpp"

namespace linrel {

struct Subspace {
  int ambient = 0;
  Field field = Field::Real;
  Mat basis;  // ambient x dim, orthonormal columns
  double tol = kDefaultTol;

  int dim() const { return static_cast<int>(basis.cols()); }

  Mat projector() const { return basis * basis.adjoint(); }

  /// Orthonormalize a raw spanning set.
  static Subspace span(const Mat& raw, Field f, double tol = kDefaultTol) {
    require(raw.rows() > 0, Err::InvalidMatrix, "ambient dimension must be positive");
    require(all_finite(raw), Err::InvalidMatrix, "non-finite entry in spanning set");
    if (f == Field::Real && raw.size() > 0)
      require(raw.imag().norm() <= 1e-9 * std::max(1.0, raw.real().norm()), Err::InvalidMatrix,
              "real-field spanning set has nonzero imaginary part");
    Subspace s;
    s.ambient = static_cast<int>(raw.rows());
    s.field = f;
    s.tol = tol;
    s.basis = orthonormal_range(raw, tol);
    if (f == Field::Real) s.basis = realify_columns(s.basis, tol);
    return s;
  }

  static Subspace zero(int d, Field f, double tol = kDefaultTol) {
    Subspace s;
    s.ambient = d;
    s.field = f;
    s.tol = tol;
    s.basis = Mat(d, 0);
    return s;
  }

  static Subspace full(int d, Field f, double tol = kDefaultTol) {
    Subspace s;
    s.ambient = d;
    s.field = f;
    s.tol = tol;
    s.basis = Mat::Identity(d, d);
    return s;
  }

  /// Wrap an already-orthonormal basis (re-orthonormalizes defensively).
  static Subspace from_basis(const Mat& b, Field f, double tol = kDefaultTol) {
    return span(b, f, tol);
  }

  bool contains(const Vec& v, double eps = kGapTol) const {
    double nv = v.norm();
    if (nv == 0) return true;
    return (v - basis * (basis.adjoint() * v)).norm() <= eps * nv;
  }
};

inline void check_compatible(const Subspace& a, const Subspace& b) {
  require(a.ambient == b.ambient, Err::DimensionMismatch, "ambient dimensions differ");
  require(a.field == b.field, Err::DimensionMismatch, "scalar fields differ");
}

// ---------------------------------------------------------------------------
// lattice

inline Subspace sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  Mat raw(a.ambient, a.dim() + b.dim());
  raw << a.basis, b.basis;
  return Subspace::span(raw, a.field, std::min(a.tol, b.tol));
}

inline Subspace perp(const Subspace& a) {
  Subspace s;
  s.ambient = a.ambient;
  s.field = a.field;
  s.tol = a.tol;
  s.basis = null_space(a.basis.adjoint(), a.tol);
  if (a.field == Field::Real) s.basis = realify_columns(s.basis, a.tol);
  return s;
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  // M cap N = (M^perp + N^perp)^perp
  return perp(sum(perp(a), perp(b)));
}

// ---------------------------------------------------------------------------
// gap metrics

/// One-sided gap delta(M, N) = sup_{u in unit sphere of M} dist(u, N);
/// 0 when M = {0}.
inline double delta_gap(const Subspace& m, const Subspace& n) {
  check_compatible(m, n);
  if (m.dim() == 0) return 0.0;
  Mat residual = m.basis - n.basis * (n.basis.adjoint() * m.basis);
  return std::min(op_norm(residual), 1.0);
}

inline double hat_delta(const Subspace& m, const Subspace& n) {
  return std::max(delta_gap(m, n), delta_gap(n, m));
}

/// Minimum-angle constant gamma(M, N); 1 when M is a subset of N.
inline double gamma_gap(const Subspace& m, const Subspace& n) {
  check_compatible(m, n);
  Subspace mn = intersect(m, n);
  // component of M transverse to the intersection
  Mat raw = m.basis - mn.basis * (mn.basis.adjoint() * m.basis);
  Mat mprime = orthonormal_range(raw, std::min(m.tol, n.tol));
  if (mprime.cols() == 0) return 1.0;  // M inside N
  Mat residual = mprime - n.basis * (n.basis.adjoint() * mprime);
  return sigma_min(residual);
}

struct GapReport {
  double delta_mn = 0, delta_nm = 0, hat_delta = 0;
  double gamma_mn = 0, gamma_nm = 0, hat_gamma = 0;
};

inline GapReport gap_metrics(const Subspace& m, const Subspace& n) {
  GapReport r;
  r.delta_mn = delta_gap(m, n);
  r.delta_nm = delta_gap(n, m);
  r.hat_delta = std::max(r.delta_mn, r.delta_nm);
  r.gamma_mn = gamma_gap(m, n);
  r.gamma_nm = gamma_gap(n, m);
  r.hat_gamma = std::min(r.gamma_mn, r.gamma_nm);
  return r;
}

inline bool approx_subset(const Subspace& m, const Subspace& n, double eps = kGapTol) {
  return delta_gap(m, n) <= eps;
}

inline bool approx_equal(const Subspace& m, const Subspace& n, double eps = kGapTol) {
  return m.dim() == n.dim() && hat_delta(m, n) <= eps;
}

// ---------------------------------------------------------------------------
// Hausdorff distance between unit spheres

struct Interval {
  double lo = 0, hi = 0;
};

/// dist(u, S_N) for a unit vector u; sqrt(2) when N projects u to zero.
inline double dist_to_unit_sphere(const Vec& u, const Subspace& n) {
  if (n.dim() == 0) return 2.0;  // sphere of {0} is empty; conventions handled upstream
  double p = (n.basis.adjoint() * u).norm();
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * p));
}

/// Monte-Carlo lower bound and 2*hat_delta upper bound for the Hausdorff
/// distance between unit spheres.  Conventions: [0,0] if both spaces are
/// zero, [2,2] if exactly one is.
inline Interval hausdorff_estimate(const Subspace& m, const Subspace& n, int samples = 4096,
                                   std::uint64_t seed = 0) {
  check_compatible(m, n);
  if (m.dim() == 0 && n.dim() == 0) return {0.0, 0.0};
  if (m.dim() == 0 || n.dim() == 0) return {2.0, 2.0};
  std::mt19937_64 g(seed);
  double lo = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec cu = random_unit_vector(m.dim(), m.field, g);
    lo = std::max(lo, dist_to_unit_sphere(m.basis * cu, n));
    Vec cv = random_unit_vector(n.dim(), n.field, g);
    lo = std::max(lo, dist_to_unit_sphere(n.basis * cv, m));
  }
  double hi = 2.0 * hat_delta(m, n);
  return {std::min(lo, hi), hi};
}

// ---------------------------------------------------------------------------
// Fredholm pair index

struct FredholmPairReport {
  int dim_intersection = 0;
  int codim_sum = 0;
  int index = 0;
};

inline FredholmPairReport pair_index(const Subspace& m, const Subspace& n) {
  check_compatible(m, n);
  FredholmPairReport r;
  r.dim_intersection = intersect(m, n).dim();
  r.codim_sum = m.ambient - sum(m, n).dim();
  r.index = r.dim_intersection - r.codim_sum;
  return r;
}

}  // namespace linrel
