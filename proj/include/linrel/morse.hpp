#pragma once

// Bounded symmetric pairs (Q, V): norm, definiteness margin and Morse
// indices; the c-gap between pairs as a certified interval; the perturbed
// Morse index certifier; and the Witt-style parity identity for the
// associated form of a skew-adjoint relation.

#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/subspace.hpp"

namespace linrel {

struct PairStats {
  double norm = 0.0;                    // operator norm of Q on V; 0 when V = {0}
  int m_plus = 0, m_minus = 0, m_zero = 0;
  bool semidefinite = false;
  std::optional<double> gamma;          // smallest nonzero |eigenvalue|; only when semidefinite
};

inline PairStats pair_stats(const SymmetricPair& p) {
  require(p.hermitian(), Err::KindViolation, "pair_stats requires a Hermitian Gram matrix");
  PairStats out;
  if (p.space.dim() == 0) {
    out.semidefinite = true;
    out.gamma = 0.0;
    return out;
  }
  Inertia in = inertia_of(p.gram, p.space.tol);
  out.norm = std::max(std::abs(in.min_eig), std::abs(in.max_eig));
  out.m_plus = in.pos;
  out.m_minus = in.neg;
  out.m_zero = in.zero;
  out.semidefinite = in.semidefinite();
  if (out.semidefinite) out.gamma = in.min_abs_nonzero;  // 0 when Q vanishes on V
  return out;
}

namespace detail {

/// Re-express the Gram of `p` in the orthonormal basis of `v` (requires the
/// underlying subspaces to agree).
inline Mat gram_in_basis(const SymmetricPair& p, const Subspace& v) {
  Mat t = p.space.basis.adjoint() * v.basis;  // coordinates of v-basis in p-basis
  return t.transpose() * p.gram * t.conjugate();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// c-gap between symmetric pairs

struct CGapInterval {
  double lo = 0.0;  // sampled lower bound
  double hi = 0.0;  // certified upper bound
};

/// Certified interval for the c-gap delta_c(Q, R).  The upper bound uses
/// max(||Q||, ||R||) in general and the sharp same-domain bound ||R - Q||
/// when V = W and c >= ||Q||.  The lower bound maximizes the required delta
/// over sampled argument quadruples, including the extremal eigenvector of
/// the difference when the domains agree.
inline CGapInterval c_gap_bounds(const SymmetricPair& q, const SymmetricPair& r, double c,
                                 int samples = 2048, std::uint64_t seed = 0) {
  require(q.space.ambient == r.space.ambient && q.space.field == r.space.field,
          Err::DimensionMismatch, "pairs live in different spaces");
  require(c >= 0.0 && std::isfinite(c), Err::InvalidArgument, "c must be a finite nonnegative");
  require(q.hermitian() && r.hermitian(), Err::KindViolation,
          "c-gap requires Hermitian Gram matrices");
  PairStats sq = pair_stats(q), sr = pair_stats(r);
  CGapInterval out;
  const bool same_domain = approx_equal(q.space, r.space);
  Mat diff;  // R - Q on the basis of V when domains agree
  if (same_domain && q.space.dim() > 0) {
    diff = detail::gram_in_basis(r, q.space) - q.gram;
  }
  if (same_domain && c >= sq.norm - 1e-15) {
    out.hi = (q.space.dim() > 0) ? op_norm(diff) : 0.0;
  } else {
    out.hi = std::max(sq.norm, sr.norm);
  }

  const int kv = q.space.dim(), kw = r.space.dim();
  if (kv == 0 && kw == 0) {
    out.lo = 0.0;
    return out;
  }
  auto qval = [&](const Vec& cx, const Vec& cy) -> Complex {
    return (cx.transpose() * q.gram * cy.conjugate())(0, 0);
  };
  auto rval = [&](const Vec& cu, const Vec& cv) -> Complex {
    return (cu.transpose() * r.gram * cv.conjugate())(0, 0);
  };
  double lo = 0.0;
  auto consider = [&](const Vec& cx, const Vec& cy, const Vec& cu, const Vec& cv) {
    // ambient vectors and their norms
    Vec x = (kv > 0) ? Vec(q.space.basis * cx) : Vec(Vec::Zero(q.space.ambient));
    Vec y = (kv > 0) ? Vec(q.space.basis * cy) : Vec(Vec::Zero(q.space.ambient));
    Vec u = (kw > 0) ? Vec(r.space.basis * cu) : Vec(Vec::Zero(r.space.ambient));
    Vec v = (kw > 0) ? Vec(r.space.basis * cv) : Vec(Vec::Zero(r.space.ambient));
    Complex dq = ((kv > 0) ? qval(cx, cy) : Complex(0)) - ((kw > 0) ? rval(cu, cv) : Complex(0));
    double sx = u.norm() + x.norm(), sy = v.norm() + y.norm();
    if (sx <= 0 || sy <= 0) return;
    double cterm = c * (sx * (v - y).norm() + (u - x).norm() * sy);
    double need = (std::abs(dq) - cterm) / (sx * sy);
    if (need > lo) lo = need;
  };
  std::mt19937_64 g(seed);
  for (int s = 0; s < samples; ++s) {
    Vec cx = (kv > 0) ? random_unit_vector(kv, q.space.field, g) : Vec();
    Vec cy = (kv > 0) ? random_unit_vector(kv, q.space.field, g) : Vec();
    Vec cu = (kw > 0) ? random_unit_vector(kw, r.space.field, g) : Vec();
    Vec cv = (kw > 0) ? random_unit_vector(kw, r.space.field, g) : Vec();
    consider(cx, cy, cu, cv);
    if (same_domain && kv > 0 && kw > 0) {
      // correlated pair u = x, v = y (transported through the bases)
      Mat t = r.space.basis.adjoint() * q.space.basis;
      consider(cx, cy, t * cx, t * cy);
    }
  }
  if (same_domain && kv > 0) {
    // extremal eigenvector of R - Q realizes |(R-Q)(w,w)| / 4
    Eigen::SelfAdjointEigenSolver<Mat> es((diff + diff.adjoint()) / 2.0);
    const RealVec ev = es.eigenvalues();
    Eigen::Index which = (std::abs(ev(0)) > std::abs(ev(ev.size() - 1))) ? 0 : ev.size() - 1;
    Vec w = es.eigenvectors().col(which);
    Mat t = r.space.basis.adjoint() * q.space.basis;
    consider(w, w, t * w, t * w);
  }
  out.lo = std::min(lo, out.hi);
  return out;
}

// ---------------------------------------------------------------------------
// perturbed Morse index certifier

struct MorseCertificate {
  bool certified = false;        // hypothesis of the perturbation bound holds
  double lhs = 0.0;              // k (delta_c + 2 c delta(V,W)) (2 + delta(V,W))
  double gamma_alpha = 0.0;      // definiteness margin of h Q on alpha
  int k = 0;                     // dim alpha
  int m_plus_hr = 0;             // Morse index of h R on W
  bool conclusion_checked = false;  // m_plus_hr >= k (only meaningful when certified)
};

/// If h*Q is positive definite on alpha (dim k) and
///   k (delta_c(Q,R) + 2 c delta(V,W)) (2 + delta(V,W)) < gamma(Q|alpha)
/// then m^+(h R) >= k.  Uses the certified upper bound of the c-gap.
inline MorseCertificate perturbed_morse_certify(const SymmetricPair& q,
                                                const SymmetricPair& r,
                                                const Subspace& alpha, int h, double c,
                                                int samples = 1024,
                                                std::uint64_t seed = 0) {
  require(h == 1 || h == -1, Err::InvalidArgument, "h must be +1 or -1");
  require(approx_subset(alpha, q.space), Err::PreconditionViolated,
          "alpha must be a subspace of the domain of Q");
  require(alpha.dim() > 0, Err::PreconditionViolated, "alpha must be nonzero");
  MorseCertificate out;
  out.k = alpha.dim();
  // restrict Q to alpha
  Mat t = q.space.basis.adjoint() * alpha.basis;
  Mat gram_alpha = t.transpose() * q.gram * t.conjugate();
  Inertia in = inertia_of(static_cast<double>(h) * gram_alpha, alpha.tol);
  require(in.positive_definite(), Err::PreconditionViolated,
          "h Q must be positive definite on alpha");
  out.gamma_alpha = in.min_abs_nonzero;
  CGapInterval dc = c_gap_bounds(q, r, c, samples, seed);
  const double dvw = delta_gap(q.space, r.space);
  out.lhs = out.k * (dc.hi + 2.0 * c * dvw) * (2.0 + dvw);
  out.certified = out.lhs < out.gamma_alpha;
  PairStats sr = pair_stats(SymmetricPair{r.space, static_cast<double>(h) * r.gram});
  out.m_plus_hr = sr.m_plus;
  out.conclusion_checked = out.m_plus_hr >= out.k;
  return out;
}

// ---------------------------------------------------------------------------
// Witt parity identity

struct WittReport {
  int dom_dim = 0;
  int m_minus = 0;    // Morse index of i * Q_T
  int ker_q_dim = 0;  // dim ker Q_T
  int ker_t_dim = 0;  // dim ker T
  bool identity_holds = false;  // dom_dim == 2 m_minus + ker_q_dim
  bool kernels_match = false;   // ker Q_T == ker T
  int parity = 0;               // ker_t_dim mod 2
};

/// For a skew-adjoint relation T the associated form Q_T is skew on dom(T)
/// and dim dom(T) = 2 m^-(i Q_T) + dim ker Q_T with ker Q_T = ker T.
inline WittReport witt_parity(const Relation& t, const Form& omega) {
  SymmetryReport sym = classify_symmetry(t, omega, Complex(-1, 0));
  require(sym.is_h_selfadjoint, Err::NotSkewAdjoint,
          "witt_parity requires a skew-adjoint relation");
  SymmetricPair qt = associated_form(t, omega);
  WittReport out;
  out.dom_dim = qt.space.dim();
  require(qt.skew(), Err::KindViolation, "associated form of a skew-adjoint relation is skew");
  Mat iq = Complex(0, 1) * qt.gram;
  Inertia in = inertia_of(iq, qt.space.tol);
  out.m_minus = in.neg;
  out.ker_q_dim = in.zero;
  Subspace ker_t = t.kernel();
  out.ker_t_dim = ker_t.dim();
  out.identity_holds = (out.dom_dim == 2 * out.m_minus + out.ker_q_dim);
  // kernel of Q_T inside dom(T), lifted to ambient coordinates
  Mat kq = null_space(qt.gram, qt.space.tol);
  Subspace ker_q = Subspace::span(
      kq.cols() ? Mat(qt.space.basis * kq) : Mat(t.nx, 0), t.field(), t.tol());
  out.kernels_match = approx_equal(ker_q, ker_t);
  out.parity = out.ker_t_dim % 2;
  return out;
}

}  // namespace linrel
