#pragma once

// Executable certifiers: the nested-subspace gap criterion, stability of
// maximal isotropic subspaces under simultaneous form and subspace
// perturbation (plain and strong variants), gap bounds for operator images
// of subspaces, the pencil gap bound under a relative bound, and the mod-2
// kernel-parity experiment for skew-adjoint relations.

#include <unsupported/Eigen/MatrixFunctions>

#include "linrel/cayley.hpp"
#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/subspace.hpp"
#include "linrel/symplectic.hpp"

namespace linrel {

// ---------------------------------------------------------------------------
// nested subspaces and the gap

struct HessKatoReport {
  double product = 0.0;  // (1 + delta(N, M)) (1 + delta(M, N'))
  bool hypothesis = false;
  bool dims_equal = false;
};

/// If N' is a subspace of N and (1 + delta(N,M))(1 + delta(M,N')) < 2 then
/// N' = N.
inline HessKatoReport hess_kato_check(const Subspace& m, const Subspace& n,
                                      const Subspace& nprime) {
  require(approx_subset(nprime, n), Err::NotNested, "N' must be a subspace of N");
  HessKatoReport r;
  r.product = (1.0 + delta_gap(n, m)) * (1.0 + delta_gap(m, nprime));
  r.hypothesis = r.product < 2.0;
  r.dims_equal = nprime.dim() == n.dim();
  return r;
}

// ---------------------------------------------------------------------------
// stability of maximal isotropic subspaces

struct StabilityReport {
  bool certified = false;   // hypothesis of the theorem holds
  double lhs = 0.0, rhs = 0.0;
  double l_value = 0.0;     // the perturbation functional l (or g in the strong variant)
  double delta_lambda_mu = 0.0;
  double form_distance = 0.0;  // ||L_omega - L_omega0||
  int h_lambda = 0;
  // conclusion, evaluated independently
  bool mu_maximal_isotropic = false;
  int h_mu = 0;
  bool conclusion_checked = false;  // mu maximal isotropic with h_mu in {h_lambda, 0}
};

namespace detail {

inline void check_stability_inputs(const Subspace& lambda, const Form& omega0,
                                   const Subspace& mu, const Form& omega) {
  check_symplectic(omega0, "stability");
  check_symplectic(omega, "stability");
  require(omega0.nx() == omega.nx(), Err::DimensionMismatch, "forms act on different spaces");
  require(lambda.ambient == omega0.nx() && mu.ambient == omega.nx(), Err::DimensionMismatch,
          "subspaces do not match the forms");
}

inline void finish_conclusion(StabilityReport& rep, const Subspace& mu, const Form& omega) {
  if (!rep.certified) return;
  IsotropicReport cm = classify_subspace(mu, omega);
  rep.mu_maximal_isotropic = cm.maximal_isotropic;
  rep.h_mu = cm.h_lambda;
  rep.conclusion_checked =
      cm.maximal_isotropic && (rep.h_lambda == 0 ? rep.h_mu == 0
                                                 : (rep.h_mu == rep.h_lambda || rep.h_mu == 0));
}

}  // namespace detail

/// Certifier: lambda maximal isotropic for omega0 with sign h and margin
/// gamma; mu isotropic for omega.  If
///   delta(mu^omega, lambda^omega0) + l(mu, omega) < (1 - d)/(1 + d),
/// d = delta(lambda, mu), with
///   l = ( |h| gamma^{-1} ( ||L_w - L_w0|| + ||L_w0|| e (2 + e) ) )^{1/2},
/// e = delta(mu^omega, lambda^omega0), then mu is maximal isotropic with
/// sign in {h, 0}.
inline StabilityReport max_isotropic_stability(const Subspace& lambda, const Form& omega0,
                                               const Subspace& mu, const Form& omega) {
  detail::check_stability_inputs(lambda, omega0, mu, omega);
  IsotropicReport cl = classify_subspace(lambda, omega0);
  require(cl.maximal_isotropic, Err::PreconditionViolated,
          "lambda must be maximal isotropic for omega0");
  require(cl.h_lambda == 0 || cl.gamma_lambda > 0, Err::PreconditionViolated,
          "definiteness margin of lambda must be positive");
  IsotropicReport cmu_iso = classify_subspace(mu, omega);
  require(cmu_iso.isotropic, Err::NotIsotropic, "mu must be isotropic for omega");

  StabilityReport rep;
  rep.h_lambda = cl.h_lambda;
  rep.form_distance = op_norm(omega.matrix - omega0.matrix);
  rep.delta_lambda_mu = delta_gap(lambda, mu);
  Subspace mu_ann = omega_annihilator(mu, omega);
  const double e = delta_gap(mu_ann, cl.annihilator);
  if (cl.h_lambda == 0) {
    rep.l_value = 0.0;
  } else {
    rep.l_value = std::sqrt((rep.form_distance + omega0.l_norm() * e * (2.0 + e)) /
                            cl.gamma_lambda);
  }
  rep.lhs = e + rep.l_value;
  rep.rhs = (1.0 - rep.delta_lambda_mu) / (1.0 + rep.delta_lambda_mu);
  rep.certified = rep.lhs < rep.rhs;
  detail::finish_conclusion(rep, mu, omega);
  return rep;
}

/// Strong variant avoiding the annihilator of mu:
///   a = ||L_w0^{-1}|| ||L_w0||,  b = ||L_w0^{-1}|| ||L_w - L_w0||,
///   f = b + (a + b) d,  g = ( |h| gamma^{-1} (||L_w - L_w0|| + ||L_w0|| f (2+f)) )^{1/2},
/// hypothesis f + g < (1 - d)/(1 + d) with d = delta(lambda, mu).
inline StabilityReport strong_stability(const Subspace& lambda, const Form& omega0,
                                        const Subspace& mu, const Form& omega) {
  detail::check_stability_inputs(lambda, omega0, mu, omega);
  IsotropicReport cl = classify_subspace(lambda, omega0);
  require(cl.maximal_isotropic, Err::PreconditionViolated,
          "lambda must be maximal isotropic for omega0");
  require(cl.h_lambda == 0 || cl.gamma_lambda > 0, Err::PreconditionViolated,
          "definiteness margin of lambda must be positive");
  IsotropicReport cmu_iso = classify_subspace(mu, omega);
  require(cmu_iso.isotropic, Err::NotIsotropic, "mu must be isotropic for omega");

  StabilityReport rep;
  rep.h_lambda = cl.h_lambda;
  rep.form_distance = op_norm(omega.matrix - omega0.matrix);
  rep.delta_lambda_mu = delta_gap(lambda, mu);
  const double inv_norm = 1.0 / omega0.smin;
  const double a = inv_norm * omega0.l_norm();
  const double b = inv_norm * rep.form_distance;
  const double d = rep.delta_lambda_mu;
  const double f = b + (a + b) * d;
  double gval = 0.0;
  if (cl.h_lambda != 0)
    gval = std::sqrt((rep.form_distance + omega0.l_norm() * f * (2.0 + f)) /
                     cl.gamma_lambda);
  rep.l_value = gval;
  rep.lhs = f + gval;
  rep.rhs = (1.0 - d) / (1.0 + d);
  rep.certified = rep.lhs < rep.rhs;
  detail::finish_conclusion(rep, mu, omega);
  return rep;
}

// ---------------------------------------------------------------------------
// gap bounds for operator images

struct OperatorGapReport {
  double c_norm = 0.0;      // norm of the inverse of A restricted to M
  double bound = 0.0;       // ||C|| (||A - B|| + ||B|| delta(M, N))
  double observed = 0.0;    // delta(A M, B N)
  bool holds = false;
  std::optional<double> reverse_bound;   // ||B^{-1}|| (||A - B|| + ||A|| delta(AM, BN))
  std::optional<double> reverse_observed;  // delta(M, N)
  bool reverse_holds = false;
};

inline OperatorGapReport operator_gap_bounds(const Mat& a, const Mat& b, const Subspace& m,
                                             const Subspace& n) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Err::DimensionMismatch,
          "operators must have equal shape");
  require(a.cols() == m.ambient && b.cols() == n.ambient, Err::DimensionMismatch,
          "operators do not act on the subspaces' ambient space");
  OperatorGapReport rep;
  const double s = sigma_min(Mat(a * m.basis));
  require(m.dim() == 0 || s > rank_cutoff(op_norm(a), a.rows(), a.cols(), m.tol),
          Err::SingularRestriction, "A is not injective on M");
  rep.c_norm = (m.dim() == 0) ? 0.0 : 1.0 / s;
  const double dab = op_norm(a - b);
  const double dmn = delta_gap(m, n);
  rep.bound = rep.c_norm * (dab + op_norm(b) * dmn);
  Subspace am = Subspace::span(m.dim() ? Mat(a * m.basis) : Mat(a.rows(), 0), m.field, m.tol);
  Subspace bn = Subspace::span(n.dim() ? Mat(b * n.basis) : Mat(b.rows(), 0), n.field, n.tol);
  rep.observed = delta_gap(am, bn);
  rep.holds = rep.observed <= rep.bound + kGapTol;
  const double sb = sigma_min(b);
  if (sb > rank_cutoff(op_norm(b), b.rows(), b.cols(), n.tol)) {
    rep.reverse_bound = (1.0 / sb) * (dab + op_norm(a) * delta_gap(am, bn));
    rep.reverse_observed = dmn;
    rep.reverse_holds = dmn <= *rep.reverse_bound + kGapTol;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// pencil gap bound

struct PencilGapReport {
  bool relative_bound_exact = false;  // verified by a positive-semidefinite certificate
  double bound = 0.0;
  double observed = 0.0;  // hat_delta between graph(T(kappa')) and graph(T(kappa))
  bool holds = false;
};

/// With T(k) = T + k (T - S) and the relative bound
///   ||(T - S) x|| <= a ||x|| + b' ||T x|| + b'' ||S x||,  b = max(b', b'') < 1,
/// the graphs satisfy
///   hat_delta(T(k'), T(k)) <= |k'-k| sqrt(a^2 + (b'+b'')^2)
///                              / (1 - b - |k'-k| (b'+b'')).
inline PencilGapReport pencil_gap_bound(const Mat& t, const Mat& s, double a, double bp,
                                        double bpp, double kappa, double kappa_prime,
                                        double tol = kDefaultTol,
                                        std::uint64_t seed = 0) {
  require(t.rows() == s.rows() && t.cols() == s.cols() && t.rows() == t.cols(),
          Err::DimensionMismatch, "T and S must be square of equal size");
  require(a >= 0 && bp >= 0 && bpp >= 0, Err::InvalidArgument,
          "relative-bound constants must be nonnegative");
  const double b = std::max(bp, bpp);
  require(b < 1.0, Err::PreconditionViolated, "need max(b', b'') < 1");
  const double dk = std::abs(kappa_prime - kappa);
  require(dk * (bp + bpp) < 1.0 - b, Err::PreconditionViolated,
          "step too large: |k'-k| (b'+b'') must stay below 1 - b");

  PencilGapReport rep;
  // exact sufficient certificate: a^2 I + b'^2 T^H T + b''^2 S^H S - D^H D >= 0
  Mat d = t - s;
  Mat cert = a * a * Mat::Identity(t.rows(), t.cols()) + bp * bp * (t.adjoint() * t) +
             bpp * bpp * (s.adjoint() * s) - d.adjoint() * d;
  Inertia in = inertia_of(cert, tol);
  rep.relative_bound_exact = (in.neg == 0);
  if (!rep.relative_bound_exact) {
    // fall back to sampled verification of the stated inequality
    std::mt19937_64 g(seed);
    const Field f = Field::Complex;
    for (int i = 0; i < 10000; ++i) {
      Vec x = random_unit_vector(t.cols(), f, g);
      double lhs = (d * x).norm();
      double rhs = a + bp * (t * x).norm() + bpp * (s * x).norm();
      require(lhs <= rhs + 1e-12, Err::RelativeBoundUnverified,
              "relative bound fails on a sampled unit vector");
    }
  }
  rep.bound = dk * std::sqrt(a * a + (bp + bpp) * (bp + bpp)) / (1.0 - b - dk * (bp + bpp));
  Mat tk = t + kappa * d, tkp = t + kappa_prime * d;
  Relation rk = Relation::from_operator(tk, Field::Complex, tol);
  Relation rkp = Relation::from_operator(tkp, Field::Complex, tol);
  rep.observed = hat_delta(rkp.graph, rk.graph);
  rep.holds = rep.observed <= rep.bound + kGapTol;
  return rep;
}

// ---------------------------------------------------------------------------
// mod-2 experiment

struct Mod2Report {
  int base_parity = 0;
  int trials = 0;
  int violations = 0;
  double min_observed_margin = 0.0;  // smallest slack between requested level and used size
  bool path_parity_constant = true;
};

/// Perturb a skew-adjoint index-zero relation inside its class (through the
/// Cayley parameter) and simultaneously perturb the form; the kernel parity
/// must never change.  Also walks a discretized path to the largest sampled
/// perturbation and asserts parity constancy along it.
inline Mod2Report mod2_experiment(const Relation& t, const Form& omega0,
                                  double form_delta_norm, double relation_delta_norm,
                                  int trials, std::uint64_t seed, int path_steps = 8) {
  check_form_matches(t, omega0);
  IndexReport idx = index_and_parity(t);
  require(idx.index == 0, Err::IndexNonzero, "mod-2 experiment requires index zero");
  SymmetryReport sym = classify_symmetry(t, omega0, Complex(-1, 0));
  require(sym.is_h_selfadjoint, Err::NotSkewAdjoint,
          "mod-2 experiment requires a skew-adjoint relation");
  require(form_delta_norm >= 0 && relation_delta_norm >= 0, Err::InvalidArgument,
          "perturbation levels must be nonnegative");

  const int n = t.nx;
  const Field f = t.field();
  Mod2Report rep;
  rep.base_parity = idx.parity;
  rep.trials = trials;
  rep.min_observed_margin = form_delta_norm + relation_delta_norm;

  Mat u0 = cayley_inverse(t, omega0);
  std::mt19937_64 g(seed);
  Mat last_k;  // perturbation direction used for the path walk
  double last_eps = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    // random skew direction in the unitary/orthogonal Lie algebra
    Mat z = gaussian(n, n, f, g);
    Mat k = (z - z.adjoint()) / 2.0;
    double nk = op_norm(k);
    if (nk > 0) k /= nk;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double eps = relation_delta_norm * u01(g);
    // form perturbation of the declared kind
    Mat zf = gaussian(n, n, f, g);
    Mat df = (zf - zf.adjoint()) / 2.0;
    double ndf = op_norm(df);
    if (ndf > 0) df /= ndf;
    double eta = form_delta_norm * u01(g);

    Mat ut, gram;
    Relation s;
    Form omega;
    double used_eps = eps, used_eta = eta;
    for (int attempt = 0;; ++attempt) {
      ut = u0 * (used_eps * k).exp();
      if (f == Field::Real) ut.imag().setZero();
      gram = omega0.matrix + used_eta * df;
      double smin_gram = sigma_min(gram);
      if (smin_gram > rank_cutoff(op_norm(gram), n, n, omega0.tol)) {
        omega = make_form(gram, f, FormKind::Skew, omega0.tol);
        s = cayley_forward(ut, omega);
        double moved = hat_delta(s.graph, t.graph) + op_norm(omega.matrix - omega0.matrix);
        if (moved <= form_delta_norm + relation_delta_norm + kGapTol) break;
      }
      require(attempt < 60, Err::PreconditionViolated,
              "could not fit the perturbation inside the requested level");
      used_eps /= 2.0;
      used_eta /= 2.0;
    }
    double moved = hat_delta(s.graph, t.graph) + op_norm(omega.matrix - omega0.matrix);
    rep.min_observed_margin = std::min(
        rep.min_observed_margin, form_delta_norm + relation_delta_norm - moved);
    IndexReport is = index_and_parity(s);
    if (is.index != 0 || is.parity != rep.base_parity) ++rep.violations;
    last_k = used_eps * k;
    last_eps = used_eps;
  }

  // discretized path from T to the last perturbed relation (fixed form)
  if (trials > 0 && last_eps > 0) {
    for (int step = 0; step <= path_steps; ++step) {
      double tt = static_cast<double>(step) / path_steps;
      Mat ut = u0 * (tt * last_k).exp();
      if (f == Field::Real) ut.imag().setZero();
      Relation rt = cayley_forward(ut, omega0);
      if (index_and_parity(rt).parity != rep.base_parity) rep.path_parity_constant = false;
    }
    if (!rep.path_parity_constant) ++rep.violations;
  }
  return rep;
}

/// Dimension-parity obstruction: a nondegenerate skew form over the reals
/// only exists in even dimension.  Returns true when sampled real skew
/// matrices confirm this (odd sizes are always degenerate).
inline bool skew_form_even_dimension_check(int n, int trials, std::uint64_t seed) {
  require(n >= 1, Err::InvalidArgument, "dimension must be positive");
  std::mt19937_64 g(seed);
  for (int i = 0; i < trials; ++i) {
    RealMat z = gaussian_real(n, n, g);
    Mat k = ((z - z.transpose()) / 2.0).cast<Complex>();
    double smin = sigma_min(k);
    double cut = rank_cutoff(op_norm(k), n, n, kDefaultTol);
    if (n % 2 == 1 && smin > cut) return false;      // impossible nondegenerate odd skew
    if (n % 2 == 0 && smin <= cut) return false;     // generic even skew is nondegenerate
  }
  return true;
}

}  // namespace linrel
