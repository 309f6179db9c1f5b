#pragma once

// Test-side helpers kept independent of the library's computation paths:
// zeroth-order unit-sphere optimization oracles for the gap metrics, and
// randomized generators for subspaces, forms, isotropic subspaces and
// h-symmetric relations.

#include "linrel/linrel.hpp"

#include <functional>
#include <random>

namespace testutil {

using namespace linrel;

// ---------------------------------------------------------------------------
// sphere oracle: coarse sampling plus shrinking-neighborhood refinement

inline double sphere_extremal(int k, Field f,
                              const std::function<double(const Vec&)>& fn, bool maximize,
                              std::mt19937_64& g, int coarse = 4000, int rounds = 48,
                              int per_round = 120) {
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  Vec best = random_unit_vector(k, f, g);
  double best_val = fn(best);
  for (int i = 0; i < coarse; ++i) {
    Vec c = random_unit_vector(k, f, g);
    double v = fn(c);
    if (better(v, best_val)) {
      best_val = v;
      best = c;
    }
  }
  double radius = 0.5;
  for (int r = 0; r < rounds; ++r) {
    for (int i = 0; i < per_round; ++i) {
      Vec c = best + radius * random_unit_vector(k, f, g);
      c /= c.norm();
      double v = fn(c);
      if (better(v, best_val)) {
        best_val = v;
        best = c;
      }
    }
    radius *= 0.7;
  }
  return best_val;
}

/// sup_{u in S_M} dist(u, N) by direct optimization over the sphere of M.
inline double oracle_delta(const Subspace& m, const Subspace& n, std::mt19937_64& g) {
  if (m.dim() == 0) return 0.0;
  Mat pn = n.projector();
  auto fn = [&](const Vec& c) {
    Vec u = m.basis * c;
    return (u - pn * u).norm();
  };
  return sphere_extremal(m.dim(), m.field, fn, true, g);
}

/// inf over u in M with dist(u, M cap N) > 0 of dist(u, N) / dist(u, M cap N).
inline double oracle_gamma(const Subspace& m, const Subspace& n, std::mt19937_64& g) {
  if (m.dim() == 0) return 1.0;
  Mat pn = n.projector();
  Subspace mn = intersect(m, n);
  Mat pmn = mn.projector();
  // inclusion convention
  {
    double worst = 0.0;
    for (int j = 0; j < m.dim(); ++j) {
      Vec u = m.basis.col(j);
      worst = std::max(worst, (u - pn * u).norm());
    }
    if (worst <= 1e-12) return 1.0;
  }
  auto fn = [&](const Vec& c) {
    Vec u = m.basis * c;
    double den = (u - pmn * u).norm();
    if (den <= 1e-9) return 10.0;  // ratio blows up toward the intersection
    return (u - pn * u).norm() / den;
  };
  return sphere_extremal(m.dim(), m.field, fn, false, g);
}

// ---------------------------------------------------------------------------
// random generators

inline Subspace random_subspace(int d, int k, Field f, std::mt19937_64& g,
                                double tol = kDefaultTol) {
  return Subspace::span(gaussian(d, std::max(k, 0), f, g), f, tol);
}

/// Random nondegenerate skew form: real field uses an orthogonally
/// conjugated and scaled standard symplectic matrix (d must be even);
/// complex field a generic skew-Hermitian Gram.
inline Form random_symplectic_form(int d, Field f, std::mt19937_64& g,
                                   double tol = kDefaultTol) {
  if (f == Field::Real) {
    if (d % 2 != 0) fail(Err::InvalidArgument, "real symplectic forms need even dimension");
    Mat j = Mat::Zero(d, d);
    j.topRightCorner(d / 2, d / 2) = Mat::Identity(d / 2, d / 2);
    j.bottomLeftCorner(d / 2, d / 2) = -Mat::Identity(d / 2, d / 2);
    Mat z = gaussian(d, d, f, g);
    Mat skew = Mat(z - z.transpose()) / 2.0 * 0.3 + j;
    // keep it nondegenerate: retry by shrinking the noise if needed
    while (sigma_min(skew) <= rank_cutoff(op_norm(skew), d, d, tol) * 10) {
      skew = (skew + j) / 2.0;
    }
    return make_form(skew, f, FormKind::Skew, tol);
  }
  Mat z = gaussian(d, d, f, g);
  Mat sk = (z - z.adjoint()) / 2.0;
  while (sigma_min(sk) <= rank_cutoff(op_norm(sk), d, d, tol) * 10) {
    sk += Complex(0, 0.5) * Mat::Identity(d, d);
    sk = (sk - sk.adjoint()) / 2.0;
  }
  return make_form(sk, f, FormKind::Skew, tol);
}

/// Random nondegenerate general form on X x Y (square).
inline Form random_nondegenerate_form(int d, Field f, std::mt19937_64& g,
                                      double tol = kDefaultTol) {
  Mat z = gaussian(d, d, f, g);
  while (sigma_min(z) <= rank_cutoff(op_norm(z), d, d, tol) * 10) z = gaussian(d, d, f, g);
  return make_form(z, f, FormKind::General, tol);
}

/// Greedy construction of a random isotropic subspace of the form with Gram
/// W under value(u, v) = u^T W conj(v).  Grows the span until `want`
/// dimensions are reached, or to maximality when want < 0.  Returns the
/// subspace actually built.
inline Subspace random_isotropic(const Mat& w, Field f, int want, std::mt19937_64& g,
                                 double tol = kDefaultTol) {
  const int n = static_cast<int>(w.rows());
  std::vector<Vec> span;
  auto current = [&]() {
    Mat b(n, static_cast<Eigen::Index>(span.size()));
    for (std::size_t i = 0; i < span.size(); ++i) b.col(i) = span[i];
    return b;
  };
  while (want < 0 || static_cast<int>(span.size()) < want) {
    Mat s = current();
    // linear constraints from the existing span
    Mat rows(2 * s.cols(), n);
    if (s.cols() > 0) {
      rows.topRows(s.cols()) = (s.transpose() * w).conjugate();
      rows.bottomRows(s.cols()) = (w * s.conjugate()).transpose();
    }
    Mat c = (s.cols() > 0) ? null_space(rows, tol) : Mat(Mat::Identity(n, n));
    if (f == Field::Real) c = realify_columns(c, tol);
    // complement of the current span inside the candidate space
    Mat d_raw = c;
    if (s.cols() > 0) {
      Subspace sp = Subspace::span(s, f, tol);
      d_raw = c - sp.basis * (sp.basis.adjoint() * c);
    }
    Mat d = orthonormal_range(d_raw, tol);
    if (f == Field::Real) d = realify_columns(d, tol);
    if (d.cols() == 0) break;
    d = d * haar_unitary(d.cols(), f, g);  // random mixing
    Mat k = d.transpose() * w * d.conjugate();
    Mat h1 = (k + k.adjoint()) / 2.0;
    Mat h2 = (k - k.adjoint()) / (2.0 * Complex(0, 1));
    double scale = std::max({op_norm(k), 1e-30});
    Vec z;  // coefficient vector (conjugated coordinates)
    auto null_of_hermitian = [&](const Mat& h) -> std::optional<Vec> {
      Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
      RealVec ev = es.eigenvalues();
      double cut = std::max(rank_cutoff(ev.cwiseAbs().maxCoeff(), h.rows(), h.cols(), tol),
                            tol * scale);
      // zero eigenvalue first
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) <= cut) return Vec(es.eigenvectors().col(i));
      // pair a positive and a negative direction
      if (ev(0) < -cut && ev(ev.size() - 1) > cut) {
        Vec vp = es.eigenvectors().col(ev.size() - 1);
        Vec vm = es.eigenvectors().col(0);
        Vec cand = vp / std::sqrt(ev(ev.size() - 1)) + vm / std::sqrt(-ev(0));
        return Vec(cand / cand.norm());
      }
      return std::nullopt;
    };
    std::optional<Vec> pick;
    if (f == Field::Real) {
      pick = null_of_hermitian((k + k.transpose()) / 2.0);
      if (pick) pick = Vec(pick->real().cast<Complex>());
    } else if (op_norm(h2) <= 1e-10 * scale) {
      pick = null_of_hermitian(h1);
    } else if (op_norm(h1) <= 1e-10 * scale) {
      pick = null_of_hermitian(h2);
    }
    if (!pick) break;
    Vec coeff = (f == Field::Real) ? *pick : Vec(pick->conjugate());
    Vec u = d * coeff;
    double nu = u.norm();
    if (nu <= 1e-12) break;
    span.push_back(u / nu);
  }
  Mat b = current();
  return Subspace::span(b.cols() ? b : Mat(n, 0), f, tol);
}

/// Random maximal isotropic subspace of a symplectic form.
inline Subspace random_maximal_isotropic(const Form& omega, std::mt19937_64& g) {
  return random_isotropic(omega.matrix, omega.field, -1, g, omega.tol);
}

/// Random h-symmetric relation (graph isotropic for the twisted graph form).
inline Relation random_h_symmetric(int nx, int ny, const Form& omega, Complex h, int dim,
                                   std::mt19937_64& g) {
  Form w = graph_symplectic(omega);
  Mat dh = Mat::Identity(nx + ny, nx + ny);
  dh.bottomRightCorner(ny, ny) *= h;
  Mat wh = w.matrix * dh.conjugate();
  Subspace graph = random_isotropic(wh, omega.field, dim, g, omega.tol);
  return Relation::from_subspace(graph, nx, ny);
}

/// Deterministic maximal isotropic subspace from the eigen-pairing of the
/// Hermitian matrix i W: the i-th positive eigenvector is balanced against
/// the i-th negative one.  Small changes of the form move the result
/// continuously (for simple spectra), which is what the stability tests need.
inline Subspace paired_maximal_isotropic(const Form& omega) {
  const int n = omega.nx();
  Mat m = Complex(0, 1) * omega.matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  RealVec ev = es.eigenvalues();
  double cut = rank_cutoff(ev.cwiseAbs().maxCoeff(), n, n, omega.tol);
  std::vector<int> pos, neg;
  for (int i = 0; i < n; ++i) {
    if (ev(i) > cut) pos.push_back(i);
    else if (ev(i) < -cut) neg.push_back(i);
  }
  if (omega.field == Field::Real) {
    // one real direction per rotation block of the skew Gram: the real part
    // of each positive eigenvector (phase-fixed for continuity)
    int k = static_cast<int>(pos.size());
    Mat b(n, k);
    for (int i = 0; i < k; ++i) {
      Vec v = es.eigenvectors().col(pos[i]);
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      Complex ph = v(imax);
      if (std::abs(ph) > 0) v *= std::conj(ph) / std::abs(ph);
      b.col(i) = v.real().cast<Complex>();
    }
    return Subspace::span(k ? b : Mat(n, 0), omega.field, omega.tol);
  }
  int k = static_cast<int>(std::min(pos.size(), neg.size()));
  Mat b(n, k);
  for (int i = 0; i < k; ++i) {
    Vec zp = es.eigenvectors().col(pos[i]) / std::sqrt(ev(pos[i]));
    Vec zm = es.eigenvectors().col(neg[i]) / std::sqrt(-ev(neg[i]));
    // the form's null vectors are the conjugates of the M-null vectors
    b.col(i) = (zp + zm).conjugate();
  }
  return Subspace::span(k ? b : Mat(n, 0), omega.field, omega.tol);
}

}  // namespace testutil
