#pragma once

// Shared scalar types, error codes, tolerance policy and small dense
// linear-algebra helpers used by every module.  All computations run in
// complex arithmetic with a field tag; real-field values carry zero
// imaginary parts which the helpers re-enforce after factorizations.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace linrel {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Relative rank cutoff shared by every rank decision in the library.
inline constexpr double kDefaultTol = 1e-10;

/// Tolerance for subspace-level predicates (equality, inclusion) on gap values.
inline constexpr double kGapTol = 1e-9;

enum class Err {
  InvalidMatrix,
  DimensionMismatch,
  InvalidArgument,
  KindViolation,
  DegenerateForm,
  InvalidScalar,
  IllDefinedForm,
  NotIsotropic,
  NotSkewAdjoint,
  IndexNonzero,
  SplitFailure,
  PreconditionViolated,
  NotNested,
  SingularRestriction,
  RelativeBoundUnverified,
  ParityMismatch,
  NotUnitary,
  ParseError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidMatrix: return "InvalidMatrix";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::KindViolation: return "KindViolation";
    case Err::DegenerateForm: return "DegenerateForm";
    case Err::InvalidScalar: return "InvalidScalar";
    case Err::IllDefinedForm: return "IllDefinedForm";
    case Err::NotIsotropic: return "NotIsotropic";
    case Err::NotSkewAdjoint: return "NotSkewAdjoint";
    case Err::IndexNonzero: return "IndexNonzero";
    case Err::SplitFailure: return "SplitFailure";
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::NotNested: return "NotNested";
    case Err::SingularRestriction: return "SingularRestriction";
    case Err::RelativeBoundUnverified: return "RelativeBoundUnverified";
    case Err::ParityMismatch: return "ParityMismatch";
    case Err::NotUnitary: return "NotUnitary";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

// ---------------------------------------------------------------------------
// basic matrix helpers

inline bool all_finite(const Mat& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

/// Spectral norm (largest singular value).
inline double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

/// Smallest singular value; 0 for a matrix with an empty dimension.
inline double sigma_min(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(std::min(a.rows(), a.cols()) - 1);
}

/// Shared rank cutoff: singular values at or below this level are noise.
inline double rank_cutoff(double sigma_max, Eigen::Index rows, Eigen::Index cols, double tol) {
  return tol * sigma_max * static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
}

/// Orthonormal basis of the column space of `a`, dropping directions whose
/// singular value falls at or below the shared cutoff.
inline Mat orthonormal_range(const Mat& a, double tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  // absolute floor: inputs here are unit-scale basis data, so singular
  // values below tol are roundoff, not rank (a purely relative cutoff
  // would read a near-zero residual matrix as full rank)
  const double cut = std::max(rank_cutoff(sv.size() ? sv(0) : 0.0, a.rows(), a.cols(), tol),
                              tol * std::sqrt(double(std::max(a.rows(), a.cols()))));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of ker(a).
inline Mat null_space(const Mat& a, double tol) {
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  if (a.cols() == 0) return Mat(0, 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = std::max(rank_cutoff(sv.size() ? sv(0) : 0.0, a.rows(), a.cols(), tol),
                              tol * std::sqrt(double(std::max(a.rows(), a.cols()))));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

inline Eigen::Index rank_of(const Mat& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = rank_cutoff(sv.size() ? sv(0) : 0.0, a.rows(), a.cols(), tol);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

/// For real-field data, strip round-off imaginary parts.  If a factorization
/// introduced genuine column phases, rotate each column back to the real axis
/// and re-orthonormalize.
inline Mat realify_columns(const Mat& a, double tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0).real().cast<Complex>();
  double imag_norm = a.imag().norm();
  if (imag_norm <= 1e-12 * std::max(1.0, a.real().norm())) {
    Mat out = a;
    out.imag().setZero();
    return out;
  }
  Mat rotated = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Eigen::Index imax = 0;
    a.col(j).cwiseAbs().maxCoeff(&imax);
    Complex ph = a(imax, j);
    if (std::abs(ph) > 0) rotated.col(j) *= std::conj(ph) / std::abs(ph);
  }
  RealMat re = rotated.real();
  // column space of a real-representable span; re-orthonormalize
  Eigen::JacobiSVD<RealMat> svd(re, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = rank_cutoff(sv.size() ? sv(0) : 0.0, re.rows(), re.cols(), tol);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixU().leftCols(r).cast<Complex>();
}

// ---------------------------------------------------------------------------
// Hermitian inertia with the shared cutoff

struct Inertia {
  int pos = 0, neg = 0, zero = 0;
  double min_abs_nonzero = 0.0;  // 0 when every eigenvalue is below the cutoff
  double min_eig = 0.0, max_eig = 0.0;
  bool borderline = false;  // some eigenvalue sits inside (-cutoff, cutoff) while others do not

  bool definite() const { return zero == 0 && (neg == 0 || pos == 0) && (pos + neg) > 0; }
  bool positive_definite() const { return zero == 0 && neg == 0 && pos > 0; }
  bool negative_definite() const { return zero == 0 && pos == 0 && neg > 0; }
  bool semidefinite() const { return neg == 0 || pos == 0; }
};

inline Inertia inertia_of(const Mat& hermitian, double tol) {
  Inertia out;
  const Eigen::Index n = hermitian.rows();
  if (n == 0) return out;
  Mat h = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const RealVec ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double cut = std::max(rank_cutoff(scale, n, n, tol), tol);
  out.min_eig = ev(0);
  out.max_eig = ev(n - 1);
  double min_abs = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i) > cut) {
      ++out.pos;
      min_abs = std::min(min_abs, ev(i));
    } else if (ev(i) < -cut) {
      ++out.neg;
      min_abs = std::min(min_abs, -ev(i));
    } else {
      ++out.zero;
    }
  }
  out.min_abs_nonzero = std::isfinite(min_abs) ? min_abs : 0.0;
  out.borderline = out.zero > 0 && (out.pos + out.neg) > 0 && scale > 0 &&
                   [&] {
                     for (Eigen::Index i = 0; i < n; ++i)
                       if (std::abs(ev(i)) <= cut && std::abs(ev(i)) > cut * 1e-3) return true;
                     return false;
                   }();
  return out;
}

// ---------------------------------------------------------------------------
// seeded random generators (library operations take explicit seeds)

inline RealMat gaussian_real(Eigen::Index r, Eigen::Index c, std::mt19937_64& g) {
  std::normal_distribution<double> dist(0.0, 1.0);
  RealMat m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = dist(g);
  return m;
}

inline Mat gaussian(Eigen::Index r, Eigen::Index c, Field f, std::mt19937_64& g) {
  Mat m = gaussian_real(r, c, g).cast<Complex>();
  if (f == Field::Complex) m += Complex(0, 1) * gaussian_real(r, c, g).cast<Complex>();
  return m;
}

/// Haar-distributed orthogonal (real field) or unitary (complex field) matrix.
inline Mat haar_unitary(Eigen::Index n, Field f, std::mt19937_64& g) {
  Mat z = gaussian(n, n, f, g);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline Vec random_unit_vector(Eigen::Index n, Field f, std::mt19937_64& g) {
  Vec v = gaussian(n, 1, f, g).col(0);
  double nv = v.norm();
  if (nv == 0) {
    v.setZero();
    v(0) = 1;
    return v;
  }
  return v / nv;
}

}  // namespace linrel
