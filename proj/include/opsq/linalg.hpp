// Copyright 2026 The opsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Complex Hermitian linear algebra: spectral decomposition, functional
// calculus, the Loewner order and seeded random instance generation.

#ifndef OPSQ_LINALG_HPP
#define OPSQ_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opsq/error.hpp"

namespace opsq {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kSpectralResidualTolerance = 1e-10;
inline constexpr double kDomainSlack = 1e-12;
inline constexpr double kDefaultDomainMargin = 1e-6;
inline constexpr double kStructureTolerance = 1e-10;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

inline void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!all_finite(m)) {
    throw NonFinite(std::string(what) + ": matrix has non-finite entries");
  }
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": shapes " << a.rows() << "x" << a.cols() << " and "
       << b.rows() << "x" << b.cols() << " differ";
    throw DimensionMismatch(os.str());
  }
}

// ---------------------------------------------------------------------------
// Interval with open/closed endpoints
// ---------------------------------------------------------------------------

/// Real interval used as a function domain or as a sampling range.
///
/// Membership follows a two-rule policy: a closed endpoint admits values up
/// to kDomainSlack beyond it (rounding noise from eigensolvers), an open
/// endpoint requires the value to sit at least `margin` inside.
struct Interval {
  double lower = 0.0;
  double upper = kInf;
  bool lower_open = false;
  bool upper_open = false;

  static Interval closed(double a, double b) { return {a, b, false, false}; }
  static Interval open(double a, double b) { return {a, b, true, true}; }
  static Interval nonnegative() { return {0.0, kInf, false, true}; }
  static Interval positive() { return {0.0, kInf, true, true}; }
  static Interval real_line() { return {-kInf, kInf, true, true}; }

  bool admits(double x, double margin = kDefaultDomainMargin) const {
    if (std::isnan(x)) return false;
    if (std::isfinite(lower)) {
      if (lower_open ? x < lower + margin : x < lower - kDomainSlack) return false;
    }
    if (std::isfinite(upper)) {
      if (upper_open ? x > upper - margin : x > upper + kDomainSlack) return false;
    }
    return std::isfinite(x);
  }

  /// Pulls a value admitted through the slack rule back onto a closed endpoint.
  double clamp(double x) const {
    if (!lower_open && x < lower) return lower;
    if (!upper_open && x > upper) return upper;
    return x;
  }

  bool is_subset_of(const Interval& other) const {
    const bool lo_ok = lower > other.lower ||
                       (lower == other.lower && (!other.lower_open || lower_open));
    const bool hi_ok = upper < other.upper ||
                       (upper == other.upper && (!other.upper_open || upper_open));
    return lo_ok && hi_ok;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (lower_open ? '(' : '[') << lower << ", " << upper
       << (upper_open ? ')' : ']');
    return os.str();
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// ---------------------------------------------------------------------------
// HermitianMatrix
// ---------------------------------------------------------------------------

/// Square complex matrix with exact Hermitian symmetry.
///
/// Construction symmetrizes the input as (M + M*)/2 and zeroes the imaginary
/// part of the diagonal, so every instance satisfies H(i,j) == conj(H(j,i))
/// bit for bit.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
      throw DimensionMismatch("HermitianMatrix: input is not square");
    }
    require_finite(m, "HermitianMatrix");
    m_ = (m + m.adjoint()) * 0.5;
    for (Index i = 0; i < m_.rows(); ++i) m_(i, i) = Complex(m_(i, i).real(), 0.0);
  }

  static HermitianMatrix identity(Index n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }
  static HermitianMatrix zero(Index n) {
    return HermitianMatrix(ComplexMatrix::Zero(n, n));
  }
  static HermitianMatrix diagonal(const RealVector& d) {
    return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
  }
  static HermitianMatrix diagonal(std::initializer_list<double> d) {
    RealVector v(static_cast<Index>(d.size()));
    Index i = 0;
    for (double x : d) v(i++) = x;
    return diagonal(v);
  }
  /// Row-major real entries; convenient for fixtures.
  static HermitianMatrix real(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Index>(rows.size());
    ComplexMatrix m(n, n);
    Index i = 0;
    for (const auto& row : rows) {
      if (static_cast<Index>(row.size()) != n) {
        throw DimensionMismatch("HermitianMatrix::real: ragged rows");
      }
      Index j = 0;
      for (double x : row) m(i, j++) = x;
      ++i;
    }
    return HermitianMatrix(m);
  }

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_shape(a.m_, b.m_, "HermitianMatrix +");
    return HermitianMatrix(a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    require_same_shape(a.m_, b.m_, "HermitianMatrix -");
    return HermitianMatrix(a.m_ - b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a) { return HermitianMatrix(-a.m_); }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(s * a.m_);
  }
  friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  ComplexMatrix m_;
};

/// C* H C, re-Hermitized.
inline HermitianMatrix congruence(const ComplexMatrix& c, const HermitianMatrix& h) {
  if (c.rows() != h.dim()) {
    throw DimensionMismatch("congruence: C has " + std::to_string(c.rows()) +
                            " rows but H has dimension " + std::to_string(h.dim()));
  }
  return HermitianMatrix(c.adjoint() * h.matrix() * c);
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// Spectral decomposition
// ---------------------------------------------------------------------------

struct SpectralDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns

  ComplexMatrix reconstruct(const RealVector& values) const {
    return eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

/// Backward-stable Hermitian eigensolver (tridiagonalization + implicit QR).
///
/// The result is checked against the residual contract
///   ||U diag(l) U* - H||_2 <= 1e-10 max(1, ||H||_2),  ||U*U - I||_2 <= 1e-10
/// and ConvergenceFailure is thrown when it cannot be met.
inline SpectralDecomposition hermitian_eig(const HermitianMatrix& h) {
  const Index n = h.dim();
  if (n == 0) throw DimensionMismatch("hermitian_eig: empty matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("hermitian_eig: QR iteration did not converge");
  }
  SpectralDecomposition s{solver.eigenvalues(), solver.eigenvectors()};

  const double scale = std::max(
      1.0, std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(n - 1))));
  // Frobenius norm bounds the spectral norm from above; fall back to the
  // exact norm only when the cheap bound is inconclusive.
  const ComplexMatrix recon = s.reconstruct(s.eigenvalues) - h.matrix();
  double recon_err = recon.norm();
  if (recon_err > kSpectralResidualTolerance * scale) recon_err = operator_norm(recon);
  const ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(n, n);
  double unit_err = gram.norm();
  if (unit_err > kSpectralResidualTolerance) unit_err = operator_norm(gram);
  if (recon_err > kSpectralResidualTolerance * scale || unit_err > kSpectralResidualTolerance ||
      !s.eigenvalues.allFinite()) {
    std::ostringstream os;
    os << "hermitian_eig: residual bound unreachable (reconstruction " << recon_err
       << ", unitarity " << unit_err << ")";
    throw ConvergenceFailure(os.str());
  }
  return s;
}

inline RealVector eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalues: QR iteration did not converge");
  }
  return solver.eigenvalues();
}

/// ||H||_2 for Hermitian H.
inline double spectral_norm(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  const RealVector ev = eigenvalues(h);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

// ---------------------------------------------------------------------------
// Functional calculus
// ---------------------------------------------------------------------------

/// Returns U diag(f(l_i)) U* after checking every eigenvalue against `domain`.
template <class F>
HermitianMatrix spectral_apply(const HermitianMatrix& h, F&& f, const Interval& domain,
                               double margin = kDefaultDomainMargin,
                               std::string_view name = "f") {
  const SpectralDecomposition s = hermitian_eig(h);
  std::vector<double> offending;
  RealVector values(s.eigenvalues.size());
  for (Index i = 0; i < values.size(); ++i) {
    const double lambda = s.eigenvalues(i);
    if (!domain.admits(lambda, margin)) {
      offending.push_back(lambda);
      continue;
    }
    values(i) = f(domain.clamp(lambda));
    if (!std::isfinite(values(i))) offending.push_back(lambda);
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << name << ": eigenvalue(s)";
    for (double v : offending) os << ' ' << v;
    os << " outside domain " << domain.to_string();
    throw DomainViolation(os.str(), std::move(offending));
  }
  return HermitianMatrix(s.reconstruct(values));
}

/// |A| = U diag(|l_i|) U*.
inline HermitianMatrix operator_abs(const HermitianMatrix& a) {
  return spectral_apply(a, [](double x) { return std::abs(x); }, Interval::real_line(), 0.0,
                        "abs");
}

/// Principal square root of a positive semidefinite matrix.
inline HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  return spectral_apply(a, [](double x) { return std::sqrt(x); }, Interval::nonnegative(), 0.0,
                        "sqrt");
}

// ---------------------------------------------------------------------------
// Loewner order
// ---------------------------------------------------------------------------

enum class Relation { PositiveSemidefinite, NegativeSemidefinite, Zero, Indefinite };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::PositiveSemidefinite: return "PositiveSemidefinite";
    case Relation::NegativeSemidefinite: return "NegativeSemidefinite";
    case Relation::Zero: return "Zero";
    case Relation::Indefinite: return "Indefinite";
  }
  return "?";
}

inline Relation relation_from_string(std::string_view s) {
  if (s == "PositiveSemidefinite") return Relation::PositiveSemidefinite;
  if (s == "NegativeSemidefinite") return Relation::NegativeSemidefinite;
  if (s == "Zero") return Relation::Zero;
  if (s == "Indefinite") return Relation::Indefinite;
  throw ParseError("unknown Loewner relation '" + std::string(s) + "'");
}

struct LoewnerVerdict {
  Relation relation = Relation::Zero;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double tolerance_used = 0.0;

  /// D >= 0 (Zero counts).
  bool nonnegative() const {
    return relation == Relation::PositiveSemidefinite || relation == Relation::Zero;
  }
  /// D <= 0 (Zero counts).
  bool nonpositive() const {
    return relation == Relation::NegativeSemidefinite || relation == Relation::Zero;
  }
};

/// Sign classification of a Hermitian D with tol_eff = tol * max(1, ||D||_2).
/// Comparisons are inclusive, so lambda_min == -tol_eff is PositiveSemidefinite.
inline LoewnerVerdict loewner_verdict(const HermitianMatrix& d, double tol = kDefaultTolerance) {
  const RealVector ev = eigenvalues(d);
  LoewnerVerdict v;
  v.lambda_min = ev(0);
  v.lambda_max = ev(ev.size() - 1);
  const double norm = std::max(std::abs(v.lambda_min), std::abs(v.lambda_max));
  v.tolerance_used = tol * std::max(1.0, norm);
  const bool psd = v.lambda_min >= -v.tolerance_used;
  const bool nsd = v.lambda_max <= v.tolerance_used;
  if (psd && nsd) {
    v.relation = Relation::Zero;
  } else if (psd) {
    v.relation = Relation::PositiveSemidefinite;
  } else if (nsd) {
    v.relation = Relation::NegativeSemidefinite;
  } else {
    v.relation = Relation::Indefinite;
  }
  return v;
}

/// Classifies D = B - A; PositiveSemidefinite means A <= B.
inline LoewnerVerdict loewner_compare(const HermitianMatrix& a, const HermitianMatrix& b,
                                      double tol = kDefaultTolerance) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("loewner_compare: dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
  return loewner_verdict(b - a, tol);
}

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Counter-based seed derivation (splitmix64 finalizer), so trial k of a
/// campaign is reproducible on its own.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Entries with independent N(0, 1/2) real and imaginary parts.
inline ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) removed.
inline ComplexMatrix random_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("random_unitary: dim must be positive");
  const ComplexMatrix z = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

inline ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

/// U diag(l) U* with l_i ~ U[lo, hi] and U Haar-distributed.
inline HermitianMatrix random_psd(Index dim, double lo, double hi, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("random_psd: dim must be positive");
  if (!(lo >= 0.0 && lo <= hi)) {
    throw DomainViolation("random_psd: need 0 <= lo <= hi", {lo, hi});
  }
  std::uniform_real_distribution<double> uni(lo, hi);
  RealVector spectrum(dim);
  for (Index i = 0; i < dim; ++i) spectrum(i) = lo == hi ? lo : uni(rng);
  if (dim == 1) return HermitianMatrix::diagonal(spectrum);
  const ComplexMatrix u = random_unitary(dim, rng);
  return HermitianMatrix(u * spectrum.cast<Complex>().asDiagonal() * u.adjoint());
}

inline HermitianMatrix random_psd(Index dim, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  return random_psd(dim, lo, hi, rng);
}

/// First `cols` columns of a Haar unitary.
inline ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (cols < 1 || rows < cols) {
    throw DimensionMismatch("random_isometry: need rows >= cols >= 1");
  }
  return random_unitary(rows, rng).leftCols(cols);
}

inline ComplexVector random_unit_vector(Index dim, Rng& rng) {
  ComplexVector x = gaussian_matrix(dim, 1, rng).col(0);
  return x / x.norm();
}

// ---------------------------------------------------------------------------
// Structural predicates
// ---------------------------------------------------------------------------

inline bool is_unitary(const ComplexMatrix& u, double tol = kStructureTolerance) {
  if (u.rows() != u.cols()) throw DimensionMismatch("is_unitary: matrix is not square");
  const Index n = u.rows();
  return operator_norm(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <= tol;
}

/// C*C <= I in the Loewner order, with absolute slack `tol`.
inline bool is_contraction(const ComplexMatrix& c, double tol = kStructureTolerance) {
  const Index n = c.cols();
  const HermitianMatrix defect(ComplexMatrix::Identity(n, n) - c.adjoint() * c);
  return eigenvalues(defect)(0) >= -tol;
}

/// C*C = I; C must be square or tall.
inline bool is_isometry(const ComplexMatrix& c, double tol = kStructureTolerance) {
  if (c.rows() < c.cols()) throw DimensionMismatch("is_isometry: matrix is wide");
  const Index n = c.cols();
  return operator_norm(c.adjoint() * c - ComplexMatrix::Identity(n, n)) <= tol;
}

/// P^2 = P = P*.
inline bool is_projection(const ComplexMatrix& p, double tol = kStructureTolerance) {
  if (p.rows() != p.cols()) throw DimensionMismatch("is_projection: matrix is not square");
  return operator_norm(p - p.adjoint()) <= tol && operator_norm(p * p - p) <= tol;
}

}  // namespace opsq

#endif  // OPSQ_LINALG_HPP
