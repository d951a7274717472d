#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spectral_minmax/measures.hpp"

namespace spectral_minmax {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Self-adjoint n x n complex matrix. Normalized trace tau = Tr / n.
class Hermitian {
 public:
  // Throws ValidationError unless the matrix is square and
  // |m(i,j) - conj(m(j,i))| <= 1e-12 * max(1, ||m||_max).
  explicit Hermitian(ComplexMatrix m);

  // (m + m*) / 2, without validation of m beyond squareness.
  static Hermitian symmetrized(const ComplexMatrix& m);
  static Hermitian diagonal(std::span<const double> entries);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  Hermitian operator+(const Hermitian& other) const;
  Hermitian operator-(const Hermitian& other) const;

 private:
  ComplexMatrix m_;
};

// Orthogonal projection, stored with an orthonormal basis of its range.
class Projection {
 public:
  // `basis` must have orthonormal columns (checked to 1e-9); its column count
  // is the rank.
  static Projection from_basis(ComplexMatrix basis);
  // Validates p = p*, p^2 = p within 1e-10 and integral trace.
  static Projection from_matrix(const ComplexMatrix& p);
  static Projection zero(std::size_t n);
  static Projection identity(std::size_t n);

  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  double trace() const { return static_cast<double>(rank()) / static_cast<double>(dim()); }
  const ComplexMatrix& basis() const { return basis_; }
  ComplexMatrix matrix() const { return basis_ * basis_.adjoint(); }
  // 1 - p.
  Projection complement() const;

 private:
  explicit Projection(ComplexMatrix basis) : basis_(std::move(basis)) {}

  ComplexMatrix basis_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column j belongs to values[j]
  int sweeps = 0;
  double off_diagonal = 0.0;   // Frobenius mass left off the diagonal
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-13;

// Cyclic Jacobi eigensolver. Throws NumericError with the remaining
// off-diagonal mass when kJacobiMaxSweeps sweeps do not converge.
EigenDecomposition eigh(const Hermitian& a);

Complex normalized_trace(const ComplexMatrix& x);

// tau(a p) for a projection p, computed through its range basis.
double trace_with(const Hermitian& a, const Projection& p);

// Tolerance below which neighbouring eigenvalues merge into one atom.
double merge_tolerance(const Hermitian& a);

// Atomic spectral measure mu_a; eigenvalues closer than merge_tolerance form
// one atom of weight multiplicity / n.
measures::CompactMeasure spectral_distribution(const Hermitian& a);
measures::CompactMeasure spectral_distribution(const Hermitian& a, const EigenDecomposition& eig);

// True when no two eigenvalues merge.
bool has_distinct_spectrum(const Hermitian& a, const EigenDecomposition& eig);

// F_a(t) = |{j : lambda_j < t}| / n.
double spectral_cdf(const EigenDecomposition& eig, double t);

// 1_[t0, t1)(a); infinite endpoints are allowed.
Projection spectral_projection(const Hermitian& a, double t0, double t1);
Projection spectral_projection(const EigenDecomposition& eig, double t0, double t1);
// Span of eigenvectors lo..hi-1 (0-based, ascending order).
Projection eigenvector_projection(const EigenDecomposition& eig, std::size_t lo, std::size_t hi);

// Integral of the quantile of mu_a over [0, s).
double kyfan_value(const Hermitian& a, double s);

struct BvMaxTrace {
  double value = 0.0;        // 1 - F_a(t)
  Projection witness;        // 1_[t, inf)(a)
  double witness_floor = 0.0;  // least eigenvalue of p a p on range(p)
};

BvMaxTrace bv_max_trace(const Hermitian& a, double t);

// Least eigenvalue of the compression of a to range(p); +inf for p = 0.
double compressed_min_eigenvalue(const Hermitian& a, const Projection& p);

// Compression b* a b onto the range basis b of p, as a rank(p)-dim Hermitian.
Hermitian compress(const Hermitian& a, const Projection& p);

inline constexpr double kPerturbationEpsilon = 1e-7;

// a + eps * V diag(1, 2, ..., n) V*, with V the eigenvectors of a. Makes
// repeated eigenvalues distinct while keeping the eigenbasis.
Hermitian perturb_to_distinct(const Hermitian& a, double eps = kPerturbationEpsilon);

}  // namespace spectral_minmax
