#include "spectral_minmax/random.hpp"

#include <cmath>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_orthonormal(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols > rows) throw ArgumentError("cannot fit more orthonormal columns than rows");
  const auto m = static_cast<Eigen::Index>(rows);
  const auto k = static_cast<Eigen::Index>(cols);
  if (k == 0) return ComplexMatrix(m, 0);
  const ComplexMatrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, k);
  // Fix the column phases against diag(R) so that the law is unitarily
  // invariant.
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Hermitian random_hermitian(std::size_t n, Rng& rng) {
  if (n == 0) throw ArgumentError("matrix dimension must be positive");
  // g has E|g_ij|^2 = 1/n; (g + g*)/sqrt(2) keeps that variance off the
  // diagonal and gives real diagonal entries of variance 1/n.
  const ComplexMatrix g = gaussian_matrix(n, n, rng) / std::sqrt(static_cast<double>(n));
  return Hermitian::symmetrized(std::sqrt(2.0) * g);
}

Hermitian random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(n, rng);
}

}  // namespace spectral_minmax
