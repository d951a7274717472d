#include "spectral_minmax/matrix_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax {

namespace {

double off_diagonal_mass(const ComplexMatrix& m) {
  double sum = 0.0;
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) sum += std::norm(m(i, j));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating m(p, q). The rotation is a phase
// change on coordinate q, which makes m(p, q) real, followed by the real
// symmetric Jacobi rotation.
void rotate(ComplexMatrix& m, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = m(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;
  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const double zeta = (aqq - app) / (2.0 * r);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex u_pp = c;
  const Complex u_pq = s;
  const Complex u_qp = -s * std::conj(phase);
  const Complex u_qq = c * std::conj(phase);

  const Eigen::Index n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex mkp = m(k, p);
    const Complex mkq = m(k, q);
    m(k, p) = mkp * u_pp + mkq * u_qp;
    m(k, q) = mkp * u_pq + mkq * u_qq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex mpk = m(p, k);
    const Complex mqk = m(q, k);
    m(p, k) = std::conj(u_pp) * mpk + std::conj(u_qp) * mqk;
    m(q, k) = std::conj(u_pq) * mpk + std::conj(u_qq) * mqk;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * u_pp + vkq * u_qp;
    v(k, q) = vkp * u_pq + vkq * u_qq;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = m(p, p).real();
  m(q, q) = m(q, q).real();
}

}  // namespace

Hermitian::Hermitian(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw ValidationError("Hermitian matrix must be square and non-empty");
  }
  const double tol = 1e-12 * std::max(1.0, m_.cwiseAbs().maxCoeff());
  const Eigen::Index n = m_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian at (" << i << ", " << j << ")";
        throw ValidationError(os.str());
      }
    }
  }
}

Hermitian Hermitian::symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix must be square");
  return Hermitian(ComplexMatrix(0.5 * (m + m.adjoint())));
}

Hermitian Hermitian::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return Hermitian(std::move(m));
}

Hermitian Hermitian::operator+(const Hermitian& other) const {
  if (dim() != other.dim()) throw ArgumentError("dimension mismatch in Hermitian sum");
  return symmetrized(m_ + other.m_);
}

Hermitian Hermitian::operator-(const Hermitian& other) const {
  if (dim() != other.dim()) throw ArgumentError("dimension mismatch in Hermitian difference");
  return symmetrized(m_ - other.m_);
}

Projection Projection::from_basis(ComplexMatrix basis) {
  const Eigen::Index k = basis.cols();
  if (k > 0) {
    const ComplexMatrix gram = basis.adjoint() * basis;
    const double err = (gram - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-9) {
      throw ValidationError("projection basis is not orthonormal");
    }
  }
  return Projection(std::move(basis));
}

Projection Projection::from_matrix(const ComplexMatrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw ValidationError("projection must be square and non-empty");
  }
  if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("projection is not self-adjoint");
  }
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("projection is not idempotent");
  }
  const auto eig = eigh(Hermitian::symmetrized(p));
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < eig.values.size(); ++j) {
    if (eig.values[j] > 0.5) cols.push_back(static_cast<Eigen::Index>(j));
  }
  const double tr = normalized_trace(p).real() * static_cast<double>(p.rows());
  if (std::abs(tr - static_cast<double>(cols.size())) > 1e-10 * static_cast<double>(p.rows())) {
    throw ValidationError("projection trace is not an integer rank");
  }
  ComplexMatrix basis(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
  }
  return Projection(std::move(basis));
}

Projection Projection::zero(std::size_t n) {
  return Projection(ComplexMatrix(static_cast<Eigen::Index>(n), 0));
}

Projection Projection::identity(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return Projection(ComplexMatrix::Identity(m, m));
}

Projection Projection::complement() const {
  const Eigen::Index n = basis_.rows();
  const Eigen::Index k = basis_.cols();
  if (k == 0) return identity(static_cast<std::size_t>(n));
  if (k == n) return zero(static_cast<std::size_t>(n));
  Eigen::HouseholderQR<ComplexMatrix> qr(basis_);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  return Projection(q.rightCols(n - k));
}

EigenDecomposition eigh(const Hermitian& a) {
  ComplexMatrix m = a.matrix();
  const Eigen::Index n = m.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = m.norm();
  const double target = kJacobiTolerance * scale;

  EigenDecomposition out;
  double off = off_diagonal_mass(m);
  int sweep = 0;
  while (off > target && sweep < kJacobiMaxSweeps) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(m, v, p, q);
    }
    ++sweep;
    off = off_diagonal_mass(m);
  }
  if (off > target) {
    std::ostringstream os;
    os << "Jacobi eigensolver did not converge in " << kJacobiMaxSweeps
       << " sweeps; off-diagonal residual " << off;
    throw NumericError(os.str());
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() <
           m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
  });
  out.values.resize(order.size());
  out.vectors.resize(n, n);
  for (std::size_t j = 0; j < order.size(); ++j) {
    const auto src = static_cast<Eigen::Index>(order[j]);
    out.values[j] = m(src, src).real();
    out.vectors.col(static_cast<Eigen::Index>(j)) = v.col(src);
  }
  out.sweeps = sweep;
  out.off_diagonal = off;
  return out;
}

Complex normalized_trace(const ComplexMatrix& x) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    throw ArgumentError("normalized trace needs a non-empty square matrix");
  }
  return x.trace() / static_cast<double>(x.rows());
}

double trace_with(const Hermitian& a, const Projection& p) {
  if (a.dim() != p.dim()) throw ArgumentError("dimension mismatch in tau(a p)");
  if (p.rank() == 0) return 0.0;
  const ComplexMatrix& b = p.basis();
  const Complex tr = (b.adjoint() * a.matrix() * b).trace();
  return tr.real() / static_cast<double>(a.dim());
}

double merge_tolerance(const Hermitian& a) { return 1e-9 * (1.0 + a.max_abs()); }

measures::CompactMeasure spectral_distribution(const Hermitian& a) {
  return spectral_distribution(a, eigh(a));
}

measures::CompactMeasure spectral_distribution(const Hermitian& a, const EigenDecomposition& eig) {
  const double tol = merge_tolerance(a);
  const double n = static_cast<double>(eig.values.size());
  std::vector<measures::Atom> atoms;
  std::size_t start = 0;
  for (std::size_t j = 1; j <= eig.values.size(); ++j) {
    if (j == eig.values.size() || eig.values[j] - eig.values[j - 1] >= tol) {
      double sum = 0.0;
      for (std::size_t i = start; i < j; ++i) sum += eig.values[i];
      const double count = static_cast<double>(j - start);
      atoms.push_back({sum / count, count / n});
      start = j;
    }
  }
  return measures::CompactMeasure(std::move(atoms), {});
}

bool has_distinct_spectrum(const Hermitian& a, const EigenDecomposition& eig) {
  const double tol = merge_tolerance(a);
  for (std::size_t j = 1; j < eig.values.size(); ++j) {
    if (eig.values[j] - eig.values[j - 1] < tol) return false;
  }
  return true;
}

double spectral_cdf(const EigenDecomposition& eig, double t) {
  const auto below = std::lower_bound(eig.values.begin(), eig.values.end(), t) - eig.values.begin();
  return static_cast<double>(below) / static_cast<double>(eig.values.size());
}

Projection spectral_projection(const Hermitian& a, double t0, double t1) {
  return spectral_projection(eigh(a), t0, t1);
}

Projection spectral_projection(const EigenDecomposition& eig, double t0, double t1) {
  const auto& v = eig.values;
  const auto lo = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), t0) - v.begin());
  auto hi = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), t1) - v.begin());
  hi = std::max(lo, hi);
  return eigenvector_projection(eig, lo, hi);
}

Projection eigenvector_projection(const EigenDecomposition& eig, std::size_t lo, std::size_t hi) {
  const auto n = static_cast<std::size_t>(eig.vectors.rows());
  if (lo > hi || hi > n) throw ArgumentError("eigenvector index range out of bounds");
  return Projection::from_basis(
      eig.vectors.middleCols(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi - lo)));
}

double kyfan_value(const Hermitian& a, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ArgumentError("Ky Fan level s must lie in [0, 1]");
  const auto q = measures::quantile_of(measures::cdf_of(spectral_distribution(a)));
  return q.integral_to(s);
}

BvMaxTrace bv_max_trace(const Hermitian& a, double t) {
  const auto eig = eigh(a);
  auto witness = spectral_projection(eig, t, std::numeric_limits<double>::infinity());
  const double floor = compressed_min_eigenvalue(a, witness);
  return {1.0 - spectral_cdf(eig, t), std::move(witness), floor};
}

Hermitian compress(const Hermitian& a, const Projection& p) {
  if (a.dim() != p.dim()) throw ArgumentError("dimension mismatch in compression");
  const ComplexMatrix& b = p.basis();
  return Hermitian::symmetrized(b.adjoint() * a.matrix() * b);
}

double compressed_min_eigenvalue(const Hermitian& a, const Projection& p) {
  if (p.rank() == 0) return std::numeric_limits<double>::infinity();
  return eigh(compress(a, p)).values.front();
}

Hermitian perturb_to_distinct(const Hermitian& a, double eps) {
  const auto eig = eigh(a);
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::VectorXcd shifts(n);
  for (Eigen::Index i = 0; i < n; ++i) shifts(i) = eps * static_cast<double>(i + 1);
  const ComplexMatrix bump = eig.vectors * shifts.asDiagonal() * eig.vectors.adjoint();
  return Hermitian::symmetrized(a.matrix() + bump);
}

}  // namespace spectral_minmax
