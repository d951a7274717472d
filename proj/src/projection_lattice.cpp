#include "spectral_minmax/projection_lattice.hpp"

#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/SVD>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax::lattice {

namespace {

ComplexMatrix empty_basis(std::size_t n) { return ComplexMatrix(static_cast<Eigen::Index>(n), 0); }

void require_same_dim(const Projection& p, const Projection& q, const char* op) {
  if (p.dim() != q.dim()) {
    throw ArgumentError(std::string(op) + ": dimension mismatch (" + std::to_string(p.dim()) +
                        " vs " + std::to_string(q.dim()) + ")");
  }
}

// Left singular vectors of m whose singular values pass `keep`.
template <class Keep>
ComplexMatrix left_singular_basis(const ComplexMatrix& m, Keep keep) {
  if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (keep(sv(i))) ++count;
  }
  // Singular values are sorted in decreasing order, so kept ones lead.
  return svd.matrixU().leftCols(count);
}

std::string one_based(std::size_t j) { return std::to_string(j + 1); }

ComplexMatrix concat(std::span<const Projection> family, std::size_t n) {
  Eigen::Index cols = 0;
  for (const auto& q : family) cols += q.basis().cols();
  ComplexMatrix out(static_cast<Eigen::Index>(n), cols);
  Eigen::Index at = 0;
  for (const auto& q : family) {
    out.middleCols(at, q.basis().cols()) = q.basis();
    at += q.basis().cols();
  }
  return out;
}

}  // namespace

double rank_threshold(std::size_t n) { return 1e-8 * static_cast<double>(n); }

Projection join(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "join");
  const std::size_t n = p.dim();
  ComplexMatrix stacked(static_cast<Eigen::Index>(n), p.basis().cols() + q.basis().cols());
  stacked << p.basis(), q.basis();
  const double thr = rank_threshold(n);
  return Projection::from_basis(left_singular_basis(stacked, [thr](double s) { return s > thr; }));
}

Projection meet(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "meet");
  const std::size_t n = p.dim();
  if (p.rank() == 0 || q.rank() == 0) return Projection::zero(n);
  const ComplexMatrix& bp = p.basis();
  const ComplexMatrix& bq = q.basis();
  // Vectors bp * y with (1 - q) bp y = 0: the null space of (1 - q) bp.
  const ComplexMatrix residual = bp - bq * (bq.adjoint() * bp);
  Eigen::JacobiSVD<ComplexMatrix> svd(residual, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = rank_threshold(n);
  std::vector<Eigen::Index> null_cols;
  const Eigen::Index k = bp.cols();
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= thr) null_cols.push_back(i);
  }
  ComplexMatrix basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = bp * svd.matrixV().col(null_cols[c]);
  }
  return Projection::from_basis(std::move(basis));
}

double order_defect(const Projection& e, const Projection& r) {
  require_same_dim(e, r, "order check");
  if (e.rank() == 0) return 0.0;
  const ComplexMatrix& be = e.basis();
  const ComplexMatrix& br = r.basis();
  const ComplexMatrix outside = r.rank() == 0 ? be : ComplexMatrix(be - br * (br.adjoint() * be));
  return (outside * be.adjoint()).cwiseAbs().maxCoeff();
}

bool is_below(const Projection& e, const Projection& r, double tol) {
  return order_defect(e, r) <= tol;
}

double orthogonality_defect(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "orthogonality check");
  if (p.rank() == 0 || q.rank() == 0) return 0.0;
  return (p.basis() * (p.basis().adjoint() * q.basis()) * q.basis().adjoint())
      .cwiseAbs()
      .maxCoeff();
}

Projection orthogonal_sum(std::span<const Projection> family) {
  if (family.empty()) throw ArgumentError("orthogonal sum of an empty family has no dimension");
  const std::size_t n = family.front().dim();
  for (std::size_t i = 0; i < family.size(); ++i) {
    require_same_dim(family[i], family.front(), "orthogonal sum");
    for (std::size_t j = 0; j < i; ++j) {
      const double d = orthogonality_defect(family[i], family[j]);
      if (d > kConstructionTolerance) {
        std::ostringstream os;
        os << "orthogonal sum: members " << j + 1 << " and " << i + 1
           << " are not orthogonal (||p q|| = " << d << ")";
        throw CertificateError(os.str());
      }
    }
  }
  return Projection::from_basis(concat(family, n));
}

Projection difference(const Projection& r, const Projection& e) {
  require_same_dim(r, e, "difference");
  const double defect = order_defect(e, r);
  if (defect > kConstructionTolerance) {
    std::ostringstream os;
    os << "difference r - e needs e <= r; ||(1 - r) e|| = " << defect;
    throw OrderingError(os.str());
  }
  if (e.rank() == 0) return r;
  const ComplexMatrix& br = r.basis();
  const ComplexMatrix& be = e.basis();
  const ComplexMatrix rest = br - be * (be.adjoint() * br);
  ComplexMatrix basis = left_singular_basis(rest, [](double s) { return s > 0.5; });
  if (static_cast<std::size_t>(basis.cols()) != r.rank() - e.rank()) {
    throw CertificateError("difference r - e has rank " + std::to_string(basis.cols()) +
                           ", expected " + std::to_string(r.rank() - e.rank()));
  }
  return Projection::from_basis(std::move(basis));
}

Projection random_projection(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return random_projection(n, k, rng);
}

Projection random_projection(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) {
    throw ArgumentError("random projection rank " + std::to_string(k) + " exceeds dimension " +
                        std::to_string(n));
  }
  return Projection::from_basis(random_orthonormal(n, k, rng));
}

Projection random_subprojection(const Projection& r, std::size_t k, Rng& rng) {
  if (k > r.rank()) {
    throw ArgumentError("sub-projection rank " + std::to_string(k) + " exceeds rank " +
                        std::to_string(r.rank()));
  }
  if (k == 0) return Projection::zero(r.dim());
  return Projection::from_basis(r.basis() * random_orthonormal(r.rank(), k, rng));
}

Projection interpolate_projection(const Projection& e, const Projection& r,
                                  std::size_t target_rank) {
  require_same_dim(e, r, "interpolate_projection");
  const double defect = order_defect(e, r);
  if (defect > kConstructionTolerance) {
    std::ostringstream os;
    os << "interpolate_projection: e <= r fails, ||(1 - r) e|| = " << defect;
    throw OrderingError(os.str());
  }
  if (target_rank < e.rank()) {
    throw OrderingError("interpolate_projection: target rank " + std::to_string(target_rank) +
                        " < rank(e) = " + std::to_string(e.rank()));
  }
  if (target_rank > r.rank()) {
    throw OrderingError("interpolate_projection: target rank " + std::to_string(target_rank) +
                        " > rank(r) = " + std::to_string(r.rank()));
  }
  if (target_rank == e.rank()) return e;
  if (target_rank == r.rank()) return r;
  const ComplexMatrix& br = r.basis();
  const ComplexMatrix rest =
      e.rank() == 0 ? br : ComplexMatrix(br - e.basis() * (e.basis().adjoint() * br));
  const ComplexMatrix directions = left_singular_basis(rest, [](double) { return true; });
  const auto extra = static_cast<Eigen::Index>(target_rank - e.rank());
  ComplexMatrix basis(static_cast<Eigen::Index>(r.dim()), static_cast<Eigen::Index>(target_rank));
  basis << e.basis(), directions.leftCols(extra);
  return Projection::from_basis(std::move(basis));
}

namespace {

Family build_orthogonal_family(std::span<const Projection> r, std::span<const Projection> q_prime,
                               std::span<const std::size_t> targets) {
  const std::size_t n = r.front().dim();
  if (r.size() == 1) {
    return {interpolate_projection(Projection::zero(n), r.front(), targets.front())};
  }
  Family tail = build_orthogonal_family(r.subspan(1), q_prime.subspan(1), targets.subspan(1));
  const Projection e2 = orthogonal_sum(tail);
  const Projection e = join(e2, q_prime.front());
  const std::size_t total = std::accumulate(targets.begin(), targets.end(), std::size_t{0});
  const Projection f = interpolate_projection(e, r.front(), total);
  Family out;
  out.reserve(r.size());
  out.push_back(difference(f, e2));
  for (auto& q : tail) out.push_back(std::move(q));
  return out;
}

void check_family(const Family& family, std::span<const Projection> bounds,
                  std::span<const std::size_t> targets, const char* name) {
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].rank() != targets[j]) {
      throw CertificateError(std::string("self-check: rank of ") + name + "_" + one_based(j) +
                             " is " + std::to_string(family[j].rank()) + ", expected " +
                             std::to_string(targets[j]));
    }
    const double defect = order_defect(family[j], bounds[j]);
    if (defect > kConstructionTolerance) {
      std::ostringstream os;
      os << "self-check: " << name << "_" << j + 1 << " is not below its bound (defect " << defect
         << ")";
      throw CertificateError(os.str());
    }
    for (std::size_t i = 0; i < j; ++i) {
      const double d = orthogonality_defect(family[i], family[j]);
      if (d > kConstructionTolerance) {
        std::ostringstream os;
        os << "self-check: " << name << "_" << i + 1 << " and " << name << "_" << j + 1
           << " are not orthogonal (" << d << ")";
        throw CertificateError(os.str());
      }
    }
  }
}

}  // namespace

Family complete_orthogonal_family(std::span<const Projection> r,
                                  std::span<const Projection> q_prime,
                                  std::span<const std::size_t> target_ranks) {
  const std::size_t k = r.size();
  if (k == 0) throw CertificateError("complete_orthogonal_family: empty chain r");
  if (target_ranks.size() != k) {
    throw CertificateError("complete_orthogonal_family: " + std::to_string(target_ranks.size()) +
                           " target ranks for a chain of length " + std::to_string(k));
  }
  if (q_prime.size() + 1 != k) {
    throw CertificateError("complete_orthogonal_family: expected " + std::to_string(k - 1) +
                           " given projections q', got " + std::to_string(q_prime.size()));
  }
  for (std::size_t j = 0; j < k; ++j) require_same_dim(r[j], r[0], "complete_orthogonal_family");
  for (const auto& q : q_prime) require_same_dim(q, r[0], "complete_orthogonal_family");

  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (!is_below(r[j + 1], r[j])) {
      throw CertificateError("complete_orthogonal_family: r_" + one_based(j + 1) + " <= r_" +
                             one_based(j) + " fails");
    }
  }
  std::size_t suffix = 0;
  for (std::size_t j = k; j-- > 0;) {
    suffix += target_ranks[j];
    if (r[j].rank() < suffix) {
      throw CertificateError("complete_orthogonal_family: rank(r_" + one_based(j) + ") = " +
                             std::to_string(r[j].rank()) + " < " + std::to_string(suffix) +
                             " = sum of target ranks " + one_based(j) + ".." + one_based(k - 1));
    }
  }
  for (std::size_t j = 0; j < q_prime.size(); ++j) {
    if (q_prime[j].rank() != target_ranks[j]) {
      throw CertificateError("complete_orthogonal_family: rank(q'_" + one_based(j) + ") = " +
                             std::to_string(q_prime[j].rank()) + " differs from target " +
                             std::to_string(target_ranks[j]));
    }
    if (!is_below(q_prime[j], r[j])) {
      throw CertificateError("complete_orthogonal_family: q'_" + one_based(j) + " <= r_" +
                             one_based(j) + " fails");
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (orthogonality_defect(q_prime[i], q_prime[j]) > kConstructionTolerance) {
        throw CertificateError("complete_orthogonal_family: q'_" + one_based(i) + " and q'_" +
                               one_based(j) + " are not orthogonal");
      }
    }
  }

  Family family = build_orthogonal_family(r, q_prime, target_ranks);
  check_family(family, r, target_ranks, "q");
  if (!q_prime.empty()) {
    const double defect = order_defect(orthogonal_sum(q_prime), orthogonal_sum(family));
    if (defect > kConstructionTolerance) {
      std::ostringstream os;
      os << "self-check: sum q_j >= sum q'_j fails (defect " << defect << ")";
      throw CertificateError(os.str());
    }
  }
  return family;
}

namespace {

MatchedFamilies build_matched(std::span<const Projection> p, std::span<const Projection> r,
                              std::span<const std::size_t> targets) {
  const std::size_t k = p.size();
  const std::size_t n = p.front().dim();
  if (k == 1) {
    const Projection common = meet(p.front(), r.front());
    Projection q = interpolate_projection(Projection::zero(n), common, targets.front());
    return {{q}, {q}};
  }
  MatchedFamilies prev = build_matched(p.first(k - 1), r.first(k - 1), targets.first(k - 1));
  const Projection e_prime = orthogonal_sum(prev.below_p);
  Family ell;
  ell.reserve(k);
  for (std::size_t j = 0; j < k; ++j) ell.push_back(meet(r[j], p[k - 1]));
  Family below_r = complete_orthogonal_family(ell, prev.below_r, targets);
  Projection last = difference(orthogonal_sum(below_r), e_prime);
  prev.below_p.push_back(std::move(last));
  return {std::move(below_r), std::move(prev.below_p)};
}

}  // namespace

MatchedFamilies matched_families(std::span<const Projection> p, std::span<const Projection> r,
                                 std::span<const std::size_t> target_ranks) {
  const std::size_t k = p.size();
  if (k == 0) throw CertificateError("matched_families: empty chains");
  if (r.size() != k || target_ranks.size() != k) {
    throw CertificateError("matched_families: chains and targets must have equal length");
  }
  const std::size_t n = p.front().dim();
  for (std::size_t j = 0; j < k; ++j) {
    require_same_dim(p[j], p[0], "matched_families");
    require_same_dim(r[j], p[0], "matched_families");
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (!is_below(p[j], p[j + 1])) {
      throw CertificateError("matched_families: p_" + one_based(j) + " <= p_" + one_based(j + 1) +
                             " fails");
    }
    if (!is_below(r[j + 1], r[j])) {
      throw CertificateError("matched_families: r_" + one_based(j + 1) + " <= r_" +
                             one_based(j) + " fails");
    }
  }
  for (std::size_t m = 0; m < k; ++m) {
    std::size_t needed = 0;
    for (std::size_t j = m + 1; j-- > 0;) {
      needed += target_ranks[j];
      const long available = static_cast<long>(p[m].rank()) + static_cast<long>(r[j].rank()) -
                             static_cast<long>(n);
      if (available < static_cast<long>(needed)) {
        throw CertificateError("matched_families: rank(p_" + one_based(m) + ") + rank(r_" +
                               one_based(j) + ") - n = " + std::to_string(available) + " < " +
                               std::to_string(needed) + " = sum of target ranks " +
                               one_based(j) + ".." + one_based(m));
      }
    }
  }

  MatchedFamilies out = build_matched(p, r, target_ranks);
  check_family(out.below_r, r, target_ranks, "q");
  check_family(out.below_p, p, target_ranks, "q~");
  const double gap = (orthogonal_sum(out.below_r).matrix() - orthogonal_sum(out.below_p).matrix())
                         .cwiseAbs()
                         .maxCoeff();
  if (gap > 1e-8) {
    std::ostringstream os;
    os << "self-check: sum q_j and sum q~_j differ by " << gap;
    throw CertificateError(os.str());
  }
  return out;
}

}  // namespace spectral_minmax::lattice
