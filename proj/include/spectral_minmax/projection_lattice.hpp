#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spectral_minmax/matrix_spectra.hpp"
#include "spectral_minmax/random.hpp"

namespace spectral_minmax::lattice {

// Tolerance for the self-checks of every construction in this module.
inline constexpr double kConstructionTolerance = 1e-9;

// Singular values below this are treated as zero when extracting ranks.
double rank_threshold(std::size_t n);

// Projection onto range(p) + range(q).
Projection join(const Projection& p, const Projection& q);
// Projection onto range(p) intersected with range(q).
Projection meet(const Projection& p, const Projection& q);

// ||(1 - r) e||_max, zero iff e <= r.
double order_defect(const Projection& e, const Projection& r);
bool is_below(const Projection& e, const Projection& r, double tol = kConstructionTolerance);
// ||p q||_max, zero iff p and q are orthogonal.
double orthogonality_defect(const Projection& p, const Projection& q);

// Sum of mutually orthogonal projections, as a projection.
Projection orthogonal_sum(std::span<const Projection> family);
// r - e for e <= r.
Projection difference(const Projection& r, const Projection& e);

// Uniformly random rank-k projection in C^n.
Projection random_projection(std::size_t n, std::size_t k, std::uint64_t seed);
Projection random_projection(std::size_t n, std::size_t k, Rng& rng);
// Uniformly random rank-k projection below r.
Projection random_subprojection(const Projection& r, std::size_t k, Rng& rng);

// f with e <= f <= r and rank(f) = target_rank. Throws OrderingError when
// e <= r fails or target_rank lies outside [rank(e), rank(r)].
Projection interpolate_projection(const Projection& e, const Projection& r,
                                  std::size_t target_rank);

using Family = std::vector<Projection>;

// Given r_1 >= ... >= r_k and mutually orthogonal q'_1..q'_{k-1} with
// q'_j <= r_j and rank(q'_j) = target_ranks[j], builds mutually orthogonal
// q_j <= r_j with rank(q_j) = target_ranks[j] and sum q_j >= sum q'_j.
// Requires rank(r_j) >= target_ranks[j] + ... + target_ranks[k-1]; a failed
// hypothesis throws CertificateError naming it. The result is re-verified
// before returning.
Family complete_orthogonal_family(std::span<const Projection> r,
                                  std::span<const Projection> q_prime,
                                  std::span<const std::size_t> target_ranks);

struct MatchedFamilies {
  Family below_r;  // q_j <= r_j
  Family below_p;  // q~_j <= p_j
};

// Given p_1 <= ... <= p_k and r_1 >= ... >= r_k, builds mutually orthogonal
// q_j <= r_j and mutually orthogonal q~_j <= p_j, all of rank
// target_ranks[j], with sum q_j = sum q~_j. Requires, for all j <= m,
//   rank(p_m) + rank(r_j) - n >= target_ranks[j] + ... + target_ranks[m].
// A failed hypothesis throws CertificateError naming it.
MatchedFamilies matched_families(std::span<const Projection> p, std::span<const Projection> r,
                                 std::span<const std::size_t> target_ranks);

}  // namespace spectral_minmax::lattice
