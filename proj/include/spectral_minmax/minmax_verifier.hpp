#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spectral_minmax/matrix_spectra.hpp"
#include "spectral_minmax/report.hpp"

namespace spectral_minmax::verify {

// Tolerance ladder shared by the verifiers.
inline constexpr double kSampleTolerance = 1e-9;   // sampled candidates vs exact value
inline constexpr double kWitnessTolerance = 1e-8;  // witness attains the exact value
inline constexpr double kKyFanWitnessTolerance = 1e-10;
// Exhaustive coordinate-projection enumeration is done up to this dimension.
inline constexpr std::size_t kMaxExhaustiveDim = 12;

struct Options {
  // Replace a spectrum with repeated eigenvalues by its perturbation
  // a + eps V diag(1..n) V* instead of refusing it.
  bool perturb_degenerate = false;
};

enum class RankConstraint { AtLeast, Exactly };

// min { tau(a p) : rank(p) >= j } (or = j) against (1/n) sum_{i<=j} lambda_i.
// Samples every eigenbasis coordinate projection of admissible rank (for
// n <= kMaxExhaustiveDim) and `trials` random projections, cycling through the
// admissible ranks.
VerificationReport verify_kyfan(const Hermitian& a, std::size_t j, std::size_t trials,
                                std::uint64_t seed,
                                RankConstraint constraint = RankConstraint::AtLeast,
                                const Options& options = {});

// 1 - F_a(t) = max { tau(p) : p a p >= t p }. Checks the witness 1_[t,inf)(a)
// and that `trials` random projections of larger rank all violate p a p >= t p.
VerificationReport verify_bv_max_trace(const Hermitian& a, double t, std::size_t trials,
                                       std::uint64_t seed);

// min { tau(a q) : q <= 1_[t0,inf)(a), tau(q) = delta } and the dual
// max { tau(a q) : q <= 1_(-inf,t1)(a), tau(q) = delta }, both equal to the
// integral of X_a over [F(t0), F(t1)).
VerificationReport verify_conditional_min(const Hermitian& a, double t0, double t1,
                                          std::size_t trials, std::uint64_t seed,
                                          const Options& options = {});

// sup_r inf_{q <= r} tau(a q) with tau(r) >= (n - i + 1)/n, rank(q) = j, against
// (lambda_i + ... + lambda_{i+j-1}) / n. Indices are 1-based.
VerificationReport verify_courant_fischer(const Hermitian& a, std::size_t i, std::size_t j,
                                          std::size_t outer_trials, std::size_t inner_trials,
                                          std::uint64_t seed, const Options& options = {});

// Closed range lo..hi of 1-based eigenvalue indices.
struct IndexInterval {
  std::size_t lo = 1;
  std::size_t hi = 1;
  std::size_t size() const { return hi - lo + 1; }
};

// inf over chains p_1 <= ... <= p_k with rank(p_j) >= hi_j of the sup over
// orthogonal families q_j <= p_j with rank(q_j) = |interval j| of
// sum tau(a q_j), against the sum of lambda over all intervals / n.
VerificationReport verify_wielandt(const Hermitian& a, const std::vector<IndexInterval>& intervals,
                                   std::size_t outer_trials, std::size_t inner_trials,
                                   std::uint64_t seed, const Options& options = {});

}  // namespace spectral_minmax::verify
