#include "spectral_minmax/minmax_verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "spectral_minmax/errors.hpp"
#include "spectral_minmax/measures.hpp"
#include "spectral_minmax/projection_lattice.hpp"
#include "spectral_minmax/random.hpp"

namespace spectral_minmax::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Prepared {
  Hermitian a;
  EigenDecomposition eig;
  bool perturbed = false;
};

Prepared prepare(const Hermitian& a, const Options& options) {
  auto eig = eigh(a);
  if (has_distinct_spectrum(a, eig)) return {a, std::move(eig), false};
  if (!options.perturb_degenerate) {
    throw DegenerateSpectrumError(
        "spectrum has repeated eigenvalues; enable the distinct-eigenvalue perturbation");
  }
  Hermitian perturbed = perturb_to_distinct(a);
  auto peig = eigh(perturbed);
  if (!has_distinct_spectrum(perturbed, peig)) {
    throw DegenerateSpectrumError("perturbation did not separate the spectrum");
  }
  return {std::move(perturbed), std::move(peig), true};
}

double eigen_sum(const EigenDecomposition& eig, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += eig.values[i];
  return s / static_cast<double>(eig.values.size());
}

std::string index_range(std::size_t lo, std::size_t hi) {
  std::ostringstream os;
  os << "lambda_" << lo << ".." << hi;
  return os.str();
}

VerificationReport start_report(const char* theorem, const Prepared& prep, std::uint64_t seed) {
  VerificationReport r;
  r.theorem = theorem;
  r.n = prep.a.dim();
  r.seed = seed;
  r.details["perturbed"] = prep.perturbed;
  r.details["eigenvalues"] = prep.eig.values;
  return r;
}

void fail(VerificationReport& r, const std::string& what) { r.failures.push_back(what); }

std::string describe(double value, const char* rel, double bound) {
  std::ostringstream os;
  os.precision(17);
  os << value << ' ' << rel << ' ' << bound;
  return os.str();
}

}  // namespace

VerificationReport verify_kyfan(const Hermitian& a, std::size_t j, std::size_t trials,
                                std::uint64_t seed, RankConstraint constraint,
                                const Options& options) {
  const std::size_t n = a.dim();
  if (j < 1 || j > n) {
    throw ArgumentError("Ky Fan index j = " + std::to_string(j) + " outside 1.." +
                        std::to_string(n));
  }
  const Prepared prep = prepare(a, options);
  VerificationReport r = start_report("kyfan", prep, seed);
  r.parameters = {{"j", j},
                  {"constraint", constraint == RankConstraint::AtLeast ? "rank>=j" : "rank=j"}};
  r.tolerances = {{"sample", kSampleTolerance}, {"witness", kKyFanWitnessTolerance}};
  r.trials = trials;

  r.exact_value = eigen_sum(prep.eig, 0, j);
  const double via_quantile =
      measures::quantile_of(measures::cdf_of(spectral_distribution(prep.a, prep.eig)))
          .integral_to(static_cast<double>(j) / static_cast<double>(n));
  r.details["quantile_integral"] = via_quantile;
  if (std::abs(via_quantile - r.exact_value) > kKyFanWitnessTolerance) {
    fail(r, "quantile integral " + describe(via_quantile, "!=", r.exact_value));
  }

  const Projection witness = eigenvector_projection(prep.eig, 0, j);
  r.witness = "spectral projection onto " + index_range(1, j);
  r.witness_value = trace_with(prep.a, witness);
  if (std::abs(r.witness_value - r.exact_value) > kKyFanWitnessTolerance) {
    fail(r, "witness value " + describe(r.witness_value, "!=", r.exact_value));
  }

  if (constraint == RankConstraint::AtLeast) {
    // Extra eigenvectors with negative eigenvalues lower tau(a p) further, so
    // the minimum over rank(p) >= j is this, not exact_value, once lambda_{j+1} < 0.
    double below = r.exact_value;
    for (std::size_t i = j; i < n; ++i) below += std::min(prep.eig.values[i], 0.0) / static_cast<double>(n);
    r.details["min_over_rank_at_least_j"] = below;
  }

  std::vector<std::size_t> ranks;
  if (constraint == RankConstraint::AtLeast) {
    for (std::size_t k = j; k <= n; ++k) ranks.push_back(k);
  } else {
    ranks.push_back(j);
  }

  double best = kInf;
  std::size_t exhaustive = 0;
  if (n <= kMaxExhaustiveDim) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const auto size = static_cast<std::size_t>(std::popcount(mask));
      if (std::find(ranks.begin(), ranks.end(), size) == ranks.end()) continue;
      ComplexMatrix basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(size));
      Eigen::Index c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) basis.col(c++) = prep.eig.vectors.col(static_cast<Eigen::Index>(i));
      }
      best = std::min(best, trace_with(prep.a, Projection::from_basis(std::move(basis))));
      ++exhaustive;
    }
  }
  r.details["exhaustive_candidates"] = exhaustive;
  r.details["exhaustive_best"] = best;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    const std::size_t rank = ranks[t % ranks.size()];
    best = std::min(best, trace_with(prep.a, lattice::random_projection(n, rank, rng)));
  }
  r.best_sample = best;
  r.margin = best - r.exact_value;
  if (r.margin < -kSampleTolerance) {
    fail(r, "sampled projection beats the minimum: " + describe(best, "<", r.exact_value));
  }
  r.settle();
  return r;
}

VerificationReport verify_bv_max_trace(const Hermitian& a, double t, std::size_t trials,
                                       std::uint64_t seed) {
  const std::size_t n = a.dim();
  const BvMaxTrace bv = bv_max_trace(a, t);
  VerificationReport r;
  r.theorem = "bv_max_trace";
  r.n = n;
  r.seed = seed;
  r.trials = trials;
  r.parameters = {{"t", t}};
  r.tolerances = {{"witness", kSampleTolerance}};
  r.exact_value = bv.value;
  r.witness = "1_[t,inf)(a) of rank " + std::to_string(bv.witness.rank());
  r.witness_value = bv.witness.trace();
  r.details["witness_floor"] = bv.witness_floor;
  if (std::abs(r.witness_value - r.exact_value) > 1e-12) {
    fail(r, "witness trace " + describe(r.witness_value, "!=", r.exact_value));
  }
  double margin = bv.witness.rank() == 0 ? kInf : bv.witness_floor - t;
  if (margin < -kSampleTolerance) {
    fail(r, "witness violates p a p >= t p: floor " + describe(bv.witness_floor, "<", t));
  }

  // Any projection of larger rank meets the span of eigenvectors below t.
  double worst_floor = -kInf;
  std::size_t sampled = 0;
  if (bv.witness.rank() < n) {
    for (std::size_t s = 0; s < trials; ++s) {
      Rng rng = trial_rng(seed, s);
      std::uniform_int_distribution<std::size_t> rank_dist(bv.witness.rank() + 1, n);
      const Projection p = lattice::random_projection(n, rank_dist(rng), rng);
      const double floor = compressed_min_eigenvalue(a, p);
      worst_floor = std::max(worst_floor, floor);
      ++sampled;
    }
  }
  r.details["larger_projections"] = sampled;
  r.best_sample = sampled > 0 ? worst_floor : t;
  if (sampled > 0) {
    margin = std::min(margin, t - worst_floor);
    if (!(worst_floor < t)) {
      fail(r, "larger projection satisfies p a p >= t p: floor " + describe(worst_floor, ">=", t));
    }
  }
  r.margin = margin;
  r.settle();
  return r;
}

VerificationReport verify_conditional_min(const Hermitian& a, double t0, double t1,
                                          std::size_t trials, std::uint64_t seed,
                                          const Options& options) {
  if (!(t0 < t1)) throw ArgumentError("conditional minimum needs t0 < t1");
  const Prepared prep = prepare(a, options);
  const std::size_t n = prep.a.dim();
  const double f0 = spectral_cdf(prep.eig, t0);
  const double f1 = spectral_cdf(prep.eig, t1);
  const double delta = f1 - f0;
  if (!(delta > 0.0)) throw ArgumentError("interval [t0, t1) contains no spectrum");
  const double scaled = delta * static_cast<double>(n);
  if (std::abs(scaled - std::round(scaled)) > 1e-9) {
    throw GranularityError("trace " + std::to_string(delta) + " is not a multiple of 1/n");
  }
  const auto d = static_cast<std::size_t>(std::lround(scaled));

  VerificationReport r = start_report("conditional", prep, seed);
  r.parameters = {{"t0", t0}, {"t1", t1}, {"delta", delta}};
  r.tolerances = {{"sample", kSampleTolerance}, {"witness", kWitnessTolerance},
                  {"compression", 1e-10}};
  r.trials = 2 * trials;

  const auto q = measures::quantile_of(measures::cdf_of(spectral_distribution(prep.a, prep.eig)));
  r.exact_value = measures::partial_quantile_integral(q, f0, f1);

  const Projection q0 = spectral_projection(prep.eig, t0, t1);
  const Projection r0 = spectral_projection(prep.eig, t0, kInf);
  const Projection p0 = spectral_projection(prep.eig, -kInf, t1);
  r.witness = "q0 = 1_[t0,t1)(a) below r0 = 1_[t0,inf)(a); dual p = 1_(-inf,t1)(a)";
  r.witness_value = trace_with(prep.a, q0);
  if (std::abs(r.witness_value - r.exact_value) > kWitnessTolerance) {
    fail(r, "witness value " + describe(r.witness_value, "!=", r.exact_value));
  }

  double best_min = r.witness_value;
  double best_max = r.witness_value;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    best_min = std::min(best_min, trace_with(prep.a, lattice::random_subprojection(r0, d, rng)));
  }
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, trials + t);
    best_max = std::max(best_max, trace_with(prep.a, lattice::random_subprojection(p0, d, rng)));
  }
  r.best_sample = best_min;
  r.details["dual_best_sample"] = best_max;
  const double min_margin = best_min - r.exact_value;
  const double max_margin = r.exact_value - best_max;
  r.margin = std::min(min_margin, max_margin);
  if (min_margin < -kSampleTolerance) {
    fail(r, "sub-projection of r0 below the minimum: " + describe(best_min, "<", r.exact_value));
  }
  if (max_margin < -kSampleTolerance) {
    fail(r, "sub-projection of p above the maximum: " + describe(best_max, ">", r.exact_value));
  }

  // Same minimum inside the corner r0 M r0 with trace renormalized by tau(r0).
  const Hermitian corner = compress(prep.a, r0);
  const double corner_value =
      kyfan_value(corner, static_cast<double>(d) / static_cast<double>(r0.rank())) * r0.trace();
  r.details["compressed_value"] = corner_value;
  if (std::abs(corner_value - r.exact_value) > 1e-10) {
    fail(r, "compressed corner value " + describe(corner_value, "!=", r.exact_value));
  }
  r.settle();
  return r;
}

VerificationReport verify_courant_fischer(const Hermitian& a, std::size_t i, std::size_t j,
                                          std::size_t outer_trials, std::size_t inner_trials,
                                          std::uint64_t seed, const Options& options) {
  const std::size_t n = a.dim();
  if (i < 1 || j < 1 || i + j - 1 > n) {
    throw ArgumentError("Courant-Fischer indices need 1 <= i, 1 <= j, i + j - 1 <= n");
  }
  const Prepared prep = prepare(a, options);
  VerificationReport r = start_report("courant_fischer", prep, seed);
  r.parameters = {{"i", i}, {"j", j}, {"outer_trials", outer_trials},
                  {"inner_trials", inner_trials}};
  r.tolerances = {{"sample", kSampleTolerance}, {"witness", kWitnessTolerance},
                  {"construction", lattice::kConstructionTolerance}};
  r.trials = outer_trials + inner_trials;

  const std::size_t first = i - 1;
  const std::size_t last = i + j - 1;  // exclusive, 0-based
  r.exact_value = eigen_sum(prep.eig, first, last);
  const Projection r0 = eigenvector_projection(prep.eig, first, n);
  const Projection q0 = eigenvector_projection(prep.eig, first, last);
  const Projection r1 = eigenvector_projection(prep.eig, 0, last);
  r.witness = "r0 = span(" + index_range(i, n) + "), q0 = span(" + index_range(i, last) + ")";
  r.witness_value = trace_with(prep.a, q0);
  if (std::abs(r.witness_value - r.exact_value) > kWitnessTolerance) {
    fail(r, "witness value " + describe(r.witness_value, "!=", r.exact_value));
  }

  std::uint64_t trial = 0;
  double inner_best = r.witness_value;
  for (std::size_t t = 0; t < inner_trials; ++t, ++trial) {
    Rng rng = trial_rng(seed, trial);
    inner_best = std::min(inner_best, trace_with(prep.a, lattice::random_subprojection(r0, j, rng)));
  }
  r.best_sample = inner_best;
  const double inner_margin = inner_best - r.exact_value;
  if (inner_margin < -kSampleTolerance) {
    fail(r, "sub-projection of r0 below the exact value: " +
                describe(inner_best, "<", r.exact_value));
  }

  // Every admissible r contains q1 <= r ^ r1 of rank j, and tau(a q1) is at
  // most the maximum over rank-j projections below r1, which is the exact
  // value.
  double outer_worst = -kInf;
  std::size_t certificates = 0;
  for (std::size_t t = 0; t < outer_trials; ++t, ++trial) {
    Rng rng = trial_rng(seed, trial);
    std::uniform_int_distribution<std::size_t> rank_dist(n - i + 1, n);
    const Projection rr = lattice::random_projection(n, rank_dist(rng), rng);
    const Projection common = lattice::meet(rr, r1);
    if (common.rank() < j) {
      fail(r, "outer trial " + std::to_string(t) + ": rank(r ^ r1) = " +
                  std::to_string(common.rank()) + " < j");
      continue;
    }
    const Projection q1 = lattice::interpolate_projection(Projection::zero(n), common, j);
    if (!lattice::is_below(q1, rr) || !lattice::is_below(q1, r1)) {
      fail(r, "outer trial " + std::to_string(t) + ": certificate q1 not below r ^ r1");
      continue;
    }
    outer_worst = std::max(outer_worst, trace_with(prep.a, q1));
    ++certificates;
  }
  r.details["certificates"] = certificates;
  r.details["worst_certificate_value"] = outer_worst;
  const double outer_margin = outer_trials == 0 ? kInf : r.exact_value - outer_worst;
  if (outer_margin < -kSampleTolerance) {
    fail(r, "certificate tau(a q1) above the exact value: " +
                describe(outer_worst, ">", r.exact_value));
  }
  r.margin = std::min(inner_margin, outer_margin);
  r.settle();
  return r;
}

VerificationReport verify_wielandt(const Hermitian& a, const std::vector<IndexInterval>& intervals,
                                   std::size_t outer_trials, std::size_t inner_trials,
                                   std::uint64_t seed, const Options& options) {
  const std::size_t n = a.dim();
  if (intervals.empty()) throw ArgumentError("Wielandt needs at least one interval");
  for (std::size_t m = 0; m < intervals.size(); ++m) {
    const auto& iv = intervals[m];
    if (iv.lo < 1 || iv.lo > iv.hi || iv.hi > n) {
      throw ArgumentError("interval " + std::to_string(m + 1) + " is not inside 1.." +
                          std::to_string(n));
    }
    if (m > 0 && intervals[m - 1].hi >= iv.lo) {
      throw ArgumentError("intervals " + std::to_string(m) + " and " + std::to_string(m + 1) +
                          " are not in increasing disjoint order");
    }
  }
  const Prepared prep = prepare(a, options);
  const std::size_t k = intervals.size();
  VerificationReport r = start_report("wielandt", prep, seed);
  nlohmann::json ivs = nlohmann::json::array();
  for (const auto& iv : intervals) ivs.push_back({iv.lo, iv.hi});
  r.parameters = {{"intervals", ivs}, {"outer_trials", outer_trials},
                  {"inner_trials", inner_trials}};
  r.tolerances = {{"sample", kSampleTolerance}, {"witness", kWitnessTolerance},
                  {"construction", lattice::kConstructionTolerance}, {"matched_sum", 1e-8}};
  r.trials = outer_trials + inner_trials;

  std::vector<std::size_t> ranks;
  lattice::Family chain;  // p_j = 1_(-inf, t1^j)(a)
  lattice::Family rs;     // r_j = 1_[t0^j, inf)(a)
  double exact = 0.0;
  double witness_value = 0.0;
  for (const auto& iv : intervals) {
    ranks.push_back(iv.size());
    exact += eigen_sum(prep.eig, iv.lo - 1, iv.hi);
    chain.push_back(eigenvector_projection(prep.eig, 0, iv.hi));
    rs.push_back(eigenvector_projection(prep.eig, iv.lo - 1, n));
    witness_value += trace_with(prep.a, eigenvector_projection(prep.eig, iv.lo - 1, iv.hi));
  }
  r.exact_value = exact;
  r.witness = "chain p_j = span(lambda_1..hi_j), q~_j = span(lambda_lo_j..hi_j)";
  r.witness_value = witness_value;
  if (std::abs(witness_value - exact) > kWitnessTolerance) {
    fail(r, "witness value " + describe(witness_value, "!=", exact));
  }

  // Random orthogonal families below the witness chain never exceed the sum.
  std::uint64_t trial = 0;
  double inner_best = witness_value;
  for (std::size_t t = 0; t < inner_trials; ++t, ++trial) {
    Rng rng = trial_rng(seed, trial);
    lattice::Family family;
    double value = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      const Projection room =
          family.empty() ? chain[m] : lattice::difference(chain[m], lattice::orthogonal_sum(family));
      family.push_back(lattice::random_subprojection(room, ranks[m], rng));
      value += trace_with(prep.a, family.back());
    }
    inner_best = std::max(inner_best, value);
  }
  r.best_sample = inner_best;
  const double inner_margin = exact - inner_best;
  if (inner_margin < -kSampleTolerance) {
    fail(r, "orthogonal family below the witness chain exceeds the sum: " +
                describe(inner_best, ">", exact));
  }

  // Every admissible chain carries a matched family with sum tau(a q~_j) >= exact.
  double outer_worst = kInf;
  std::size_t certificates = 0;
  for (std::size_t t = 0; t < outer_trials; ++t, ++trial) {
    Rng rng = trial_rng(seed, trial);
    const ComplexMatrix frame = random_orthonormal(n, n, rng);
    lattice::Family ps;
    std::size_t floor = 0;
    for (std::size_t m = 0; m < k; ++m) {
      std::uniform_int_distribution<std::size_t> dist(std::max(floor, intervals[m].hi), n);
      const std::size_t rank = dist(rng);
      floor = rank;
      ps.push_back(Projection::from_basis(frame.leftCols(static_cast<Eigen::Index>(rank))));
    }
    try {
      const auto matched = lattice::matched_families(ps, rs, ranks);
      double value = 0.0;
      for (const auto& q : matched.below_p) value += trace_with(prep.a, q);
      outer_worst = std::min(outer_worst, value);
      ++certificates;
    } catch (const CertificateError& e) {
      fail(r, "outer trial " + std::to_string(t) + ": " + e.what());
    }
  }
  r.details["certificates"] = certificates;
  r.details["worst_certificate_value"] = outer_worst;
  const double outer_margin = outer_trials == 0 ? kInf : outer_worst - exact;
  if (outer_margin < -kSampleTolerance) {
    fail(r, "matched family below the exact value: " + describe(outer_worst, "<", exact));
  }
  r.margin = std::min(inner_margin, outer_margin);
  r.settle();
  return r;
}

}  // namespace spectral_minmax::verify
