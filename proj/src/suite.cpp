#include "spectral_minmax/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "spectral_minmax/errors.hpp"
#include "spectral_minmax/majorization.hpp"
#include "spectral_minmax/minmax_verifier.hpp"
#include "spectral_minmax/projection_lattice.hpp"

namespace spectral_minmax::suite {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kKeptMessages = 5;
constexpr double kIdentityTolerance = 1e-10;

// Running count of checks with the first few failure messages.
struct Tally {
  std::size_t checks = 0;
  std::size_t failed = 0;
  double worst_margin = kInf;
  std::vector<std::string> messages;

  void check(bool ok, const std::string& what, double margin = kInf) {
    ++checks;
    worst_margin = std::min(worst_margin, margin);
    if (!ok) {
      ++failed;
      if (messages.size() < kKeptMessages) messages.push_back(what);
    }
  }

  void add(const VerificationReport& r, const std::string& label) {
    std::string what = label;
    if (!r.failures.empty()) what += ": " + r.failures.front();
    check(r.pass(), what, r.margin);
  }

  void merge(const Tally& other) {
    checks += other.checks;
    failed += other.failed;
    worst_margin = std::min(worst_margin, other.worst_margin);
    for (const auto& m : other.messages) {
      if (messages.size() < kKeptMessages) messages.push_back(m);
    }
  }
};

Tally merged(const std::vector<Tally>& parts) {
  Tally t;
  for (const auto& p : parts) t.merge(p);
  return t;
}

CriterionResult finish(int id, std::string name, const Tally& t) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.checks = t.checks;
  r.failed = t.failed;
  r.worst_margin = t.worst_margin;
  r.failures = t.messages;
  r.pass = t.failed == 0 && t.checks > 0;
  return r;
}

std::string label(const char* what, std::size_t a, std::size_t b = 0, std::size_t c = 0) {
  std::ostringstream os;
  os << what << '[' << a << ',' << b << ',' << c << ']';
  return os.str();
}

// --- 1. Ky Fan ---------------------------------------------------------------

CriterionResult kyfan_criterion(std::uint64_t seed) {
  const auto ensemble = kyfan_ensemble(seed);
  auto parts = parallel_map(ensemble.size(), [&](std::size_t m) {
    Tally t;
    const auto& a = ensemble[m];
    for (std::size_t j = 1; j <= a.dim(); ++j) {
      t.add(verify::verify_kyfan(a, j, 10000, derive_seed(seed, 1, m * 16 + j)),
            label("matrix,j", m, j));
    }
    return t;
  });
  auto r = finish(1, "Ky Fan partial sums", merged(parts));
  r.detail = {{"matrices", ensemble.size()}, {"random_projections_per_case", 10000}};
  return r;
}

// --- 2. Bercovici-Voiculescu ---------------------------------------------------

CriterionResult bv_criterion(std::uint64_t seed) {
  const auto ensemble = kyfan_ensemble(seed);
  constexpr std::size_t kThresholds = 20;
  auto parts = parallel_map(ensemble.size(), [&](std::size_t m) {
    Tally t;
    const auto& a = ensemble[m];
    const auto values = eigh(a).values;
    const double lo = values.front() - 0.25;
    const double hi = values.back() + 0.25;
    for (std::size_t k = 0; k < kThresholds; ++k) {
      const double th = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / kThresholds;
      t.add(verify::verify_bv_max_trace(a, th, 1000, derive_seed(seed, 2, m * kThresholds + k)),
            label("matrix,threshold", m, k));
    }
    return t;
  });
  auto r = finish(2, "max trace under p a p >= t p", merged(parts));
  r.detail = {{"matrices", ensemble.size()}, {"thresholds", kThresholds}, {"larger_projections", 1000}};
  return r;
}

// --- 3. Courant-Fischer ----------------------------------------------------------

CriterionResult courant_fischer_criterion(std::uint64_t seed) {
  struct Case {
    std::size_t n, i, j;
  };
  std::vector<Case> cases;
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; i + j - 1 <= n; ++j) cases.push_back({n, i, j});
    }
  }
  auto parts = parallel_map(cases.size(), [&](std::size_t c) {
    Tally t;
    const auto [n, i, j] = cases[c];
    const Hermitian a = random_hermitian(n, derive_seed(seed, 3, n));
    t.add(verify::verify_courant_fischer(a, i, j, 200, 50, derive_seed(seed, 3, 1000 + c)),
          label("n,i,j", n, i, j));
    return t;
  });
  auto r = finish(3, "Courant-Fischer-Weyl with inner certificates", merged(parts));
  r.detail = {{"cases", cases.size()}, {"outer_trials", 200}, {"inner_trials", 50}};
  return r;
}

// --- 4. Wielandt -----------------------------------------------------------------

std::vector<std::vector<verify::IndexInterval>> wielandt_configurations(std::size_t n) {
  std::vector<std::vector<verify::IndexInterval>> out;
  for (std::size_t lo1 = 1; lo1 <= n; ++lo1) {
    for (std::size_t hi1 = lo1; hi1 <= n; ++hi1) {
      for (std::size_t lo2 = hi1 + 1; lo2 <= n; ++lo2) {
        for (std::size_t hi2 = lo2; hi2 <= n; ++hi2) out.push_back({{lo1, hi1}, {lo2, hi2}});
      }
    }
  }
  // one three-interval configuration
  const std::size_t m = n / 4;
  out.push_back({{1, std::max<std::size_t>(1, m)}, {m + 2, n / 2 + 1}, {n - m + 1, n}});
  return out;
}

CriterionResult wielandt_criterion(std::uint64_t seed) {
  struct Case {
    std::size_t n;
    std::vector<verify::IndexInterval> intervals;
  };
  std::vector<Case> cases;
  for (std::size_t n : {4u, 6u, 8u}) {
    for (auto& cfg : wielandt_configurations(n)) cases.push_back({n, std::move(cfg)});
  }
  auto parts = parallel_map(cases.size(), [&](std::size_t c) {
    Tally t;
    const Hermitian a = random_hermitian(cases[c].n, derive_seed(seed, 4, cases[c].n));
    t.add(verify::verify_wielandt(a, cases[c].intervals, 100, 100, derive_seed(seed, 4, 1000 + c)),
          label("n,case,k", cases[c].n, c, cases[c].intervals.size()));
    return t;
  });
  auto r = finish(4, "Wielandt with matched-family certificates", merged(parts));
  r.detail = {{"configurations", cases.size()}, {"outer_trials", 100}, {"inner_trials", 100}};
  return r;
}

// --- 5. Projection algebra ---------------------------------------------------------

// Nested chain from the leading columns of one random frame; ranks[j] must
// be monotone.
lattice::Family frame_chain(std::size_t n, const std::vector<std::size_t>& ranks, Rng& rng) {
  const ComplexMatrix frame = random_orthonormal(n, n, rng);
  lattice::Family out;
  for (std::size_t k : ranks) {
    out.push_back(Projection::from_basis(frame.leftCols(static_cast<Eigen::Index>(k))));
  }
  return out;
}

struct OrthogonalInstance {
  lattice::Family r;
  lattice::Family q_prime;
  std::vector<std::size_t> targets;
};

// Decreasing chain with the rank hypothesis met, or violated at r_1 by one.
OrthogonalInstance orthogonal_instance(std::size_t n, std::size_t k, bool feasible, Rng& rng) {
  std::uniform_int_distribution<std::size_t> target_dist(1, 2);
  std::vector<std::size_t> targets(k);
  for (auto& t : targets) t = target_dist(rng);
  std::vector<std::size_t> suffix(k + 1, 0);
  for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] + targets[j];
  std::vector<std::size_t> ranks(k);
  for (std::size_t j = k; j-- > 0;) {
    const std::size_t floor = std::max(suffix[j], j + 1 < k ? ranks[j + 1] : 0);
    ranks[j] = feasible ? std::uniform_int_distribution<std::size_t>(floor, n)(rng) : floor;
  }
  if (!feasible) ranks[0] = suffix[0] - 1;
  OrthogonalInstance inst{frame_chain(n, ranks, rng), {}, targets};
  // q'_j below r_j, orthogonal to the ones already drawn, largest index first
  std::vector<Projection> drawn(k > 0 ? k - 1 : 0, Projection::zero(n));
  Projection used = Projection::zero(n);
  for (std::size_t j = k - 1; j-- > 0;) {
    const Projection room = lattice::meet(inst.r[j], used.complement());
    drawn[j] = lattice::random_subprojection(room, targets[j], rng);
    used = lattice::join(used, drawn[j]);
  }
  inst.q_prime = std::move(drawn);
  return inst;
}

struct MatchedInstance {
  lattice::Family p;
  lattice::Family r;
  std::vector<std::size_t> targets;
};

// Ranks from disjoint index intervals: rank(p_j) >= hi_j and
// rank(r_j) >= n - lo_j + 1. The infeasible variant shrinks p_k by one.
MatchedInstance matched_instance(std::size_t n, std::size_t k, bool feasible, Rng& rng) {
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  cuts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(2 * k));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> lo(k), hi(k), targets(k);
  for (std::size_t j = 0; j < k; ++j) {
    lo[j] = cuts[2 * j];
    hi[j] = cuts[2 * j + 1];
    targets[j] = hi[j] - lo[j] + 1;
  }
  std::vector<std::size_t> p_ranks(k), r_ranks(k);
  std::bernoulli_distribution slack(feasible ? 0.3 : 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    p_ranks[j] = hi[j];
    if (slack(rng) && p_ranks[j] < (j + 1 < k ? lo[j + 1] - 1 : n)) ++p_ranks[j];
    r_ranks[j] = n - lo[j] + 1;
    if (slack(rng) && (j == 0 ? r_ranks[j] < n : r_ranks[j] < r_ranks[j - 1])) ++r_ranks[j];
  }
  if (!feasible) --p_ranks[k - 1];
  return {frame_chain(n, p_ranks, rng), frame_chain(n, r_ranks, rng), targets};
}

void check_family(Tally& t, const lattice::Family& q, const lattice::Family& bound,
                  const std::vector<std::size_t>& targets, const std::string& what) {
  bool ok = q.size() == targets.size();
  for (std::size_t j = 0; ok && j < q.size(); ++j) {
    ok = q[j].rank() == targets[j] && lattice::is_below(q[j], bound[j]);
    for (std::size_t i = 0; ok && i < j; ++i) {
      ok = lattice::orthogonality_defect(q[i], q[j]) <= lattice::kConstructionTolerance;
    }
  }
  t.check(ok, what + ": postcondition violated");
}

CriterionResult projection_criterion(std::uint64_t seed) {
  Tally t;
  // Rank inequality for r and the complement of e.
  auto pairs = parallel_map(1000, [&](std::size_t s) {
    Rng rng = trial_rng(derive_seed(seed, 5, 0), s);
    const std::size_t n = 2 + s % 7;
    std::uniform_int_distribution<std::size_t> rank_dist(0, n);
    const Projection r = lattice::random_projection(n, rank_dist(rng), rng);
    const Projection e = lattice::random_projection(n, rank_dist(rng), rng);
    const Projection m = lattice::meet(r, e.complement());
    Tally local;
    local.check(m.rank() + e.rank() >= r.rank(), label("rank inequality n,r,e", n, r.rank(), e.rank()),
                static_cast<double>(m.rank() + e.rank()) - static_cast<double>(r.rank()));
    return local;
  });
  t.merge(merged(pairs));

  auto orthogonal = parallel_map(200, [&](std::size_t s) {
    Rng rng = trial_rng(derive_seed(seed, 5, 1), s);
    const bool feasible = s < 100;
    const std::size_t k = 2 + s % 2;
    auto inst = orthogonal_instance(8, k, feasible, rng);
    Tally local;
    const std::string what = label("orthogonal family instance", s);
    try {
      const auto q = lattice::complete_orthogonal_family(inst.r, inst.q_prime, inst.targets);
      if (!feasible) {
        local.check(false, what + ": infeasible instance returned a family");
        return local;
      }
      check_family(local, q, inst.r, inst.targets, what);
      if (!inst.q_prime.empty()) {
        local.check(lattice::is_below(lattice::orthogonal_sum(inst.q_prime), lattice::orthogonal_sum(q)),
                    what + ": sum q' not below sum q");
      }
    } catch (const CertificateError& e) {
      local.check(!feasible, what + ": " + e.what());
    }
    return local;
  });
  t.merge(merged(orthogonal));

  auto matched = parallel_map(200, [&](std::size_t s) {
    Rng rng = trial_rng(derive_seed(seed, 5, 2), s);
    const bool feasible = s < 100;
    const std::size_t k = 2 + s % 2;
    auto inst = matched_instance(8, k, feasible, rng);
    Tally local;
    const std::string what = label("matched instance", s);
    try {
      const auto fam = lattice::matched_families(inst.p, inst.r, inst.targets);
      if (!feasible) {
        local.check(false, what + ": infeasible instance returned families");
        return local;
      }
      check_family(local, fam.below_r, inst.r, inst.targets, what + " q");
      check_family(local, fam.below_p, inst.p, inst.targets, what + " q~");
      const double gap = (lattice::orthogonal_sum(fam.below_r).matrix() -
                          lattice::orthogonal_sum(fam.below_p).matrix())
                             .norm();
      local.check(gap <= 1e-8, what + ": sums differ");
    } catch (const CertificateError& e) {
      local.check(!feasible, what + ": " + e.what());
    }
    return local;
  });
  t.merge(merged(matched));

  auto r = finish(5, "projection lattice constructions", t);
  r.worst_margin = std::min(r.worst_margin, 0.0);
  r.detail = {{"rank_pairs", 1000},
              {"orthogonal_instances", {{"feasible", 100}, {"infeasible", 100}}},
              {"matched_instances", {{"feasible", 100}, {"infeasible", 100}}}};
  return r;
}

// --- 6. Lidskii ------------------------------------------------------------------------

std::pair<Hermitian, Hermitian> lidskii_pair(std::uint64_t seed, std::size_t m) {
  Rng rng(derive_seed(seed, 6, m));
  Hermitian a = random_hermitian(8, rng);
  Hermitian b = random_hermitian(8, rng);
  return {std::move(a), std::move(b)};
}

CriterionResult lidskii_criterion(std::uint64_t seed) {
  auto parts = parallel_map(200, [&](std::size_t m) {
    Tally t;
    const auto [a, b] = lidskii_pair(seed, m);
    t.add(majorization::lidskii_check(a, b), label("pair", m));
    return t;
  });
  auto r = finish(6, "Lidskii majorization", merged(parts));
  r.detail = {{"pairs", 200}, {"n", 8}};
  return r;
}

// --- 7. Domination -------------------------------------------------------------------------

struct DominationPair {
  Hermitian a;
  Hermitian b;
  bool positive;
};

DominationPair domination_pair(std::uint64_t seed, std::size_t m) {
  Rng rng(derive_seed(seed, 7, m));
  const std::size_t n = 8;
  Hermitian a = random_hermitian(n, rng);
  if (m < 200) {
    const ComplexMatrix c = gaussian_matrix(n, 1, rng) / std::sqrt(static_cast<double>(n));
    return {a, Hermitian::symmetrized(a.matrix() + c * c.adjoint()), true};
  }
  const Hermitian h = random_hermitian(n, rng);
  return {a, a + h, false};
}

CriterionResult domination_criterion(std::uint64_t seed) {
  auto parts = parallel_map(220, [&](std::size_t m) {
    Tally t;
    const auto pair = domination_pair(seed, m);
    const auto report = majorization::domination_check(pair.a, pair.b);
    if (pair.positive) {
      t.add(report, label("positive pair", m));
    } else {
      const auto gap = eigh(pair.b - pair.a).values;
      const bool indefinite = gap.front() < -majorization::kPsdTolerance;
      const auto expected = indefinite ? ReportStatus::HypothesisNotMet : ReportStatus::Pass;
      t.check(report.status == expected, label("indefinite pair gated wrongly", m));
    }
    return t;
  });
  auto r = finish(7, "domination under b - a >= 0", merged(parts));
  r.detail = {{"positive_pairs", 200}, {"indefinite_pairs", 20}, {"n", 8}};
  return r;
}

// --- 8. Quantiles ---------------------------------------------------------------------------

double semicircle_half_integral(const measures::CompactMeasure& semicircle, std::size_t n) {
  return measures::quantile_of(measures::cdf_of(measures::discretize(semicircle, n)))
      .integral_to(0.5);
}

CriterionResult quantile_criterion(std::uint64_t seed) {
  Tally t;
  auto run = [&](const measures::CompactMeasure& mu, const std::string& what, std::uint64_t s) {
    Rng rng(s);
    Tally local;
    const auto failures = measure_invariant_failures(mu, rng);
    local.check(failures.empty(), what + (failures.empty() ? "" : ": " + failures.front()));
    return local;
  };

  const auto semicircle = measures::CompactMeasure::semicircle();
  t.merge(run(measures::CompactMeasure::uniform(0.0, 1.0), "uniform", derive_seed(seed, 8, 0)));
  t.merge(run(semicircle, "semicircle", derive_seed(seed, 8, 1)));

  // Spectra of every matrix drawn by criteria 1-7.
  std::vector<Hermitian> spectra = kyfan_ensemble(seed);
  for (std::size_t n = 3; n <= 8; ++n) spectra.push_back(random_hermitian(n, derive_seed(seed, 3, n)));
  for (std::size_t n : {4u, 6u, 8u}) spectra.push_back(random_hermitian(n, derive_seed(seed, 4, n)));
  for (std::size_t m = 0; m < 200; ++m) {
    auto [a, b] = lidskii_pair(seed, m);
    spectra.push_back(a + b);
    spectra.push_back(std::move(a));
    spectra.push_back(std::move(b));
  }
  for (std::size_t m = 0; m < 220; ++m) {
    auto pair = domination_pair(seed, m);
    spectra.push_back(std::move(pair.a));
    spectra.push_back(std::move(pair.b));
  }
  auto atomic = parallel_map(spectra.size(), [&](std::size_t i) {
    return run(spectral_distribution(spectra[i]), label("spectrum", i), derive_seed(seed, 8, 100 + i));
  });
  t.merge(merged(atomic));

  auto mixed = parallel_map(50, [&](std::size_t i) {
    Rng rng(derive_seed(seed, 8, 10000 + i));
    return run(random_mixed_measure(rng), label("mixed measure", i), derive_seed(seed, 8, 20000 + i));
  });
  t.merge(merged(mixed));

  // Discretized semicircle against the closed form -4 / (3 pi).
  const double exact = -4.0 / (3.0 * std::numbers::pi);
  const double at_4096 = semicircle_half_integral(semicircle, 4096);
  t.check(std::abs(at_4096 - exact) <= 1e-4, "semicircle partial integral at n = 4096",
          1e-4 - std::abs(at_4096 - exact));
  nlohmann::json errors = nlohmann::json::object();
  for (std::size_t n : {64u, 128u, 256u}) {
    const double e1 = std::abs(semicircle_half_integral(semicircle, n) - exact);
    const double e2 = std::abs(semicircle_half_integral(semicircle, 2 * n) - exact);
    errors[std::to_string(n)] = {e1, e2};
    t.check(e2 <= 0.5 * e1, label("discretization error does not halve from n", n), 0.5 * e1 - e2);
  }

  auto r = finish(8, "quantile construction and change of variable", t);
  r.detail = {{"atomic_spectra", spectra.size()},
              {"mixed_measures", 50},
              {"semicircle_error_4096", std::abs(at_4096 - exact)},
              {"discretization_errors", errors}};
  return r;
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("SPECTRAL_MINMAX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t criterion, std::uint64_t index) {
  // splitmix64 finalizer over the packed triple
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + (criterion << 40) + index;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<Hermitian> kyfan_ensemble(std::uint64_t seed) {
  std::vector<Hermitian> out;
  for (std::size_t m = 0; m < 50; ++m) {
    out.push_back(random_hermitian(2 + m % 7, derive_seed(seed, 1, 1'000'000 + m)));
  }
  return out;
}

measures::CompactMeasure random_mixed_measure(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 3);
  const int n_atoms = count(rng);
  int n_segments = count(rng);
  if (n_atoms + n_segments == 0) n_segments = 1;

  std::vector<measures::DensitySegment> segments;
  double cursor = -3.0 + unit(rng);
  for (int i = 0; i < n_segments; ++i) {
    const double width = 0.1 + 1.9 * unit(rng);
    segments.push_back({cursor, cursor + width, 0.05 + unit(rng), unit(rng)});
    cursor += width + (unit(rng) < 0.3 ? 0.0 : unit(rng));
  }
  std::vector<measures::Atom> atoms;
  for (int i = 0; i < n_atoms; ++i) atoms.push_back({-3.0 + (cursor + 4.0) * unit(rng), 0.05 + unit(rng)});

  double mass = 0.0;
  for (const auto& a : atoms) mass += a.weight;
  for (const auto& s : segments) mass += s.mass();
  for (auto& a : atoms) a.weight /= mass;
  for (auto& s : segments) {
    s.density_lo /= mass;
    s.density_hi /= mass;
  }
  return measures::CompactMeasure(std::move(atoms), std::move(segments));
}

std::vector<std::string> measure_invariant_failures(const measures::CompactMeasure& mu, Rng& rng) {
  std::vector<std::string> out;
  auto report = [&](const std::string& what, double got, double want) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": " << got << " vs " << want;
    out.push_back(os.str());
  };

  const auto cdf = measures::cdf_of(mu);
  const auto q = measures::quantile_of(cdf);
  const double alpha = mu.alpha();
  const double beta = mu.beta();

  std::vector<double> atoms;
  for (const auto& b : cdf.breakpoints()) {
    if (b.right > b.left) atoms.push_back(b.t);
  }
  auto is_atom = [&](double t) {
    return std::any_of(atoms.begin(), atoms.end(), [&](double x) { return std::abs(x - t) <= 1e-12; });
  };

  std::vector<double> grid;
  const auto& bps = cdf.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!is_atom(bps[i].t)) grid.push_back(bps[i].t);
    if (i + 1 < bps.size()) grid.push_back(0.5 * (bps[i].t + bps[i + 1].t));
  }
  std::uniform_real_distribution<double> t_dist(alpha - 0.5, beta + 0.5);
  for (int i = 0; i < 1000; ++i) {
    const double t = t_dist(rng);
    if (!is_atom(t)) grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());

  const auto via_quantile = measures::cdf_from_quantile(q, grid);
  double prev_f = -kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = cdf(grid[i]);
    if (std::abs(via_quantile[i] - f) > kIdentityTolerance) {
      report("round trip at t = " + format_double(grid[i]), via_quantile[i], f);
      break;
    }
    if (f < prev_f) {
      report("F decreases at t = " + format_double(grid[i]), f, prev_f);
      break;
    }
    prev_f = f;
  }

  std::vector<double> s_grid;
  for (const auto& b : q.breakpoints()) {
    if (b.s < 1.0) s_grid.push_back(b.s);
  }
  std::uniform_real_distribution<double> s_dist(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) s_grid.push_back(s_dist(rng));
  std::sort(s_grid.begin(), s_grid.end());
  double prev_x = -kInf;
  for (double s : s_grid) {
    const double x = q(s);
    if (x < prev_x) {
      report("X decreases at s = " + format_double(s), x, prev_x);
      break;
    }
    prev_x = x;
  }

  for (const auto& b : q.breakpoints()) {
    if (b.x < alpha || b.x > beta) {
      report("quantile breakpoint outside [alpha, beta] at s = " + format_double(b.s), b.x, alpha);
      break;
    }
  }

  const double total = measures::partial_quantile_integral(q, 0.0, 1.0);
  if (std::abs(total - mu.mean()) > kIdentityTolerance) report("total integral", total, mu.mean());
  return out;
}

nlohmann::json CriterionResult::to_json() const {
  return {{"id", id},       {"name", name},         {"pass", pass},
          {"checks", checks}, {"failed", failed},   {"worst_margin", worst_margin},
          {"failures", failures}, {"detail", detail}};
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = kyfan_criterion(seed); break;
    case 2: r = bv_criterion(seed); break;
    case 3: r = courant_fischer_criterion(seed); break;
    case 4: r = wielandt_criterion(seed); break;
    case 5: r = projection_criterion(seed); break;
    case 6: r = lidskii_criterion(seed); break;
    case 7: r = domination_criterion(seed); break;
    case 8: r = quantile_criterion(seed); break;
    default: throw ArgumentError("criterion " + std::to_string(id) + " outside 1.." +
                                 std::to_string(kCriterionCount));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

nlohmann::json report_json(std::uint64_t seed, const std::vector<CriterionResult>& results) {
  nlohmann::json criteria = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back(r.to_json());
    all = all && r.pass;
  }
  return {{"seed", seed}, {"pass", all}, {"criteria", criteria}};
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "id" << std::setw(48) << "criterion" << std::setw(6) << "result"
     << std::right << std::setw(9) << "checks" << std::setw(8) << "failed" << std::setw(16)
     << "worst margin" << std::setw(10) << "seconds" << '\n';
  for (const auto& r : results) {
    os << std::left << std::setw(4) << r.id << std::setw(48) << r.name << std::setw(6)
       << (r.pass ? "PASS" : "FAIL") << std::right << std::setw(9) << r.checks << std::setw(8)
       << r.failed << std::setw(16) << std::setprecision(6) << r.worst_margin << std::setw(10)
       << std::fixed << std::setprecision(2) << r.seconds << std::defaultfloat << '\n';
    for (const auto& f : r.failures) os << "      " << f << '\n';
  }
  return os.str();
}

}  // namespace spectral_minmax::suite
