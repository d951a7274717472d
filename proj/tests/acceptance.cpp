// Acceptance battery: one PASS/FAIL line per criterion.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spectral_minmax/errors.hpp"
#include "spectral_minmax/majorization.hpp"
#include "spectral_minmax/minmax_verifier.hpp"
#include "spectral_minmax/projection_lattice.hpp"
#include "spectral_minmax/random.hpp"
#include "spectral_minmax/suite.hpp"

using namespace spectral_minmax;

namespace {

constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::string first_failure;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failed;
      pass = false;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Reference eigenvalues from Eigen's solver, ascending.
std::vector<double> ref_eigenvalues(const Hermitian& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

double ref_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += v[i];
  return s / static_cast<double>(v.size());
}

Hermitian ensemble_matrix(std::size_t m) { return random_hermitian(2 + m % 7, kSeed + 1000 + m); }

// Test-side projection checks on raw matrices.
double idempotent_defect(const ComplexMatrix& p) {
  return std::max((p * p - p).cwiseAbs().maxCoeff(), (p - p.adjoint()).cwiseAbs().maxCoeff());
}
std::size_t trace_rank(const ComplexMatrix& p) { return static_cast<std::size_t>(std::lround(p.trace().real())); }
double below_defect(const ComplexMatrix& q, const ComplexMatrix& r) {
  return ((ComplexMatrix::Identity(q.rows(), q.cols()) - r) * q).norm();
}

// --- criteria ----------------------------------------------------------------

Outcome criterion_kyfan() {
  Outcome o;
  std::size_t violations = 0;
  std::size_t predicted = 0;
  std::size_t coincide = 0;
  std::size_t cases = 0;
  std::size_t equality_pass = 0;
  for (std::size_t m = 0; m < 50; ++m) {
    const Hermitian a = ensemble_matrix(m);
    const auto lambda = ref_eigenvalues(a);
    const std::size_t n = a.dim();
    for (std::size_t j = 1; j <= n; ++j) {
      const double exact = ref_sum(lambda, 0, j);
      const auto r = verify::verify_kyfan(a, j, 10000, kSeed + 16 * m + j);
      const std::string where = "matrix " + std::to_string(m) + ", j = " + std::to_string(j);
      o.check(std::abs(r.exact_value - exact) <= 1e-10, where + ": exact value differs from the reference");
      o.check(std::abs(r.witness_value - exact) <= 1e-10, where + ": witness misses exact value");
      o.check(r.best_sample >= exact - 1e-9,
              where + ": a projection of rank >= j reaches " + fmt(r.best_sample) + " < " + fmt(exact));

      // Independent reading of the same question: the true minimum over
      // rank >= j adds every negative eigenvalue beyond j.
      double true_min = exact;
      for (std::size_t i = j; i < n; ++i) true_min += std::min(lambda[i], 0.0) / static_cast<double>(n);
      const bool beaten = r.best_sample < exact - 1e-9;
      const bool expected = j < n && lambda[j] < 0.0;
      violations += beaten;
      predicted += expected;
      coincide += beaten == expected;
      ++cases;
      o.check(r.best_sample >= true_min - 1e-9, where + ": sample below the true rank >= j minimum");
      // diagnostic only: the rank = j reading
      const auto eq = verify::verify_kyfan(a, j, 1000, kSeed + 16 * m + j, verify::RankConstraint::Exactly);
      equality_pass += eq.pass();
    }
  }
  o.notes.push_back(std::to_string(violations) + " cases beaten; " + std::to_string(predicted) +
                    " have lambda_{j+1} < 0; the two sets agree in " + std::to_string(coincide) + " of " +
                    std::to_string(cases) + " cases. The rank >= j identity only holds when lambda_{j+1} >= 0.");
  o.notes.push_back("rank = j variant (1000 samples per case) holds in " + std::to_string(equality_pass) + " of " +
                    std::to_string(cases) + " cases");
  return o;
}

Outcome criterion_bv() {
  Outcome o;
  for (std::size_t m = 0; m < 50; ++m) {
    const Hermitian a = ensemble_matrix(m);
    const auto lambda = ref_eigenvalues(a);
    const double lo = lambda.front() - 0.3;
    const double hi = lambda.back() + 0.3;
    for (std::size_t k = 0; k < 20; ++k) {
      const double t = lo + (hi - lo) * (k + 0.37) / 20.0;
      const auto count = static_cast<std::size_t>(std::count_if(lambda.begin(), lambda.end(), [&](double x) { return x >= t; }));
      const double value = static_cast<double>(count) / static_cast<double>(lambda.size());
      const auto bv = bv_max_trace(a, t);
      const std::string where = "matrix " + std::to_string(m) + ", t = " + fmt(t);
      o.check(std::abs(bv.value - value) <= 1e-12, where + ": 1 - F(t) differs");
      o.check(bv.witness.rank() == count, where + ": witness rank");
      // p a p >= t p on the witness
      if (count > 0) {
        const ComplexMatrix& b = bv.witness.basis();
        const ComplexMatrix c = b.adjoint() * a.matrix() * b;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
        o.check(es.eigenvalues().minCoeff() >= t - 1e-9, where + ": witness violates p a p >= t p");
      }
      const auto r = verify::verify_bv_max_trace(a, t, 1000, kSeed + 100 * m + k);
      o.check(r.pass(), where + ": " + (r.failures.empty() ? "report failed" : r.failures.front()));
    }
  }
  return o;
}

Outcome criterion_cf() {
  Outcome o;
  for (std::size_t n = 3; n <= 8; ++n) {
    const Hermitian a = random_hermitian(n, kSeed + 300 + n);
    const auto lambda = ref_eigenvalues(a);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; i + j - 1 <= n; ++j) {
        const auto r = verify::verify_courant_fischer(a, i, j, 200, 50, kSeed + 1000 * n + 10 * i + j);
        const double exact = ref_sum(lambda, i - 1, i + j - 1);
        const std::string where = "n = " + std::to_string(n) + ", i = " + std::to_string(i) + ", j = " + std::to_string(j);
        o.check(std::abs(r.exact_value - exact) <= 1e-10, where + ": exact value");
        o.check(std::abs(r.witness_value - exact) <= 1e-8, where + ": witness");
        o.check(r.details["certificates"] == 200, where + ": not every outer trial was certified");
        o.check(r.details["worst_certificate_value"].get<double>() <= exact + 1e-9, where + ": certificate above exact");
        o.check(r.pass(), where + ": " + (r.failures.empty() ? "report failed" : r.failures.front()));
      }
    }
  }
  return o;
}

Outcome criterion_wielandt() {
  Outcome o;
  std::size_t oracle_runs = 0;
  for (std::size_t n : {4u, 6u, 8u}) {
    const Hermitian a = random_hermitian(n, kSeed + 400 + n);
    const auto lambda = ref_eigenvalues(a);
    std::vector<std::vector<verify::IndexInterval>> configs;
    for (std::size_t lo1 = 1; lo1 <= n; ++lo1)
      for (std::size_t hi1 = lo1; hi1 <= n; ++hi1)
        for (std::size_t lo2 = hi1 + 1; lo2 <= n; ++lo2)
          for (std::size_t hi2 = lo2; hi2 <= n; ++hi2) configs.push_back({{lo1, hi1}, {lo2, hi2}});
    configs.push_back({{1, 1}, {2, 2}, {n - 1, n}});

    for (std::size_t c = 0; c < configs.size(); ++c) {
      const auto& iv = configs[c];
      std::vector<std::size_t> hi, sizes;
      double exact = 0.0;
      for (const auto& x : iv) {
        hi.push_back(x.hi);
        sizes.push_back(x.size());
        exact += ref_sum(lambda, x.lo - 1, x.hi);
      }
      std::ostringstream where;
      where << "n = " << n << ", intervals";
      for (const auto& x : iv) where << ' ' << x.lo << ':' << x.hi;
      const auto r = verify::verify_wielandt(a, iv, 100, 100, kSeed + 100000 * n + c);
      o.check(std::abs(r.exact_value - exact) <= 1e-10, where.str() + ": exact value");
      if (n <= 6) {
        const double brute = oracle::wielandt_coordinate_oracle(lambda, hi, sizes);
        o.check(std::abs(brute - exact) <= 1e-10, where.str() + ": brute-force oracle " + fmt(brute));
        ++oracle_runs;
      }
      o.check(r.pass(), where.str() + ": " + (r.failures.empty() ? "report failed" : r.failures.front()));
    }
  }
  o.notes.push_back(std::to_string(oracle_runs) + " configurations checked against the brute-force oracle");
  return o;
}

// Nested chain from leading columns of one random frame.
lattice::Family frame_chain(std::size_t n, const std::vector<std::size_t>& ranks, Rng& rng) {
  const ComplexMatrix frame = random_orthonormal(n, n, rng);
  lattice::Family out;
  for (auto k : ranks) out.push_back(Projection::from_basis(frame.leftCols(static_cast<Eigen::Index>(k))));
  return out;
}

void check_family_raw(Outcome& o, const lattice::Family& q, const lattice::Family& bound,
                      const std::vector<std::size_t>& targets, const std::string& where) {
  bool ok = q.size() == targets.size();
  for (std::size_t j = 0; ok && j < q.size(); ++j) {
    const ComplexMatrix m = q[j].matrix();
    ok = idempotent_defect(m) < 1e-9 && trace_rank(m) == targets[j] &&
         below_defect(m, bound[j].matrix()) < 1e-9;
    for (std::size_t i = 0; ok && i < j; ++i) ok = (q[i].matrix() * m).norm() < 1e-9;
  }
  o.check(ok, where + ": postconditions");
}

Outcome criterion_projections() {
  Outcome o;
  Rng rng(kSeed + 500);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::uniform_int_distribution<std::size_t> k(0, n);
    const auto r = lattice::random_projection(n, k(rng), rng);
    const auto e = lattice::random_projection(n, k(rng), rng);
    const auto m = lattice::meet(r, e.complement());
    const long lhs = static_cast<long>(trace_rank(m.matrix()));
    const long rhs = static_cast<long>(trace_rank(r.matrix())) - static_cast<long>(trace_rank(e.matrix()));
    o.check(lhs >= rhs, "rank inequality, trial " + std::to_string(trial));
  }

  std::uniform_int_distribution<std::size_t> one_two(1, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const bool feasible = trial < 100;
    const std::size_t n = 8;
    const std::size_t k = 3;
    std::vector<std::size_t> targets(k);
    for (auto& t : targets) t = one_two(rng);
    std::vector<std::size_t> suffix(k + 1, 0);
    for (std::size_t j = k; j-- > 0;) suffix[j] = suffix[j + 1] + targets[j];
    std::vector<std::size_t> ranks(k);
    for (std::size_t j = k; j-- > 0;) {
      const std::size_t floor = std::max(suffix[j], j + 1 < k ? ranks[j + 1] : 0);
      ranks[j] = feasible ? std::uniform_int_distribution<std::size_t>(floor, n)(rng) : floor;
    }
    if (!feasible) ranks[0] = suffix[0] - 1;
    const auto r = frame_chain(n, ranks, rng);
    // q'_2 below r_2, then q'_1 below r_1 and orthogonal to q'_2
    const auto q2 = lattice::random_subprojection(r[1], targets[1], rng);
    const auto q1 = lattice::random_subprojection(lattice::meet(r[0], q2.complement()), targets[0], rng);
    const lattice::Family q_prime{q1, q2};
    const std::string where = "orthogonal family instance " + std::to_string(trial);
    try {
      const auto q = lattice::complete_orthogonal_family(r, q_prime, targets);
      o.check(feasible, where + ": infeasible instance produced output");
      if (feasible) {
        check_family_raw(o, q, r, targets, where);
        const ComplexMatrix sum_q = q[0].matrix() + q[1].matrix() + q[2].matrix();
        o.check(below_defect(q1.matrix() + q2.matrix(), sum_q) < 1e-9, where + ": sum q' not below sum q");
      }
    } catch (const CertificateError&) {
      o.check(!feasible, where + ": feasible instance rejected");
    }
  }

  for (int trial = 0; trial < 200; ++trial) {
    const bool feasible = trial < 100;
    const std::size_t n = 8;
    const std::size_t k = 2 + trial % 2;
    // disjoint index intervals from 2k sorted distinct cut points
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::size_t> cuts(pool.begin(), pool.begin() + 2 * k);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::size_t> targets(k), p_ranks(k), r_ranks(k);
    for (std::size_t j = 0; j < k; ++j) {
      targets[j] = cuts[2 * j + 1] - cuts[2 * j] + 1;
      p_ranks[j] = cuts[2 * j + 1];
      r_ranks[j] = n - cuts[2 * j] + 1;
    }
    if (!feasible) --p_ranks[k - 1];
    const auto p = frame_chain(n, p_ranks, rng);
    const auto r = frame_chain(n, r_ranks, rng);
    const std::string where = "matched instance " + std::to_string(trial);
    try {
      const auto fam = lattice::matched_families(p, r, targets);
      o.check(feasible, where + ": infeasible instance produced output");
      if (feasible) {
        check_family_raw(o, fam.below_r, r, targets, where + " (q)");
        check_family_raw(o, fam.below_p, p, targets, where + " (q~)");
        ComplexMatrix gap = ComplexMatrix::Zero(8, 8);
        for (std::size_t j = 0; j < k; ++j) gap += fam.below_r[j].matrix() - fam.below_p[j].matrix();
        o.check(gap.norm() < 1e-8, where + ": sums differ");
      }
    } catch (const CertificateError&) {
      o.check(!feasible, where + ": feasible instance rejected");
    }
  }
  return o;
}

std::pair<Hermitian, Hermitian> random_pair(std::uint64_t seed) {
  Rng rng(seed);
  Hermitian a = random_hermitian(8, rng);
  Hermitian b = random_hermitian(8, rng);
  return {std::move(a), std::move(b)};
}

Outcome criterion_lidskii() {
  Outcome o;
  for (std::size_t m = 0; m < 200; ++m) {
    const auto [a, b] = random_pair(kSeed + 600 + m);
    const auto r = majorization::lidskii_check(a, b);
    const auto s = oracle::scaled_partial_sums(ref_eigenvalues(a + b));
    const auto x = oracle::scaled_partial_sums(ref_eigenvalues(a));
    const auto y = oracle::scaled_partial_sums(ref_eigenvalues(b));
    bool partial = true;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) partial = partial && s[j] >= x[j] + y[j] - 1e-10;
    const std::string where = "pair " + std::to_string(m);
    o.check(partial, where + ": sorted partial-sum oracle");
    o.check(std::abs(s.back() - x.back() - y.back()) <= 1e-10, where + ": totals");
    o.check(r.pass(), where + ": " + (r.failures.empty() ? "report failed" : r.failures.front()));
    o.check(std::abs(r.details["total_gap"].get<double>()) <= 1e-10, where + ": report total gap");
  }
  return o;
}

Outcome criterion_domination() {
  Outcome o;
  for (std::size_t m = 0; m < 220; ++m) {
    Rng rng(kSeed + 700 + m);
    const Hermitian a = random_hermitian(8, rng);
    const std::string where = "pair " + std::to_string(m);
    if (m < 200) {
      const ComplexMatrix c = gaussian_matrix(8, 1, rng);
      const Hermitian b = Hermitian::symmetrized(a.matrix() + c * c.adjoint());
      const auto ea = ref_eigenvalues(a);
      const auto eb = ref_eigenvalues(b);
      bool dominated = true;
      for (std::size_t j = 0; j < 8; ++j) dominated = dominated && ea[j] <= eb[j] + 1e-9;
      o.check(dominated, where + ": reference eigenvalues not dominated");
      const auto r = majorization::domination_check(a, b);
      o.check(r.pass(), where + ": " + (r.failures.empty() ? "report failed" : r.failures.front()));
    } else {
      const Hermitian h = random_hermitian(8, rng);
      const auto eh = ref_eigenvalues(h);
      o.check(eh.front() < 0.0 && eh.back() > 0.0, where + ": shift not indefinite");
      const auto r = majorization::domination_check(a, a + h);
      o.check(r.status == ReportStatus::HypothesisNotMet, where + ": indefinite pair not gated");
    }
  }
  return o;
}

// Invariants checked with the test's own grids.
void check_measure(Outcome& o, const measures::CompactMeasure& mu, Rng& rng, const std::string& where) {
  const auto f = measures::cdf_of(mu);
  const auto q = measures::quantile_of(f);
  std::vector<double> atoms;
  for (const auto& a : mu.atoms()) atoms.push_back(a.location);
  std::vector<double> grid;
  std::uniform_real_distribution<double> t_dist(mu.alpha() - 0.5, mu.beta() + 0.5);
  for (int i = 0; i < 1000; ++i) grid.push_back(t_dist(rng));
  for (const auto& s : mu.segments()) {
    grid.push_back(s.lo);
    grid.push_back(s.hi);
    grid.push_back(0.5 * (s.lo + s.hi));
  }
  grid.erase(std::remove_if(grid.begin(), grid.end(),
                            [&](double t) { return std::find(atoms.begin(), atoms.end(), t) != atoms.end(); }),
             grid.end());
  std::sort(grid.begin(), grid.end());
  const auto back = measures::cdf_from_quantile(q, grid);
  bool round_trip = true;
  bool monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    round_trip = round_trip && std::abs(back[i] - f(grid[i])) <= 1e-10;
    if (i > 0) monotone = monotone && f(grid[i - 1]) <= f(grid[i]);
  }
  o.check(round_trip, where + ": round trip");
  std::vector<double> ss;
  std::uniform_real_distribution<double> s_dist(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) ss.push_back(s_dist(rng));
  for (const auto& b : q.breakpoints()) {
    if (b.s < 1.0) ss.push_back(b.s);
  }
  std::sort(ss.begin(), ss.end());
  for (std::size_t i = 1; i < ss.size(); ++i) monotone = monotone && q(ss[i - 1]) <= q(ss[i]);
  o.check(monotone, where + ": monotone coupling");
  bool range = true;
  for (const auto& b : q.breakpoints()) range = range && b.x >= mu.alpha() && b.x <= mu.beta();
  o.check(range, where + ": quantile range");
  // mean straight from the atoms and segments
  double mean = 0.0;
  for (const auto& a : mu.atoms()) mean += a.location * a.weight;
  for (const auto& s : mu.segments()) {
    const double w = s.hi - s.lo;
    mean += w * (s.density_lo * (2 * s.lo + s.hi) + s.density_hi * (s.lo + 2 * s.hi)) / 6.0;
  }
  o.check(std::abs(measures::partial_quantile_integral(q, 0.0, 1.0) - mean) <= 1e-10, where + ": total integral");
}

Outcome criterion_quantiles() {
  Outcome o;
  Rng rng(kSeed + 800);
  const auto semicircle = measures::CompactMeasure::semicircle(2.0, 4096);
  check_measure(o, measures::CompactMeasure::uniform(0.0, 1.0), rng, "uniform");
  check_measure(o, semicircle, rng, "semicircle");

  std::vector<Hermitian> spectra;
  for (std::size_t m = 0; m < 50; ++m) spectra.push_back(ensemble_matrix(m));
  for (std::size_t n = 3; n <= 8; ++n) spectra.push_back(random_hermitian(n, kSeed + 300 + n));
  for (std::size_t n : {4u, 6u, 8u}) spectra.push_back(random_hermitian(n, kSeed + 400 + n));
  for (std::size_t m = 0; m < 200; ++m) {
    auto [a, b] = random_pair(kSeed + 600 + m);
    spectra.push_back(a + b);
    spectra.push_back(a);
    spectra.push_back(b);
  }
  for (std::size_t m = 0; m < 220; ++m) {
    Rng r(kSeed + 700 + m);
    const Hermitian a = random_hermitian(8, r);
    spectra.push_back(a);
    if (m < 200) {
      const ComplexMatrix c = gaussian_matrix(8, 1, r);
      spectra.push_back(Hermitian::symmetrized(a.matrix() + c * c.adjoint()));
    } else {
      spectra.push_back(a + random_hermitian(8, r));
    }
  }
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    check_measure(o, spectral_distribution(spectra[i]), rng, "spectrum " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) check_measure(o, suite::random_mixed_measure(rng), rng, "mixed measure " + std::to_string(i));

  const double reference = oracle::semicircle_quantile_integral(0.5);
  o.check(std::abs(reference + 4.0 / (3.0 * std::numbers::pi)) < 1e-8, "quadrature oracle vs closed form");
  auto error = [&](std::size_t n) {
    return std::abs(measures::quantile_of(measures::cdf_of(measures::discretize(semicircle, n))).integral_to(0.5) - reference);
  };
  const double e4096 = error(4096);
  o.check(e4096 <= 1e-4, "semicircle integral at n = 4096 off by " + fmt(e4096));
  std::ostringstream errs;
  errs << "n = 4096 error " << fmt(e4096) << "; errors";
  for (std::size_t n : {64u, 128u, 256u}) {
    const double e1 = error(n);
    const double e2 = error(2 * n);
    errs << ' ' << n << ':' << fmt(e1);
    o.check(e2 <= 0.5 * e1, "error does not halve from n = " + std::to_string(n));
  }
  errs << " 512:" << fmt(error(512));
  o.notes.push_back(std::to_string(spectra.size()) + " atomic spectra; " + errs.str());
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  const auto first = suite::report_json(42, suite::run_all(42)).dump();
  const auto second = suite::report_json(42, suite::run_all(42)).dump();
  o.check(first == second, "suite reports differ between runs");
  o.notes.push_back("report size " + std::to_string(first.size()) + " bytes");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Ky Fan minimum over rank >= j", 60, criterion_kyfan},
      {2, "max trace under p a p >= t p", 30, criterion_bv},
      {3, "Courant-Fischer-Weyl certificates", 120, criterion_cf},
      {4, "Wielandt certificates and brute-force oracle", 120, criterion_wielandt},
      {5, "projection lattice constructions", 0, criterion_projections},
      {6, "Lidskii majorization", 0, criterion_lidskii},
      {7, "domination and its gate", 0, criterion_domination},
      {8, "quantile construction and change of variable", 0, criterion_quantiles},
      {9, "suite determinism", 0, criterion_determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit > 0) o.check(secs < c.time_limit, "runtime " + fmt(secs) + " s over " + fmt(c.time_limit) + " s");
    all = all && o.pass;
    std::printf("criterion %d: %s  %s  (%zu checks, %zu failed, %.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.checks, o.failed, secs);
    if (!o.pass) std::printf("    first failure: %s\n", o.first_failure.c_str());
    for (const auto& n : o.notes) std::printf("    note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
