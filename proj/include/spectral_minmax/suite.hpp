#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "spectral_minmax/matrix_spectra.hpp"
#include "spectral_minmax/measures.hpp"
#include "spectral_minmax/random.hpp"

namespace spectral_minmax::suite {

// Workers used for fan-out: SPECTRAL_MINMAX_THREADS if set and positive,
// otherwise the hardware concurrency.
std::size_t worker_count();

// Evaluates f(0..count-1) on up to `workers` threads. Results are stored by
// index, so the output does not depend on scheduling. The first exception (by
// index) is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t count, F&& f, std::size_t workers = worker_count())
    -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Seed for item `index` of criterion `criterion` in a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t criterion, std::uint64_t index);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::size_t checks = 0;
  std::size_t failed = 0;
  double worst_margin = 0.0;
  std::vector<std::string> failures;  // first few messages
  nlohmann::json detail = nlohmann::json::object();
  double seconds = 0.0;  // wall time; not part of the JSON report

  nlohmann::json to_json() const;
};

inline constexpr int kCriterionCount = 8;

// Runs criterion 1..8 of the battery.
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);

// Deterministic report document (no timings).
nlohmann::json report_json(std::uint64_t seed, const std::vector<CriterionResult>& results);
// Human-readable pass/fail table, including timings.
std::string format_table(const std::vector<CriterionResult>& results);

// Ensembles shared between criteria.
std::vector<Hermitian> kyfan_ensemble(std::uint64_t seed);  // 50 matrices, n = 2..8

// Measure invariants: round trip against the CDF at non-atom points,
// monotonicity of F and X, quantile range inside [alpha, beta], and
// total integral equal to the mean. Returns one message per violation.
std::vector<std::string> measure_invariant_failures(const measures::CompactMeasure& mu, Rng& rng);

// Random measure with up to three atoms and three disjoint linear-density
// segments, normalized to mass one.
measures::CompactMeasure random_mixed_measure(Rng& rng);

}  // namespace spectral_minmax::suite
