#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spectral_minmax {

enum class ReportStatus { Pass, Fail, HypothesisNotMet };

const char* to_string(ReportStatus status);

// Outcome of one verification run.
//
// `margin` is the signed slack of the tightest check: non-negative when every
// sampled candidate respects the claimed inequality, negative by the size of
// the worst violation otherwise. `best_sample` is the extreme sampled value
// on the side the theorem bounds.
struct VerificationReport {
  std::string theorem;
  std::size_t n = 0;
  nlohmann::json parameters = nlohmann::json::object();
  double exact_value = 0.0;
  std::string witness;
  double witness_value = 0.0;
  double best_sample = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> failures;
  ReportStatus status = ReportStatus::Fail;

  bool pass() const { return status == ReportStatus::Pass; }
  // Pass unless a failure was recorded.
  void settle();

  nlohmann::json to_json() const;
  // theorem,n,parameters,exact,best_sample,margin,pass,seed,trials
  std::string csv_line() const;
  static std::string csv_header();
};

// Doubles with 17 significant digits.
std::string format_double(double v);

}  // namespace spectral_minmax
