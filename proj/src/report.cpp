#include "spectral_minmax/report.hpp"

#include <cstdio>
#include <sstream>

namespace spectral_minmax {

const char* to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::Pass:
      return "pass";
    case ReportStatus::Fail:
      return "fail";
    case ReportStatus::HypothesisNotMet:
      return "hypothesis-not-met";
  }
  return "fail";
}

void VerificationReport::settle() {
  if (status == ReportStatus::HypothesisNotMet) return;
  status = failures.empty() ? ReportStatus::Pass : ReportStatus::Fail;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem;
  j["n"] = n;
  j["parameters"] = parameters;
  j["exact_value"] = exact_value;
  j["witness"] = {{"description", witness}, {"value", witness_value}};
  j["sampled"] = {{"best", best_sample}, {"trials", trials}, {"seed", seed}};
  j["margin"] = margin;
  j["tolerances"] = tolerances;
  j["details"] = details;
  j["failures"] = failures;
  j["status"] = to_string(status);
  j["pass"] = status != ReportStatus::Fail;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string VerificationReport::csv_header() {
  return "theorem,n,parameters,exact,best_sample,margin,pass,seed,trials";
}

std::string VerificationReport::csv_line() const {
  std::string params = parameters.dump();
  // Quote for CSV: the JSON text contains commas and quotes.
  std::string quoted = "\"";
  for (char c : params) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  std::ostringstream os;
  os << theorem << ',' << n << ',' << quoted << ',' << format_double(exact_value) << ','
     << format_double(best_sample) << ',' << format_double(margin) << ','
     << to_string(status) << ',' << seed << ',' << trials;
  return os.str();
}

}  // namespace spectral_minmax
