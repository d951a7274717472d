#include "spectral_minmax/majorization.hpp"

#include <sstream>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax::majorization {

measures::Quantile spectral_quantile(const Hermitian& a) {
  return measures::quantile_of(measures::cdf_of(spectral_distribution(a)));
}

VerificationReport lidskii_check(const Hermitian& a, const Hermitian& b) {
  if (a.dim() != b.dim()) throw ArgumentError("Lidskii check needs matrices of equal dimension");
  const Hermitian sum = a + b;
  const auto x_sum = spectral_quantile(sum);
  const measures::QuantileSum x_parts({spectral_quantile(a), spectral_quantile(b)});
  const auto res = majorizes(x_sum, x_parts);

  VerificationReport r;
  r.theorem = "lidskii";
  r.n = a.dim();
  r.tolerances = {{"majorization", kMajorizationTolerance}};
  r.exact_value = x_sum.integral_to(1.0);
  r.witness = "partial integrals of X_{a+b} against X_a + X_b";
  r.witness_value = x_parts.integral_to(1.0);
  r.best_sample = res.min_gap;
  r.margin = std::min(res.min_gap, kMajorizationTolerance - std::abs(res.total_gap));
  r.details = {{"worst_s", res.worst_s},
               {"total_gap", res.total_gap},
               {"trace_sum", normalized_trace(a.matrix()).real() +
                                 normalized_trace(b.matrix()).real()}};
  if (res.min_gap < -kMajorizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "partial integral of X_{a+b} falls below X_a + X_b by " << -res.min_gap
       << " at s = " << res.worst_s;
    r.failures.push_back(os.str());
  }
  if (std::abs(res.total_gap) > kMajorizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "total integrals differ by " << res.total_gap;
    r.failures.push_back(os.str());
  }
  r.settle();
  return r;
}

VerificationReport domination_check(const Hermitian& a, const Hermitian& b) {
  if (a.dim() != b.dim()) throw ArgumentError("domination check needs matrices of equal dimension");
  VerificationReport r;
  r.theorem = "domination";
  r.n = a.dim();
  r.tolerances = {{"psd", kPsdTolerance}, {"domination", kDominationTolerance}};
  r.witness = "sorted eigenvalues lambda_j(a) <= lambda_j(b)";

  const double gap_floor = eigh(b - a).values.front();
  r.details["min_eigenvalue_b_minus_a"] = gap_floor;
  if (gap_floor < -kPsdTolerance) {
    r.status = ReportStatus::HypothesisNotMet;
    r.margin = gap_floor;
    return r;
  }
  const auto ea = eigh(a).values;
  const auto eb = eigh(b).values;
  double margin = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t j = 0; j < ea.size(); ++j) {
    const double m = eb[j] - ea[j];
    if (m < margin) {
      margin = m;
      worst = j;
    }
  }
  r.margin = margin;
  r.best_sample = margin;
  r.exact_value = 0.0;
  r.details["eigenvalues_a"] = ea;
  r.details["eigenvalues_b"] = eb;
  r.details["worst_index"] = worst + 1;
  if (margin < -kDominationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda_" << worst + 1 << "(a) exceeds lambda_" << worst + 1 << "(b) by " << -margin;
    r.failures.push_back(os.str());
  }
  r.settle();
  return r;
}

}  // namespace spectral_minmax::majorization
