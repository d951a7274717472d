#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <vector>

#include "spectral_minmax/matrix_spectra.hpp"
#include "spectral_minmax/measures.hpp"
#include "spectral_minmax/report.hpp"

namespace spectral_minmax::majorization {

inline constexpr double kMajorizationTolerance = 1e-10;
inline constexpr double kDominationTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-10;

// Anything with knots, pointwise values and running integrals on [0, 1).
template <class Q>
concept QuantileLike = requires(const Q& q, double s) {
  { q(s) } -> std::convertible_to<double>;
  { q.integral_to(s) } -> std::convertible_to<double>;
  { q.knots() } -> std::convertible_to<std::vector<double>>;
};

struct MajorizationResult {
  bool holds = false;
  // min over s of (integral_0^s x - integral_0^s y); >= -tol when x ≺ y.
  double min_gap = 0.0;
  double worst_s = 0.0;
  // integral_0^1 x - integral_0^1 y.
  double total_gap = 0.0;
};

namespace detail {

// Candidate points for the minimum of D(s) = int_0^s (x - y): the union of
// knots, plus sign changes of x - y from negative to positive inside each
// knot interval, located on a 16-point subgrid and refined by bisection.
template <QuantileLike X, QuantileLike Y>
std::vector<double> critical_points(const X& x, const Y& y) {
  std::vector<double> knots = x.knots();
  const auto yk = y.knots();
  knots.insert(knots.end(), yk.begin(), yk.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  constexpr int kSub = 16;
  std::vector<double> out = knots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    if (!(hi > lo)) continue;
    auto diff = [&](double s) { return x(s) - y(s); };
    double prev_s = lo;
    double prev_d = diff(lo);
    for (int k = 1; k <= kSub; ++k) {
      // Stay strictly inside [lo, hi) where both functions are continuous.
      const double s = k == kSub ? std::nextafter(hi, lo) : lo + (hi - lo) * k / kSub;
      const double d = diff(s);
      if (d == 0.0) {
        out.push_back(s);  // sample landed on the root
      } else if (prev_d < 0.0 && d > 0.0) {
        double a = prev_s;
        double b = s;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          (diff(m) < 0.0 ? a : b) = m;
        }
        out.push_back(0.5 * (a + b));
      }
      prev_s = s;
      prev_d = d;
    }
  }
  return out;
}

}  // namespace detail

// x ≺ y: integral_0^s x >= integral_0^s y for all s in [0, 1), with equal
// totals, both within kMajorizationTolerance. For non-decreasing quantiles
// this says x is more averaged than y.
template <QuantileLike X, QuantileLike Y>
MajorizationResult majorizes(const X& x, const Y& y) {
  MajorizationResult res;
  res.min_gap = std::numeric_limits<double>::infinity();
  for (double s : detail::critical_points(x, y)) {
    const double gap = x.integral_to(s) - y.integral_to(s);
    if (gap < res.min_gap) {
      res.min_gap = gap;
      res.worst_s = s;
    }
  }
  res.total_gap = x.integral_to(1.0) - y.integral_to(1.0);
  res.holds = res.min_gap >= -kMajorizationTolerance &&
              std::abs(res.total_gap) <= kMajorizationTolerance;
  return res;
}

// Quantile of the spectral distribution of a.
measures::Quantile spectral_quantile(const Hermitian& a);

// X_{a+b} ≺ X_a + X_b.
VerificationReport lidskii_check(const Hermitian& a, const Hermitian& b);

// a <= b  =>  lambda_j(a) <= lambda_j(b) for all j. When b - a is not
// positive semidefinite the report has status HypothesisNotMet.
VerificationReport domination_check(const Hermitian& a, const Hermitian& b);

}  // namespace spectral_minmax::majorization
