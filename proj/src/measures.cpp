#include "spectral_minmax/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax::measures {

namespace {

// Mass of a linear-density ramp below lo + u.
double ramp_mass(double density_lo, double density_hi, double length, double u) {
  const double slope = (density_hi - density_lo) / length;
  return u * (density_lo + 0.5 * slope * u);
}

// Inverse of ramp_mass: the offset u in [0, length] carrying mass m.
double ramp_offset(double density_lo, double density_hi, double length, double m) {
  if (m <= 0.0) return 0.0;
  const double slope = (density_hi - density_lo) / length;
  const double disc = std::max(0.0, density_lo * density_lo + 2.0 * slope * m);
  const double denom = density_lo + std::sqrt(disc);
  if (denom <= 0.0) return 0.0;
  return std::clamp(2.0 * m / denom, 0.0, length);
}

std::string describe_atom(std::size_t i) {
  return "atom[" + std::to_string(i) + "]";
}

std::string describe_segment(std::size_t i) {
  return "segment[" + std::to_string(i) + "]";
}

}  // namespace

double DensitySegment::first_moment() const {
  const double length = hi - lo;
  const double slope = (density_hi - density_lo) / length;
  // integral over u in [0, L] of (lo + u)(d_lo + slope u)
  return lo * mass() + density_lo * length * length / 2.0 +
         slope * length * length * length / 3.0;
}

double DensitySegment::mass_below(double u) const {
  return ramp_mass(density_lo, density_hi, hi - lo, std::clamp(u, 0.0, hi - lo));
}

CompactMeasure::CompactMeasure(std::vector<Atom> atoms, std::vector<DensitySegment> segments)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
  if (atoms_.empty() && segments_.empty()) {
    throw ValidationError("measure has neither atoms nor density segments");
  }
  alpha_ = std::numeric_limits<double>::infinity();
  beta_ = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) {
    alpha_ = std::min(alpha_, a.location);
    beta_ = std::max(beta_, a.location);
  }
  for (const auto& s : segments_) {
    alpha_ = std::min(alpha_, s.lo);
    beta_ = std::max(beta_, s.hi);
  }
  validate();
}

CompactMeasure::CompactMeasure(std::vector<Atom> atoms, std::vector<DensitySegment> segments,
                               double alpha, double beta)
    : atoms_(std::move(atoms)), segments_(std::move(segments)), alpha_(alpha), beta_(beta) {
  if (atoms_.empty() && segments_.empty()) {
    throw ValidationError("measure has neither atoms nor density segments");
  }
  if (!(alpha_ <= beta_)) {
    throw ValidationError("support bounds are not ordered: alpha > beta");
  }
  validate();
}

void CompactMeasure::validate() const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!std::isfinite(a.location)) {
      throw ValidationError(describe_atom(i) + ": location is not finite");
    }
    if (!(a.weight > 0.0 && a.weight <= 1.0)) {
      std::ostringstream os;
      os << describe_atom(i) << ": weight " << a.weight << " outside (0, 1]";
      throw ValidationError(os.str());
    }
    if (a.location < alpha_ || a.location > beta_) {
      throw ValidationError(describe_atom(i) + ": location outside support bounds");
    }
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi)) {
      throw ValidationError(describe_segment(i) + ": interval is empty or not finite");
    }
    if (!(s.density_lo >= 0.0) || !(s.density_hi >= 0.0) || !std::isfinite(s.density_lo) ||
        !std::isfinite(s.density_hi)) {
      throw ValidationError(describe_segment(i) + ": negative or non-finite density");
    }
    if (i > 0 && s.lo < segments_[i - 1].hi) {
      throw ValidationError(describe_segment(i) + ": overlaps or precedes " +
                            describe_segment(i - 1));
    }
    if (s.lo < alpha_ || s.hi > beta_) {
      throw ValidationError(describe_segment(i) + ": interval outside support bounds");
    }
  }
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass " << mass << " differs from 1 by " << mass - 1.0;
    throw ValidationError(os.str());
  }
}

CompactMeasure CompactMeasure::point_mass(double location) {
  return CompactMeasure({{location, 1.0}}, {});
}

CompactMeasure CompactMeasure::uniform(double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("uniform measure needs lo < hi");
  const double d = 1.0 / (hi - lo);
  return CompactMeasure({}, {{lo, hi, d, d}});
}

CompactMeasure CompactMeasure::semicircle(double radius, std::size_t panels) {
  if (!(radius > 0.0)) throw ArgumentError("semicircle radius must be positive");
  if (panels < 2) throw ArgumentError("semicircle needs at least two panels");
  std::vector<double> nodes(panels + 1);
  std::vector<double> density(panels + 1);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i <= panels; ++i) {
    nodes[i] = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(panels);
    density[i] = 2.0 / (std::numbers::pi * r2) * std::sqrt(std::max(0.0, r2 - nodes[i] * nodes[i]));
  }
  nodes.front() = -radius;
  nodes.back() = radius;
  double mass = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    mass += 0.5 * (density[i] + density[i + 1]) * (nodes[i + 1] - nodes[i]);
  }
  std::vector<DensitySegment> segments;
  segments.reserve(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    segments.push_back({nodes[i], nodes[i + 1], density[i] / mass, density[i + 1] / mass});
  }
  return CompactMeasure({}, std::move(segments));
}

double CompactMeasure::total_mass() const {
  double mass = 0.0;
  for (const auto& a : atoms_) mass += a.weight;
  for (const auto& s : segments_) mass += s.mass();
  return mass;
}

double CompactMeasure::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight * a.location;
  for (const auto& s : segments_) m += s.first_moment();
  return m;
}

double CdfPiece::mass_below(double t) const {
  if (kind == Kind::Point) return t > t_lo ? mass : 0.0;
  if (t <= t_lo) return 0.0;
  if (t >= t_hi) return mass;
  return std::min(mass, ramp_mass(density_lo, density_hi, t_hi - t_lo, t - t_lo));
}

Cdf::Cdf(std::vector<CdfPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("distribution function has no pieces");
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    if (i > 0) {
      const auto& prev = pieces_[i - 1];
      const bool ordered = prev.t_hi <= p.t_lo &&
                           !(prev.kind == CdfPiece::Kind::Point &&
                             p.kind == CdfPiece::Kind::Point && prev.t_lo == p.t_lo);
      if (!ordered) {
        throw ValidationError("distribution piece " + std::to_string(i) +
                              " overlaps or precedes its predecessor");
      }
    }
    if (!(p.mass >= 0.0)) {
      throw ValidationError("distribution piece " + std::to_string(i) + " has negative mass");
    }
    p.mass_before = acc;
    acc += p.mass;
  }

  std::vector<double> ts;
  for (const auto& p : pieces_) {
    ts.push_back(p.t_lo);
    if (p.kind == CdfPiece::Kind::Ramp) ts.push_back(p.t_hi);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::pair<double, double>> jumps;
  for (const auto& p : pieces_) {
    if (p.kind == CdfPiece::Kind::Point) jumps.emplace_back(p.t_lo, p.mass);
  }
  breakpoints_.reserve(ts.size());
  for (double t : ts) {
    const auto it = std::lower_bound(jumps.begin(), jumps.end(), std::pair{t, -1.0});
    const double jump = (it != jumps.end() && it->first == t) ? it->second : 0.0;
    const double left = (*this)(t);
    breakpoints_.push_back({t, left, left + jump});
  }
}

double Cdf::operator()(double t) const {
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const CdfPiece& p, double v) { return p.t_lo < v; });
  if (it == pieces_.begin()) return 0.0;
  const auto& p = *std::prev(it);
  return p.mass_before + p.mass_below(t);
}

double Cdf::alpha() const { return pieces_.front().t_lo; }

double Cdf::beta() const { return pieces_.back().t_hi; }

double Cdf::total_mass() const { return pieces_.back().mass_before + pieces_.back().mass; }

double QuantilePiece::value_at(double s) const {
  if (kind == Kind::Plateau) return x_lo;
  const double m = std::clamp(s - s_lo, 0.0, s_hi - s_lo);
  return x_lo + ramp_offset(density_lo, density_hi, x_hi - x_lo, m);
}

double QuantilePiece::integral_to(double s) const {
  const double m = std::clamp(s - s_lo, 0.0, s_hi - s_lo);
  if (kind == Kind::Plateau) return x_lo * m;
  const double length = x_hi - x_lo;
  const double u = ramp_offset(density_lo, density_hi, length, m);
  const double slope = (density_hi - density_lo) / length;
  // integral of (x_lo + v)(d_lo + slope v) over v in [0, u]
  return x_lo * m + density_lo * u * u / 2.0 + slope * u * u * u / 3.0;
}

double QuantilePiece::measure_below(double t) const {
  const double width = s_hi - s_lo;
  if (kind == Kind::Plateau) return x_lo < t ? width : 0.0;
  if (t <= x_lo) return 0.0;
  if (t >= x_hi) return width;
  return std::min(width, ramp_mass(density_lo, density_hi, x_hi - x_lo, t - x_lo));
}

Quantile::Quantile(std::vector<QuantilePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("quantile function has no pieces");
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    if (!(p.s_lo <= p.s_hi) || (i > 0 && p.s_lo < pieces_[i - 1].s_hi)) {
      throw ValidationError("quantile piece " + std::to_string(i) + " is not ordered");
    }
    if (i > 0) {
      const auto& prev = pieces_[i - 1];
      const double prev_top = prev.kind == QuantilePiece::Kind::Plateau ? prev.x_lo : prev.x_hi;
      if (p.x_lo < prev_top) {
        throw ValidationError("quantile piece " + std::to_string(i) + " decreases");
      }
    }
    p.integral_before = acc;
    acc += p.integral_to(p.s_hi);
  }
}

std::size_t Quantile::piece_index(double s) const {
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                                   [](double v, const QuantilePiece& p) { return v < p.s_lo; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

double Quantile::operator()(double s) const {
  if (!(s >= 0.0 && s < 1.0)) {
    throw ArgumentError("quantile argument must lie in [0, 1)");
  }
  return pieces_[piece_index(s)].value_at(s);
}

double Quantile::integral_to(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ArgumentError("integration limit must lie in [0, 1]");
  }
  const auto& p = pieces_[piece_index(s)];
  return p.integral_before + p.integral_to(s);
}

std::vector<QuantileBreakpoint> Quantile::breakpoints() const {
  std::vector<QuantileBreakpoint> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back({p.s_lo, p.value_at(p.s_lo)});
  return out;
}

std::vector<double> Quantile::knots() const {
  std::vector<double> out;
  out.reserve(pieces_.size() + 1);
  for (const auto& p : pieces_) out.push_back(p.s_lo);
  out.push_back(1.0);
  return out;
}

QuantileSum::QuantileSum(std::vector<Quantile> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ArgumentError("quantile sum needs at least one term");
}

double QuantileSum::operator()(double s) const {
  double v = 0.0;
  for (const auto& q : terms_) v += q(s);
  return v;
}

double QuantileSum::integral_to(double s) const {
  double v = 0.0;
  for (const auto& q : terms_) v += q.integral_to(s);
  return v;
}

std::vector<double> QuantileSum::knots() const {
  std::vector<double> out;
  for (const auto& q : terms_) {
    const auto k = q.knots();
    out.insert(out.end(), k.begin(), k.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cdf cdf_of(const CompactMeasure& measure) {
  std::vector<Atom> atoms = measure.atoms();
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().location == a.location) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }

  // Split segments at interior atoms so that every piece is either entirely
  // before or entirely after each atom.
  std::vector<CdfPiece> ramps;
  for (const auto& seg : measure.segments()) {
    const double length = seg.hi - seg.lo;
    auto density_at = [&](double t) {
      return seg.density_lo + (seg.density_hi - seg.density_lo) * (t - seg.lo) / length;
    };
    double lo = seg.lo;
    for (const auto& a : merged) {
      if (a.location > lo && a.location < seg.hi) {
        CdfPiece p;
        p.kind = CdfPiece::Kind::Ramp;
        p.t_lo = lo;
        p.t_hi = a.location;
        p.density_lo = density_at(lo);
        p.density_hi = density_at(a.location);
        p.mass = 0.5 * (p.density_lo + p.density_hi) * (p.t_hi - p.t_lo);
        ramps.push_back(p);
        lo = a.location;
      }
    }
    CdfPiece p;
    p.kind = CdfPiece::Kind::Ramp;
    p.t_lo = lo;
    p.t_hi = seg.hi;
    p.density_lo = density_at(lo);
    p.density_hi = seg.density_hi;
    p.mass = 0.5 * (p.density_lo + p.density_hi) * (p.t_hi - p.t_lo);
    ramps.push_back(p);
  }

  std::vector<CdfPiece> pieces;
  pieces.reserve(ramps.size() + merged.size());
  std::size_t ri = 0;
  for (const auto& a : merged) {
    // A ramp goes before the atom iff it ends at or below it.
    while (ri < ramps.size() && ramps[ri].t_hi <= a.location) pieces.push_back(ramps[ri++]);
    CdfPiece p;
    p.kind = CdfPiece::Kind::Point;
    p.t_lo = p.t_hi = a.location;
    p.mass = a.weight;
    pieces.push_back(p);
  }
  while (ri < ramps.size()) pieces.push_back(ramps[ri++]);
  return Cdf(std::move(pieces));
}

Quantile quantile_of(const Cdf& cdf) {
  const double total = cdf.total_mass();
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "distribution function reaches " << total << " instead of 1";
    throw ValidationError(os.str());
  }
  std::vector<QuantilePiece> pieces;
  pieces.reserve(cdf.pieces().size());
  for (const auto& c : cdf.pieces()) {
    if (c.mass <= 0.0) continue;
    QuantilePiece q;
    q.s_lo = c.mass_before;
    q.s_hi = c.mass_before + c.mass;
    q.x_lo = c.t_lo;
    if (c.kind == CdfPiece::Kind::Point) {
      q.kind = QuantilePiece::Kind::Plateau;
      q.x_hi = c.t_lo;
    } else {
      q.kind = QuantilePiece::Kind::Ramp;
      q.x_hi = c.t_hi;
      q.density_lo = c.density_lo;
      q.density_hi = c.density_hi;
    }
    pieces.push_back(q);
  }
  return Quantile(std::move(pieces));
}

std::vector<double> cdf_from_quantile(const Quantile& q, std::span<const double> t_grid) {
  const auto& pieces = q.pieces();
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    // {s : X(s) < t} is an initial segment [0, s*); every piece before the
    // first one starting at or above t lies entirely inside it except the
    // last, which may be cut.
    const auto it = std::lower_bound(pieces.begin(), pieces.end(), t,
                                     [](const QuantilePiece& p, double v) { return p.x_lo < v; });
    if (it == pieces.begin()) {
      out.push_back(0.0);
      continue;
    }
    const auto& p = *std::prev(it);
    out.push_back(p.s_lo + p.measure_below(t));
  }
  return out;
}

double partial_quantile_integral(const Quantile& q, double s0, double s1) {
  if (!(s0 >= 0.0) || !(s1 <= 1.0)) {
    throw ArgumentError("integration limits must lie in [0, 1]");
  }
  if (s0 > s1) throw ArgumentError("integration limits reversed: s0 > s1");
  return q.integral_to(s1) - q.integral_to(s0);
}

CompactMeasure discretize(const CompactMeasure& measure, std::size_t n) {
  if (n == 0) throw ArgumentError("discretization needs n >= 1");
  const Quantile q = quantile_of(cdf_of(measure));
  std::vector<Atom> atoms;
  atoms.reserve(n);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    atoms.push_back({q((static_cast<double>(j) + 0.5) * w), w});
  }
  return CompactMeasure(std::move(atoms), {});
}

}  // namespace spectral_minmax::measures
