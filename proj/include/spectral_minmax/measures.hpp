#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spectral_minmax::measures {

// Tolerance on total mass and on monotonicity of constructed functions.
inline constexpr double kMassTolerance = 1e-12;

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

// Density that is linear on [lo, hi], with the given endpoint values.
struct DensitySegment {
  double lo = 0.0;
  double hi = 0.0;
  double density_lo = 0.0;
  double density_hi = 0.0;

  double mass() const { return 0.5 * (density_lo + density_hi) * (hi - lo); }
  // Integral of t * density(t) over the segment.
  double first_moment() const;
  // Mass of the part of the segment below lo + u, for u in [0, hi - lo].
  double mass_below(double u) const;
};

// Compactly supported probability measure: finitely many atoms plus
// piecewise-linear density segments.
//
// The constructor validates: atom weights in (0, 1], segments non-empty,
// sorted and pairwise disjoint with non-negative densities, total mass 1
// within kMassTolerance. Violations throw ValidationError naming the index
// of the first offending atom or segment. Atom locations may repeat.
class CompactMeasure {
 public:
  CompactMeasure(std::vector<Atom> atoms, std::vector<DensitySegment> segments);
  // Same, but with explicit support bounds that must contain every atom and
  // segment.
  CompactMeasure(std::vector<Atom> atoms, std::vector<DensitySegment> segments,
                 double alpha, double beta);

  static CompactMeasure point_mass(double location);
  static CompactMeasure uniform(double lo, double hi);
  // Semicircle law of the given radius (default: the standard one on [-2, 2]),
  // approximated by a continuous piecewise-linear density on `panels` equal
  // panels and renormalized to unit mass.
  static CompactMeasure semicircle(double radius = 2.0, std::size_t panels = 4096);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensitySegment>& segments() const { return segments_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double total_mass() const;
  // First moment computed directly from atoms and segments.
  double mean() const;

 private:
  void validate() const;

  std::vector<Atom> atoms_;
  std::vector<DensitySegment> segments_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

// One maximal piece of a distribution: a point mass, or a linear-density ramp
// on [t_lo, t_hi]. Pieces are stored in increasing position with the mass
// accumulated before them.
struct CdfPiece {
  enum class Kind { Point, Ramp };
  Kind kind = Kind::Point;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double density_lo = 0.0;
  double density_hi = 0.0;
  double mass = 0.0;
  double mass_before = 0.0;

  // Mass of this piece strictly below t.
  double mass_below(double t) const;
};

struct CdfBreakpoint {
  double t = 0.0;
  double left = 0.0;   // F(t) = mu((-inf, t))
  double right = 0.0;  // F(t+) = mu((-inf, t])
};

// Left-continuous distribution function t -> mu((-inf, t)).
class Cdf {
 public:
  // Pieces must be ordered and non-overlapping; mass_before is recomputed.
  // Total mass is not checked here (quantile_of does).
  explicit Cdf(std::vector<CdfPiece> pieces);

  double operator()(double t) const;
  const std::vector<CdfBreakpoint>& breakpoints() const { return breakpoints_; }
  const std::vector<CdfPiece>& pieces() const { return pieces_; }
  double alpha() const;
  double beta() const;
  double total_mass() const;

 private:
  std::vector<CdfPiece> pieces_;
  std::vector<CdfBreakpoint> breakpoints_;
};

// One piece of a quantile function on [s_lo, s_hi): a plateau at x_lo
// (point mass) or the exact inverse of a linear-density ramp, rising from
// x_lo to x_hi.
struct QuantilePiece {
  enum class Kind { Plateau, Ramp };
  Kind kind = Kind::Plateau;
  double s_lo = 0.0;
  double s_hi = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double density_lo = 0.0;
  double density_hi = 0.0;
  double integral_before = 0.0;  // integral of X over [0, s_lo)

  double value_at(double s) const;
  // Integral of X over [s_lo, s), s in [s_lo, s_hi].
  double integral_to(double s) const;
  // Lebesgue measure of {s in piece : X(s) < t}.
  double measure_below(double t) const;
};

struct QuantileBreakpoint {
  double s = 0.0;
  double x = 0.0;
};

// Right-continuous non-decreasing function on [0, 1), the generalized inverse
// X(s) = inf{t : F(t) > s} of a distribution function.
class Quantile {
 public:
  explicit Quantile(std::vector<QuantilePiece> pieces);

  // Throws ArgumentError outside [0, 1).
  double operator()(double s) const;
  // Integral of X over [0, s), s in [0, 1].
  double integral_to(double s) const;
  // Piece starts (s, X(s)).
  std::vector<QuantileBreakpoint> breakpoints() const;
  // Piece start abscissae, including the final endpoint 1.
  std::vector<double> knots() const;
  const std::vector<QuantilePiece>& pieces() const { return pieces_; }
  double alpha() const { return pieces_.front().x_lo; }
  double beta() const { return pieces_.back().kind == QuantilePiece::Kind::Plateau
                                   ? pieces_.back().x_lo
                                   : pieces_.back().x_hi; }

 private:
  std::size_t piece_index(double s) const;

  std::vector<QuantilePiece> pieces_;
};

// Sum X_1 + ... + X_m of quantile functions, evaluated pointwise. Its knots
// are the union of the summands' knots.
class QuantileSum {
 public:
  explicit QuantileSum(std::vector<Quantile> terms);

  double operator()(double s) const;
  double integral_to(double s) const;
  std::vector<double> knots() const;

 private:
  std::vector<Quantile> terms_;
};

Cdf cdf_of(const CompactMeasure& measure);

// Throws ValidationError when the cdf does not reach 1.
Quantile quantile_of(const Cdf& cdf);

// m({s : X(s) < t}) for each t, computed from the piece structure.
std::vector<double> cdf_from_quantile(const Quantile& q, std::span<const double> t_grid);

// Exact integral of X over [s0, s1), 0 <= s0 <= s1 <= 1.
double partial_quantile_integral(const Quantile& q, double s0, double s1);

// n atoms of weight 1/n at X((j + 1/2) / n), j = 0..n-1.
CompactMeasure discretize(const CompactMeasure& measure, std::size_t n);

}  // namespace spectral_minmax::measures
