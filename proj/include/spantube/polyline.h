#pragma once

// Piecewise-linear functions over a shared domain and the geometric queries
// every tube algorithm builds on.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spantube {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Domain {
  double a = 0.0;
  double b = 1.0;
};

/// An x-monotone polyline: breakpoints with strictly increasing x, at least
/// two of them, all finite. Immutable once constructed.
class PolyFunc {
 public:
  /// Throws std::invalid_argument naming the offending breakpoint index.
  explicit PolyFunc(std::vector<Point> points, std::string id = {});

  std::span<const Point> points() const { return points_; }
  const std::string& id() const { return id_; }
  std::size_t links() const { return points_.size() - 1; }
  double front_x() const { return points_.front().x; }
  double back_x() const { return points_.back().x; }

  /// Linear interpolation. Throws std::domain_error when x lies outside
  /// [front_x, back_x] by more than the tolerance.
  double evaluate(double x) const;

  /// Index s of the segment [points[s], points[s+1]] containing x (clamped).
  std::size_t segment_index(double x) const;

  /// Largest absolute segment slope.
  double max_abs_slope() const;

 private:
  std::vector<Point> points_;
  std::string id_;
};

inline double evaluate(const PolyFunc& f, double x) { return f.evaluate(x); }

/// n >= 1 polylines sharing the domain [a, b].
class FunctionSet {
 public:
  /// Throws std::invalid_argument when a function does not start at a and
  /// end at b, or when the set is empty.
  FunctionSet(std::vector<PolyFunc> functions, Domain domain);

  /// Domain taken from the first function.
  explicit FunctionSet(std::vector<PolyFunc> functions);

  std::size_t size() const { return functions_.size(); }
  const PolyFunc& operator[](std::size_t i) const { return functions_[i]; }
  std::span<const PolyFunc> functions() const { return functions_; }
  Domain domain() const { return domain_; }
  /// Maximum link count over all functions.
  std::size_t max_links() const;

 private:
  std::vector<PolyFunc> functions_;
  Domain domain_;
};

struct Envelopes {
  PolyFunc upper;
  PolyFunc lower;
  /// Pointwise median; for even n the lower of the two middle values.
  PolyFunc median;
};

Envelopes envelopes(const FunctionSet& fs);

enum class EventKind { Vertex, Crossing };

/// A vertex of function i (j == -1), or a crossing of functions i < j.
struct EventPoint {
  double x = 0.0;
  double y = 0.0;
  EventKind kind = EventKind::Vertex;
  int i = 0;
  int j = -1;
};

/// All breakpoints plus all pairwise intersection points, sorted by x, then
/// vertices before crossings, then by function indices. Collinear overlaps
/// contribute their two endpoints only.
std::vector<EventPoint> enumerate_events(const FunctionSet& fs);

/// Restricts every function to [lo, hi]. Throws std::invalid_argument when the
/// interval is empty, inverted or leaves the domain.
FunctionSet clip(const FunctionSet& fs, double lo, double hi);

/// Sorted union of the breakpoint abscissae of f and g, deduplicated within
/// the tolerance.
std::vector<double> merged_breakpoints(const PolyFunc& f, const PolyFunc& g);

/// Abscissae where f - g crosses `level`, strictly inside a merged segment
/// (sign change), plus merged breakpoints where |f - g - level| <= tau that
/// start or end a zero run. Sorted ascending.
std::vector<double> difference_roots(const PolyFunc& f, const PolyFunc& g, double level);

/// Sorted, deduplicated (within tau) union of all breakpoint abscissae and
/// all pairwise crossing abscissae.
std::vector<double> arrangement_abscissae(const FunctionSet& fs);

}  // namespace spantube
