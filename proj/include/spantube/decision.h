#pragma once

// Feasibility of a spanning tube of fixed half-width: is there a continuous
// template whose vertical segment of length 2*epsilon meets at least p
// functions at every abscissa?

#include <optional>
#include <vector>

#include "spantube/polyline.h"

namespace spantube {

/// One of the 2n boundary curves f_i(x) + sign * epsilon.
struct BoundaryRef {
  int function = 0;
  int sign = -1;  // -1 lower boundary, +1 upper boundary

  double value(const FunctionSet& fs, double epsilon, double x) const {
    return fs[static_cast<std::size_t>(function)].evaluate(x) + sign * epsilon;
  }
};

/// A maximal vertical run of depth >= p inside one slab, bounded by two
/// boundary curves that keep their order across the slab.
struct Cell {
  int slab = 0;
  BoundaryRef lower;
  BoundaryRef upper;
  bool reachable = false;
  /// Index of a reachable cell in the previous slab that connects to this one,
  /// directly or through a deep run of the event line between them.
  int parent = -1;
};

/// Slab decomposition of [a, b] for one (epsilon, p) pair with per-cell
/// reachability from the left end of the domain.
struct Reachability {
  double epsilon = 0.0;
  int p = 1;
  /// Slab k spans [events[k], events[k+1]].
  std::vector<double> events;
  /// cells[k] lists the cells of slab k, bottom to top.
  std::vector<std::vector<Cell>> cells;

  /// True when some cell of the last slab is reachable.
  bool feasible() const;
};

struct DecisionOutcome {
  bool feasible = false;
  std::optional<PolyFunc> witness;
};

/// Throws std::invalid_argument for epsilon < 0 or p outside [1, n].
Reachability build_reachability(const FunctionSet& fs, double epsilon, int p);

/// Backtracks a chain of reachable cells and joins midpoints of the interval
/// overlaps at every event. Where consecutive cells only meet through the
/// event line, the witness climbs it in a step of width at most 1e-12.
/// Throws std::logic_error when nothing is reachable.
PolyFunc extract_witness(const Reachability& reach, const FunctionSet& fs);

DecisionOutcome decide(const FunctionSet& fs, double epsilon, int p);

/// Number of functions within epsilon + tau of y at x.
int coverage_at(const FunctionSet& fs, double x, double y, double epsilon);

}  // namespace spantube
