#pragma once

// Exact minimal spanning tube via a finite candidate set of half-widths and
// binary search with the decision procedure; plus the reverse problem of the
// largest coverable count at fixed width.

#include <optional>
#include <string>
#include <vector>

#include "spantube/polyline.h"

namespace spantube {

enum class CandidateKind {
  /// Half the vertical distance from a vertex or crossing to another function.
  EventDistance,
  /// Half the common value of two pairwise gaps |f_a - f_b| = |f_c - f_d| at
  /// one x: the width at which two band crossings trade places along x.
  GapSwap,
};

/// One candidate half-width with the geometry that produced it.
struct CandidateValue {
  double epsilon = 0.0;
  CandidateKind kind = CandidateKind::EventDistance;
  /// EventDistance: the event. GapSwap: x and the lower function of the
  /// first pair in i, its upper function in j.
  EventPoint source;
  /// EventDistance: the function measured to. GapSwap: lower function of the
  /// second pair.
  int nearest_function = 0;
  /// EventDistance: 1-based rank of nearest_function by distance among the
  /// functions not passing through the event point. GapSwap: upper function
  /// of the second pair.
  int rank = 1;
};

struct TubeSolution {
  double epsilon_star = 0.0;
  PolyFunc witness;
  int p = 1;
  /// Set when the candidate search had to fall back to doubling; signals a
  /// numerical problem rather than a valid answer.
  std::optional<std::string> diagnostic;
};

/// Half-distances from every vertex and crossing to every other function,
/// plus every gap swap. Requires n > 2 and 1 < p < n; throws std::invalid_argument otherwise.
/// Sorted ascending, deduplicated within the tolerance.
std::vector<CandidateValue> candidates(const FunctionSet& fs, int p);

/// Smallest feasible half-width for 1 <= p <= n with a witness. p == n and
/// p == 1 use closed forms.
TubeSolution optimize(const FunctionSet& fs, int p);

/// Closed form for p == n: half the largest envelope gap, witness on the
/// envelope midline.
TubeSolution optimize_all(const FunctionSet& fs);

struct CoverageResult {
  int p_star = 1;
  PolyFunc witness;
};

/// Largest p whose decision at epsilon is feasible (binary search on p).
CoverageResult max_coverage(const FunctionSet& fs, double epsilon);

}  // namespace spantube
