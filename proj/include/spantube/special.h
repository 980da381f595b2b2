#pragma once

// Linear-time optimum for three functions and p = 2.
//
// At every event (vertex or pairwise crossing) the dynamic program keeps the
// narrowest tube width reaching it while covering the upper pair
// [upper, median] and the lower pair [median, lower]. Inside a slab the tube
// either stays on its pair or switches pairs at one of the slab's two events,
// whichever has the smaller total spread upper - lower. Widths are full
// widths; the reported optimum is halved.

#include <vector>

#include "spantube/optimizer.h"
#include "spantube/polyline.h"

namespace spantube {

struct SlabState {
  double event_x = 0.0;
  double eps1 = 0.0;  // best width covering [median, upper] at event_x
  double eps2 = 0.0;  // best width covering [lower, median] at event_x
  double w1 = 0.0;    // upper - median
  double w2 = 0.0;    // median - lower
  double w = 0.0;     // upper - lower
};

struct ThreeTwoTrace {
  TubeSolution solution;
  std::vector<SlabState> states;
};

/// Throws std::invalid_argument unless fs holds exactly three functions.
ThreeTwoTrace solve_3_2(const FunctionSet& fs);

inline TubeSolution optimize_3_2(const FunctionSet& fs) { return solve_3_2(fs).solution; }

}  // namespace spantube
