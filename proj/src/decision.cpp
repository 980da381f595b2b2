#include "spantube/decision.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spantube/tolerance.h"

namespace spantube {

namespace {

void check_arguments(const FunctionSet& fs, double epsilon, int p) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and >= 0");
  }
  if (p < 1 || static_cast<std::size_t>(p) > fs.size()) {
    throw std::invalid_argument("p must lie in [1, " + std::to_string(fs.size()) + "], got " +
                                std::to_string(p));
  }
}

// Event abscissae: every vertex, plus every crossing among the boundary
// curves f_i +- epsilon. Curves of the same function never cross, so per
// pair (i, j) the crossings are the level sets f_i - f_j in {0, +2e, -2e}.
std::vector<double> event_abscissae(const FunctionSet& fs, double epsilon) {
  const double tau = tolerance();
  std::vector<double> xs;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& pt : f.points()) xs.push_back(pt.x);
  }
  const double levels[3] = {0.0, 2.0 * epsilon, -2.0 * epsilon};
  const int level_count = epsilon > 0.0 ? 3 : 1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      for (int l = 0; l < level_count; ++l) {
        for (double x : difference_roots(fs[i], fs[j], levels[l])) xs.push_back(x);
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (out.empty() || x - out.back() > tau) out.push_back(x);
  }
  out.front() = fs.domain().a;
  if (out.size() == 1) {
    out.push_back(fs.domain().b);
  } else {
    out.back() = fs.domain().b;
  }
  return out;
}

struct Curve {
  double value;
  BoundaryRef ref;
};

// Cells of one slab, found from the vertical order of the boundary curves at
// the slab midpoint. Curves within tau of each other are treated as touching:
// lower boundaries are placed before upper ones inside such a cluster so the
// closed tubes count as overlapping.
std::vector<Cell> slab_cells(const FunctionSet& fs, double epsilon, int p, int slab, double xm,
                             std::vector<Curve>& scratch) {
  const double tau = tolerance();
  const std::size_t n = fs.size();
  scratch.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = fs[i].evaluate(xm);
    scratch.push_back({y - epsilon, {static_cast<int>(i), -1}});
    scratch.push_back({y + epsilon, {static_cast<int>(i), +1}});
  }
  std::sort(scratch.begin(), scratch.end(), [](const Curve& l, const Curve& r) {
    if (l.value != r.value) return l.value < r.value;
    if (l.ref.sign != r.ref.sign) return l.ref.sign < r.ref.sign;
    return l.ref.function < r.ref.function;
  });
  for (std::size_t start = 0; start < scratch.size();) {
    std::size_t end = start + 1;
    while (end < scratch.size() && scratch[end].value - scratch[end - 1].value <= tau) ++end;
    if (end - start > 1) {
      std::stable_sort(scratch.begin() + static_cast<std::ptrdiff_t>(start),
                       scratch.begin() + static_cast<std::ptrdiff_t>(end),
                       [](const Curve& l, const Curve& r) { return l.ref.sign < r.ref.sign; });
    }
    start = end;
  }

  std::vector<Cell> cells;
  int depth = 0;
  int run_start = -1;
  for (std::size_t k = 0; k + 1 < scratch.size(); ++k) {
    depth += scratch[k].ref.sign < 0 ? 1 : -1;
    const bool deep = depth >= p;
    if (deep && run_start < 0) run_start = static_cast<int>(k);
    const bool run_ends = run_start >= 0 && (!deep || k + 2 == scratch.size());
    if (run_ends) {
      const std::size_t top = deep ? k + 1 : k;
      Cell c;
      c.slab = slab;
      c.lower = scratch[static_cast<std::size_t>(run_start)].ref;
      c.upper = scratch[top].ref;
      cells.push_back(c);
      run_start = -1;
    }
  }
  return cells;
}

struct Interval {
  double lo;
  double hi;
};

Interval cell_interval(const Cell& c, const FunctionSet& fs, double epsilon, double x) {
  return {c.lower.value(fs, epsilon, x), c.upper.value(fs, epsilon, x)};
}

}  // namespace

bool Reachability::feasible() const {
  if (cells.empty()) return false;
  return std::any_of(cells.back().begin(), cells.back().end(),
                     [](const Cell& c) { return c.reachable; });
}

Reachability build_reachability(const FunctionSet& fs, double epsilon, int p) {
  check_arguments(fs, epsilon, p);
  const double tau = tolerance();
  Reachability reach;
  reach.epsilon = epsilon;
  reach.p = p;
  reach.events = event_abscissae(fs, epsilon);
  const std::size_t slabs = reach.events.size() - 1;
  reach.cells.reserve(slabs);

  std::vector<Curve> scratch;
  for (std::size_t k = 0; k < slabs; ++k) {
    const double x0 = reach.events[k];
    const double xm = 0.5 * (x0 + reach.events[k + 1]);
    std::vector<Cell> cells = slab_cells(fs, epsilon, p, static_cast<int>(k), xm, scratch);
    if (k == 0) {
      for (Cell& c : cells) c.reachable = true;
    } else {
      // The closed region may also be crossed vertically on the event line
      // itself: cells connect through a deep run of that line.
      const std::vector<Cell>& prev = reach.cells[k - 1];
      const std::vector<Cell> line = slab_cells(fs, epsilon, p, -1, x0, scratch);
      std::vector<int> line_parent(line.size(), -1);
      for (std::size_t r = 0; r < line.size(); ++r) {
        const Interval run = cell_interval(line[r], fs, epsilon, x0);
        for (std::size_t q = 0; q < prev.size() && line_parent[r] < 0; ++q) {
          if (!prev[q].reachable) continue;
          const Interval iv = cell_interval(prev[q], fs, epsilon, x0);
          if (iv.hi + tau >= run.lo && iv.lo <= run.hi + tau) line_parent[r] = static_cast<int>(q);
        }
      }
      for (Cell& c : cells) {
        const Interval iv = cell_interval(c, fs, epsilon, x0);
        for (std::size_t r = 0; r < line.size() && !c.reachable; ++r) {
          if (line_parent[r] < 0) continue;
          const Interval run = cell_interval(line[r], fs, epsilon, x0);
          if (iv.hi + tau >= run.lo && iv.lo <= run.hi + tau) {
            c.reachable = true;
            c.parent = line_parent[r];
          }
        }
      }
    }
    const bool any = std::any_of(cells.begin(), cells.end(), [](const Cell& c) { return c.reachable; });
    reach.cells.push_back(std::move(cells));
    if (!any) break;
  }
  return reach;
}

PolyFunc extract_witness(const Reachability& reach, const FunctionSet& fs) {
  if (!reach.feasible() || reach.cells.size() + 1 != reach.events.size()) {
    throw std::logic_error("extract_witness called on an infeasible decision");
  }
  const double eps = reach.epsilon;
  const std::size_t slabs = reach.cells.size();
  std::vector<int> chain(slabs);
  {
    const std::vector<Cell>& last = reach.cells.back();
    auto it = std::find_if(last.begin(), last.end(), [](const Cell& c) { return c.reachable; });
    chain[slabs - 1] = static_cast<int>(it - last.begin());
    for (std::size_t k = slabs - 1; k > 0; --k) {
      chain[k - 1] = reach.cells[k][static_cast<std::size_t>(chain[k])].parent;
    }
  }
  auto cell = [&](std::size_t k) -> const Cell& {
    return reach.cells[k][static_cast<std::size_t>(chain[k])];
  };

  std::vector<Point> pts;
  pts.reserve(slabs + 1);
  {
    const Interval iv = cell_interval(cell(0), fs, eps, reach.events[0]);
    pts.push_back({reach.events[0], 0.5 * (iv.lo + iv.hi)});
  }
  for (std::size_t k = 1; k < slabs; ++k) {
    const double x = reach.events[k];
    const Interval l = cell_interval(cell(k - 1), fs, eps, x);
    const Interval r = cell_interval(cell(k), fs, eps, x);
    const double lo = std::max(l.lo, r.lo);
    const double hi = std::min(l.hi, r.hi);
    if (lo <= hi) {
      pts.push_back({x, 0.5 * (lo + hi)});
      continue;
    }
    // Vertical move along the event line, drawn as a very steep step.
    const double step = std::min(1e-3 * (reach.events[k + 1] - x), 1e-12 * std::max(1.0, std::abs(x)));
    pts.push_back({x, std::clamp(0.5 * (l.lo + l.hi), l.lo, l.hi)});
    pts.push_back({x + step, 0.5 * (r.lo + r.hi)});
  }
  {
    const Interval iv = cell_interval(cell(slabs - 1), fs, eps, reach.events[slabs]);
    pts.push_back({reach.events[slabs], 0.5 * (iv.lo + iv.hi)});
  }
  return PolyFunc(std::move(pts), "witness");
}

DecisionOutcome decide(const FunctionSet& fs, double epsilon, int p) {
  const Reachability reach = build_reachability(fs, epsilon, p);
  DecisionOutcome out;
  out.feasible = reach.feasible();
  if (out.feasible) out.witness = extract_witness(reach, fs);
  return out;
}

int coverage_at(const FunctionSet& fs, double x, double y, double epsilon) {
  const double limit = epsilon + tolerance();
  int count = 0;
  for (const PolyFunc& f : fs.functions()) {
    if (std::abs(f.evaluate(x) - y) <= limit) ++count;
  }
  return count;
}

}  // namespace spantube
