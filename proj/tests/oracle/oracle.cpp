#include "oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spantube/decision.h"
#include "spantube/optimizer.h"

namespace spantube::oracle {

namespace {

struct Range {
  long lo;
  long hi;  // inclusive
};

// Classic parametric segment intersection: P + t R = Q + u S.
void intersect_segments(Point p0, Point p1, Point q0, Point q1, double tol, std::vector<double>& points,
                        std::vector<std::pair<double, double>>& overlaps) {
  const double rx = p1.x - p0.x, ry = p1.y - p0.y;
  const double sx = q1.x - q0.x, sy = q1.y - q0.y;
  const double qpx = q0.x - p0.x, qpy = q0.y - p0.y;
  const double denom = rx * sy - ry * sx;
  const double scale = std::max({std::abs(rx), std::abs(ry), 1.0}) * std::max({std::abs(sx), std::abs(sy), 1.0});
  if (std::abs(denom) > 1e-12 * scale) {
    const double t = (qpx * sy - qpy * sx) / denom;
    const double u = (qpx * ry - qpy * rx) / denom;
    const double et = tol / std::max(std::abs(rx), 1e-300);
    const double eu = tol / std::max(std::abs(sx), 1e-300);
    if (t >= -et && t <= 1 + et && u >= -eu && u <= 1 + eu) points.push_back(p0.x + std::clamp(t, 0.0, 1.0) * rx);
    return;
  }
  // Parallel: collinear when Q0 lies on the line through P.
  const double cross = qpx * ry - qpy * rx;
  if (std::abs(cross) > tol * std::max(std::abs(rx), 1.0)) return;
  const double lo = std::max(p0.x, q0.x);
  const double hi = std::min(p1.x, q1.x);
  if (lo > hi + tol) return;
  overlaps.emplace_back(lo, std::max(lo, hi));
}

// Admissible level ranges at one column: depth >= p of the closed intervals.
std::vector<Range> admissible(const std::vector<double>& values, double eps, int p, double y0, double dy) {
  std::vector<std::pair<long, int>> ev;
  for (double v : values) {
    const long a = static_cast<long>(std::ceil((v - eps - y0) / dy - 1e-9));
    const long b = static_cast<long>(std::floor((v + eps - y0) / dy + 1e-9));
    if (a > b) continue;
    ev.emplace_back(a, +1);
    ev.emplace_back(b + 1, -1);
  }
  std::sort(ev.begin(), ev.end());
  std::vector<Range> out;
  int depth = 0;
  for (std::size_t k = 0; k < ev.size();) {
    const long at = ev[k].first;
    const int before = depth;
    while (k < ev.size() && ev[k].first == at) depth += ev[k++].second;
    if (before < p && depth >= p) out.push_back({at, at});
    if (before >= p && depth < p) out.back().hi = at - 1;
  }
  return out;
}

// Uniform grid refined so that no function moves more than one y step
// between neighbouring columns; breakpoints are always columns.
std::vector<double> columns(const FunctionSet& fs, const GridSpec& grid) {
  std::vector<double> knots;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& pt : f.points()) knots.push_back(pt.x);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(), [](double l, double r) { return r - l < 1e-12; }), knots.end());
  std::vector<double> xs{knots.front()};
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const double u = knots[k - 1], v = knots[k];
    double slope = 0.0;
    for (const PolyFunc& f : fs.functions()) slope = std::max(slope, std::abs(f.evaluate(v) - f.evaluate(u)) / (v - u));
    const double dx = slope > 0.0 ? std::min(grid.x_step, grid.y_step / slope) : grid.x_step;
    const long steps = std::max(1L, static_cast<long>(std::ceil((v - u) / dx)));
    for (long j = 1; j < steps; ++j) xs.push_back(u + (v - u) * static_cast<double>(j) / static_cast<double>(steps));
    xs.push_back(v);
  }
  return xs;
}

// A path moves vertically only inside one column's admissible run and steps
// horizontally on a level admissible in both columns.
bool grid_decide_unchecked(const FunctionSet& fs, double epsilon, int p, const GridSpec& grid) {
  double ymin = fs[0].points()[0].y;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& pt : f.points()) ymin = std::min(ymin, pt.y);
  }
  const double y0 = ymin - epsilon - grid.y_step;
  const std::vector<double> xs = columns(fs, grid);

  std::vector<double> values(fs.size());
  auto column_ranges = [&](double x) {
    for (std::size_t i = 0; i < fs.size(); ++i) values[i] = fs[i].evaluate(x);
    return admissible(values, epsilon, p, y0, grid.y_step);
  };

  std::vector<Range> reach = column_ranges(xs[0]);
  for (std::size_t c = 1; c < xs.size() && !reach.empty(); ++c) {
    const std::vector<Range> adm = column_ranges(xs[c]);
    std::vector<Range> next;
    std::size_t r = 0;
    for (const Range& a : adm) {
      while (r < reach.size() && reach[r].hi < a.lo) ++r;
      if (r < reach.size() && reach[r].lo <= a.hi) next.push_back(a);
    }
    reach = std::move(next);
  }
  return !reach.empty();
}

}  // namespace

std::vector<Intersection> brute_force_intersections(const FunctionSet& fs, double tol) {
  std::vector<Intersection> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      std::vector<double> points;
      std::vector<std::pair<double, double>> overlaps;
      auto a = fs[i].points();
      auto b = fs[j].points();
      for (std::size_t s = 0; s + 1 < a.size(); ++s) {
        for (std::size_t t = 0; t + 1 < b.size(); ++t) {
          intersect_segments(a[s], a[s + 1], b[t], b[t + 1], tol, points, overlaps);
        }
      }
      std::sort(overlaps.begin(), overlaps.end());
      std::vector<std::pair<double, double>> merged;
      for (const auto& o : overlaps) {
        if (!merged.empty() && o.first <= merged.back().second + tol) {
          merged.back().second = std::max(merged.back().second, o.second);
        } else {
          merged.push_back(o);
        }
      }
      std::vector<double> xs;
      for (double x : points) {
        const bool inside = std::any_of(merged.begin(), merged.end(), [&](const auto& m) {
          return x >= m.first - tol && x <= m.second + tol;
        });
        if (!inside) xs.push_back(x);
      }
      for (const auto& m : merged) {
        xs.push_back(m.first);
        if (m.second - m.first > tol) xs.push_back(m.second);
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k > 0 && xs[k] - xs[k - 1] <= tol) continue;
        out.push_back({xs[k], static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }
  return out;
}

bool grid_decide(const FunctionSet& fs, double epsilon, int p, const GridSpec& grid) {
  if (!(grid.x_step > 0.0) || !(grid.y_step > 0.0)) throw std::invalid_argument("grid steps must be positive");
  if (grid.y_step > epsilon) throw std::invalid_argument("grid too coarse: y_step exceeds epsilon");
  if (p < 1 || static_cast<std::size_t>(p) > fs.size()) throw std::invalid_argument("p out of range");
  return grid_decide_unchecked(fs, epsilon, p, grid);
}

double grid_optimize(const FunctionSet& fs, int p, const GridSpec& grid) {
  if (p < 1 || static_cast<std::size_t>(p) > fs.size()) throw std::invalid_argument("p out of range");
  double ymin = fs[0].points()[0].y, ymax = ymin;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& pt : f.points()) {
      ymin = std::min(ymin, pt.y);
      ymax = std::max(ymax, pt.y);
    }
  }
  double lo = 0.0;
  double hi = 0.5 * (ymax - ymin) + grid.y_step;
  while (hi - lo > grid.y_step) {
    const double mid = 0.5 * (lo + hi);
    if (grid_decide_unchecked(fs, mid, p, grid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double scan_optimize(const FunctionSet& fs, int p) {
  for (const CandidateValue& c : candidates(fs, p)) {
    if (decide(fs, c.epsilon, p).feasible) return c.epsilon;
  }
  throw std::runtime_error("scan_optimize: no feasible candidate");
}

int scan_max_coverage(const FunctionSet& fs, double epsilon) {
  for (int p = static_cast<int>(fs.size()); p >= 1; --p) {
    if (decide(fs, epsilon, p).feasible) return p;
  }
  return 0;
}

}  // namespace spantube::oracle
