#include "spantube/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "spantube/decision.h"
#include "spantube/tolerance.h"

namespace spantube {

namespace {

void check_p(const FunctionSet& fs, int p) {
  if (p < 1 || static_cast<std::size_t>(p) > fs.size()) {
    throw std::invalid_argument("p must lie in [1, " + std::to_string(fs.size()) + "], got " +
                                std::to_string(p));
  }
}

struct Ranked {
  double distance;
  int function;
};

void sort_dedup(std::vector<CandidateValue>& out) {
  std::stable_sort(out.begin(), out.end(), [](const CandidateValue& l, const CandidateValue& r) {
    return l.epsilon < r.epsilon;
  });
  const double tau = tolerance();
  std::size_t kept = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (kept == 0 || out[k].epsilon - out[kept - 1].epsilon > tau) out[kept++] = out[k];
  }
  out.resize(kept);
}

std::vector<CandidateValue> event_candidates(const FunctionSet& fs) {
  const int n = static_cast<int>(fs.size());
  // Every distance counts, not only the (p-1)- and p-nearest: a gap between
  // two bands can close across functions lying between them.
  std::vector<CandidateValue> out;
  std::vector<Ranked> others;
  for (const EventPoint& e : enumerate_events(fs)) {
    others.clear();
    for (int j = 0; j < n; ++j) {
      if (j == e.i || j == e.j) continue;
      others.push_back({std::abs(fs[static_cast<std::size_t>(j)].evaluate(e.x) - e.y), j});
    }
    std::sort(others.begin(), others.end(), [](const Ranked& l, const Ranked& r) {
      return l.distance != r.distance ? l.distance < r.distance : l.function < r.function;
    });
    for (std::size_t k = 0; k < others.size(); ++k) {
      out.push_back({0.5 * others[k].distance, CandidateKind::EventDistance, e, others[k].function,
                     static_cast<int>(k) + 1});
    }
  }
  sort_dedup(out);
  return out;
}

// Gap f_upper - f_lower on one breakpoint interval, linear there.
struct Gap {
  int lower;
  int upper;
  double g0;
  double g1;
};

// Gap swaps with half-width strictly inside (lo, hi). The crossings of
// f_lower + eps with f_upper - eps move along x as eps grows; two of them
// change order where both gaps equal 2 eps at one x.
std::vector<CandidateValue> swap_candidates(const FunctionSet& fs, double lo, double hi) {
  const int n = static_cast<int>(fs.size());
  std::vector<double> xs;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& q : f.points()) xs.push_back(q.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<CandidateValue> out;
  std::vector<double> y0(static_cast<std::size_t>(n)), y1(static_cast<std::size_t>(n));
  std::vector<Gap> gaps;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double x0 = xs[s], x1 = xs[s + 1];
    for (int i = 0; i < n; ++i) {
      y0[static_cast<std::size_t>(i)] = fs[static_cast<std::size_t>(i)].evaluate(x0);
      y1[static_cast<std::size_t>(i)] = fs[static_cast<std::size_t>(i)].evaluate(x1);
    }
    gaps.clear();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        const double g0 = y0[ub] - y0[ua], g1 = y1[ub] - y1[ua];
        if (std::max(g0, g1) <= 2.0 * lo || std::min(g0, g1) >= 2.0 * hi) continue;
        gaps.push_back({a, b, g0, g1});
      }
    }
    for (std::size_t u = 0; u < gaps.size(); ++u) {
      for (std::size_t v = u + 1; v < gaps.size(); ++v) {
        const Gap& g = gaps[u];
        const Gap& h = gaps[v];
        if ((g.lower == h.lower && g.upper == h.upper) || (g.lower == h.upper && g.upper == h.lower)) continue;
        const double d0 = g.g0 - h.g0, d1 = g.g1 - h.g1;
        if (d0 == d1 || (d0 > 0.0 && d1 > 0.0) || (d0 < 0.0 && d1 < 0.0)) continue;
        const double t = d0 / (d0 - d1);
        const double eps = 0.5 * (g.g0 + t * (g.g1 - g.g0));
        if (!(eps > lo && eps < hi)) continue;
        const EventPoint at{x0 + t * (x1 - x0), y0[static_cast<std::size_t>(g.lower)] + eps,
                            EventKind::Crossing, g.lower, g.upper};
        out.push_back({eps, CandidateKind::GapSwap, at, h.lower, h.upper});
      }
    }
  }
  sort_dedup(out);
  return out;
}

// Index of the smallest feasible value, or values.size(); fills witness.
std::size_t first_feasible(const FunctionSet& fs, const std::vector<CandidateValue>& values, int p,
                           std::optional<PolyFunc>& witness) {
  std::size_t lo = 0;
  std::size_t hi = values.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    DecisionOutcome d = decide(fs, values[mid].epsilon, p);
    if (d.feasible) {
      hi = mid;
      witness = std::move(d.witness);
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

std::vector<CandidateValue> candidates(const FunctionSet& fs, int p) {
  const int n = static_cast<int>(fs.size());
  if (n <= 2 || p <= 1 || p >= n) {
    throw std::invalid_argument("candidates need n > 2 and 1 < p < n (n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
  }
  std::vector<CandidateValue> out = event_candidates(fs);
  const std::vector<CandidateValue> swaps =
      swap_candidates(fs, 0.0, std::numeric_limits<double>::infinity());
  out.insert(out.end(), swaps.begin(), swaps.end());
  sort_dedup(out);
  return out;
}

TubeSolution optimize_all(const FunctionSet& fs) {
  const Envelopes env = envelopes(fs);
  auto up = env.upper.points();
  auto lo = env.lower.points();
  double gap = 0.0;
  std::vector<Point> mid(up.size());
  for (std::size_t k = 0; k < up.size(); ++k) {
    gap = std::max(gap, up[k].y - lo[k].y);
    mid[k] = {up[k].x, 0.5 * (up[k].y + lo[k].y)};
  }
  return TubeSolution{0.5 * gap, PolyFunc(std::move(mid), "witness"), static_cast<int>(fs.size()),
                      std::nullopt};
}

TubeSolution optimize(const FunctionSet& fs, int p) {
  check_p(fs, p);
  const int n = static_cast<int>(fs.size());
  if (p == n) return optimize_all(fs);
  if (p == 1) {
    std::vector<Point> pts(fs[0].points().begin(), fs[0].points().end());
    return TubeSolution{0.0, PolyFunc(std::move(pts), "witness"), 1, std::nullopt};
  }

  // Bracket the optimum between event candidates, then look for a gap swap
  // inside the bracket; enumerating every swap up front costs O(n^4 m).
  const std::vector<CandidateValue> cands = event_candidates(fs);
  std::optional<PolyFunc> best;
  const std::size_t k = first_feasible(fs, cands, p, best);
  const double tau = tolerance();
  const double lo = k > 0 ? cands[k - 1].epsilon + tau : 0.0;
  const double hi = k < cands.size() ? cands[k].epsilon : std::numeric_limits<double>::infinity();
  const std::vector<CandidateValue> swaps = swap_candidates(fs, lo, hi);
  std::optional<PolyFunc> swap_witness;
  const std::size_t s = first_feasible(fs, swaps, p, swap_witness);
  if (s < swaps.size()) {
    if (!swap_witness) swap_witness = decide(fs, swaps[s].epsilon, p).witness;
    return TubeSolution{swaps[s].epsilon, std::move(*swap_witness), p, std::nullopt};
  }
  if (k < cands.size()) {
    if (!best) best = decide(fs, cands[k].epsilon, p).witness;
    return TubeSolution{cands[k].epsilon, std::move(*best), p, std::nullopt};
  }

  double eps = cands.empty() ? 1.0 : std::max(cands.back().epsilon, tolerance());
  for (int round = 0; round < 64; ++round) {
    eps *= 2.0;
    DecisionOutcome d = decide(fs, eps, p);
    if (d.feasible) {
      std::ostringstream msg;
      msg << "no candidate value was feasible; fell back to epsilon=" << eps
          << " by doubling (numerical robustness problem)";
      return TubeSolution{eps, std::move(*d.witness), p, msg.str()};
    }
  }
  throw std::runtime_error("optimize: no feasible tube found while doubling epsilon");
}

CoverageResult max_coverage(const FunctionSet& fs, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  int lo = 1;  // always feasible
  int hi = static_cast<int>(fs.size());
  DecisionOutcome best = decide(fs, epsilon, 1);
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    DecisionOutcome d = decide(fs, epsilon, mid);
    if (d.feasible) {
      lo = mid;
      best = std::move(d);
    } else {
      hi = mid - 1;
    }
  }
  return CoverageResult{lo, std::move(*best.witness)};
}

}  // namespace spantube
