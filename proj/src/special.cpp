#include "spantube/special.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "spantube/tolerance.h"

namespace spantube {

namespace {

struct Sample {
  double x;
  std::array<double, 3> y;
};

// Merges the three breakpoint sequences and inserts pairwise crossings, in
// time linear in the total breakpoint count.
std::vector<Sample> event_samples(const FunctionSet& fs) {
  const double tau = tolerance();
  std::array<std::span<const Point>, 3> pts = {fs[0].points(), fs[1].points(), fs[2].points()};
  std::array<std::size_t, 3> next = {1, 1, 1};  // next breakpoint not yet passed
  std::array<std::size_t, 3> seg = {0, 0, 0};

  auto value = [&](int f, double x) {
    const Point& p = pts[f][seg[f]];
    const Point& q = pts[f][seg[f] + 1];
    if (x <= p.x) return p.y;
    if (x >= q.x) return q.y;
    return p.y + (x - p.x) / (q.x - p.x) * (q.y - p.y);
  };

  std::vector<Sample> merged;
  merged.push_back({fs.domain().a, {pts[0][0].y, pts[1][0].y, pts[2][0].y}});
  const double b = fs.domain().b;
  while (true) {
    double x = b;
    for (int f = 0; f < 3; ++f) x = std::min(x, pts[f][next[f]].x);
    // Advance segments so each covers x from the left.
    Sample s{x, {}};
    for (int f = 0; f < 3; ++f) {
      if (pts[f][next[f]].x <= x + tau) {
        s.y[f] = pts[f][next[f]].y;
      } else {
        s.y[f] = value(f, x);
      }
    }
    if (x - merged.back().x > tau) merged.push_back(s);
    if (x >= b - tau) {
      merged.back().x = b;
      for (int f = 0; f < 3; ++f) merged.back().y[f] = pts[f].back().y;
      break;
    }
    for (int f = 0; f < 3; ++f) {
      while (next[f] + 1 < pts[f].size() && pts[f][next[f]].x <= x + tau) {
        seg[f] = next[f];
        ++next[f];
      }
    }
  }

  std::vector<Sample> out;
  out.reserve(merged.size() * 2);
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const Sample& l = merged[k];
    const Sample& r = merged[k + 1];
    out.push_back(l);
    roots.clear();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double dl = l.y[i] - l.y[j];
        const double dr = r.y[i] - r.y[j];
        if (std::abs(dl) > tau && std::abs(dr) > tau && (dl < 0) != (dr < 0)) {
          roots.push_back(dl / (dl - dr));
        }
      }
    }
    std::sort(roots.begin(), roots.end());
    double last_t = 0.0;
    for (double t : roots) {
      const double x = l.x + t * (r.x - l.x);
      if (x - out.back().x <= tau || r.x - x <= tau || t <= last_t) continue;
      Sample s{x, {}};
      for (int f = 0; f < 3; ++f) s.y[f] = l.y[f] + t * (r.y[f] - l.y[f]);
      out.push_back(s);
      last_t = t;
    }
  }
  out.push_back(merged.back());
  return out;
}

enum class Step : unsigned char { Stay, Switch };

}  // namespace

ThreeTwoTrace solve_3_2(const FunctionSet& fs) {
  if (fs.size() != 3) {
    throw std::invalid_argument("the linear special case needs exactly 3 functions, got " +
                                std::to_string(fs.size()));
  }
  const std::vector<Sample> samples = event_samples(fs);
  const std::size_t t = samples.size();

  std::vector<SlabState> st(t);
  std::vector<std::array<double, 3>> env(t);  // upper, median, lower
  for (std::size_t i = 0; i < t; ++i) {
    std::array<double, 3> v = samples[i].y;
    std::sort(v.begin(), v.end());
    env[i] = {v[2], v[1], v[0]};
    st[i].event_x = samples[i].x;
    st[i].w1 = v[2] - v[1];
    st[i].w2 = v[1] - v[0];
    st[i].w = v[2] - v[0];
  }

  std::vector<std::array<Step, 2>> how(t, {Step::Stay, Step::Stay});
  st[0].eps1 = st[0].w1;
  st[0].eps2 = st[0].w2;
  for (std::size_t i = 0; i + 1 < t; ++i) {
    const SlabState& cur = st[i];
    SlabState& nxt = st[i + 1];
    const double pivot = std::min(cur.w, nxt.w);
    const double stay1 = std::max(cur.eps1, nxt.w1);
    const double switch1 = std::max({cur.eps2, pivot, nxt.w1});
    const double stay2 = std::max(cur.eps2, nxt.w2);
    const double switch2 = std::max({cur.eps1, pivot, nxt.w2});
    nxt.eps1 = std::min(stay1, switch1);
    nxt.eps2 = std::min(stay2, switch2);
    how[i + 1][0] = stay1 <= switch1 ? Step::Stay : Step::Switch;
    how[i + 1][1] = stay2 <= switch2 ? Step::Stay : Step::Switch;
  }

  const double width = std::min(st[t - 1].eps1, st[t - 1].eps2);

  // Pair covered at every event (0 = upper pair, 1 = lower pair).
  std::vector<int> pair(t);
  pair[t - 1] = st[t - 1].eps1 <= st[t - 1].eps2 ? 0 : 1;
  for (std::size_t i = t - 1; i > 0; --i) {
    pair[i - 1] = how[i][static_cast<std::size_t>(pair[i])] == Step::Stay ? pair[i] : 1 - pair[i];
  }
  // Pair followed inside each slab: a switch happens at whichever end of the
  // slab has the smaller spread.
  std::vector<int> slab_pair(t - 1);
  for (std::size_t i = 0; i + 1 < t; ++i) {
    if (pair[i] == pair[i + 1]) {
      slab_pair[i] = pair[i];
    } else {
      slab_pair[i] = st[i].w <= st[i + 1].w ? pair[i + 1] : pair[i];
    }
  }
  std::vector<Point> pts(t);
  for (std::size_t i = 0; i < t; ++i) {
    const int left = i > 0 ? slab_pair[i - 1] : slab_pair[0];
    const int right = i + 1 < t ? slab_pair[i] : slab_pair[t - 2];
    const auto& e = env[i];
    double y;
    if (left != right) {
      y = 0.5 * (e[0] + e[2]);
    } else if (left == 0) {
      y = 0.5 * (e[0] + e[1]);
    } else {
      y = 0.5 * (e[1] + e[2]);
    }
    pts[i] = {samples[i].x, y};
  }

  ThreeTwoTrace trace{TubeSolution{0.5 * width, PolyFunc(std::move(pts), "witness"), 2, std::nullopt},
                      std::move(st)};
  return trace;
}

}  // namespace spantube
