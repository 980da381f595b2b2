#include "spantube/polyline.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "spantube/tolerance.h"

namespace spantube {

namespace {

std::string label(const std::string& id) { return id.empty() ? std::string("<unnamed>") : id; }

// Sorts and merges abscissae closer than tau, keeping the first of each run.
void sort_unique(std::vector<double>& xs, double tau) {
  std::sort(xs.begin(), xs.end());
  std::size_t out = 0;
  for (double x : xs) {
    if (out == 0 || x - xs[out - 1] > tau) xs[out++] = x;
  }
  xs.resize(out);
}

// Evaluates all functions at one abscissa by binary search.
std::vector<double> values_at(const FunctionSet& fs, double x) {
  std::vector<double> v(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) v[i] = fs[i].evaluate(x);
  return v;
}

PolyFunc sample(const std::vector<double>& xs, const std::vector<double>& ys, std::string id) {
  std::vector<Point> pts(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) pts[k] = {xs[k], ys[k]};
  return PolyFunc(std::move(pts), std::move(id));
}

}  // namespace

PolyFunc::PolyFunc(std::vector<Point> points, std::string id)
    : points_(std::move(points)), id_(std::move(id)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("function " + label(id_) + ": needs at least 2 breakpoints, got " +
                                std::to_string(points_.size()));
  }
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].x) || !std::isfinite(points_[k].y)) {
      throw std::invalid_argument("function " + label(id_) + ": breakpoint " + std::to_string(k) +
                                  " is not finite");
    }
    if (k > 0 && !(points_[k].x > points_[k - 1].x)) {
      throw std::invalid_argument("function " + label(id_) + ": breakpoint " + std::to_string(k) +
                                  " does not increase in x");
    }
  }
}

std::size_t PolyFunc::segment_index(double x) const {
  auto it = std::upper_bound(points_.begin() + 1, points_.end() - 1, x,
                             [](double v, const Point& p) { return v < p.x; });
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

double PolyFunc::evaluate(double x) const {
  const double tau = tolerance();
  if (x < front_x() - tau || x > back_x() + tau || std::isnan(x)) {
    std::ostringstream msg;
    msg << "function " << label(id_) << ": x=" << x << " outside [" << front_x() << ", " << back_x()
        << "]";
    throw std::domain_error(msg.str());
  }
  const std::size_t s = segment_index(x);
  const Point& p = points_[s];
  const Point& q = points_[s + 1];
  if (x <= p.x) return p.y;
  if (x >= q.x) return q.y;
  const double t = (x - p.x) / (q.x - p.x);
  return p.y + t * (q.y - p.y);
}

double PolyFunc::max_abs_slope() const {
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const double s = (points_[k + 1].y - points_[k].y) / (points_[k + 1].x - points_[k].x);
    best = std::max(best, std::abs(s));
  }
  return best;
}

FunctionSet::FunctionSet(std::vector<PolyFunc> functions, Domain domain)
    : functions_(std::move(functions)), domain_(domain) {
  if (functions_.empty()) throw std::invalid_argument("function set is empty");
  if (!(domain_.a < domain_.b)) throw std::invalid_argument("domain must satisfy a < b");
  for (const PolyFunc& f : functions_) {
    if (f.front_x() != domain_.a || f.back_x() != domain_.b) {
      std::ostringstream msg;
      msg << "function " << label(f.id()) << ": spans [" << f.front_x() << ", " << f.back_x()
          << "], expected domain [" << domain_.a << ", " << domain_.b << "]";
      throw std::invalid_argument(msg.str());
    }
  }
}

namespace {
Domain domain_of_first(const std::vector<PolyFunc>& functions) {
  if (functions.empty()) throw std::invalid_argument("function set is empty");
  return Domain{functions.front().front_x(), functions.front().back_x()};
}
}  // namespace

FunctionSet::FunctionSet(std::vector<PolyFunc> functions)
    : FunctionSet(functions, domain_of_first(functions)) {}

std::size_t FunctionSet::max_links() const {
  std::size_t m = 0;
  for (const PolyFunc& f : functions_) m = std::max(m, f.links());
  return m;
}

std::vector<double> merged_breakpoints(const PolyFunc& f, const PolyFunc& g) {
  std::vector<double> xs;
  xs.reserve(f.points().size() + g.points().size());
  for (const Point& p : f.points()) xs.push_back(p.x);
  for (const Point& p : g.points()) xs.push_back(p.x);
  sort_unique(xs, tolerance());
  return xs;
}

std::vector<double> difference_roots(const PolyFunc& f, const PolyFunc& g, double level) {
  const double tau = tolerance();
  const std::vector<double> xs = merged_breakpoints(f, g);
  std::vector<double> d(xs.size());
  {
    // Walk both polylines with cursors; xs is sorted.
    std::size_t sf = 0, sg = 0;
    auto eval = [](const PolyFunc& h, std::size_t& s, double x) {
      auto pts = h.points();
      while (s + 2 < pts.size() && pts[s + 1].x <= x) ++s;
      const Point& p = pts[s];
      const Point& q = pts[s + 1];
      if (x <= p.x) return p.y;
      if (x >= q.x) return q.y;
      return p.y + (x - p.x) / (q.x - p.x) * (q.y - p.y);
    };
    for (std::size_t k = 0; k < xs.size(); ++k) d[k] = eval(f, sf, xs[k]) - eval(g, sg, xs[k]) - level;
  }
  std::vector<double> roots;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const bool zero = std::abs(d[k]) <= tau;
    if (zero) {
      const bool prev_zero = k > 0 && std::abs(d[k - 1]) <= tau;
      const bool next_zero = k + 1 < xs.size() && std::abs(d[k + 1]) <= tau;
      if (!(prev_zero && next_zero)) roots.push_back(xs[k]);
      continue;
    }
    if (k + 1 < xs.size() && std::abs(d[k + 1]) > tau && (d[k] < 0) != (d[k + 1] < 0)) {
      const double t = d[k] / (d[k] - d[k + 1]);
      roots.push_back(xs[k] + t * (xs[k + 1] - xs[k]));
    }
  }
  return roots;
}

std::vector<double> arrangement_abscissae(const FunctionSet& fs) {
  std::vector<double> xs;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& p : f.points()) xs.push_back(p.x);
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      for (double x : difference_roots(fs[i], fs[j], 0.0)) xs.push_back(x);
    }
  }
  sort_unique(xs, tolerance());
  // Domain endpoints stay exact.
  xs.front() = fs.domain().a;
  xs.back() = fs.domain().b;
  return xs;
}

Envelopes envelopes(const FunctionSet& fs) {
  // Between consecutive arrangement abscissae the vertical order of the
  // functions is fixed, so every order statistic is linear there.
  const std::vector<double> xs = arrangement_abscissae(fs);
  const std::size_t n = fs.size();
  const std::size_t mid = n % 2 == 1 ? n / 2 : n / 2 - 1;
  std::vector<double> up(xs.size()), lo(xs.size()), med(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::vector<double> v = values_at(fs, xs[k]);
    std::sort(v.begin(), v.end());
    lo[k] = v.front();
    up[k] = v.back();
    med[k] = v[mid];
  }
  return Envelopes{sample(xs, up, "upper"), sample(xs, lo, "lower"), sample(xs, med, "median")};
}

std::vector<EventPoint> enumerate_events(const FunctionSet& fs) {
  std::vector<EventPoint> events;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (const Point& p : fs[i].points()) {
      events.push_back({p.x, p.y, EventKind::Vertex, static_cast<int>(i), -1});
    }
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      for (double x : difference_roots(fs[i], fs[j], 0.0)) {
        events.push_back(
            {x, fs[i].evaluate(x), EventKind::Crossing, static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }
  std::sort(events.begin(), events.end(), [](const EventPoint& l, const EventPoint& r) {
    if (l.x != r.x) return l.x < r.x;
    if (l.kind != r.kind) return l.kind == EventKind::Vertex;
    if (l.i != r.i) return l.i < r.i;
    return l.j < r.j;
  });
  return events;
}

FunctionSet clip(const FunctionSet& fs, double lo, double hi) {
  const Domain dom = fs.domain();
  if (!(lo < hi)) throw std::invalid_argument("clip interval must satisfy lo < hi");
  if (lo < dom.a || hi > dom.b) {
    std::ostringstream msg;
    msg << "clip interval [" << lo << ", " << hi << "] leaves domain [" << dom.a << ", " << dom.b
        << "]";
    throw std::invalid_argument(msg.str());
  }
  const double tau = tolerance();
  std::vector<PolyFunc> out;
  out.reserve(fs.size());
  for (const PolyFunc& f : fs.functions()) {
    std::vector<Point> pts;
    pts.push_back({lo, f.evaluate(lo)});
    for (const Point& p : f.points()) {
      if (p.x > lo + tau && p.x < hi - tau) pts.push_back(p);
    }
    pts.push_back({hi, f.evaluate(hi)});
    out.emplace_back(std::move(pts), f.id());
  }
  return FunctionSet(std::move(out), Domain{lo, hi});
}

}  // namespace spantube
