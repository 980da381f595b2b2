#include "spantube/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spantube::plot {

namespace {

constexpr double kPitchPadding = 2.0;

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string polyline_points(const Frame& fr, const PolyFunc& f, double offset = 0.0) {
  std::string pts;
  for (const Point& p : f.points()) {
    if (!pts.empty()) pts += ' ';
    pts += fmt(fr.to_svg_x(p.x)) + ',' + fmt(fr.to_svg_y(p.y + offset));
  }
  return pts;
}

double nice_step(double range) {
  const double raw = range / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

double Frame::to_svg_x(double x) const {
  return margin_left + (x - x_min) / (x_max - x_min) * (width - margin_left - margin_right);
}

double Frame::to_svg_y(double y) const {
  return height - margin_bottom - (y - y_min) / (y_max - y_min) * (height - margin_top - margin_bottom);
}

double Frame::from_svg_x(double sx) const {
  return x_min + (sx - margin_left) / (width - margin_left - margin_right) * (x_max - x_min);
}

double Frame::from_svg_y(double sy) const {
  return y_min + (height - margin_bottom - sy) / (height - margin_top - margin_bottom) * (y_max - y_min);
}

Frame frame_for(const FunctionSet& fs, const PolyFunc& witness, double epsilon) {
  double lo = witness.points().front().y - epsilon;
  double hi = witness.points().front().y + epsilon;
  for (const PolyFunc& f : fs.functions()) {
    for (const Point& p : f.points()) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
  }
  for (const Point& p : witness.points()) {
    lo = std::min(lo, p.y - epsilon);
    hi = std::max(hi, p.y + epsilon);
  }
  Frame fr;
  fr.x_min = fs.domain().a;
  fr.x_max = fs.domain().b;
  fr.y_min = lo - kPitchPadding;
  fr.y_max = hi + kPitchPadding;
  return fr;
}

std::string render_svg(const FunctionSet& fs, const PolyFunc& witness, double epsilon,
                       const PlotLabels& labels) {
  const Frame fr = frame_for(fs, witness, epsilon);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(fr.width) << "\" height=\""
      << fmt(fr.height) << "\" viewBox=\"0 0 " << fmt(fr.width) << ' ' << fmt(fr.height) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(fr.width) << "\" height=\"" << fmt(fr.height)
      << "\" fill=\"white\"/>\n";
  if (!labels.title.empty()) {
    svg << "<text x=\"" << fmt(fr.width / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(labels.title) << "</text>\n";
  }

  // Axes and ticks.
  const double x0 = fr.to_svg_x(fr.x_min), x1 = fr.to_svg_x(fr.x_max);
  const double y0 = fr.to_svg_y(fr.y_min), y1 = fr.to_svg_y(fr.y_max);
  svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" font-size=\"11\" font-family=\"sans-serif\">\n";
  svg << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\""
      << fmt(y0) << "\"/>\n";
  svg << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0) << "\" y2=\""
      << fmt(y1) << "\"/>\n";
  const double xstep = nice_step(fr.x_max - fr.x_min);
  for (double x = std::ceil(fr.x_min / xstep) * xstep; x <= fr.x_max + 1e-12; x += xstep) {
    const double sx = fr.to_svg_x(x);
    svg << "<line x1=\"" << fmt(sx) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(sx) << "\" y2=\""
        << fmt(y0 + 4) << "\"/><text x=\"" << fmt(sx) << "\" y=\"" << fmt(y0 + 16)
        << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(x) << "</text>\n";
  }
  const double ystep = std::max(1.0, std::round(nice_step(fr.y_max - fr.y_min)));
  for (double y = std::ceil(fr.y_min / ystep) * ystep; y <= fr.y_max + 1e-12; y += ystep) {
    const double sy = fr.to_svg_y(y);
    svg << "<line x1=\"" << fmt(x0 - 4) << "\" y1=\"" << fmt(sy) << "\" x2=\"" << fmt(x0) << "\" y2=\""
        << fmt(sy) << "\"/><text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(sy + 4)
        << "\" text-anchor=\"end\" stroke=\"none\">" << static_cast<long>(std::lround(y)) << "</text>\n";
  }
  svg << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(fr.height - 10)
      << "\" text-anchor=\"middle\" stroke=\"none\">relative time</text>\n";
  svg << "<text x=\"14\" y=\"" << fmt((y0 + y1) / 2) << "\" text-anchor=\"middle\" stroke=\"none\" "
      << "transform=\"rotate(-90 14 " << fmt((y0 + y1) / 2) << ")\">MIDI pitch</text>\n";
  svg << "</g>\n";

  // Band: upper edge left to right, lower edge right to left.
  std::string band;
  auto wp = witness.points();
  for (const Point& p : wp) {
    band += fmt(fr.to_svg_x(p.x)) + ',' + fmt(fr.to_svg_y(p.y + epsilon)) + ' ';
  }
  for (auto it = wp.rbegin(); it != wp.rend(); ++it) {
    band += fmt(fr.to_svg_x(it->x)) + ',' + fmt(fr.to_svg_y(it->y - epsilon));
    if (it + 1 != wp.rend()) band += ' ';
  }
  svg << "<polygon id=\"tube-band\" data-epsilon=\"" << epsilon << "\" points=\"" << band
      << "\" fill=\"#999999\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";

  svg << "<g id=\"melodies\" fill=\"none\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    svg << "<polyline data-id=\"" << escape(fs[i].id()) << "\" stroke=\"" << kPalette[i % 10]
        << "\" points=\"" << polyline_points(fr, fs[i]) << "\"/>\n";
  }
  svg << "</g>\n";
  svg << "<polyline id=\"template\" fill=\"none\" stroke=\"black\" stroke-width=\"3\" points=\""
      << polyline_points(fr, witness) << "\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spantube::plot
