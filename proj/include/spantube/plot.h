#pragma once

// SVG rendering of a tube over its melodies: input polylines (thin), the
// template (thick) and the shaded band [template - eps, template + eps].

#include <string>

#include "spantube/polyline.h"

namespace spantube::plot {

/// Maps data coordinates to the SVG canvas.
struct Frame {
  double width = 800.0;
  double height = 420.0;
  double margin_left = 60.0;
  double margin_right = 20.0;
  double margin_top = 30.0;
  double margin_bottom = 50.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double to_svg_x(double x) const;
  double to_svg_y(double y) const;
  double from_svg_x(double sx) const;
  double from_svg_y(double sy) const;
};

/// Frame covering the data and the band, padded by two semitones vertically.
Frame frame_for(const FunctionSet& fs, const PolyFunc& witness, double epsilon);

struct PlotLabels {
  std::string title;
};

std::string render_svg(const FunctionSet& fs, const PolyFunc& witness, double epsilon,
                       const PlotLabels& labels = {});

}  // namespace spantube::plot
