#pragma once

#include "msect/exact_core.hpp"

#include <string>
#include <vector>

namespace msect {

struct PlotSpec {
  std::vector<IntVector> sequence;  // 2D only
  int width = 640;
  int height = 640;
  double scale = 0.0;  // lattice units per pixel for the point markers; 0 picks one
  bool labels = true;
};

/// "y = (1/2)x", "y = -(11/2)x", "y = 2x", "x = 0".
std::string slope_label(const IntVector& v);

/// One <line> per vector through the canvas centre, clipped to the canvas.
/// The first and last vectors are drawn as endpoints. Output depends only on
/// its argument. Throws std::invalid_argument for non-2D or zero vectors.
std::string render_svg(const PlotSpec& spec);

}  // namespace msect
