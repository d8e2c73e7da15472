#include "msect/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace msect {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Direction {
  double dx;
  double dy;
};

// Unit-free direction; exact ratio first so huge coordinates do not overflow.
Direction direction_of(const IntVector& v) {
  const Integer m = std::max(abs(v[0]), abs(v[1]));
  return {Rational(v[0], m).get_d(), Rational(v[1], m).get_d()};
}

}  // namespace

std::string slope_label(const IntVector& v) {
  if (v.dim() != 2 || v.is_zero()) throw std::invalid_argument("slope label needs a nonzero 2D vector");
  if (v[0] == 0) return "x = 0";
  if (v[1] == 0) return "y = 0";
  Rational k(v[1], v[0]);
  k.canonicalize();
  const std::string sign = k < 0 ? "-" : "";
  const Rational mag = abs(k);
  if (mag.get_den() == 1) {
    if (mag.get_num() == 1) return "y = " + sign + "x";
    return "y = " + sign + mag.get_num().get_str() + "x";
  }
  return "y = " + sign + "(" + mag.get_str() + ")x";
}

std::string render_svg(const PlotSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) throw std::invalid_argument("canvas must be positive");
  if (spec.sequence.empty()) throw std::invalid_argument("nothing to plot");
  for (const auto& v : spec.sequence) {
    if (v.dim() != 2) throw std::invalid_argument("only 2D sequences can be plotted, got " + v.str());
    if (v.is_zero()) throw std::invalid_argument("cannot plot a zero vector");
  }

  const double cx = spec.width / 2.0;
  const double cy = spec.height / 2.0;
  double scale = spec.scale;
  if (scale <= 0) {
    // Fit the first two vectors comfortably; longer ones fall off canvas.
    double reach = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, spec.sequence.size()); ++i)
      reach = std::max({reach, std::fabs(spec.sequence[i][0].get_d()),
                        std::fabs(spec.sequence[i][1].get_d())});
    scale = reach / (0.8 * std::min(cx, cy));
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height
     << "\">\n"
     << "<title>Equisector lines</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
     << "\" fill=\"white\"/>\n"
     << "<path class=\"axes\" d=\"M0 " << fmt(cy) << " H" << spec.width << " M" << fmt(cx)
     << " 0 V" << spec.height << "\" stroke=\"#bbbbbb\" stroke-width=\"1\" fill=\"none\"/>\n";

  os << "<g class=\"lines\" fill=\"none\">\n";
  std::ostringstream labels;
  std::ostringstream points;
  const std::size_t last = spec.sequence.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const IntVector& v = spec.sequence[i];
    const auto [dx, dy] = direction_of(v);
    double t = INFINITY;
    if (dx != 0) t = std::min(t, cx / std::fabs(dx));
    if (dy != 0) t = std::min(t, cy / std::fabs(dy));
    const bool endpoint = i == 0 || i == last;
    // SVG y grows downward.
    os << "<line class=\"" << (endpoint ? "endpoint" : "sector") << "\" x1=\""
       << fmt(cx - t * dx) << "\" y1=\"" << fmt(cy + t * dy) << "\" x2=\"" << fmt(cx + t * dx)
       << "\" y2=\"" << fmt(cy - t * dy) << "\" stroke=\""
       << (endpoint ? "#c0392b" : "#2c3e50") << "\" stroke-width=\""
       << (endpoint ? "2.5" : "1.2") << "\"/>\n";

    if (spec.labels) {
      const double lt = 0.88 * t;
      labels << "<text x=\"" << fmt(cx + lt * dx) << "\" y=\"" << fmt(cy - lt * dy - 4)
             << "\">" << slope_label(v) << "</text>\n";
    }
    const double px = cx + v[0].get_d() / scale;
    const double py = cy - v[1].get_d() / scale;
    if (px >= 0 && px <= spec.width && py >= 0 && py <= spec.height)
      points << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"2.5\"/>\n";
  }
  os << "</g>\n";
  os << "<g class=\"points\" fill=\"#2c3e50\">\n" << points.str() << "</g>\n";
  if (spec.labels)
    os << "<g class=\"labels\" font-family=\"serif\" font-size=\"12\" text-anchor=\"middle\">\n"
       << labels.str() << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace msect
