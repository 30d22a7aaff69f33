#include "strebel_cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace strebel::cli {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct Frame {
  double xmin, ymax, scale;
  // y grows downwards in SVG.
  std::string point(cplx z) const { return fmt((z.real() - xmin) * scale) + "," + fmt((ymax - z.imag()) * scale); }
};

}  // namespace

std::string render_svg(const QuadDifferential& qd, const CriticalSet& cs, std::span<const ClosedCurve> curves,
                       const CriticalGraph* graph) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  const auto grow = [&](cplx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto p : qd.poles()) grow(p);
  for (const auto& c : curves)
    for (const auto z : c.points) grow(z);
  if (graph)
    for (const auto& e : graph->edges)
      for (const auto z : e.points) grow(z);
  const double pad = 0.1 * std::max({xmax - xmin, ymax - ymin, 1e-3});
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  constexpr double kWidth = 800.0;
  const Frame frame{xmin, ymax, kWidth / (xmax - xmin)};
  const double height = (ymax - ymin) * frame.scale;
  const double mark = 0.01 * kWidth;

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(height)
    << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(height) << "\">\n";
  s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (graph) {
    s << "  <g id=\"critical-graph\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 2\">\n";
    for (const auto& e : graph->edges) {
      s << "    <polyline points=\"";
      for (std::size_t k = 0; k < e.points.size(); ++k) s << (k ? " " : "") << frame.point(e.points[k]);
      s << "\"/>\n";
    }
    s << "  </g>\n";
  }

  s << "  <g id=\"components\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& c : curves) {
    s << "    <path d=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) s << (k ? " L" : "M") << frame.point(c.points[k]);
    s << " Z\"/>\n";
  }
  s << "  </g>\n";

  s << "  <g id=\"zeros\" fill=\"#228822\">\n";
  for (const auto& p : cs.points) {
    const auto xy = frame.point(p.z);
    const auto comma = xy.find(',');
    s << "    <circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1) << "\" r=\"" << fmt(0.5 * mark)
      << "\"/>\n";
  }
  s << "  </g>\n";

  s << "  <g id=\"poles\" stroke-width=\"2\">\n";
  for (std::size_t i = 0; i < qd.size(); ++i) {
    const cplx a = qd.poles()[i];
    const double d = mark / frame.scale;
    const char* color = qd.weights()[i] > 0 ? "#cc2222" : "#2244cc";
    s << "    <path stroke=\"" << color << "\" d=\"M" << frame.point(a + cplx(-d, -d)) << " L"
      << frame.point(a + cplx(d, d)) << " M" << frame.point(a + cplx(-d, d)) << " L" << frame.point(a + cplx(d, -d))
      << "\"/>\n";
  }
  s << "  </g>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace strebel::cli
