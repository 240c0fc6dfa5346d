#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qsat/bench.hpp"

namespace qsat {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double p_lo, p_hi, r_lo, r_hi;

  double x(double p) const {
    const double span = p_hi > p_lo ? p_hi - p_lo : 1.0;
    return kLeft + (p - p_lo) / span * (kWidth - kLeft - kRight);
  }
  double y(double r) const {
    return kTop + (r_hi - r) / (r_hi - r_lo) * (kHeight - kTop - kBottom);
  }
};

void polyline(std::ostringstream& out, const Frame& f, const BenchmarkCurve& curve, const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
  for (const CurvePoint& pt : curve.points) {
    out << num(f.x(static_cast<double>(pt.p))) << ',' << num(f.y(pt.mean_ratio)) << ' ';
  }
  out << "\"/>\n";
  for (const CurvePoint& pt : curve.points) {
    out << "<circle cx=\"" << num(f.x(static_cast<double>(pt.p))) << "\" cy=\"" << num(f.y(pt.mean_ratio))
        << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
  }
}

}  // namespace

std::string render_svg(const ChartInput& input) {
  Frame f{1.0, 1.0, 1.0, 0.0};
  double lo = 1.0;
  double p_hi = 1.0;
  auto scan = [&](const BenchmarkCurve& c) {
    for (const CurvePoint& pt : c.points) {
      p_hi = std::max(p_hi, static_cast<double>(pt.p));
      lo = std::min({lo, pt.mean_ratio, pt.pct40});
      for (double r : pt.sample_ratios) lo = std::min(lo, r);
    }
  };
  if (input.ideal) scan(*input.ideal);
  if (input.measured) scan(*input.measured);
  if (input.baseline) lo = std::min(lo, input.baseline->pct40);
  f.p_hi = p_hi;
  f.r_hi = 1.0;
  f.r_lo = std::max(0.0, std::floor((lo - 0.02) * 20.0) / 20.0);
  if (f.r_lo >= f.r_hi) f.r_lo = f.r_hi - 0.05;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!input.title.empty()) {
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << input.title << "</text>\n";
  }

  if (input.baseline) {
    const double y40 = f.y(input.baseline->pct40);
    const double y60 = f.y(input.baseline->pct60);
    out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(y60) << "\" width=\"" << num(kWidth - kLeft - kRight)
        << "\" height=\"" << num(std::max(1.0, y40 - y60)) << "\" fill=\"cyan\" fill-opacity=\"0.35\"/>\n";
    const double ym = f.y(input.baseline->mean_ratio);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(ym) << "\" x2=\"" << num(kWidth - kRight)
        << "\" y2=\"" << num(ym) << "\" stroke=\"teal\" stroke-dasharray=\"6 4\"/>\n";
  }

  // Axes and ticks.
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y0)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1)
      << "\" stroke=\"black\"/>\n";
  for (std::size_t p = 1; p <= static_cast<std::size_t>(f.p_hi); ++p) {
    const double x = f.x(static_cast<double>(p));
    out << "<text x=\"" << num(x) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">" << p << "</text>\n";
  }
  for (double r = f.r_lo; r <= f.r_hi + 1e-9; r += 0.05) {
    out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(f.y(r) + 4) << "\" text-anchor=\"end\">" << num(r)
        << "</text>\n";
  }
  out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\">p</text>\n";
  out << "<text x=\"16\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num((y0 + y1) / 2) << ")\">approximation ratio</text>\n";

  if (input.measured) {
    for (const CurvePoint& pt : input.measured->points) {
      for (double r : pt.sample_ratios) {
        out << "<circle cx=\"" << num(f.x(static_cast<double>(pt.p))) << "\" cy=\"" << num(f.y(r))
            << "\" r=\"1.5\" fill=\"gray\" fill-opacity=\"0.4\"/>\n";
      }
    }
    polyline(out, f, *input.measured, "blue");
  }
  if (input.ideal) polyline(out, f, *input.ideal, "red");
  out << "</svg>\n";
  return out.str();
}

}  // namespace qsat
