#include "ipmlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ipmlab {
namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 90, kRight = 170, kTop = 40, kBottom = 70;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::pow(10.0, e));
  return buf;
}

}  // namespace

std::string render_rate_svg(std::span<const RateReport> reports) {
  if (reports.empty()) throw std::invalid_argument("render_rate_svg: nothing to plot");
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& r : reports)
    for (const auto& row : r.rows) {
      if (!(row.mean_error > 0.0)) continue;
      const double lx = std::log10(static_cast<double>(row.n)), ly = std::log10(row.mean_error);
      x0 = std::min(x0, lx);
      x1 = std::max(x1, lx);
      y0 = std::min(y0, ly);
      y1 = std::max(y1, ly);
    }
  if (!std::isfinite(x0)) throw std::invalid_argument("render_rate_svg: no positive errors");
  x0 = std::floor(x0 * 10.0) / 10.0;
  x1 = std::ceil(x1 * 10.0) / 10.0;
  y0 = std::floor(y0 * 10.0) / 10.0;
  y1 = std::ceil(y1 * 10.0) / 10.0;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
    << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks at integer and half decades that fall inside the range.
  for (double e = std::ceil(x0 * 2.0) / 2.0; e <= x1 + 1e-9; e += 0.5) {
    const double x = px(e);
    s << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x)
      << "\" y2=\"" << num(kTop + ph + 6) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 20)
      << "\" text-anchor=\"middle\">" << tick_label(e) << "</text>\n";
  }
  for (double e = std::ceil(y0 * 2.0) / 2.0; e <= y1 + 1e-9; e += 0.5) {
    const double y = py(e);
    s << "<line x1=\"" << num(kLeft - 6) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\">" << tick_label(e) << "</text>\n";
  }
  s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 20)
    << "\" text-anchor=\"middle\">n (sample size, log scale)</text>\n"
    << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" "
    << "transform=\"rotate(-90 20 " << num(kTop + ph / 2)
    << ")\">mean absolute error (log scale)</text>\n";

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RateReport& r = reports[i];
    const char* color = kColors[i % std::size(kColors)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& row : r.rows) {
      if (!(row.mean_error > 0.0)) continue;
      s << (first ? "" : " ") << num(px(std::log10(static_cast<double>(row.n)))) << ','
        << num(py(std::log10(row.mean_error)));
      first = false;
    }
    s << "\"/>\n";
    // Fitted line: ln e = a + b ln n, identical in log10 coordinates up to a/ln10.
    const double fa = r.fit.intercept / std::log(10.0), fb = r.fit.slope;
    s << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(fa + fb * x0)) << "\" x2=\""
      << num(px(x1)) << "\" y2=\"" << num(py(fa + fb * x1)) << "\" stroke=\"" << color
      << "\" stroke-dasharray=\"6 4\"/>\n";
    const double ly = kTop + 20 + 36.0 * static_cast<double>(i);
    s << "<text x=\"" << num(kLeft + pw + 12) << "\" y=\"" << num(ly) << "\" fill=\"" << color
      << "\">" << family_name(r.config.family) << "</text>\n"
      << "<text x=\"" << num(kLeft + pw + 12) << "\" y=\"" << num(ly + 15) << "\" fill=\""
      << color << "\">slope " << num(r.fit.slope) << " (theory " << num(r.theoretical_exponent)
      << ")</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace ipmlab
