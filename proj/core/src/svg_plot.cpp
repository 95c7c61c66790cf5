#include "ltcsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ltcsim/csv.hpp"
#include "ltcsim/errors.hpp"

namespace ltcsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  // round to 3 decimals for svg coordinates; stable and compact
  const double r = std::round(v * 1000.0) / 1000.0;
  return format_double(r == 0.0 ? 0.0 : r);  // avoid "-0"
}

std::string axis_label(double v) {
  const double a = std::abs(v);
  if (a != 0.0 && (a >= 1e5 || a < 1e-2)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
  }
  const double r = std::round(v * 100.0) / 100.0;
  return format_double(r == 0.0 ? 0.0 : r);
}

}  // namespace

void write_svg_chart(const std::filesystem::path& path, const SvgChartSpec& spec,
                     const std::vector<SvgSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmin <= xmax)) {
    xmin = 0;
    xmax = 1;
  }
  if (!(ymin <= ymax)) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double ml = 70, mr = 160, mt = 40, mb = 50;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;
  auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return mt + ph - (v - ymin) / (ymax - ymin) * ph; };

  std::ofstream f(path);
  if (!f) throw IoError("write_svg_chart: cannot open " + path.string());
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<text x=\"" << spec.width / 2 << "\" y=\"22\" font-family=\"sans-serif\" "
       "font-size=\"15\" text-anchor=\"middle\">"
    << spec.title << "</text>\n";

  // frame and gridlines
  f << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(pw)
    << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    f << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(sy(yv)) << "\" x2=\"" << fmt(ml + pw)
      << "\" y2=\"" << fmt(sy(yv)) << "\" stroke=\"#ddd\"/>\n";
    f << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(sy(yv) + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << axis_label(yv) << "</text>\n";
    f << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << fmt(mt + ph + 16)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
      << axis_label(xv) << "</text>\n";
  }
  f << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 12
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
    << spec.x_label << "</text>\n";
  f << "<text x=\"16\" y=\"" << fmt(mt + ph / 2)
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 16 "
    << fmt(mt + ph / 2) << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\"";
    if (s.dashed) f << " stroke-dasharray=\"5 3\"";
    f << " points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (k) f << ' ';
      f << fmt(sx(s.x[k])) << ',' << fmt(sy(s.y[k]));
    }
    f << "\"/>\n";
    const double ly = mt + 14 + 16 * static_cast<double>(i);
    f << "<line x1=\"" << fmt(ml + pw + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
      << fmt(ml + pw + 34) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"";
    if (s.dashed) f << " stroke-dasharray=\"5 3\"";
    f << "/>\n";
    f << "<text x=\"" << fmt(ml + pw + 38) << "\" y=\"" << fmt(ly)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  f << "</svg>\n";
  if (!f) throw IoError("write_svg_chart: write failed for " + path.string());
}

}  // namespace ltcsim
