#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ltcsim {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct SvgChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 1000;
  int height = 420;
};

// Static line chart with axes and a legend. Output bytes are a pure function
// of the inputs, so regenerated plots are byte-identical.
void write_svg_chart(const std::filesystem::path& path, const SvgChartSpec& spec,
                     const std::vector<SvgSeries>& series);

}  // namespace ltcsim
