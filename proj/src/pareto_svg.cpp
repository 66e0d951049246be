#include "pcaretain/pareto_svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pcaretain/errors.hpp"

namespace pcaretain {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 740.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 440.0;

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

}  // namespace

std::string render_pareto_svg(const ParetoData& data) {
  const std::size_t p = data.individual_percent.size();
  if (p == 0) throw DataError("render_pareto_svg: empty data");

  const double plot_w = kRight - kLeft;
  const double plot_h = kBottom - kTop;
  auto x_center = [&](std::size_t k) {
    return kLeft + plot_w * (static_cast<double>(k) + 0.5) / static_cast<double>(p);
  };
  auto y_of = [&](double percent) { return kBottom - plot_h * percent / 100.0; };
  const double bar_w = 0.7 * plot_w / static_cast<double>(p);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"18\">Pareto chart of explained "
         "variance</text>\n";

  // Axes and percentage gridlines.
  svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft)
      << "\" y2=\"" << fmt(kBottom) << "\"/>\n";
  svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kBottom) << "\" x2=\""
      << fmt(kRight) << "\" y2=\"" << fmt(kBottom) << "\"/>\n";
  svg << "</g>\n";
  for (int tick = 0; tick <= 100; tick += 20) {
    const double y = y_of(tick);
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(kLeft) << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 10) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << tick
        << "%</text>\n";
  }

  for (std::size_t k = 0; k < p; ++k) {
    const double xc = x_center(k);
    const double y = y_of(data.individual_percent[k]);
    svg << "<rect id=\"bar-" << (k + 1) << "\" x=\"" << fmt(xc - bar_w / 2) << "\" y=\""
        << fmt(y) << "\" width=\"" << fmt(bar_w) << "\" height=\"" << fmt(kBottom - y)
        << "\" fill=\"#4878a8\"/>\n";
    svg << "<text x=\"" << fmt(xc) << "\" y=\"" << fmt(kBottom + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << data.component_ids[k] << "</text>\n";
  }

  svg << "<polyline id=\"cum-line\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" "
         "points=\"";
  for (std::size_t k = 0; k < p; ++k) {
    if (k) svg << ' ';
    svg << fmt(x_center(k)) << ',' << fmt(y_of(data.cumulative_percent[k]));
  }
  svg << "\"/>\n";
  for (std::size_t k = 0; k < p; ++k) {
    svg << "<circle id=\"cum-marker-" << (k + 1) << "\" cx=\"" << fmt(x_center(k))
        << "\" cy=\"" << fmt(y_of(data.cumulative_percent[k]))
        << "\" r=\"3.5\" fill=\"#c0392b\"/>\n";
  }

  const double cutoff_y = y_of(data.cutoff_percent);
  svg << "<line id=\"cutoff-line\" x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(cutoff_y)
      << "\" x2=\"" << fmt(kRight) << "\" y2=\"" << fmt(cutoff_y)
      << "\" stroke=\"#2d7d46\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  svg << "<text x=\"" << fmt(kRight + 4) << "\" y=\"" << fmt(cutoff_y + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#2d7d46\">"
      << fmt(data.cutoff_percent) << "%</text>\n";

  const double cutoff_x = x_center(static_cast<std::size_t>(data.cutoff_index) - 1);
  svg << "<line id=\"cutoff-marker\" x1=\"" << fmt(cutoff_x) << "\" y1=\"" << fmt(kTop)
      << "\" x2=\"" << fmt(cutoff_x) << "\" y2=\"" << fmt(kBottom)
      << "\" stroke=\"#2d7d46\" stroke-width=\"1.5\" stroke-dasharray=\"2,4\"/>\n";
  svg << "<text x=\"" << fmt(cutoff_x) << "\" y=\"" << fmt(kTop - 8)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#2d7d46\">retain "
      << data.cutoff_index << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_pareto_svg(const ParetoData& data, const std::filesystem::path& path) {
  const std::string svg = render_pareto_svg(data);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << svg;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace pcaretain
