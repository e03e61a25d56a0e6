#include <array>
#include <cmath>
#include <cstdio>

#include "serwalk/io.hpp"

namespace serwalk {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string render_svg(const Walk& w, const PlotOptions& opts) {
  if (w.empty()) throw InvalidArgument("empty trace");
  if (w.is_sparse() || w.dim() != 2) throw InvalidArgument("plot needs a 2-D walk");

  const auto origin = std::get<Point>(w.origin()).to_doubles();
  double xmin = origin[0], xmax = origin[0], ymin = origin[1], ymax = origin[1];
  for (std::size_t i = 0; i < w.size(); ++i) {
    xmin = std::min(xmin, w.coord(i, 0));
    xmax = std::max(xmax, w.coord(i, 0));
    ymin = std::min(ymin, w.coord(i, 1));
    ymax = std::max(ymax, w.coord(i, 1));
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 40.0;
  const double scale = std::min(opts.width - 2 * margin, opts.height - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - xmin) * scale; };
  auto sy = [&](double y) { return opts.height - margin - (y - ymin) * scale; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opts.width) + "\" height=\"" +
         num(opts.height) + "\" viewBox=\"0 0 " + num(opts.width) + " " + num(opts.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes through the origin when visible, else along the frame
  const double ax = (0.0 >= ymin && 0.0 <= ymax) ? sy(0.0) : sy(ymin);
  const double ay = (0.0 >= xmin && 0.0 <= xmax) ? sx(0.0) : sx(xmin);
  out += "<g stroke=\"#999\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(sx(xmin)) + "\" y1=\"" + num(ax) + "\" x2=\"" + num(sx(xmax)) + "\" y2=\"" + num(ax) +
         "\"/>\n";
  out += "<line x1=\"" + num(ay) + "\" y1=\"" + num(sy(ymin)) + "\" x2=\"" + num(ay) + "\" y2=\"" + num(sy(ymax)) +
         "\"/>\n";
  out += "</g>\n";

  const std::array<std::pair<double, const char*>, 4> ticks = {
      {{0.5, "1/2"}, {1.0, "1"}, {1.5, "3/2"}, {2.0, "2"}}};
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (const auto& [t, label] : ticks) {
    if (t >= xmin - 1e-12 && t <= xmax + 1e-12)
      out += "<text x=\"" + num(sx(t)) + "\" y=\"" + num(ax + 14) + "\" text-anchor=\"middle\">" + label +
             "</text>\n";
    if (t >= ymin - 1e-12 && t <= ymax + 1e-12)
      out += "<text x=\"" + num(ay - 6) + "\" y=\"" + num(sy(t) + 4) + "\" text-anchor=\"end\">" + label +
             "</text>\n";
  }
  out += "</g>\n";

  double px = origin[0], py = origin[1];
  const std::size_t phases = std::max<std::size_t>(w.phase_count(), 1);
  for (std::size_t p = 0; p <= phases; ++p) {
    const std::size_t lo = p < w.phase_count() ? w.phase_begin(p) : (w.phase_count() ? w.phase_ends().back() : 0);
    const std::size_t hi = p < w.phase_count() ? w.phase_end(p) : w.size();
    if (lo >= hi) continue;
    std::string pts = num(sx(px)) + "," + num(sy(py));
    for (std::size_t i = lo; i < hi; ++i) {
      px = w.coord(i, 0);
      py = w.coord(i, 1);
      pts += " " + num(sx(px)) + "," + num(sy(py));
    }
    out += "<polyline class=\"phase-" + std::to_string(p + 1) + "\" fill=\"none\" stroke=\"" +
           kPalette[p % kPalette.size()] + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  if (opts.mark_points) {
    out += "<g fill=\"#000\">\n";
    for (std::size_t i = 0; i < w.size(); ++i)
      out += "<circle cx=\"" + num(sx(w.coord(i, 0))) + "\" cy=\"" + num(sy(w.coord(i, 1))) + "\" r=\"1.5\"/>\n";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace serwalk
