#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mdmt/bench.hpp"
#include "mdmt/io.hpp"

namespace mdmt::bench {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

} // namespace

std::string render_svg(const Instance& instance, const Solution& solution) {
  constexpr double kPlot = 600.0;
  constexpr double kMargin = 30.0;
  constexpr double kLegend = 240.0;

  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
  bool first = true;
  auto grow = [&](double x, double y) {
    if (first) {
      lo_x = hi_x = x;
      lo_y = hi_y = y;
      first = false;
      return;
    }
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const auto& d : instance.depots()) {
    grow(d.x, d.y);
  }
  for (const auto& t : instance.targets()) {
    grow(t.x, t.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = kPlot / span;
  auto px = [&](double x) { return kMargin + (x - lo_x) * scale; };
  auto py = [&](double y) { return kMargin + (hi_y - y) * scale; }; // y grows upwards

  auto xy = [&](int node) -> std::pair<double, double> {
    if (node < instance.n_targets()) {
      return {instance.targets()[node].x, instance.targets()[node].y};
    }
    const auto& d = instance.depots()[node - instance.n_targets()];
    return {d.x, d.y};
  };

  std::ostringstream svg;
  const double width = kPlot + 2 * kMargin + kLegend;
  const double height = kPlot + 2 * kMargin;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n"
      << "<rect x=\"" << fmt(px(lo_x)) << "\" y=\"" << fmt(py(hi_y)) << "\" width=\""
      << fmt((hi_x - lo_x) * scale) << "\" height=\"" << fmt((hi_y - lo_y) * scale)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (std::size_t t = 0; t < solution.trips.size(); ++t) {
    const Trip& trip = solution.trips[t];
    const char* colour = kPalette[trip.vehicle % std::size(kPalette)];
    const int home = instance.home_node(trip.vehicle);
    svg << "<polygon class=\"trip\" data-vehicle=\"" << instance.vehicles()[trip.vehicle].id
        << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    const auto [hx, hy] = xy(home);
    svg << fmt(px(hx)) << ',' << fmt(py(hy));
    for (int i : trip.sequence.nodes()) {
      const auto [x, y] = xy(i);
      svg << ' ' << fmt(px(x)) << ',' << fmt(py(y));
    }
    svg << "\"/>\n";
  }

  for (const auto& t : instance.targets()) {
    svg << "<circle class=\"target\" cx=\"" << fmt(px(t.x)) << "\" cy=\"" << fmt(py(t.y))
        << "\" r=\"4\" fill=\"black\"/>\n";
  }
  for (const auto& d : instance.depots()) {
    svg << "<rect class=\"depot\" x=\"" << fmt(px(d.x) - 7) << "\" y=\"" << fmt(py(d.y) - 7)
        << "\" width=\"14\" height=\"14\" fill=\"#444444\"/>\n";
  }

  std::vector<double> loads(instance.n_vehicles(), 0.0);
  for (const Trip& trip : solution.trips) {
    loads[trip.vehicle] += trip.duration;
  }
  const double legend_x = kPlot + 2 * kMargin + 10;
  double legend_y = kMargin + 10;
  svg << "<text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y)
      << "\" font-family=\"sans-serif\" font-size=\"14\">tau = " << fmt(solution.tau)
      << " min</text>\n";
  for (int u = 0; u < instance.n_vehicles(); ++u) {
    legend_y += 20;
    svg << "<rect x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y - 10)
        << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[u % std::size(kPalette)] << "\"/>\n"
        << "<text x=\"" << fmt(legend_x + 18) << "\" y=\"" << fmt(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">vehicle " << instance.vehicles()[u].id
        << ": " << fmt(loads[u]) << " min</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_solution(const Instance& instance, const Solution& solution,
                     const std::filesystem::path& path) {
  io::write_text_file(path, render_svg(instance, solution));
}

} // namespace mdmt::bench
