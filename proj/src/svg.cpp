#include "acara/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace acara {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 42.0, kBottom = 54.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct LogMap {
  double lx0, lx1, ly0, ly1;
  double x(double k) const {
    return kLeft + (std::log10(k) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
  }
  double y(double v) const {
    return kTop + (ly1 - std::log10(v)) / (ly1 - ly0) * (kHeight - kTop - kBottom);
  }
};

}  // namespace

std::string emit_svg(const ExperimentReport& report) {
  if (report.series.empty() || report.max_k < 1)
    throw std::invalid_argument("emit_svg: nothing to plot");
  bool any_point = false;
  for (const MethodSeries& s : report.series)
    for (int c : s.count)
      if (c > 0) any_point = true;
  if (!any_point) throw std::invalid_argument("emit_svg: all series are empty");

  double vmin = 1.0, vmax = 1.0;  // the guide line spans [max_k^{-1/2}, 1]
  vmin = std::pow(double(report.max_k), -0.5);
  for (const MethodSeries& s : report.series)
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      if (s.count[i] == 0) continue;
      const double lo = s.mean[i] - s.stddev[i];
      const double hi = s.mean[i] + s.stddev[i];
      if (s.mean[i] > 0.0) vmin = std::min(vmin, s.mean[i]);
      if (lo > 0.0) vmin = std::min(vmin, lo);
      vmax = std::max(vmax, hi);
    }
  vmin = std::max(vmin * 0.5, 1e-16);
  vmax *= 2.0;

  LogMap map{0.0, std::log10(std::max<double>(2.0, double(report.max_k))), std::log10(vmin),
             std::log10(vmax)};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << int(kWidth) << "\" height=\""
      << int(kHeight) << "\" viewBox=\"0 0 " << int(kWidth) << " " << int(kHeight) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << report.config.instance
      << " instance, d=" << report.config.d << ", " << to_string(report.config.kind)
      << " p=" << report.config.p << ", samples=" << report.config.samples << "</text>\n";

  // axes and decade ticks
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int e = 0; e <= int(std::floor(map.lx1)); ++e) {
    const double k = std::pow(10.0, e);
    const double x = map.x(k);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kHeight - kBottom) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 16)
        << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = int(std::ceil(map.ly0)); e <= int(std::floor(map.ly1)); ++e) {
    const double v = std::pow(10.0, e);
    const double y = map.y(v);
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" text-anchor=\"middle\">iteration k</text>\n";
  svg << "<text x=\"18\" y=\"" << num((kTop + kHeight - kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num((kTop + kHeight - kBottom) / 2) << ")\">error</text>\n";
  svg << "</g>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kWidth - kLeft - kRight) << "\" height=\"" << num(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // k^{-1/2} guide: straight in log-log coordinates
  svg << "<line x1=\"" << num(map.x(1.0)) << "\" y1=\"" << num(map.y(1.0)) << "\" x2=\""
      << num(map.x(double(report.max_k))) << "\" y2=\""
      << num(map.y(std::pow(double(report.max_k), -0.5)))
      << "\" stroke=\"#999\" stroke-width=\"1.5\"/>\n";

  const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t si = 0; si < report.series.size(); ++si) {
    const MethodSeries& s = report.series[si];
    const std::string& color = colors[si % colors.size()];
    const bool dashed = s.method == Method::greedy;

    // one-sigma band
    std::ostringstream band;
    std::vector<std::pair<double, double>> upper;
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      if (s.count[i] == 0 || s.mean[i] <= 0.0) continue;
      const double k = double(i + 1);
      upper.emplace_back(map.x(k), map.y(std::max(s.mean[i] + s.stddev[i], vmin)));
    }
    if (upper.size() >= 2) {
      band << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (const auto& [x, y] : upper) band << num(x) << "," << num(y) << " ";
      for (std::size_t i = s.mean.size(); i-- > 0;) {
        if (s.count[i] == 0 || s.mean[i] <= 0.0) continue;
        const double k = double(i + 1);
        band << num(map.x(k)) << "," << num(map.y(std::max(s.mean[i] - s.stddev[i], vmin))) << " ";
      }
      band << "\"/>\n";
      svg << band.str();
    }

    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
    if (dashed) svg << " stroke-dasharray=\"7,4\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
      if (s.count[i] == 0 || s.mean[i] <= 0.0) continue;
      svg << num(map.x(double(i + 1))) << "," << num(map.y(std::max(s.mean[i], vmin))) << " ";
    }
    svg << "\"/>\n";

    const double ly = kTop + 18.0 + 18.0 * double(si);
    svg << "<line x1=\"" << num(kWidth - kRight - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kWidth - kRight - 120) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"" << (dashed ? " stroke-dasharray=\"7,4\"" : "") << "/>\n";
    svg << "<text x=\"" << num(kWidth - kRight - 114) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << to_string(s.method)
        << " (mean &#177; std)</text>\n";
  }
  const double gy = kTop + 18.0 + 18.0 * double(report.series.size());
  svg << "<line x1=\"" << num(kWidth - kRight - 150) << "\" y1=\"" << num(gy) << "\" x2=\""
      << num(kWidth - kRight - 120) << "\" y2=\"" << num(gy)
      << "\" stroke=\"#999\" stroke-width=\"1.5\"/>\n";
  svg << "<text x=\"" << num(kWidth - kRight - 114) << "\" y=\"" << num(gy + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\">k^(-1/2) guide</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace acara
