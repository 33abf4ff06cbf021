#include "wnv/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wnv/model.hpp"

namespace wnv {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 62.0;
constexpr double kRight = 16.0;
constexpr double kTop = 18.0;
constexpr double kBottom = 46.0;

const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string px(double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

struct Mapper {
  AxisRange x, y;
  double sx(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
  double sy(double v) const {
    return kTop + (y.hi - v) / (y.hi - y.lo) * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& os, const Mapper& m, const std::string& x_label,
          const std::string& y_label) {
  os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
     << px(kWidth - kLeft - kRight) << "\" height=\"" << px(kHeight - kTop - kBottom)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = m.x.lo + (m.x.hi - m.x.lo) * i / 4.0;
    const double yv = m.y.lo + (m.y.hi - m.y.lo) * i / 4.0;
    const double sx = m.sx(xv);
    const double sy = m.sy(yv);
    os << "<line x1=\"" << px(sx) << "\" y1=\"" << px(kHeight - kBottom) << "\" x2=\"" << px(sx)
       << "\" y2=\"" << px(kHeight - kBottom + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(sx) << "\" y=\"" << px(kHeight - kBottom + 18)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    os << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy) << "\" x2=\"" << px(kLeft)
       << "\" y2=\"" << px(sy) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  os << "<text x=\"" << px(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\""
     << px(kHeight - 10) << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << px(kTop + (kHeight - kTop - kBottom) / 2)
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << px(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << y_label << "</text>\n";
}

std::string polyline(const Mapper& m, const std::vector<std::pair<double, double>>& pts,
                     const std::string& color, const char* dash = nullptr) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\"";
  if (dash) os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << px(m.sx(pts[i].first)) << ',' << px(m.sy(pts[i].second));
  }
  os << "\"/>\n";
  return os.str();
}

void legend(std::ostringstream& os, const std::vector<std::pair<std::string, std::string>>& items) {
  double y = kTop + 14.0;
  for (const auto& [label, color] : items) {
    if (label.empty()) continue;
    os << "<line x1=\"" << px(kWidth - kRight - 150) << "\" y1=\"" << px(y - 4) << "\" x2=\""
       << px(kWidth - kRight - 128) << "\" y2=\"" << px(y - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << px(kWidth - kRight - 122) << "\" y=\"" << px(y)
       << "\" font-size=\"11\">" << label << "</text>\n";
    y += 15.0;
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct Extent {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  bool any = false;
  void add(double x, double y) {
    if (!any) {
      x_min = x_max = x;
      y_min = y_max = y;
      any = true;
    } else {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
};

std::string pick_color(const Series& s, std::size_t i) {
  return s.color.empty() ? kPalette[i % std::size(kPalette)] : s.color;
}

}  // namespace

AxisRange plot_range(double min_v, double max_v) {
  if (!(max_v > min_v)) return {min_v - 0.5, max_v + 0.5};
  const double margin = 0.05 * (max_v - min_v);
  return {min_v - margin, max_v + margin};
}

void emit_svg(const PhasePlot& data, const std::filesystem::path& path) {
  Extent ext;
  for (const auto& s : data.trajectories)
    for (const auto& [x, y] : s.points) ext.add(x, y);
  if (!ext.any) throw std::invalid_argument("emit_svg: phase plot has no data");

  Mapper m{plot_range(ext.x_min, ext.x_max), plot_range(ext.y_min, ext.y_max)};
  std::ostringstream os;
  open_svg(os);
  axes(os, m, "M (mosquitoes)", "I_b (infected birds)");

  // vertical isocline at the endemic mosquito level
  const auto eq = equilibria(data.params);
  if (eq.endemic_exists && eq.endemic->M > m.x.lo && eq.endemic->M < m.x.hi) {
    os << polyline(m, {{eq.endemic->M, m.y.lo}, {eq.endemic->M, m.y.hi}}, "#2ca02c");
  }
  // infected-bird isocline sampled across the window
  {
    std::vector<std::pair<double, double>> pts;
    const double x0 = std::max(m.x.lo, 0.0);
    for (int i = 0; i <= 200; ++i) {
      const double x = x0 + (m.x.hi - x0) * i / 200.0;
      pts.push_back({x, infected_nullcline(x, data.params)});
    }
    os << polyline(m, pts, "#1f77b4");
  }
  if (data.policy) {
    os << polyline(m, {{m.x.lo, data.policy->H_b}, {m.x.hi, data.policy->H_b}}, "#555555", "6,4");
    const double reset = (1.0 - data.policy->q) * data.policy->H_b;
    os << polyline(m, {{m.x.lo, reset}, {m.x.hi, reset}}, "#999999", "6,4");
  }

  std::vector<std::pair<std::string, std::string>> items;
  for (std::size_t i = 0; i < data.trajectories.size(); ++i) {
    const auto& s = data.trajectories[i];
    if (s.points.empty()) continue;
    const auto color = pick_color(s, i);
    os << polyline(m, s.points, color);
    items.push_back({s.label, color});
  }
  legend(os, items);
  os << "</svg>\n";
  write_file(path, os.str());
}

void emit_svg(const TimeseriesPlot& data, const std::filesystem::path& path) {
  Extent ext;
  for (const auto& s : data.series)
    for (const auto& [x, y] : s.points) ext.add(x, y);
  if (!ext.any) throw std::invalid_argument("emit_svg: timeseries has no data");

  Mapper m{plot_range(ext.x_min, ext.x_max), plot_range(ext.y_min, ext.y_max)};
  std::ostringstream os;
  open_svg(os);
  axes(os, m, "t (days)", data.y_label.empty() ? "value" : data.y_label);
  std::vector<std::pair<std::string, std::string>> items;
  for (std::size_t i = 0; i < data.series.size(); ++i) {
    const auto& s = data.series[i];
    if (s.points.empty()) continue;
    const auto color = pick_color(s, i);
    os << polyline(m, s.points, color);
    items.push_back({s.label, color});
  }
  legend(os, items);
  os << "</svg>\n";
  write_file(path, os.str());
}

void emit_svg(const BifurcationPlot& data, const std::filesystem::path& path) {
  if (data.points.empty()) throw std::invalid_argument("emit_svg: bifurcation plot has no data");
  Extent ext;
  for (const auto& [x, y] : data.points) ext.add(x, y);

  Mapper m{plot_range(ext.x_min, ext.x_max), plot_range(ext.y_min, ext.y_max)};
  std::ostringstream os;
  open_svg(os);
  axes(os, m, data.param_name, "post-impulse M");
  for (const auto& [x, y] : data.points) {
    os << "<circle cx=\"" << px(m.sx(x)) << "\" cy=\"" << px(m.sy(y))
       << "\" r=\"1.3\" fill=\"#d62728\"/>\n";
  }
  os << "</svg>\n";
  write_file(path, os.str());
}

}  // namespace wnv
