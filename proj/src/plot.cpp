#include "atlas/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "atlas/serialization.hpp"

namespace atlas {

namespace {

constexpr double kWidth = 640, kHeight = 240;
constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 40;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axes {
  double t0, t1, y0, y1;
  double x(double t) const { return kLeft + (t - t0) / (t1 - t0) * (kWidth - kLeft - kRight); }
  double y(double v) const { return kHeight - kBottom - (v - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

std::string frame(const std::string& title, const std::string& unit, const Axes& ax,
                  const std::vector<DecodeInterval>& decodes) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
                  fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& d : decodes) {
    const double a = std::max(ax.x(d.start), kLeft);
    const double b = std::min(ax.x(d.end), kWidth - kRight);
    if (b <= a) continue;
    s += "<rect x=\"" + fmt(a) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(b - a) + "\" height=\"" +
         fmt(kHeight - kTop - kBottom) + "\" fill=\"#f5d7a1\" opacity=\"0.6\"/>\n";
  }
  s += "<text x=\"" + fmt(kLeft) + "\" y=\"18\" font-size=\"13\">" + title + "</text>\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" + fmt(kWidth - kRight) +
       "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) + "\" y2=\"" +
       fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = ax.y0 + (ax.y1 - ax.y0) * i / 4.0;
    const double t = ax.t0 + (ax.t1 - ax.t0) * i / 4.0;
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(ax.y(v) + 4) + "\" text-anchor=\"end\">" + fmt(v) +
         "</text>\n";
    s += "<text x=\"" + fmt(ax.x(t)) + "\" y=\"" + fmt(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\">" + fmt(t) + "</text>\n";
  }
  s += "<text x=\"" + fmt((kWidth + kLeft) / 2) + "\" y=\"" + fmt(kHeight - 6) +
       "\" text-anchor=\"middle\">simulation time (s)</text>\n";
  s += "<text x=\"14\" y=\"" + fmt(kHeight / 2) + "\" transform=\"rotate(-90 14 " + fmt(kHeight / 2) +
       ")\" text-anchor=\"middle\">" + unit + "</text>\n";
  return s;
}

std::string series_panel(const std::string& title, const std::string& unit,
                         const std::vector<MetricsSample>& samples,
                         const std::function<double(const MetricsSample&)>& value,
                         const std::vector<DecodeInterval>& decodes, double y_max) {
  const double t1 = samples.empty() ? 1.0 : std::max(samples.back().t, 1.0);
  Axes ax{0.0, t1, 0.0, y_max};
  std::string s = frame(title, unit, ax, decodes);
  if (samples.empty()) {
    s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight / 2) +
         "\" text-anchor=\"middle\">no samples</text>\n";
  } else {
    s += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (const auto& m : samples) s += fmt(ax.x(m.t)) + "," + fmt(ax.y(value(m))) + " ";
    s += "\"/>\n";
  }
  return s + "</svg>\n";
}

}  // namespace

std::vector<std::filesystem::path> write_metric_panels(const std::vector<MetricsSample>& samples,
                                                       const std::vector<LatencyPoint>& latencies,
                                                       const std::vector<DecodeInterval>& decodes,
                                                       const std::filesystem::path& out_dir) {
  double max_power = 10.0;
  for (const auto& m : samples) max_power = std::max(max_power, m.power_w * 1.1);

  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& svg) {
    written.push_back(out_dir / name);
    write_text(written.back(), svg);
  };
  put("power.svg", series_panel("Total power", "W", samples,
                                [](const MetricsSample& m) { return m.power_w; }, decodes, max_power));
  put("ram.svg", series_panel("RAM utilization", "%", samples,
                              [](const MetricsSample& m) { return m.ram_pct; }, decodes, 100.0));
  put("swap.svg", series_panel("Swap utilization", "%", samples,
                               [](const MetricsSample& m) { return m.swap_pct; }, decodes, 100.0));

  double t1 = samples.empty() ? 1.0 : std::max(samples.back().t, 1.0);
  double y1 = 1.0;
  for (const auto& l : latencies) {
    t1 = std::max(t1, l.t);
    y1 = std::max(y1, l.latency_s * 1.2);
  }
  Axes ax{0.0, t1, 0.0, y1};
  std::string s = frame("Planning latency", "s", ax, decodes);
  if (latencies.empty()) {
    s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight / 2) +
         "\" text-anchor=\"middle\">no tasks</text>\n";
  }
  for (const auto& l : latencies) {
    const char* color = l.kind == PlanKind::Navigation ? "#2a8a3e" : "#b8322a";
    s += "<circle cx=\"" + fmt(ax.x(l.t)) + "\" cy=\"" + fmt(ax.y(l.latency_s)) + "\" r=\"4\" fill=\"" +
         color + "\"/>\n";
  }
  put("latency.svg", s + "</svg>\n");
  return written;
}

}  // namespace atlas
