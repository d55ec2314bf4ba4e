#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "atlas/scheduler.hpp"

namespace atlas {

struct LatencyPoint {
  double t = 0.0;
  double latency_s = 0.0;
  PlanKind kind = PlanKind::Navigation;
};

struct DecodeInterval {
  double start = 0.0;
  double end = 0.0;
};

/// Writes power.svg, ram.svg, swap.svg and latency.svg into out_dir.
/// Returns the written paths.
std::vector<std::filesystem::path> write_metric_panels(const std::vector<MetricsSample>& samples,
                                                       const std::vector<LatencyPoint>& latencies,
                                                       const std::vector<DecodeInterval>& decodes,
                                                       const std::filesystem::path& out_dir);

}  // namespace atlas
