#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlas {

enum class Deployment { Onboard, Cloud };
enum class DetectorState { Off, Active };
enum class LlmState { Unloaded, LoadedIdle, Decoding };
enum class ProcessEvent { PromptReceived, DecodeFinished, DetectorStarted };
enum class PlanKind { Navigation, Manipulation };

std::string_view to_string(Deployment d);
std::string_view to_string(DetectorState s);
std::string_view to_string(LlmState s);
std::string_view to_string(ProcessEvent e);
std::string_view to_string(PlanKind k);
Deployment deployment_from(std::string_view s);

struct ProcessState {
  DetectorState detector = DetectorState::Off;
  LlmState llm = LlmState::LoadedIdle;
  Deployment config = Deployment::Onboard;

  /// Onboard keeps the planner loaded and idle; cloud never loads it.
  static ProcessState initial(Deployment config);

  friend bool operator==(const ProcessState&, const ProcessState&) = default;
};

class IllegalTransition : public std::logic_error {
 public:
  IllegalTransition(const ProcessState& s, ProcessEvent e);
};

/// Lifecycle of the detector and the onboard planner. The detector starts
/// once and stays on; the onboard planner decodes only between a prompt and
/// its completion.
ProcessState process_transition(const ProcessState& state, ProcessEvent event);

/// Default power, memory and latency figures for the two deployments.
struct ResourceProfile {
  double baseline_power_w = 6.0;
  double decode_power_w = 9.2;
  double ram_pct = 92.0;
  double swap_pct_cloud = 25.0;
  double swap_pct_onboard = 50.0;
  double latency_cloud_s = 0.020;
  double latency_onboard_nav_s = 8.0;
  double latency_onboard_manip_s = 10.0;

  void validate() const;
};

double decode_duration(const ResourceProfile& profile, PlanKind kind, Deployment config);

struct MetricsSample {
  double t = 0.0;
  double power_w = 0.0;
  double ram_pct = 0.0;
  double swap_pct = 0.0;

  friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

/// Piecewise-constant resource readings for a process state.
MetricsSample sample_resources(const ProcessState& state, const ResourceProfile& profile, double t);

/// Emits samples on a fixed period as simulation time passes.
class MetricsRecorder {
 public:
  explicit MetricsRecorder(double rate_hz = 2.0);

  /// Appends every sample whose time is <= now, reading the current state.
  /// Returns how many were appended.
  std::size_t advance(double now, const ProcessState& state, const ResourceProfile& profile);

  const std::vector<MetricsSample>& samples() const { return samples_; }
  double period() const { return period_; }

 private:
  double period_;
  std::uint64_t next_index_ = 0;
  std::vector<MetricsSample> samples_;
};

}  // namespace atlas
