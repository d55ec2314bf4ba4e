#include "atlas/scheduler.hpp"

#include <cstdint>

namespace atlas {

std::string_view to_string(Deployment d) { return d == Deployment::Onboard ? "onboard" : "cloud"; }
std::string_view to_string(DetectorState s) { return s == DetectorState::Off ? "off" : "active"; }

std::string_view to_string(LlmState s) {
  switch (s) {
    case LlmState::Unloaded: return "unloaded";
    case LlmState::LoadedIdle: return "loaded_idle";
    case LlmState::Decoding: return "decoding";
  }
  return "?";
}

std::string_view to_string(ProcessEvent e) {
  switch (e) {
    case ProcessEvent::PromptReceived: return "prompt_received";
    case ProcessEvent::DecodeFinished: return "decode_finished";
    case ProcessEvent::DetectorStarted: return "detector_started";
  }
  return "?";
}

std::string_view to_string(PlanKind k) {
  return k == PlanKind::Navigation ? "navigation" : "manipulation";
}

Deployment deployment_from(std::string_view s) {
  if (s == "onboard") return Deployment::Onboard;
  if (s == "cloud") return Deployment::Cloud;
  throw std::invalid_argument("unknown deployment config: " + std::string(s));
}

ProcessState ProcessState::initial(Deployment config) {
  return {DetectorState::Off,
          config == Deployment::Onboard ? LlmState::LoadedIdle : LlmState::Unloaded, config};
}

IllegalTransition::IllegalTransition(const ProcessState& s, ProcessEvent e)
    : std::logic_error("illegal transition: " + std::string(to_string(e)) + " in state (" +
                       std::string(to_string(s.detector)) + ", " + std::string(to_string(s.llm)) +
                       ", " + std::string(to_string(s.config)) + ")") {}

ProcessState process_transition(const ProcessState& state, ProcessEvent event) {
  ProcessState next = state;
  switch (event) {
    case ProcessEvent::DetectorStarted:
      if (state.detector == DetectorState::Active) throw IllegalTransition(state, event);
      next.detector = DetectorState::Active;
      return next;
    case ProcessEvent::PromptReceived:
      if (state.config == Deployment::Cloud) {
        if (state.llm != LlmState::Unloaded) throw IllegalTransition(state, event);
        return next;
      }
      if (state.llm != LlmState::LoadedIdle) throw IllegalTransition(state, event);
      next.llm = LlmState::Decoding;
      return next;
    case ProcessEvent::DecodeFinished:
      if (state.config == Deployment::Cloud) {
        if (state.llm != LlmState::Unloaded) throw IllegalTransition(state, event);
        return next;
      }
      if (state.llm != LlmState::Decoding) throw IllegalTransition(state, event);
      next.llm = LlmState::LoadedIdle;
      return next;
  }
  throw IllegalTransition(state, event);
}

void ResourceProfile::validate() const {
  for (double v : {baseline_power_w, decode_power_w, ram_pct, swap_pct_cloud, swap_pct_onboard,
                   latency_cloud_s, latency_onboard_nav_s, latency_onboard_manip_s}) {
    if (!(v >= 0.0)) throw std::invalid_argument("resource profile values must be non-negative");
  }
  if (decode_power_w < baseline_power_w) {
    throw std::invalid_argument("decode power must not be below baseline power");
  }
}

double decode_duration(const ResourceProfile& profile, PlanKind kind, Deployment config) {
  if (config == Deployment::Cloud) return profile.latency_cloud_s;
  return kind == PlanKind::Navigation ? profile.latency_onboard_nav_s
                                      : profile.latency_onboard_manip_s;
}

MetricsSample sample_resources(const ProcessState& state, const ResourceProfile& profile, double t) {
  MetricsSample s;
  s.t = t;
  s.power_w = state.llm == LlmState::Decoding ? profile.decode_power_w : profile.baseline_power_w;
  s.ram_pct = profile.ram_pct;
  s.swap_pct = state.config == Deployment::Onboard ? profile.swap_pct_onboard
                                                   : profile.swap_pct_cloud;
  return s;
}

MetricsRecorder::MetricsRecorder(double rate_hz) : period_(1.0 / rate_hz) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

std::size_t MetricsRecorder::advance(double now, const ProcessState& state,
                                     const ResourceProfile& profile) {
  std::size_t added = 0;
  for (double t = static_cast<double>(next_index_) * period_; t <= now;
       t = static_cast<double>(next_index_) * period_) {
    samples_.push_back(sample_resources(state, profile, t));
    ++next_index_;
    ++added;
  }
  return added;
}

}  // namespace atlas
