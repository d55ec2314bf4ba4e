#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "atlas/executor.hpp"

namespace atlas {

/// Everything that determines a headless run.
struct RunConfig {
  std::filesystem::path scenario_path;
  PlannerKind planner = PlannerKind::Template;
  std::optional<RemoteEndpoint> endpoint;
  KBMode kb_mode = KBMode::Growing;
  ExecMode exec_mode = ExecMode::Lenient;
  Deployment config = Deployment::Onboard;
  std::uint64_t seed = 0;
  ResourceProfile profile;
  double sample_rate_hz = 2.0;

  void validate() const;
  SimulationOptions simulation_options() const;
  std::shared_ptr<Planner> make_planner() const;
};

struct RunOutput {
  std::vector<TaskResult> results;
  std::vector<MetricsSample> metrics;
  std::vector<Event> events;
};

/// Builds a simulation from the config and runs each prompt in order.
RunOutput run_script(const RunConfig& config, const std::vector<std::string>& prompts);

/// One prompt per non-blank line; lines starting with '#' are comments.
std::vector<std::string> read_prompt_script(const std::filesystem::path& path);

std::filesystem::path default_data_dir();

struct Table2Row {
  std::string prompt;
  Score expected;
  Score actual;
  bool pass() const { return expected == actual; }
};

struct Table2Column {
  std::string scenario;
  KBMode kb_mode = KBMode::Growing;
  std::vector<Table2Row> rows;
  bool pass() const;
};

/// Reference sub-task counts for a shipped scenario and KB mode.
std::vector<Score> table2_expected(const std::string& scenario, KBMode mode);

/// Runs the scenario's prompt script under one KB mode and compares the
/// per-prompt scores with the reference counts.
Table2Column replicate_table2(const std::filesystem::path& data_dir, const std::string& scenario,
                              KBMode mode, std::uint64_t seed = 0);

}  // namespace atlas
