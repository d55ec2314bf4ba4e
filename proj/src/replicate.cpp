#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "atlas/run.hpp"

namespace atlas {

void RunConfig::validate() const {
  if (planner == PlannerKind::Remote && !endpoint) {
    throw std::invalid_argument("remote planner requires an endpoint");
  }
  profile.validate();
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

SimulationOptions RunConfig::simulation_options() const {
  SimulationOptions o;
  o.kb_mode = kb_mode;
  o.config = config;
  o.profile = profile;
  o.sample_rate_hz = sample_rate_hz;
  o.executor.mode = exec_mode;
  return o;
}

std::shared_ptr<Planner> RunConfig::make_planner() const {
  if (planner == PlannerKind::Remote) return std::make_shared<RemotePlanner>(*endpoint);
  return std::make_shared<TemplatePlanner>();
}

RunOutput run_script(const RunConfig& config, const std::vector<std::string>& prompts) {
  config.validate();
  Simulation sim(load_scenario_file(config.scenario_path, config.seed), config.make_planner(),
                 config.simulation_options());
  RunOutput out;
  for (const auto& p : prompts) out.results.push_back(sim.run_task(p));
  out.metrics = sim.metrics().samples();
  out.events = sim.events();
  return out;
}

std::vector<std::string> read_prompt_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prompt script: " + path.string());
  std::vector<std::string> prompts;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    prompts.push_back(line.substr(first));
  }
  return prompts;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("ATLAS_DATA_DIR")) return env;
  return ATLAS_DATA_DIR;
}

bool Table2Column::pass() const {
  for (const auto& r : rows) {
    if (!r.pass()) return false;
  }
  return !rows.empty();
}

std::vector<Score> table2_expected(const std::string& scenario, KBMode mode) {
  const bool growing = mode == KBMode::Growing;
  if (scenario == "home") {
    return {{1, 1}, {1, 1}, {1, 1}, {growing ? 4u : 0u, 4}, {growing ? 4u : 1u, 4}};
  }
  if (scenario == "office") {
    return {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {growing ? 4u : 1u, 4}, {growing ? 4u : 1u, 4}};
  }
  throw std::invalid_argument("no reference counts for scenario: " + scenario);
}

Table2Column replicate_table2(const std::filesystem::path& data_dir, const std::string& scenario,
                              KBMode mode, std::uint64_t seed) {
  RunConfig cfg;
  cfg.scenario_path = data_dir / "scenarios" / (scenario + ".scenario");
  cfg.kb_mode = mode;
  cfg.seed = seed;
  const auto prompts = read_prompt_script(data_dir / "prompts" / (scenario + ".prompts"));
  const auto expected = table2_expected(scenario, mode);
  if (prompts.size() != expected.size()) {
    throw std::runtime_error("prompt script for " + scenario + " does not match the reference table");
  }
  const auto out = run_script(cfg, prompts);
  Table2Column col{scenario, mode, {}};
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    col.rows.push_back({prompts[i], expected[i], out.results[i].score});
  }
  return col;
}

}  // namespace atlas
