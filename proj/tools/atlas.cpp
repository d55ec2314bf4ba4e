// Command-line front end: headless runs, the HTTP service, dataset
// generation, grading, the KB-mode replication run and metric plots.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "atlas/dataset.hpp"
#include "atlas/grader.hpp"
#include "atlas/plot.hpp"
#include "atlas/run.hpp"
#include "atlas/serialization.hpp"
#include "atlas/service.hpp"

using namespace atlas;

namespace {

std::atomic<bool> g_stop{false};

struct RunArgs {
  std::string scenario = "office";
  std::string planner = "template";
  std::string endpoint;
  int timeout_ms = 30'000;
  std::string kb = "growing";
  std::string exec = "lenient";
  std::string config = "onboard";
  std::uint64_t seed = 0;
  std::string data_dir = default_data_dir().string();
  double sample_rate = 2.0;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--scenario", a.scenario, "Scenario name or path")->capture_default_str();
  cmd->add_option("--planner", a.planner, "template | remote")
      ->check(CLI::IsMember({"template", "remote"}))
      ->capture_default_str();
  cmd->add_option("--endpoint", a.endpoint, "Remote planner URL, e.g. http://host:port/plan");
  cmd->add_option("--timeout-ms", a.timeout_ms, "Remote planner timeout")->capture_default_str();
  cmd->add_option("--kb", a.kb, "fixed | growing")
      ->check(CLI::IsMember({"fixed", "growing"}))
      ->capture_default_str();
  cmd->add_option("--exec", a.exec, "strict | lenient")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->capture_default_str();
  cmd->add_option("--config", a.config, "onboard | cloud")
      ->check(CLI::IsMember({"onboard", "cloud"}))
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Simulation seed")->capture_default_str();
  cmd->add_option("--data-dir", a.data_dir, "Directory holding scenarios/ and prompts/")->capture_default_str();
  cmd->add_option("--sample-rate", a.sample_rate, "Metrics sample rate (Hz)")->capture_default_str();
}

RunConfig to_config(const RunArgs& a) {
  RunConfig c;
  c.scenario_path = resolve_scenario(a.data_dir, a.scenario);
  c.planner = a.planner == "remote" ? PlannerKind::Remote : PlannerKind::Template;
  if (!a.endpoint.empty()) c.endpoint = RemoteEndpoint{a.endpoint, std::chrono::milliseconds(a.timeout_ms)};
  c.kb_mode = kb_mode_from(a.kb);
  c.exec_mode = exec_mode_from(a.exec);
  c.config = deployment_from(a.config);
  c.seed = a.seed;
  c.sample_rate_hz = a.sample_rate;
  return c;
}

std::vector<std::string> read_names(const std::string& path) {
  std::vector<std::string> out;
  for (auto& line : read_prompt_script(path)) out.push_back(std::move(line));
  return out;
}

int cmd_run(const RunArgs& args, const std::string& prompts_path, const std::string& results_path,
            const std::string& metrics_path, const std::string& events_path) {
  const auto cfg = to_config(args);
  const auto prompts = read_prompt_script(prompts_path);
  const auto out = run_script(cfg, prompts);

  std::vector<json> results;
  for (const auto& r : out.results) {
    results.push_back(to_json(r));
    std::cout << r.score.str() << "\t" << r.prompt << "\n";
  }
  std::vector<json> metrics;
  for (const auto& m : out.metrics) metrics.push_back(to_json(m));
  if (!results_path.empty()) write_text(results_path, to_jsonl(results));
  if (!metrics_path.empty()) write_text(metrics_path, to_jsonl(metrics));
  if (!events_path.empty()) {
    std::vector<json> events;
    for (const auto& e : out.events) events.push_back(to_json(e));
    write_text(events_path, to_jsonl(events));
  }
  return 0;
}

int cmd_serve(const RunArgs& args, const std::string& host, int port, double speed) {
  ServiceConfig sc;
  sc.run = to_config(args);
  sc.data_dir = args.data_dir;
  sc.speed = speed;
  Service service(sc);
  const int bound = service.start(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  service.stop();
  return 0;
}

int cmd_gen_dataset(std::size_t n, double ratio, std::uint64_t seed, const std::string& train,
                    const std::string& test, const std::string& classes, const std::string& landmarks,
                    bool check) {
  auto spec = default_dataset_spec(n, ratio, seed);
  if (!classes.empty()) spec.class_names = read_names(classes);
  if (!landmarks.empty()) spec.landmark_names = read_names(landmarks);
  const auto ds = generate_dataset(spec);

  auto dump = [](const std::vector<DatasetRecord>& recs) {
    std::vector<json> docs;
    docs.reserve(recs.size());
    for (const auto& r : recs) docs.push_back(to_json(r));
    return to_jsonl(docs);
  };
  write_text(train, dump(ds.train));
  write_text(test, dump(ds.test));
  std::cout << ds.train.size() << " train / " << ds.test.size() << " test\n";

  if (check) {
    std::size_t consistent = 0;
    const auto total = ds.train.size() + ds.test.size();
    for (const auto* part : {&ds.train, &ds.test}) {
      for (const auto& r : *part) {
        const auto resp = template_plan({r.system_header, r.prompt, PlannerKind::Template});
        if (resp.ok() && resp.plan.plan == r.expected_plan) ++consistent;
      }
    }
    std::cout << "self-consistency " << consistent << "/" << total << "\n";
    if (consistent != total) return 1;
  }
  return 0;
}

int cmd_grade(const std::string& expected_path, const std::string& actual_path) {
  const auto expected = parse_plan(read_text(expected_path));
  if (!expected.ok()) {
    std::cerr << "expected plan does not parse (line " << expected.error->line_number << ": "
              << to_string(expected.error->reason) << ")\n";
    return 2;
  }
  std::cout << grade(expected.plan, read_text(actual_path)).str() << "\n";
  return 0;
}

int cmd_replicate(const std::string& what, const std::string& scenario, const std::string& kb,
                  const std::string& data_dir, std::uint64_t seed) {
  if (what != "table2") {
    std::cerr << "unknown replication target: " << what << "\n";
    return 2;
  }
  std::vector<std::string> scenarios = scenario == "all" ? std::vector<std::string>{"home", "office"}
                                                         : std::vector<std::string>{scenario};
  std::vector<KBMode> modes;
  if (kb == "fixed" || kb == "both") modes.push_back(KBMode::Fixed);
  if (kb == "growing" || kb == "both") modes.push_back(KBMode::Growing);

  bool all_pass = true;
  for (const auto& sc : scenarios) {
    for (const auto mode : modes) {
      const auto col = replicate_table2(data_dir, sc, mode, seed);
      std::cout << "[" << sc << " / " << to_string(mode) << " KB]\n";
      for (const auto& row : col.rows) {
        std::printf("  %-66s expected %s  got %s  %s\n", row.prompt.c_str(), row.expected.str().c_str(),
                    row.actual.str().c_str(), row.pass() ? "ok" : "MISMATCH");
      }
      std::cout << "  " << (col.pass() ? "PASS" : "FAIL") << "\n";
      all_pass = all_pass && col.pass();
    }
  }
  std::cout << (all_pass ? "table2: PASS" : "table2: FAIL") << "\n";
  return 0;
}

int cmd_plot(const std::string& metrics_path, const std::string& results_path, const std::string& out_dir) {
  std::vector<MetricsSample> samples;
  for (const auto& line : read_prompt_script(metrics_path)) {
    samples.push_back(metrics_sample_from_json(json::parse(line)));
  }
  std::vector<LatencyPoint> latencies;
  std::vector<DecodeInterval> decodes;
  if (!results_path.empty()) {
    for (const auto& line : read_prompt_script(results_path)) {
      const auto r = json::parse(line);
      const auto interval = r.at("decode_interval");
      decodes.push_back({interval.at(0).get<double>(), interval.at(1).get<double>()});
      latencies.push_back({interval.at(0).get<double>(), r.at("planning_latency_s").get<double>(),
                           r.at("plan_kind").get<std::string>() == "manipulation" ? PlanKind::Manipulation
                                                                                 : PlanKind::Navigation});
    }
  }
  for (const auto& p : write_metric_panels(samples, latencies, decodes, out_dir)) {
    std::cout << p.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language-guided robot task planning in a simulated home and office"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string prompts, results_out, metrics_out, events_out;
  auto* run = app.add_subcommand("run", "Execute a prompt script against a scenario");
  add_run_options(run, run_args);
  run->add_option("--prompts", prompts, "Prompt script, one prompt per line")->required();
  run->add_option("--results", results_out, "Write TaskResults (JSON lines)");
  run->add_option("--metrics", metrics_out, "Write metrics samples (JSON lines)");
  run->add_option("--events", events_out, "Write the event stream (JSON lines)");

  RunArgs serve_args;
  std::string host = "127.0.0.1";
  int port = 8080;
  double speed = 1.0;
  auto* serve = app.add_subcommand("serve", "Start the HTTP API and tick loop");
  add_run_options(serve, serve_args);
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--speed", speed, "Simulated seconds per wall second (0 = unpaced)")->capture_default_str();

  std::size_t n_total = 20'000;
  double ratio = 0.75;
  std::uint64_t ds_seed = 0;
  std::string train_out = "train.jsonl", test_out = "test.jsonl", classes, landmarks;
  bool check = false;
  auto* gen = app.add_subcommand("gen-dataset", "Generate the instruction dataset");
  gen->add_option("--n", n_total, "Total records")->capture_default_str();
  gen->add_option("--ratio", ratio, "Training fraction")->capture_default_str();
  gen->add_option("--seed", ds_seed)->capture_default_str();
  gen->add_option("--train", train_out)->capture_default_str();
  gen->add_option("--test", test_out)->capture_default_str();
  gen->add_option("--classes", classes, "Class names file (one per line)");
  gen->add_option("--landmarks", landmarks, "Landmark names file (one per line)");
  gen->add_flag("--check", check, "Verify every record against the template planner");

  std::string expected_file, actual_file;
  auto* gr = app.add_subcommand("grade", "Score a planner output against an expected plan");
  gr->add_option("--expected", expected_file)->required();
  gr->add_option("--actual", actual_file)->required();

  std::string target = "table2", rep_scenario = "all", rep_kb = "both";
  std::string rep_data = default_data_dir().string();
  std::uint64_t rep_seed = 0;
  auto* rep = app.add_subcommand("replicate", "Reproduce a reference experiment");
  rep->add_option("target", target, "table2")->check(CLI::IsMember({"table2"}))->capture_default_str();
  rep->add_option("--scenario", rep_scenario, "home | office | all")
      ->check(CLI::IsMember({"home", "office", "all"}))
      ->capture_default_str();
  rep->add_option("--kb", rep_kb, "fixed | growing | both")
      ->check(CLI::IsMember({"fixed", "growing", "both"}))
      ->capture_default_str();
  rep->add_option("--data-dir", rep_data)->capture_default_str();
  rep->add_option("--seed", rep_seed)->capture_default_str();

  std::string plot_metrics, plot_results, plot_out = "plots";
  auto* plot = app.add_subcommand("plot-metrics", "Render power/RAM/swap/latency panels as SVG");
  plot->add_option("--metrics", plot_metrics)->required();
  plot->add_option("--results", plot_results, "TaskResults file for the latency panel");
  plot->add_option("--out", plot_out)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_args, prompts, results_out, metrics_out, events_out);
    if (*serve) return cmd_serve(serve_args, host, port, speed);
    if (*gen) return cmd_gen_dataset(n_total, ratio, ds_seed, train_out, test_out, classes, landmarks, check);
    if (*gr) return cmd_grade(expected_file, actual_file);
    if (*rep) return cmd_replicate(target, rep_scenario, rep_kb, rep_data, rep_seed);
    if (*plot) return cmd_plot(plot_metrics, plot_results, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
