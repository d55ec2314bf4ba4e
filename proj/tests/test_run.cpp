#include <gtest/gtest.h>

#include <filesystem>

#include "atlas/run.hpp"
#include "atlas/serialization.hpp"
#include "cli_util.hpp"

using namespace atlas;
namespace fs = std::filesystem;

namespace {

RunConfig office_config(Deployment d) {
  RunConfig c;
  c.scenario_path = default_data_dir() / "scenarios" / "office.scenario";
  c.config = d;
  return c;
}

std::vector<std::string> office_prompts() {
  return read_prompt_script(default_data_dir() / "prompts" / "office.prompts");
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("atlas_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Metrics, OnboardSpikesAlignWithDecoding) {
  const auto out = run_script(office_config(Deployment::Onboard), office_prompts());
  ASSERT_FALSE(out.metrics.empty());
  std::size_t decoding = 0;
  for (const auto& m : out.metrics) {
    bool in_decode = false;
    for (const auto& r : out.results) in_decode |= m.t >= r.decode_start && m.t < r.decode_end;
    EXPECT_EQ(m.power_w, in_decode ? 9.2 : 6.0) << m.t;
    EXPECT_EQ(m.ram_pct, 92.0);
    EXPECT_EQ(m.swap_pct, 50.0);
    decoding += in_decode;
  }
  EXPECT_GT(decoding, 0u);
  for (std::size_t i = 1; i < out.metrics.size(); ++i) EXPECT_LT(out.metrics[i - 1].t, out.metrics[i].t);
  for (const auto& r : out.results) {
    const double want = r.plan_kind == PlanKind::Manipulation ? 10.0 : 8.0;
    EXPECT_EQ(r.planning_latency_s, want);
    EXPECT_GE(r.elapsed_sim_s(), want);
  }
}

TEST(Metrics, CloudIsFlat) {
  const auto out = run_script(office_config(Deployment::Cloud), office_prompts());
  for (const auto& m : out.metrics) {
    EXPECT_EQ(m.power_w, 6.0);
    EXPECT_EQ(m.swap_pct, 25.0);
  }
  for (const auto& r : out.results) EXPECT_EQ(r.planning_latency_s, 0.020);
}

TEST(RunScript, DeterministicSerialization) {
  auto dump = [] {
    const auto out = run_script(office_config(Deployment::Onboard), office_prompts());
    std::string s;
    for (const auto& r : out.results) s += to_json(r).dump() + "\n";
    for (const auto& m : out.metrics) s += to_json(m).dump() + "\n";
    return s;
  };
  EXPECT_EQ(dump(), dump());
}

TEST(RunConfig, Validation) {
  RunConfig c = office_config(Deployment::Onboard);
  c.planner = PlannerKind::Remote;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.endpoint = RemoteEndpoint{"http://127.0.0.1:1/plan"};
  EXPECT_NO_THROW(c.validate());
}

TEST(PromptScript, SkipsBlanksAndComments) {
  const auto dir = temp_dir("script");
  write_text(dir / "p.txt", "# header\n\nGo to the lobby\r\n   \n  Go to the office\n");
  EXPECT_EQ(read_prompt_script(dir / "p.txt"), (std::vector<std::string>{"Go to the lobby", "Go to the office"}));
  fs::remove_all(dir);
}

TEST(Cli, ReplicateTable2) {
  const auto home = run_cli("replicate table2 --scenario home --kb fixed");
  EXPECT_EQ(home.exit_code, 0);
  EXPECT_NE(home.out.find("table2: PASS"), std::string::npos) << home.out;
  const auto all = run_cli("replicate table2");
  EXPECT_EQ(all.exit_code, 0);
  EXPECT_NE(all.out.find("table2: PASS"), std::string::npos) << all.out;
}

TEST(Cli, Grade) {
  const auto fx = default_data_dir() / "fixtures";
  const auto r = run_cli("grade --expected " + (fx / "manipulation.expected.plan").string() + " --actual " +
                         (fx / "manipulation.pretrained.txt").string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "0/4\n");
  const auto good = run_cli("grade --expected " + (fx / "navigation.expected.plan").string() + " --actual " +
                            (fx / "navigation.finetuned.txt").string());
  EXPECT_EQ(good.out, "1/1\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run_cli("").exit_code, 0);
  EXPECT_NE(run_cli("frobnicate").exit_code, 0);
  EXPECT_NE(run_cli("run --kb sometimes --prompts x").exit_code, 0);
  EXPECT_NE(run_cli("grade --expected /nonexistent --actual /nonexistent").exit_code, 0);
}

TEST(Cli, RunIsByteIdentical) {
  const auto dir = temp_dir("cli_run");
  const auto prompts = (default_data_dir() / "prompts" / "home.prompts").string();
  for (int i = 0; i < 2; ++i) {
    const auto r = run_cli("run --scenario home --seed 5 --prompts " + prompts + " --results " +
                           (dir / ("r" + std::to_string(i) + ".jsonl")).string() + " --metrics " +
                           (dir / ("m" + std::to_string(i) + ".jsonl")).string());
    ASSERT_EQ(r.exit_code, 0);
  }
  EXPECT_EQ(read_text(dir / "r0.jsonl"), read_text(dir / "r1.jsonl"));
  EXPECT_EQ(read_text(dir / "m0.jsonl"), read_text(dir / "m1.jsonl"));
  EXPECT_FALSE(read_text(dir / "r0.jsonl").empty());

  const auto plot = run_cli("plot-metrics --metrics " + (dir / "m0.jsonl").string() + " --results " +
                            (dir / "r0.jsonl").string() + " --out " + (dir / "plots").string());
  EXPECT_EQ(plot.exit_code, 0);
  for (const char* f : {"power.svg", "ram.svg", "swap.svg", "latency.svg"}) {
    EXPECT_TRUE(read_text(dir / "plots" / f).starts_with("<svg")) << f;
  }
  fs::remove_all(dir);
}

TEST(Cli, GenDataset) {
  const auto dir = temp_dir("cli_ds");
  const auto r = run_cli("gen-dataset --n 400 --ratio 0.75 --seed 2 --check --train " + (dir / "train.jsonl").string() +
                         " --test " + (dir / "test.jsonl").string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("300 train / 100 test"), std::string::npos);
  EXPECT_NE(r.out.find("self-consistency 400/400"), std::string::npos);
  const auto lines = read_text(dir / "train.jsonl");
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 300);
  fs::remove_all(dir);
}
