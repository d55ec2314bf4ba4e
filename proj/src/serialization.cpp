#include "atlas/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace atlas {

json to_json(const Event& e) {
  return {{"seq", e.seq}, {"type", e.type}, {"t", e.t}, {"payload", e.payload}};
}

json to_json(const Pose& p) { return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }

json to_json(const Plan& p) {
  json arr = json::array();
  for (const auto& s : p.subtasks) arr.push_back(serialize_subtask(s));
  return arr;
}

json to_json(const SubTaskOutcome& o) {
  json j = {{"subtask", serialize_subtask(o.subtask)},
            {"status", to_string(o.status)},
            {"elapsed_sim_s", o.elapsed_sim_s}};
  j["reason"] = o.reason ? json(to_string(*o.reason)) : json(nullptr);
  return j;
}

json to_json(const TaskResult& r) {
  json outcomes = json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(to_json(o));
  json j = {{"id", r.id},
            {"prompt", r.prompt},
            {"raw_plan", r.raw_plan},
            {"outcomes", outcomes},
            {"score", {{"matched", r.score.matched}, {"total", r.score.total}}},
            {"mode", to_string(r.mode)},
            {"plan_kind", to_string(r.plan_kind)},
            {"planning_latency_s", r.planning_latency_s},
            {"decode_interval", {r.decode_start, r.decode_end}},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at},
            {"elapsed_sim_s", r.elapsed_sim_s()}};
  if (r.plan.ok()) {
    j["plan"] = to_json(r.plan.plan);
    j["parse_error"] = nullptr;
  } else {
    j["plan"] = nullptr;
    j["parse_error"] = {{"line", r.plan.error->line_number},
                        {"reason", to_string(r.plan.error->reason)}};
  }
  j["planner_failure"] =
      r.planner_failure == PlannerFailure::None ? json(nullptr) : json(to_string(r.planner_failure));
  j["failure"] = r.failure ? json(to_string(*r.failure)) : json(nullptr);
  return j;
}

json to_json(const MetricsSample& s) {
  return {{"t", s.t}, {"power_w", s.power_w}, {"ram_pct", s.ram_pct}, {"swap_pct", s.swap_pct}};
}

MetricsSample metrics_sample_from_json(const json& j) {
  return {j.at("t").get<double>(), j.at("power_w").get<double>(), j.at("ram_pct").get<double>(),
          j.at("swap_pct").get<double>()};
}

json to_json(const Detection& d) {
  return {{"class", d.class_name}, {"range", d.range}, {"bearing", d.bearing},
          {"confidence", d.confidence}};
}

json to_json(const DatasetRecord& r) {
  return {{"system_header", r.system_header},
          {"prompt", r.prompt},
          {"expected_plan", serialize_plan(r.expected_plan)},
          {"skeleton", to_string(r.skeleton)}};
}

DatasetRecord dataset_record_from_json(const json& j) {
  DatasetRecord r;
  r.system_header = j.at("system_header").get<std::string>();
  r.prompt = j.at("prompt").get<std::string>();
  auto parsed = parse_plan(j.at("expected_plan").get<std::string>());
  if (!parsed.ok()) throw std::invalid_argument("dataset record has an unparseable expected_plan");
  r.expected_plan = std::move(parsed.plan);
  const auto sk = j.at("skeleton").get<std::string>();
  r.skeleton = sk == "manipulation" ? Skeleton::Manipulation : Skeleton::Navigation;
  return r;
}

json to_json(const KBEntry& e) {
  json j = {{"name", e.name},
            {"x", e.pose.x},
            {"y", e.pose.y},
            {"theta", e.pose.theta},
            {"source", to_string(e.source)}};
  j["detected_at"] = e.detected_at ? json(*e.detected_at) : json(nullptr);
  return j;
}

json kb_to_json(const KnowledgeBase& kb) {
  json arr = json::array();
  for (const auto& e : kb.entries()) arr.push_back(to_json(e));
  return arr;
}

KnowledgeBase kb_from_json(const json& doc, KBMode mode) {
  std::vector<KBEntry> initial;
  std::vector<KBEntry> detected;
  for (const auto& j : doc) {
    KBEntry e;
    e.name = normalize_entity(j.at("name").get<std::string>());
    e.pose = Pose(j.at("x").get<double>(), j.at("y").get<double>(), j.at("theta").get<double>());
    if (j.at("source").get<std::string>() == "initial") {
      initial.push_back(std::move(e));
    } else {
      e.detected_at = j.at("detected_at").get<double>();
      detected.push_back(std::move(e));
    }
  }
  KnowledgeBase kb(initial, KBMode::Growing);
  for (const auto& e : detected) kb.insert(e.name, e.pose, *e.detected_at);
  if (mode == KBMode::Growing) return kb;
  std::vector<KBEntry> all = kb.entries();
  return KnowledgeBase(all, KBMode::Fixed);
}

json world_to_json(const World& w) {
  json rooms = json::array();
  for (const auto& r : w.rooms) {
    rooms.push_back({{"name", r.name},
                     {"rect", {{"x0", r.rect.x0}, {"y0", r.rect.y0}, {"x1", r.rect.x1}, {"y1", r.rect.y1}}}});
  }
  json objects = json::array();
  for (const auto& o : w.objects) {
    objects.push_back({{"class", o.class_name}, {"x", o.pose.x}, {"y", o.pose.y}, {"carried", o.carried}});
  }
  json robot = to_json(w.robot.pose);
  robot["holding"] = w.robot.holding ? json(*w.robot.holding) : json(nullptr);
  return {{"name", w.name},
          {"grid",
           {{"width", w.grid.width()},
            {"height", w.grid.height()},
            {"resolution_m", w.grid.resolution()},
            {"occupied_cells", w.grid.occupied_count()}}},
          {"rooms", rooms},
          {"objects", objects},
          {"robot", robot},
          {"holding", robot["holding"]},
          {"clock", w.clock},
          {"tick", w.tick}};
}

std::string to_jsonl(const std::vector<json>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += d.dump();
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace atlas
