#include "atlas/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atlas/plan.hpp"
#include "atlas/vocabulary.hpp"

namespace atlas {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError("missing field '" + std::string(key) + "' in " + where);
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number()) throw SchemaError("field '" + std::string(key) + "' in " + where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError("field '" + std::string(key) + "' in " + where + " must be finite");
  return d;
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw SchemaError("field '" + std::string(key) + "' in " + where + " must be a string");
  return v.get<std::string>();
}

const json& array(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_array()) throw SchemaError("field '" + std::string(key) + "' in " + where + " must be an array");
  return v;
}

Rect rect(const json& r, const std::string& where) {
  Rect out{number(r, "x0", where), number(r, "y0", where), number(r, "x1", where),
           number(r, "y1", where)};
  if (out.x1 < out.x0 || out.y1 < out.y0) throw SchemaError("inverted rectangle in " + where);
  return out;
}

std::string entity(const std::string& raw, const std::string& where) {
  auto n = try_normalize_entity(raw);
  if (!n) throw SchemaError("empty name in " + where);
  return *n;
}

void require_free(const OccupancyGrid& grid, double x, double y, const std::string& what) {
  if (grid.occupied(grid.cell_of(x, y))) throw OverlapError(what + " lies in an occupied cell");
}

}  // namespace

Scenario load_scenario(std::string_view document, std::uint64_t seed) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("scenario must be an object");

  Scenario sc;
  auto& world = sc.world;
  world.name = text(doc, "name", "scenario");
  world.rng_seed = seed;

  const auto& g = field(doc, "grid", "scenario");
  const double width_m = number(g, "width_m", "grid");
  const double height_m = number(g, "height_m", "grid");
  const double res = number(g, "resolution_m", "grid");
  if (!(width_m > 0 && height_m > 0 && res > 0)) throw SchemaError("grid extents must be positive");
  world.grid = OccupancyGrid(static_cast<int>(std::ceil(width_m / res - 1e-9)),
                             static_cast<int>(std::ceil(height_m / res - 1e-9)), res);
  for (const auto& o : array(g, "obstacles", "grid")) world.grid.fill_rect(rect(o, "obstacle"));

  for (const auto& r : array(doc, "rooms", "scenario")) {
    world.rooms.push_back({entity(text(r, "name", "room"), "room"), rect(field(r, "rect", "room"), "room")});
  }

  for (const auto& l : array(doc, "landmarks", "scenario")) {
    KBEntry e;
    e.name = entity(text(l, "name", "landmark"), "landmark");
    e.pose = Pose(number(l, "x", e.name), number(l, "y", e.name),
                  l.contains("theta") ? number(l, "theta", e.name) : 0.0);
    require_free(world.grid, e.pose.x, e.pose.y, "landmark '" + e.name + "'");
    sc.landmarks.push_back(std::move(e));
  }

  for (const auto& o : array(doc, "objects", "scenario")) {
    WorldObject obj;
    obj.class_name = entity(text(o, "class", "object"), "object");
    if (!is_detector_class(obj.class_name)) throw UnknownClassError("unknown object class: " + obj.class_name);
    obj.pose = Pose(number(o, "x", obj.class_name), number(o, "y", obj.class_name));
    require_free(world.grid, obj.pose.x, obj.pose.y, "object '" + obj.class_name + "'");
    world.objects.push_back(std::move(obj));
  }

  const auto& start = field(doc, "robot_start", "scenario");
  world.robot.pose = Pose(number(start, "x", "robot_start"), number(start, "y", "robot_start"),
                          start.contains("theta") ? number(start, "theta", "robot_start") : 0.0);
  require_free(world.grid, world.robot.pose.x, world.robot.pose.y, "robot start");

  sc.detector = DetectorConfig::defaults();
  if (doc.contains("detector")) {
    const auto& d = doc.at("detector");
    if (!d.is_object()) throw SchemaError("detector must be an object");
    if (d.contains("fov_degrees")) sc.detector.fov_degrees = number(d, "fov_degrees", "detector");
    if (d.contains("max_range_m")) sc.detector.max_range = number(d, "max_range_m", "detector");
    if (d.contains("detection_probability")) {
      sc.detector.detection_probability = number(d, "detection_probability", "detector");
    }
    if (d.contains("allowlist")) {
      sc.detector.allowlist.clear();
      for (const auto& c : array(d, "allowlist", "detector")) {
        if (!c.is_string()) throw SchemaError("allowlist entries must be strings");
        const auto name = entity(c.get<std::string>(), "allowlist");
        if (!is_detector_class(name)) throw UnknownClassError("unknown allowlist class: " + name);
        sc.detector.allowlist.insert(name);
      }
    }
    try {
      sc.detector.validate();
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  return sc;
}

Scenario load_scenario_file(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str(), seed);
}

}  // namespace atlas
