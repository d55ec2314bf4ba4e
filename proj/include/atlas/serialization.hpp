#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlas/dataset.hpp"
#include "atlas/executor.hpp"
#include "atlas/knowledge_base.hpp"
#include "atlas/scheduler.hpp"
#include "atlas/world.hpp"

namespace atlas {

using nlohmann::json;

json to_json(const Pose& p);
json to_json(const Plan& p);
json to_json(const SubTaskOutcome& o);
json to_json(const TaskResult& r);
json to_json(const MetricsSample& s);
json to_json(const Detection& d);
json to_json(const DatasetRecord& r);
json to_json(const KBEntry& e);

/// Array of {name, x, y, theta, source, detected_at}.
json kb_to_json(const KnowledgeBase& kb);
/// Restores a KB exported by kb_to_json.
KnowledgeBase kb_from_json(const json& doc, KBMode mode);

/// Grid metadata, rooms, robot, objects; the occupancy bits are omitted.
json world_to_json(const World& w);

MetricsSample metrics_sample_from_json(const json& j);
DatasetRecord dataset_record_from_json(const json& j);

/// One compact JSON document per line.
std::string to_jsonl(const std::vector<json>& docs);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace atlas
