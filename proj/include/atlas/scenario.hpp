#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/knowledge_base.hpp"
#include "atlas/world.hpp"

namespace atlas {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SchemaError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
/// An object, landmark or start pose sits in an occupied cell.
class OverlapError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
class UnknownClassError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

struct Scenario {
  World world;
  std::vector<KBEntry> landmarks;
  DetectorConfig detector;
};

Scenario load_scenario(std::string_view document, std::uint64_t seed = 0);
Scenario load_scenario_file(const std::filesystem::path& path, std::uint64_t seed = 0);

}  // namespace atlas
