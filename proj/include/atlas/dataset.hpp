#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/plan.hpp"

namespace atlas {

enum class Skeleton { Navigation, Manipulation };
std::string_view to_string(Skeleton s);

struct DatasetRecord {
  std::string system_header;
  std::string prompt;
  Plan expected_plan;
  Skeleton skeleton = Skeleton::Navigation;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct Dataset {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
};

class InsufficientVocabulary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DatasetSpec {
  std::vector<std::string> class_names;
  std::vector<std::string> landmark_names;
  std::size_t n_total = 20'000;
  double split_ratio = 0.75;
  std::uint64_t seed = 0;
};

/// Fills the navigation and manipulation skeletons with sampled names and
/// reworded surface text. Record i depends only on (seed, i), so the
/// parallel and serial generators agree exactly.
Dataset generate_dataset(const DatasetSpec& spec);
Dataset generate_dataset_serial(const DatasetSpec& spec);

/// Defaults: detector classes and built-in landmark names.
DatasetSpec default_dataset_spec(std::size_t n_total, double split_ratio, std::uint64_t seed);

}  // namespace atlas
