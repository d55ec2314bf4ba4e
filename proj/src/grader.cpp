#include "atlas/grader.hpp"

#include <algorithm>
#include <stdexcept>

namespace atlas {

Score grade(const Plan& expected, std::string_view raw_actual) {
  if (expected.empty()) throw std::invalid_argument("expected plan must be non-empty");
  Score s{0, expected.size()};
  const auto actual = parse_plan(raw_actual);
  if (!actual.ok()) return s;
  const auto n = std::min(expected.size(), actual.plan.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (expected.subtasks[i] == actual.plan.subtasks[i]) ++s.matched;
  }
  return s;
}

}  // namespace atlas
