#pragma once

#include <string>
#include <string_view>

#include "atlas/plan.hpp"

namespace atlas {

struct Score {
  std::size_t matched = 0;
  std::size_t total = 0;

  std::string str() const { return std::to_string(matched) + "/" + std::to_string(total); }
  friend bool operator==(const Score&, const Score&) = default;
};

/// Per-position subtask agreement. Unparseable output scores zero.
Score grade(const Plan& expected, std::string_view raw_actual);

}  // namespace atlas
