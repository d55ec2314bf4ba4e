#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlas {

enum class Action { Navigate, Grab, Drop };

std::string_view to_string(Action a);

/// One step of the action language. Navigate and Grab carry a canonical
/// target; Drop carries none.
struct SubTask {
  Action kind = Action::Drop;
  std::string target;

  static SubTask navigate(std::string_view target);
  static SubTask grab(std::string_view target);
  static SubTask drop();

  friend bool operator==(const SubTask&, const SubTask&) = default;
};

struct Plan {
  std::vector<SubTask> subtasks;

  bool empty() const { return subtasks.empty(); }
  std::size_t size() const { return subtasks.size(); }
  /// True iff the plan contains a Grab or Drop.
  bool is_manipulation() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

enum class ParseErrorReason {
  UnknownAction,
  MissingArgument,
  UnexpectedArgument,
  MalformedLine,
  EmptyInput,
};

std::string_view to_string(ParseErrorReason r);

struct ParseError {
  std::size_t line_number = 0;  // 1-based; 0 for empty input
  ParseErrorReason reason = ParseErrorReason::EmptyInput;

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

/// Either a plan or the first offending line.
struct PlanParse {
  Plan plan;
  std::optional<ParseError> error;

  bool ok() const { return !error.has_value(); }
};

class EmptyEntityError : public std::invalid_argument {
 public:
  explicit EmptyEntityError(const std::string& raw)
      : std::invalid_argument("entity name is empty after normalization: '" + raw + "'") {}
};

/// Canonical entity form: lowercase, '-', '_' and dash variants become
/// spaces, leading articles dropped, whitespace collapsed.
std::string normalize_entity(std::string_view raw);
std::optional<std::string> try_normalize_entity(std::string_view raw);

/// Strict all-or-nothing parse, one subtask per non-blank line.
PlanParse parse_plan(std::string_view text);

/// Inverse of parse_plan. An empty plan serializes to "".
std::string serialize_plan(const Plan& plan);
std::string serialize_subtask(const SubTask& s);

}  // namespace atlas
