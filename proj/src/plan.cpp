#include "atlas/plan.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace atlas {

namespace {

constexpr std::array<std::string_view, 5> kDashVariants = {
    "\xE2\x80\x90",  // hyphen
    "\xE2\x80\x91",  // non-breaking hyphen
    "\xE2\x80\x93",  // en dash
    "\xE2\x80\x94",  // em dash
    "\xE2\x88\x92",  // minus sign
};

constexpr std::array<std::string_view, 3> kArticles = {"the", "a", "an"};

std::string_view trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Action> action_from(std::string_view word) {
  if (word == "navigate") return Action::Navigate;
  if (word == "grab") return Action::Grab;
  if (word == "drop") return Action::Drop;
  return std::nullopt;
}

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) || c == '_';
  });
}

std::string_view strip_quotes(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

}  // namespace

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Navigate: return "navigate";
    case Action::Grab: return "grab";
    case Action::Drop: return "drop";
  }
  return "?";
}

std::string_view to_string(ParseErrorReason r) {
  switch (r) {
    case ParseErrorReason::UnknownAction: return "unknown_action";
    case ParseErrorReason::MissingArgument: return "missing_argument";
    case ParseErrorReason::UnexpectedArgument: return "unexpected_argument";
    case ParseErrorReason::MalformedLine: return "malformed_line";
    case ParseErrorReason::EmptyInput: return "empty_input";
  }
  return "?";
}

SubTask SubTask::navigate(std::string_view target) {
  return {Action::Navigate, normalize_entity(target)};
}
SubTask SubTask::grab(std::string_view target) {
  return {Action::Grab, normalize_entity(target)};
}
SubTask SubTask::drop() { return {Action::Drop, {}}; }

bool Plan::is_manipulation() const {
  return std::any_of(subtasks.begin(), subtasks.end(),
                     [](const SubTask& s) { return s.kind != Action::Navigate; });
}

std::optional<std::string> try_normalize_entity(std::string_view raw) {
  std::string s(raw);
  for (auto dash : kDashVariants) {
    for (auto pos = s.find(dash); pos != std::string::npos; pos = s.find(dash, pos)) {
      s.replace(pos, dash.size(), " ");
    }
  }
  std::vector<std::string> words;
  std::string word;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || c == '-' || c == '_') {
      if (!word.empty()) words.push_back(std::move(word));
      word.clear();
    } else {
      word.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!word.empty()) words.push_back(std::move(word));

  auto first = words.begin();
  while (first != words.end() &&
         std::find(kArticles.begin(), kArticles.end(), *first) != kArticles.end()) {
    ++first;
  }
  if (first == words.end()) return std::nullopt;

  std::string out;
  for (auto it = first; it != words.end(); ++it) {
    if (!out.empty()) out.push_back(' ');
    out += *it;
  }
  return out;
}

std::string normalize_entity(std::string_view raw) {
  auto n = try_normalize_entity(raw);
  if (!n) throw EmptyEntityError(std::string(raw));
  return *n;
}

PlanParse parse_plan(std::string_view text) {
  PlanParse result;
  auto fail = [&](std::size_t line, ParseErrorReason reason) {
    result.plan.subtasks.clear();
    result.error = ParseError{line, reason};
    return result;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const auto line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty()) continue;

    const auto open = line.find('(');
    if (open == std::string_view::npos || line.back() != ')') {
      return fail(line_no, ParseErrorReason::MalformedLine);
    }
    const auto keyword = trim(line.substr(0, open));
    const auto arg = trim(line.substr(open + 1, line.size() - open - 2));
    if (!is_identifier(keyword) || arg.find_first_of("(),") != std::string_view::npos) {
      return fail(line_no, ParseErrorReason::MalformedLine);
    }
    const auto action = action_from(lower(keyword));
    if (!action) return fail(line_no, ParseErrorReason::UnknownAction);

    const auto value = strip_quotes(arg);
    if (*action == Action::Drop) {
      if (!value.empty()) return fail(line_no, ParseErrorReason::UnexpectedArgument);
      result.plan.subtasks.push_back(SubTask::drop());
      continue;
    }
    auto target = try_normalize_entity(value);
    if (!target) return fail(line_no, ParseErrorReason::MissingArgument);
    result.plan.subtasks.push_back({*action, std::move(*target)});
  }

  if (result.plan.empty()) return fail(0, ParseErrorReason::EmptyInput);
  return result;
}

std::string serialize_subtask(const SubTask& s) {
  std::string out(to_string(s.kind));
  out += '(';
  if (s.kind != Action::Drop) out += s.target;
  out += ')';
  return out;
}

std::string serialize_plan(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.subtasks.size(); ++i) {
    if (i) out += '\n';
    out += serialize_subtask(plan.subtasks[i]);
  }
  return out;
}

}  // namespace atlas
