#include <algorithm>
#include <cctype>

#include "atlas/planner.hpp"

namespace atlas {

namespace {

constexpr std::string_view kHeader =
    "You are the task planner of a mobile robot with a gripper.\n"
    "Decompose the user's request into subtasks, one per line, using only\n"
    "navigate(<place or object>), grab(<object>) and drop().\n"
    "Known landmarks and objects:\n";

}  // namespace

std::string_view to_string(PlannerKind k) { return k == PlannerKind::Template ? "template" : "remote"; }

std::string_view to_string(PlannerFailure f) {
  switch (f) {
    case PlannerFailure::None: return "none";
    case PlannerFailure::NoPatternMatch: return "no_pattern_match";
    case PlannerFailure::NetworkError: return "network_error";
    case PlannerFailure::Timeout: return "timeout";
    case PlannerFailure::HttpStatusError: return "http_status_error";
    case PlannerFailure::BadResponse: return "bad_response";
  }
  return "?";
}

std::string_view system_header_template() { return kHeader; }

std::string render_system_header(const std::vector<std::string>& entities) {
  std::string out(kHeader);
  for (const auto& e : entities) {
    out += e;
    out += '\n';
  }
  return out;
}

std::vector<std::string> header_entities(std::string_view header) {
  std::vector<std::string> out;
  if (!header.starts_with(kHeader)) return out;
  header.remove_prefix(kHeader.size());
  while (!header.empty()) {
    const auto nl = header.find('\n');
    const auto line = header.substr(0, nl);
    if (!line.empty()) out.emplace_back(line);
    if (nl == std::string_view::npos) break;
    header.remove_prefix(nl + 1);
  }
  return out;
}

PlannerRequest build_prompt(const KnowledgeBase& kb, std::string_view user_text, PlannerKind kind) {
  const bool blank = std::all_of(user_text.begin(), user_text.end(),
                                 [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank) throw EmptyPromptError();
  return {render_system_header(kb.snapshot()), std::string(user_text), kind};
}

}  // namespace atlas
