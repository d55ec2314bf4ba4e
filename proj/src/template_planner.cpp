#include <cctype>
#include <regex>

#include "atlas/planner.hpp"

namespace atlas {

namespace {

// Entity: a lazy run of words that never crosses a sentence break.
#define ATLAS_ENTITY "([a-z0-9'_ -]+?)"
#define ATLAS_END "(?= \\.| and | then |$)"

const std::regex& go_grab_bring() {
  static const std::regex re(
      "(?:^| )go to " ATLAS_ENTITY " (?:and |then )?grab (?:a|an|the) " ATLAS_ENTITY
      " and (?:bring|take|carry) it to " ATLAS_ENTITY ATLAS_END);
  return re;
}

const std::regex& carry_to() {
  static const std::regex re("(?:^| )(?:bring|take|move|carry) the " ATLAS_ENTITY
                             " to " ATLAS_ENTITY ATLAS_END);
  return re;
}

const std::regex& go_to() {
  static const std::regex re("(?:^| )(?:go|navigate) to " ATLAS_ENTITY
                             "(?= to | and | then | \\.|$)");
  return re;
}

#undef ATLAS_ENTITY
#undef ATLAS_END

std::optional<Plan> manipulation(const std::string& from, const std::string& object,
                                 const std::string& to) {
  auto a = try_normalize_entity(from);
  auto b = try_normalize_entity(object);
  auto c = try_normalize_entity(to);
  if (!a || !b || !c) return std::nullopt;
  return Plan{{{Action::Navigate, *a}, {Action::Grab, *b}, {Action::Navigate, *c}, SubTask::drop()}};
}

}  // namespace

std::string normalize_prompt(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 8);
  auto push_space = [&] {
    if (!out.empty() && out.back() != ' ') out.push_back(' ');
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?') {
      push_space();
      if (out.size() < 2 || out[out.size() - 2] != '.') out += ". ";
    } else if (std::isspace(c)) {
      push_space();
    } else if (std::isalnum(c) || c == '\'' || c == '-' || c == '_' || c >= 0x80) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      push_space();
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::optional<Plan> template_decompose(std::string_view prompt) {
  const auto text = normalize_prompt(prompt);
  std::smatch m;
  if (std::regex_search(text, m, go_grab_bring())) {
    if (auto p = manipulation(m[1], m[2], m[3])) return p;
  }
  if (std::regex_search(text, m, carry_to())) {
    if (auto p = manipulation(m[1], m[1], m[2])) return p;
  }
  if (std::regex_search(text, m, go_to())) {
    if (auto a = try_normalize_entity(m[1].str())) return Plan{{{Action::Navigate, *a}}};
  }
  return std::nullopt;
}

PlannerResponse template_plan(const PlannerRequest& request, const ResourceProfile& profile,
                              Deployment config) {
  PlannerResponse r;
  const auto plan = template_decompose(request.user_prompt);
  if (!plan) {
    r.failure = PlannerFailure::NoPatternMatch;
    r.plan = parse_plan(r.raw_text);
    r.latency_sim_s = decode_duration(profile, PlanKind::Navigation, config);
    return r;
  }
  r.raw_text = serialize_plan(*plan);
  r.plan = parse_plan(r.raw_text);
  r.latency_sim_s = decode_duration(
      profile, r.plan.plan.is_manipulation() ? PlanKind::Manipulation : PlanKind::Navigation, config);
  return r;
}

}  // namespace atlas
