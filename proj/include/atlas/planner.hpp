#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/knowledge_base.hpp"
#include "atlas/plan.hpp"
#include "atlas/scheduler.hpp"

namespace atlas {

enum class PlannerKind { Template, Remote };
std::string_view to_string(PlannerKind k);

struct PlannerRequest {
  std::string system_header;
  std::string user_prompt;
  PlannerKind planner_kind = PlannerKind::Template;
};

enum class PlannerFailure { None, NoPatternMatch, NetworkError, Timeout, HttpStatusError, BadResponse };
std::string_view to_string(PlannerFailure f);

struct PlannerResponse {
  std::string raw_text;
  double latency_sim_s = 0.0;
  PlanParse plan;  // always parse_plan(raw_text)
  PlannerFailure failure = PlannerFailure::None;
  std::optional<double> wall_latency_s;
  std::string detail;

  bool ok() const { return failure == PlannerFailure::None && plan.ok(); }
};

class EmptyPromptError : public std::invalid_argument {
 public:
  EmptyPromptError() : std::invalid_argument("prompt text is empty") {}
};

/// Instruction preamble placed before the landmark list.
std::string_view system_header_template();

/// Header = template followed by one entity name per line.
std::string render_system_header(const std::vector<std::string>& entities);

/// Entity names listed in a header produced by render_system_header.
std::vector<std::string> header_entities(std::string_view header);

PlannerRequest build_prompt(const KnowledgeBase& kb, std::string_view user_text,
                            PlannerKind kind = PlannerKind::Template);

/// Lowercased prompt with sentence punctuation turned into " . " tokens.
std::string normalize_prompt(std::string_view text);

/// Rule-based decomposition into the two task skeletons. Returns nullopt
/// when no rule matches.
std::optional<Plan> template_decompose(std::string_view prompt);

PlannerResponse template_plan(const PlannerRequest& request, const ResourceProfile& profile = {},
                              Deployment config = Deployment::Onboard);

struct RemoteEndpoint {
  std::string url;  // http://host:port/path
  std::chrono::milliseconds timeout{30'000};
};

/// POSTs {system_header, prompt} and parses the returned {text}.
PlannerResponse remote_plan(const RemoteEndpoint& endpoint, const PlannerRequest& request,
                            const ResourceProfile& profile = {},
                            Deployment config = Deployment::Cloud);

/// A high-level planner the executor can call.
class Planner {
 public:
  virtual ~Planner() = default;
  virtual PlannerKind kind() const = 0;
  virtual PlannerResponse plan(const PlannerRequest& request, const ResourceProfile& profile,
                               Deployment config) = 0;
};

class TemplatePlanner final : public Planner {
 public:
  PlannerKind kind() const override { return PlannerKind::Template; }
  PlannerResponse plan(const PlannerRequest& request, const ResourceProfile& profile,
                       Deployment config) override {
    return template_plan(request, profile, config);
  }
};

class RemotePlanner final : public Planner {
 public:
  explicit RemotePlanner(RemoteEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  PlannerKind kind() const override { return PlannerKind::Remote; }
  PlannerResponse plan(const PlannerRequest& request, const ResourceProfile& profile,
                       Deployment config) override {
    return remote_plan(endpoint_, request, profile, config);
  }

 private:
  RemoteEndpoint endpoint_;
};

}  // namespace atlas
