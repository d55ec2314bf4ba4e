#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "atlas/planner.hpp"

namespace atlas {

namespace {

struct SplitUrl {
  std::string origin;
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

PlannerResponse remote_plan(const RemoteEndpoint& endpoint, const PlannerRequest& request,
                            const ResourceProfile& profile, Deployment config) {
  PlannerResponse r;
  const auto [origin, path] = split_url(endpoint.url);
  httplib::Client client(origin);
  client.set_connection_timeout(endpoint.timeout);
  client.set_read_timeout(endpoint.timeout);
  client.set_write_timeout(endpoint.timeout);

  const nlohmann::json body = {{"system_header", request.system_header},
                               {"prompt", request.user_prompt}};
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path, body.dump(), "application/json");
  r.wall_latency_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  auto fail = [&](PlannerFailure f, std::string detail) {
    r.failure = f;
    r.detail = std::move(detail);
    r.raw_text.clear();
    r.plan = parse_plan(r.raw_text);
    r.latency_sim_s = decode_duration(profile, PlanKind::Navigation, config);
    return r;
  };

  if (!res) {
    const auto err = res.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && *r.wall_latency_s >=
                               std::chrono::duration<double>(endpoint.timeout).count() * 0.9);
    return fail(timed_out ? PlannerFailure::Timeout : PlannerFailure::NetworkError,
                httplib::to_string(err));
  }
  if (res->status != 200) {
    return fail(PlannerFailure::HttpStatusError, "HTTP " + std::to_string(res->status));
  }
  try {
    const auto doc = nlohmann::json::parse(res->body);
    r.raw_text = doc.at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    return fail(PlannerFailure::BadResponse, e.what());
  }
  r.plan = parse_plan(r.raw_text);
  r.latency_sim_s = decode_duration(
      profile, r.plan.plan.is_manipulation() ? PlanKind::Manipulation : PlanKind::Navigation, config);
  return r;
}

}  // namespace atlas
