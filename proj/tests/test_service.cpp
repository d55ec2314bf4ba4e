#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <httplib.h>

#include "atlas/service.hpp"

using namespace atlas;
using nlohmann::json;

namespace {

ServiceConfig config(const char* scenario, double speed) {
  ServiceConfig c;
  c.run.scenario_path = resolve_scenario(c.data_dir, scenario);
  c.speed = speed;
  return c;
}

json body(const httplib::Result& r) { return json::parse(r->body); }

std::uint64_t post_prompt(httplib::Client& cli, const std::string& text) {
  auto r = cli.Post("/api/prompt", json{{"text", text}}.dump(), "application/json");
  EXPECT_TRUE(r);
  EXPECT_EQ(r->status, 202);
  return body(r).at("task_id").get<std::uint64_t>();
}

}  // namespace

TEST(Service, PromptTaskKbWorldMetrics) {
  Service svc(config("office", 0.0));
  const int port = svc.start();
  httplib::Client cli("127.0.0.1", port);
  cli.set_read_timeout(std::chrono::seconds(10));

  const auto lobby = post_prompt(cli, "Go to the lobby");
  for (const char* p : {"Go to the lounge", "Go to the office", "Go to the meeting room"}) post_prompt(cli, p);
  ASSERT_TRUE(svc.wait_idle(std::chrono::seconds(60)));

  auto t = cli.Get("/api/tasks/" + std::to_string(lobby));
  ASSERT_TRUE(t);
  ASSERT_EQ(t->status, 200);
  EXPECT_EQ(body(t)["status"], "done");
  EXPECT_EQ(body(t)["score"], (json{{"matched", 1}, {"total", 1}}));
  EXPECT_EQ(body(t)["prompt"], "Go to the lobby");

  auto kb = cli.Get("/api/kb");
  bool teddy = false;
  for (const auto& e : body(kb)) teddy |= e["name"] == "teddy bear";
  EXPECT_TRUE(teddy);

  auto world = body(cli.Get("/api/world"));
  EXPECT_EQ(world["name"], "office");
  EXPECT_TRUE(world["robot"].contains("x"));
  EXPECT_TRUE(world.contains("holding"));
  EXPECT_GT(world["objects"].size(), 0u);
  EXPECT_EQ(world["rooms"].size(), 4u);

  auto all = body(cli.Get("/api/metrics"));
  auto later = body(cli.Get("/api/metrics?since=20"));
  EXPECT_GT(all.size(), later.size());
  for (const auto& m : later) EXPECT_GT(m["t"].get<double>(), 20.0);

  EXPECT_EQ(cli.Get("/api/tasks/unknown")->status, 404);
  EXPECT_EQ(cli.Get("/api/tasks/999")->status, 404);
  EXPECT_EQ(cli.Get("/api/metrics?since=abc")->status, 400);
  EXPECT_EQ(cli.Post("/api/prompt", "not json", "application/json")->status, 400);
  EXPECT_EQ(cli.Post("/api/prompt", R"({"text": ""})", "application/json")->status, 400);
  EXPECT_EQ(cli.Post("/api/prompt", R"({"prompt": "x"})", "application/json")->status, 400);
  svc.stop();
}

TEST(Service, EventStream) {
  Service svc(config("office", 0.0));
  const int port = svc.start();
  httplib::Client cli("127.0.0.1", port);
  cli.set_read_timeout(std::chrono::seconds(10));
  post_prompt(cli, "Go to the meeting room");
  ASSERT_TRUE(svc.wait_idle(std::chrono::seconds(30)));

  std::string stream;
  auto r = cli.Get("/api/events?since=0&limit=40", [&](const char* data, std::size_t n) {
    stream.append(data, n);
    return true;
  });
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "text/event-stream");
  std::vector<json> events;
  std::size_t pos = 0;
  while ((pos = stream.find("data: ", pos)) != std::string::npos) {
    const auto end = stream.find('\n', pos);
    events.push_back(json::parse(stream.substr(pos + 6, end - pos - 6)));
    pos = end;
  }
  ASSERT_EQ(events.size(), 40u);
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_EQ(events[i]["seq"], i + 1);
    EXPECT_TRUE(events[i].contains("type"));
    EXPECT_TRUE(events[i].contains("t"));
    EXPECT_TRUE(events[i].contains("payload"));
  }

  // Resume after the last seen id.
  std::string tail;
  httplib::Headers h{{"Last-Event-ID", "40"}};
  cli.Get("/api/events?limit=1", h, [&](const char* data, std::size_t n) {
    tail.append(data, n);
    return true;
  });
  EXPECT_NE(tail.find("id: 41\n"), std::string::npos);

  // Every detected KB entry was announced on the stream first.
  std::set<std::string> announced;
  for (const auto& e : svc.events().since(0)) {
    if (e.type == "kb_update") announced.insert(e.payload.at("name").get<std::string>());
  }
  for (const auto& e : svc.kb_snapshot()) {
    if (e["source"] == "detected") EXPECT_TRUE(announced.contains(e["name"].get<std::string>())) << e["name"];
  }
  svc.stop();
}

TEST(Service, ResetConflictAndReload) {
  Service svc(config("office", 40.0));
  const int port = svc.start();
  httplib::Client cli("127.0.0.1", port);
  cli.set_read_timeout(std::chrono::seconds(10));

  post_prompt(cli, "Go to the meeting room");
  auto busy = cli.Post("/api/reset", "{}", "application/json");
  ASSERT_TRUE(busy);
  EXPECT_EQ(busy->status, 409);
  EXPECT_EQ(cli.Post("/api/reset", "[1", "application/json")->status, 400);
  ASSERT_TRUE(svc.wait_idle(std::chrono::seconds(60)));

  EXPECT_EQ(cli.Post("/api/reset", R"({"scenario": "nowhere"})", "application/json")->status, 400);
  auto ok = cli.Post("/api/reset", R"({"scenario": "home", "seed": 3})", "application/json");
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  EXPECT_EQ(body(cli.Get("/api/world"))["name"], "home");
  EXPECT_EQ(body(cli.Get("/api/kb")).size(), 3u);
  const auto evs = svc.events().since(0);
  EXPECT_TRUE(std::any_of(evs.begin(), evs.end(), [](const Event& e) { return e.type == "reset"; }));
  svc.stop();
}
