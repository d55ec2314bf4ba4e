#include <gtest/gtest.h>

#include <random>

#include "atlas/plan.hpp"

using namespace atlas;

TEST(ParsePlan, SingleNavigate) {
  const auto r = parse_plan("navigate(garage)");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.plan, (Plan{{SubTask::navigate("garage")}}));
}

TEST(ParsePlan, FourStepWithHyphen) {
  const auto r = parse_plan("navigate(vending-machine)\ngrab(bottle)\nnavigate(office)\ndrop()");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.plan, (Plan{{SubTask::navigate("vending machine"), SubTask::grab("bottle"),
                           SubTask::navigate("office"), SubTask::drop()}}));
}

TEST(ParsePlan, SpacedEnDashIsAHyphen) {
  const auto r = parse_plan("navigate(vending \xE2\x80\x93 machine)");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.plan.subtasks.at(0).target, "vending machine");
}

TEST(ParsePlan, ProseIsMalformed) {
  const auto r = parse_plan("I am not able to perform tasks, but I can provide you...");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.error, (ParseError{1, ParseErrorReason::MalformedLine}));
}

TEST(ParsePlan, EmptyInput) {
  for (const char* s : {"", "\n\n", "   \n\t"}) {
    const auto r = parse_plan(s);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.error->reason, ParseErrorReason::EmptyInput);
    EXPECT_EQ(r.error->line_number, 0u);
  }
}

TEST(ParsePlan, ErrorReasons) {
  EXPECT_EQ(parse_plan("fly(kitchen)").error->reason, ParseErrorReason::UnknownAction);
  EXPECT_EQ(parse_plan("navigate()").error->reason, ParseErrorReason::MissingArgument);
  EXPECT_EQ(parse_plan("grab(  )").error->reason, ParseErrorReason::MissingArgument);
  EXPECT_EQ(parse_plan("drop(cup)").error->reason, ParseErrorReason::UnexpectedArgument);
  EXPECT_EQ(parse_plan("navigate kitchen").error->reason, ParseErrorReason::MalformedLine);
  EXPECT_EQ(parse_plan("navigate(a, b)").error->reason, ParseErrorReason::MalformedLine);
}

TEST(ParsePlan, ErrorPointsAtFirstBadLine) {
  const auto r = parse_plan("navigate(kitchen)\n\ngrab(cup)\nSure! here you go\ndrop()");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->line_number, 4u);
}

TEST(ParsePlan, CaseBlankLinesAndQuotes) {
  const auto r = parse_plan("\n  NAVIGATE(The Kitchen)  \n\nGrab(\"cup\")\r\nDrop()\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.plan, (Plan{{SubTask::navigate("kitchen"), SubTask::grab("cup"), SubTask::drop()}}));
}

TEST(SerializePlan, Examples) {
  EXPECT_EQ(serialize_plan(Plan{{SubTask::navigate("kitchen")}}), "navigate(kitchen)");
  EXPECT_EQ(serialize_plan(Plan{{SubTask::grab("teddy bear"), SubTask::drop()}}), "grab(teddy bear)\ndrop()");
  EXPECT_EQ(serialize_plan(Plan{}), "");
  EXPECT_FALSE(parse_plan(serialize_plan(Plan{})).ok());
}

TEST(NormalizeEntity, Examples) {
  EXPECT_EQ(normalize_entity("Vending-Machine"), "vending machine");
  EXPECT_EQ(normalize_entity("the kids room"), "kids room");
  EXPECT_EQ(normalize_entity("  A   Teddy_Bear "), "teddy bear");
  EXPECT_EQ(normalize_entity("the the cup"), "cup");
  EXPECT_THROW(normalize_entity("   "), EmptyEntityError);
  EXPECT_THROW(normalize_entity("the"), EmptyEntityError);
  EXPECT_FALSE(try_normalize_entity("--").has_value());
}

namespace {

const std::vector<std::string> kWords = {"kitchen", "Teddy", "bear",  "the",  "a",    "vending",
                                         "machine", "X1",    "room",  "an",   "LOBBY", "cup's"};

std::string random_entity(std::mt19937_64& rng) {
  const char* seps[] = {" ", "-", "_", "  ", "\t", " - "};
  std::string s;
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    if (i) s += seps[rng() % 6];
    s += kWords[rng() % kWords.size()];
  }
  return s;
}

}  // namespace

TEST(NormalizeEntity, Idempotent) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto raw = random_entity(rng);
    const auto once = try_normalize_entity(raw);
    if (!once) continue;
    EXPECT_EQ(normalize_entity(*once), *once) << raw;
  }
}

TEST(PlanProperties, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    Plan p;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      const auto kind = rng() % 3;
      if (kind == 2) {
        p.subtasks.push_back(SubTask::drop());
        continue;
      }
      auto name = try_normalize_entity(random_entity(rng));
      if (!name) name = "kitchen";
      p.subtasks.push_back(kind == 0 ? SubTask::navigate(*name) : SubTask::grab(*name));
    }
    const auto r = parse_plan(serialize_plan(p));
    ASSERT_TRUE(r.ok()) << serialize_plan(p);
    EXPECT_EQ(r.plan, p);
  }
}

TEST(PlanProperties, RejectsProse) {
  const std::vector<std::string> prose = {"Sure", "I", "cannot", "navigating", "Here", "grabbing",
                                          "1.", "-", "Step", "navigate:", "drop", "go"};
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    std::string line = prose[rng() % prose.size()];
    const int extra = static_cast<int>(rng() % 6);
    for (int k = 0; k < extra; ++k) line += " " + kWords[rng() % kWords.size()];
    if (rng() % 2) line += "(" + kWords[rng() % kWords.size()] + ")";
    // Embed the prose line among valid lines.
    const std::string text = "navigate(kitchen)\n" + line + "\ndrop()";
    const auto r = parse_plan(text);
    EXPECT_FALSE(r.ok()) << text;
    if (!r.ok()) EXPECT_EQ(r.error->line_number, 2u);
  }
}

TEST(Plan, IsManipulation) {
  EXPECT_FALSE((Plan{{SubTask::navigate("x")}}).is_manipulation());
  EXPECT_TRUE((Plan{{SubTask::navigate("x"), SubTask::drop()}}).is_manipulation());
}
