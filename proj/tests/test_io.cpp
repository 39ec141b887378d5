#include <gtest/gtest.h>

#include <sstream>

#include "ccg/gallery.hpp"
#include "ccg/io.hpp"

using namespace ccg;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, GameRoundTrip) {
  for (const auto& name : {"fig1", "fig2", "chaotic_channels", "asym_partition"}) {
    Game g = gallery_item(name).game;
    Json j = game_to_json(g);
    EXPECT_EQ(j["v"], 1);
    Game back = game_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back, g) << name;
    EXPECT_EQ(back.directed(), g.directed());
  }
}

TEST(Json, WeightsEncoding) {
  EXPECT_EQ(weight_to_json(Weight::neg_inf()), "-inf");
  EXPECT_EQ(weight_to_json(Weight::best_friend()), "N");
  EXPECT_EQ(weight_to_json(Weight::finite(-3)), -3);
  EXPECT_EQ(weight_from_json(Json("N"), "w"), Weight::best_friend());
  EXPECT_NE(error_of([] { weight_from_json(Json("inf"), "w"); }).find("'w'"), std::string::npos);
}

TEST(Json, SymmetricPairsAreWrittenOnce) {
  Game g(3);
  g.set(0, 1, 2);
  g.set_enemies(1, 2);
  Json j = game_to_json(g);
  EXPECT_EQ(j["weights"].size(), 2u);
  EXPECT_EQ(j["weights"][1][2], "-inf");
}

TEST(Json, MalformedGamesNameTheField) {
  auto parse = [](const std::string& s) { return [s] { game_from_json(Json::parse(s)); }; };
  EXPECT_NE(error_of(parse(R"({"weights":[]})")).find("'n'"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"n":3,"weights":[[0,0,1]]})")).find("weights[0]"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"n":3,"weights":[[0,1]]})")).find("weights[0]"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"n":3,"weights":[[0,1,1],[1,0,2]]})")).find("weights[1]"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"n":3,"weights":[[0,5,1]]})")).find("weights[0]"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"v":2,"n":3,"weights":[]})")).find("'v'"), std::string::npos);
  EXPECT_NE(error_of(parse(R"({"n":3,"weight_set":[1],"weights":[[0,1,2]]})")).find("weights"), std::string::npos);
  EXPECT_EQ(error_of(parse(R"({"n":3,"weights":[[0,1,1],[1,0,1]]})")), "");
}

TEST(Json, PartitionRoundTripAndErrors) {
  Partition p(5, {{0, 3}, {1, 2, 4}});
  EXPECT_EQ(partition_from_json(partition_to_json(p)), p);
  EXPECT_NE(error_of([] { partition_from_json(Json::parse(R"({"n":3,"groups":[[0,1]]})")); }).find("missing"),
            std::string::npos);
  EXPECT_NE(error_of([] { partition_from_json(Json::parse(R"({"n":3,"groups":[[0,1],[1,2]]})")); }).find("twice"),
            std::string::npos);
}

TEST(Json, ConfigurationRoundTrip) {
  Configuration c(3, 2, {{0, 1}, {0, 2}, {1}, {2}});
  Json j = configuration_to_json(c);
  EXPECT_EQ(configuration_from_json(j), c);
  EXPECT_EQ(j["memberships"].size(), 3u);
  EXPECT_NE(error_of([] {
              configuration_from_json(Json::parse(R"({"n":2,"q":2,"memberships":[[0,0],[1,2]]})"));
            }).find("memberships[0]"),
            std::string::npos);
}

TEST(Json, HypergameRoundTrip) {
  HyperGame h(5, 3);
  h.add({0, 1, 2}, Weight::finite(4));
  h.add({3, 4}, Weight::neg_inf());
  HyperGame back = hypergame_from_json(hypergame_to_json(h));
  EXPECT_EQ(back.edges(), h.edges());
  EXPECT_EQ(back.t(), 3);
  EXPECT_NE(error_of([] {
              hypergame_from_json(Json::parse(R"({"n":4,"t":2,"hyperedges":[[[0,1,2],1]]})"));
            }).find("hyperedges[0]"),
            std::string::npos);
}

TEST(Json, TraceLines) {
  Trace t = run_dynamics(uniform_game(3), 1, Scheduler::first_lex());
  std::ostringstream os;
  write_trace_jsonl(os, t);
  std::istringstream in(os.str());
  std::string line;
  std::vector<Json> lines;
  while (std::getline(in, line)) lines.push_back(Json::parse(line));
  ASSERT_EQ(lines.size(), t.num_steps + 1);
  EXPECT_EQ(lines.back()["status"], "stable");
  EXPECT_EQ(lines.back()["steps"], t.num_steps);
  EXPECT_EQ(lines.front()["step"], 0);
  EXPECT_EQ(lines.front()["lambda_after"].size(), 3u);
}
