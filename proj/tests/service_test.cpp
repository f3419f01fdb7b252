#include "triramsey/service.hpp"
#include "triramsey/service_http.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <thread>

namespace triramsey {
namespace {

HttpResponse get(Service& s, const std::string& path, std::map<std::string, std::string> query = {}) {
  return s.handle({"GET", path, std::move(query), ""});
}

HttpResponse post(Service& s, const std::string& path, const Json& body) {
  return s.handle({"POST", path, {}, body.dump()});
}

std::string create(Service& s, const Json& config) {
  const auto r = post(s, "/games", config);
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body.at("id").get<std::string>();
}

TEST(Service, CreatesAFreshGame) {
  Service s;
  const auto r = post(s, "/games", {{"m", 3}, {"p", 2}, {"q", 2}, {"k", 1}, {"variant", "directional"}});
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["state"]["cells"], 6);
  EXPECT_EQ(r.body["state"]["toMove"], 1);
  EXPECT_EQ(r.body["state"]["status"]["kind"], "ongoing");
  EXPECT_EQ(r.body["state"]["owner"], Json::parse("[0,0,0,0,0,0]"));
  const auto id = r.body["id"].get<std::string>();
  const auto again = get(s, "/games/" + id);
  EXPECT_EQ(again.status, 200);
  EXPECT_EQ(again.body["state"], r.body["state"]);
  // wrapped form
  EXPECT_EQ(post(s, "/games", {{"config", {{"m", 4}, {"p", 2}, {"q", 3}, {"k", 1}}}}).status, 201);
}

TEST(Service, RejectsBadConfigsAndBodies) {
  Service s;
  const auto bad = post(s, "/games", {{"m", 3}, {"p", 4}, {"q", 2}, {"k", 1}});
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(bad.body["code"], "InvalidConfig");
  EXPECT_TRUE(bad.body["error"].is_string());
  EXPECT_EQ(post(s, "/games", {{"m", 4}, {"p", 3}, {"q", 3}, {"k", 2}, {"variant", "directional"}}).status, 422);
  EXPECT_EQ(s.handle({"POST", "/games", {}, "{oops"}).status, 400);
  EXPECT_EQ(get(s, "/games/nope").status, 404);
  EXPECT_EQ(get(s, "/games/nope/hint").status, 404);
  EXPECT_EQ(get(s, "/elsewhere").status, 404);
  EXPECT_EQ(s.handle({"DELETE", "/games", {}, ""}).status, 404);
}

TEST(Service, PlaysTheSampleGameToPlayerTwosWin) {
  Service s;
  const auto id = create(s, {{"m", 3}, {"p", 2}, {"q", 2}, {"k", 1}});
  HttpResponse r;
  int turn = 0;
  for (int cell : {2, 5, 4, 6, 3, 1}) {
    r = post(s, "/games/" + id + "/moves", {{"move", cell}, {"expectedTurn", turn++}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
  }
  EXPECT_EQ(r.body["state"]["status"]["kind"], "won");
  EXPECT_EQ(r.body["state"]["status"]["winner"], 2);
  EXPECT_EQ(r.body["state"]["status"]["witness"], Json::parse("[1,5,6]"));
  const auto over = post(s, "/games/" + id + "/moves", {{"move", "pass"}});
  EXPECT_EQ(over.status, 409);
  EXPECT_EQ(over.body["code"], "GameOver");
  EXPECT_EQ(get(s, "/games/" + id + "/hint").status, 409);
}

TEST(Service, IllegalAndStaleMovesConflict) {
  Service s;
  const auto id = create(s, {{"m", 3}, {"p", 2}, {"q", 2}, {"k", 1}});
  const std::string moves = "/games/" + id + "/moves";
  ASSERT_EQ(post(s, moves, {{"move", 3}}).status, 200);
  const auto occupied = post(s, moves, {{"move", 3}});
  EXPECT_EQ(occupied.status, 409);
  EXPECT_EQ(occupied.body["code"], "CellOccupied");
  EXPECT_EQ(post(s, moves, {{"move", 7}}).status, 409);
  EXPECT_EQ(post(s, moves, {{"move", 0}}).status, 409);
  const auto stale = post(s, moves, {{"move", 4}, {"expectedTurn", 0}});
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(stale.body["code"], "StaleTurn");
  EXPECT_EQ(post(s, moves, {{"move", "castle"}}).status, 400);
  EXPECT_EQ(post(s, moves, {{"cell", 4}}).status, 400);
  // none of the rejected moves changed the game
  EXPECT_EQ(get(s, "/games/" + id).body["state"]["turn"], 1);
}

TEST(Service, HintOnTheDirectionalBoardIsAFirstPlayerWin) {
  Service s;
  const auto id = create(s, {{"m", 3}, {"p", 2}, {"q", 2}, {"k", 1}, {"variant", "directional"}});
  const auto r = get(s, "/games/" + id + "/hint");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["outcome"], "FirstPlayerWin");
  EXPECT_EQ(r.body["move"], 1);
  EXPECT_GT(r.body["nodesExplored"].get<std::uint64_t>(), 0u);
}

TEST(Service, WhatIfMatchesTheSolverAndLeavesTheGameAlone) {
  Service s;
  const GameConfig config{3, 2, 2, 1, Variant::Directional};
  const auto id = create(s, config_to_json(config));
  for (std::size_t cell = 1; cell <= 6; ++cell) {
    const auto r = get(s, "/games/" + id + "/whatif", {{"move", std::to_string(cell)}});
    ASSERT_EQ(r.status, 200);
    const auto want = solve(apply_move(new_game(config), Move::mark(cell))).outcome;
    EXPECT_EQ(r.body["resultingOutcome"], outcome_name(want)) << cell;
  }
  for (std::size_t corner : {1, 4, 6}) {
    EXPECT_EQ(get(s, "/games/" + id + "/whatif", {{"move", std::to_string(corner)}}).body["resultingOutcome"],
              "FirstPlayerWin");
  }
  EXPECT_EQ(get(s, "/games/" + id + "/whatif", {{"move", "pass"}}).status, 200);
  EXPECT_EQ(get(s, "/games/" + id + "/whatif", {{"move", "9"}}).status, 409);
  EXPECT_EQ(get(s, "/games/" + id + "/whatif").status, 400);
  EXPECT_EQ(get(s, "/games/" + id).body["state"]["turn"], 0);
}

TEST(Service, SolverLimitsAreServiceUnavailable) {
  ServiceOptions opts;
  opts.solver.node_budget = 50;
  Service s(opts);
  const auto id = create(s, {{"m", 4}, {"p", 3}, {"q", 3}, {"k", 1}});
  const auto r = get(s, "/games/" + id + "/hint");
  EXPECT_EQ(r.status, 503);
  EXPECT_EQ(r.body["code"], "BudgetExceeded");
  // 78 cells do not fit the solver's 64-bit boards
  Service big;
  const auto huge = create(big, {{"m", 12}, {"p", 3}, {"q", 3}, {"k", 1}});
  EXPECT_EQ(get(big, "/games/" + huge + "/hint").status, 503);
}

TEST(Service, BracketAndBounds) {
  Service s;
  auto r = get(s, "/bracket", {{"n", "4"}, {"k", "3"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["value"], "41");
  EXPECT_EQ(get(s, "/bracket", {{"n", "0"}, {"k", "0"}}).body["value"], "1");
  EXPECT_EQ(get(s, "/bracket", {{"n", "60"}, {"k", "30"}}).body["value"], bracket(60, 30).str());
  EXPECT_EQ(get(s, "/bracket", {{"n", "2"}, {"k", "3"}}).status, 422);
  EXPECT_EQ(get(s, "/bracket", {{"n", "x"}, {"k", "3"}}).status, 422);
  EXPECT_EQ(get(s, "/bracket", {{"n", "4"}}).status, 422);

  r = get(s, "/bounds", {{"p", "3"}, {"q", "3"}, {"k", "2"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["lower"], "6");
  EXPECT_EQ(r.body["upperExpr"], "R^{15}(3,2)");
  EXPECT_EQ(get(s, "/bounds", {{"p", "4"}, {"q", "4"}, {"k", "3"}, {"form", "proof"}}).body["lower"], "19");
  EXPECT_EQ(get(s, "/bounds", {{"p", "3"}, {"q", "3"}, {"k", "1"}}).body["value"], 5);
  EXPECT_EQ(get(s, "/bounds", {{"p", "2"}, {"q", "3"}, {"k", "3"}}).status, 422);
}

// Random moves on several games at once, checked against games replayed
// locally; with threads, each thread owns some games but shares the service.
TEST(Service, InterleavedSessionsNeverInterfere) {
  Service s;
  const std::vector<GameConfig> configs = {{3, 2, 2, 1, Variant::Standard},
                                           {4, 2, 3, 1, Variant::Directional},
                                           {5, 3, 3, 1, Variant::Standard},
                                           {4, 3, 3, 2, Variant::Standard}};
  constexpr int kThreads = 4, kGamesPerThread = 6;
  std::atomic<int> failures{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < kThreads; ++t) {
    workers.emplace_back([&, t] {
      std::mt19937_64 rng(100 + t);
      std::vector<std::string> ids;
      std::vector<GameState> local;
      for (int g = 0; g < kGamesPerThread; ++g) {
        const auto& c = configs[(t + g) % configs.size()];
        const auto r = post(s, "/games", config_to_json(c));
        if (r.status != 201) ++failures;
        ids.push_back(r.body["id"]);
        local.push_back(new_game(c));
      }
      for (int step = 0; step < 200; ++step) {
        const std::size_t g = rng() % ids.size();
        if (!local[g].status().ongoing()) continue;
        const auto moves = legal_moves(local[g]);
        const Move mv = moves[rng() % moves.size()];
        const auto r = post(s, "/games/" + ids[g] + "/moves",
                            {{"move", move_to_json(mv)}, {"expectedTurn", local[g].history().size()}});
        local[g] = apply_move(local[g], mv);
        if (r.status != 200 || r.body["state"] != state_to_json(local[g])) ++failures;
      }
      for (std::size_t g = 0; g < ids.size(); ++g) {
        if (get(s, "/games/" + ids[g]).body["state"] != state_to_json(local[g])) ++failures;
      }
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(failures.load(), 0);
  EXPECT_EQ(s.session_count(), static_cast<std::size_t>(kThreads * kGamesPerThread));
}

TEST(Service, RacingWritersOnOneTurnGetOneWinner) {
  Service s;
  const auto id = create(s, {{"m", 5}, {"p", 3}, {"q", 3}, {"k", 1}});
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> racers;
  for (int i = 1; i <= 8; ++i) {
    racers.emplace_back([&, i] {
      const auto r = post(s, "/games/" + id + "/moves", {{"move", i}, {"expectedTurn", 0}});
      (r.status == 200 ? ok : conflict)++;
    });
  }
  for (auto& r : racers) r.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 7);
  EXPECT_EQ(get(s, "/games/" + id).body["state"]["turn"], 1);
}

TEST(ServiceHttp, ServesOverLoopback) {
  Service service;
  httplib::Server server;
  bind_service(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/games", R"({"m":3,"p":2,"q":2,"k":1,"variant":"directional"})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const auto id = Json::parse(created->body)["id"].get<std::string>();
  auto hint = client.Get("/games/" + id + "/hint");
  ASSERT_TRUE(hint);
  EXPECT_EQ(Json::parse(hint->body)["outcome"], "FirstPlayerWin");
  auto move = client.Post("/games/" + id + "/moves", R"({"move":1})", "application/json");
  ASSERT_TRUE(move);
  EXPECT_EQ(move->status, 200);
  auto again = client.Post("/games/" + id + "/moves", R"({"move":1})", "application/json");
  ASSERT_TRUE(again);
  EXPECT_EQ(again->status, 409);
  auto bracket_res = client.Get("/bracket?n=4&k=3");
  ASSERT_TRUE(bracket_res);
  EXPECT_EQ(Json::parse(bracket_res->body)["value"], "41");
  EXPECT_EQ(bracket_res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto missing = client.Get("/games/zzz");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  loop.join();
}

}  // namespace
}  // namespace triramsey
