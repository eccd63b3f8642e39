#include <gtest/gtest.h>

#include <fstream>

#include "support.hpp"

using namespace ftl;
using ftl::test::add_request;
using ftl::test::daily_windows;

namespace {

// A few destroy/repair rounds from the initial solution; always feasible.
Solution random_feasible(const Instance& inst, std::mt19937_64& rng) {
  Solution s = build_initial(inst);
  const int rounds = std::uniform_int_distribution<int>(0, 6)(rng);
  for (int i = 0; i < rounds; ++i) {
    const auto op = kAllRemovalOps[std::uniform_int_distribution<std::size_t>(0, std::size(kAllRemovalOps) - 1)(rng)];
    const auto q = removal_count(s.planned(), 100, 0.35);
    auto removed = q ? apply_removal(op, inst, s, q, rng, {}) : std::vector<std::size_t>{};
    repair(inst, s, std::move(removed), InsertionOp{std::uniform_int_distribution<int>(1, 4)(rng)}, {});
  }
  return s;
}

}  // namespace

TEST(BruteForce, EmptyInstance) {
  auto inst = test::euclidean_instance({{0, 0}});
  const auto s = brute_force(inst);
  EXPECT_TRUE(s.trips.empty());
  EXPECT_TRUE(s.bank.empty());
  EXPECT_EQ(s.cost.total, 0);
}

TEST(BruteForce, ShortRequestIsOutsourced) {
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}});
  inst.mu = distance_from_km(250);
  add_request(inst, 0, 1, {360, 1080}, daily_windows(0, 7), money_from_units(100));
  const auto s = brute_force(inst);
  EXPECT_TRUE(s.trips.empty());
  EXPECT_EQ(s.bank, std::vector<std::size_t>{0});
}

TEST(BruteForce, PairSharesOneTrip) {
  // d = 400 km each, deadhead 48.9 km between them: one trip costs
  // 1.06 * 848.9 = 899.83 < 1000 per request outsourced; alone each trip
  // falls short of mu = 500 km. The second pickup is open on day 1.
  auto inst = test::euclidean_instance({{0, 0}, {400, 0}, {400, 48.9}, {0, 48.9}});
  inst.mu = distance_from_km(500);
  add_request(inst, 0, 1, {360, 1080}, daily_windows(0, 7), money_from_units(1000));
  add_request(inst, 2, 3, {1800, 2520}, daily_windows(1, 7), money_from_units(1000));
  const auto s = brute_force(inst);
  ASSERT_EQ(s.trips.size(), 1u);
  EXPECT_EQ(s.trips[0].requests.size(), 2u);
  EXPECT_TRUE(s.bank.empty());
  EXPECT_NEAR(to_units(s.cost.total), 1.06 * 848.9, 1e-6);
  EXPECT_TRUE(validate_solution(inst, s).empty());
}

TEST(BruteForce, GuardsSize) {
  std::mt19937_64 rng(1);
  auto inst = test::random_micro(rng, 7);
  auto extra = inst.requests.front();
  extra.id = "x1";
  inst.requests.push_back(extra);
  extra.id = "x2";
  inst.requests.push_back(extra);
  EXPECT_THROW(brute_force(inst), TooLarge);
}

TEST(BruteForce, NeverWorseThanAllOutsourcedAndValid) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const auto inst = test::random_micro(rng, 3 + i % 5);
    const auto s = brute_force(inst);
    EXPECT_TRUE(validate_solution(inst, s).empty());
    EXPECT_LE(s.cost.total, inst.all_outsourced_cost());
  }
}

TEST(BruteForce, ArcFilterNeverChangesTheOptimum) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    const auto inst = test::random_micro(rng, 3 + i % 5);
    EXPECT_EQ(brute_force(inst).cost.total, brute_force(inst, {.arc_filter = true}).cost.total);
  }
}

TEST(BruteForceSchedule, NoBreakNeededMatchesSimulate) {
  auto inst = test::timed_instance({{0, 120}, {120, 0}});
  add_request(inst, 0, 1, {600, 1320}, {{600, 1320}, {2040, 2760}});
  const std::vector<std::size_t> seq{0};
  const auto sim = simulate_trip(inst, seq);
  ASSERT_TRUE(std::holds_alternative<Schedule>(sim));
  EXPECT_EQ(brute_force_schedule(seq, inst, 1), std::get<Schedule>(sim).nodes.back().service_start);
}

TEST(BruteForceSchedule, LongLeg) {
  // Pickup 0-120, then 450 drive + 990 break + 50 drive.
  auto inst = test::timed_instance({{0, 500}, {500, 0}});
  add_request(inst, 0, 1, {0, 5000}, {{0, 5000}});
  const std::vector<std::size_t> seq{0};
  EXPECT_EQ(brute_force_schedule(seq, inst, 10), 120 + 1490);
}

TEST(BruteForceSchedule, InfeasibleReturnsNothing) {
  auto inst = test::timed_instance({{0, 500}, {500, 0}});
  add_request(inst, 0, 1, {0, 5000}, {{0, 1000}});
  const std::vector<std::size_t> seq{0};
  EXPECT_FALSE(brute_force_schedule(seq, inst, 10).has_value());
}

// simulate_trip against the grid search on random trips of 1..3 requests.
TEST(BruteForceSchedule, SimulateIsFeasibleAndEarliest) {
  std::mt19937_64 rng(2024);
  int both = 0;
  for (int i = 0; i < 500; ++i) {
    const auto inst = test::random_schedule_case(rng, 30);
    const auto seq = test::identity_sequence(inst.size());
    const auto sim = simulate_trip(inst, seq);
    const auto best = brute_force_schedule(seq, inst, 30);
    ASSERT_EQ(std::holds_alternative<Schedule>(sim), best.has_value()) << "case " << i;
    if (!best) continue;
    ++both;
    const auto& s = std::get<Schedule>(sim);
    EXPECT_TRUE(check_schedule_rules(inst, seq, s).empty()) << "case " << i;
    EXPECT_EQ(s.nodes.back().service_start, *best) << "case " << i;
  }
  EXPECT_GT(both, 100);
}

TEST(RuleChecker, FlagsDrivingOverTheLimit) {
  auto inst = test::timed_instance({{0, 500}, {500, 0}});
  add_request(inst, 0, 1, {0, 5000}, {{0, 5000}});
  Schedule s;
  s.nodes = {{0, 0, 120}, {620, 620, 740}};
  s.legs = {{}, {{Activity::Drive, 120, 620}}};
  const std::vector<std::size_t> seq{0};
  const auto v = check_schedule_rules(inst, seq, s);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("without a break"), std::string::npos);
}

TEST(ArcGraph, SingleRequestHasThreeArcs) {
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}});
  add_request(inst, 0, 1, {360, 1080}, daily_windows(0, 7));
  const auto g = build_arc_graph(inst);
  ASSERT_EQ(g.arcs.size(), 3u);
  EXPECT_EQ(g.arcs[g.start[0]].distance, 0);
  EXPECT_EQ(g.arcs[g.serve[0]].distance, distance_from_km(100));
  EXPECT_EQ(g.arcs[g.end[0]].distance, 0);
  const auto lp = lp_text(g, inst);
  EXPECT_NE(lp.find("obj: 106 x_or0_dr0 - 175 x_or0_dr0 + 175.000000"), std::string::npos) << lp;
  for (const char* section : {"Minimize", "Subject To", "Bounds", "Binary", "End"})
    EXPECT_NE(lp.find(section), std::string::npos);
}

TEST(ArcGraph, FilterDropsLateDeadhead) {
  // r0 pickup opens at 0, 120 min loaded, 60 min empty: 0+120+60+360 = 540.
  auto inst = test::timed_instance({{0, 120, 60, 0}, {120, 0, 60, 0}, {60, 60, 0, 0}, {0, 0, 0, 0}});
  add_request(inst, 0, 1, {0, 1000}, {{0, 5000}});
  add_request(inst, 2, 3, {0, 539}, {{0, 5000}});
  auto g = build_arc_graph(inst);
  EXPECT_FALSE(g.deadhead_arc(0, 1));
  inst.requests[1].pickup_window.end = 540;
  g = build_arc_graph(inst);
  EXPECT_TRUE(g.deadhead_arc(0, 1));
}

TEST(LpAssignment, AllOutsourcedIsClean) {
  std::mt19937_64 rng(3);
  const auto inst = test::random_micro(rng, 5);
  const auto g = build_arc_graph(inst);
  const auto s = all_outsourced(inst);
  EXPECT_TRUE(check_lp_assignment(g, inst, s).empty());
  EXPECT_EQ(lp_objective(g, inst, lp_assignment(g, inst, s)), inst.all_outsourced_cost());
}

TEST(LpAssignment, ShortTripViolatesMinDriving) {
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}});
  inst.mu = distance_from_km(250);
  add_request(inst, 0, 1, {360, 1080}, daily_windows(0, 7));
  Solution s;
  s.trips.push_back(std::get<Trip>(make_trip(inst, {0})));
  update_cost(inst, s);
  const auto v = check_lp_assignment(build_arc_graph(inst), inst, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, "mindriving");
}

TEST(LpAssignment, RandomFeasibleSolutionsSatisfyTheModel) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto inst = test::random_micro(rng, 3 + i % 5);
    const auto s = random_feasible(inst, rng);
    ASSERT_TRUE(validate_solution(inst, s).empty());
    const auto g = build_arc_graph(inst);
    const auto v = check_lp_assignment(g, inst, s);
    EXPECT_TRUE(v.empty()) << v.front().constraint << ": " << v.front().detail;
    EXPECT_EQ(lp_objective(g, inst, lp_assignment(g, inst, s)), solution_cost(inst, s).total);
  }
}

TEST(EmitLp, WritesFile) {
  std::mt19937_64 rng(4);
  const auto inst = test::random_micro(rng, 4);
  const auto path = ::testing::TempDir() + "/model.lp";
  emit_lp(build_arc_graph(inst), inst, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), lp_text(build_arc_graph(inst), inst));
  EXPECT_THROW(emit_lp(build_arc_graph(inst), inst, "/nonexistent/dir/x.lp"), IoError);
}
