#include <gtest/gtest.h>

#include "support.hpp"

using namespace ftl;

namespace {

AlnsConfig quick(long long m = 300, std::uint64_t seed = 1) {
  AlnsConfig c;
  c.max_iterations = m;
  c.segment_length = 50;
  c.seed = seed;
  return c;
}

std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST(AllSm, TieredPricesAddUp) {
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}, {0, 200}, {400, 200}});
  test::add_request(inst, 0, 1, {360, 1080}, test::daily_windows(0, 7));
  test::add_request(inst, 0, 2, {360, 1080}, test::daily_windows(0, 7));
  test::add_request(inst, 2, 3, {360, 1080}, test::daily_windows(0, 7));
  const auto r = scenario_all_sm(inst);
  EXPECT_EQ(r.total_cost, money_from_units(915));
  EXPECT_EQ(r.vehicles, 0u);
  EXPECT_EQ(r.outsourced, distance_from_km(700));
  EXPECT_EQ(r.pct_own, 0.0);
}

TEST(AllSm, EmptyInstance) {
  const auto inst = test::euclidean_instance({{0, 0}});
  EXPECT_EQ(scenario_all_sm(inst).total_cost, 0);
  EXPECT_EQ(scenario_mixed(inst, quick()).total_cost, 0);
}

TEST(AllSm, BoundsTheInitialSolution) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 20; ++i) {
    const auto inst = test::random_micro(gen, 3 + i % 5);
    EXPECT_LE(build_initial(inst).cost.total, scenario_all_sm(inst).total_cost);
  }
}

TEST(AllFct, ChainedPairSharesOneVehicle) {
  // r1 starts where r0 ends; neither reaches mu alone.
  auto inst = test::euclidean_instance({{0, 0}, {300, 0}, {300, 300}});
  inst.mu = distance_from_km(500);
  test::add_request(inst, 0, 1, {360, 1080}, test::daily_windows(0, 7));
  test::add_request(inst, 1, 2, {360, 1080}, test::daily_windows(0, 7));
  const auto r = scenario_all_fct(inst, quick(200));
  EXPECT_EQ(r.vehicles, 1u);
  EXPECT_EQ(r.empty, 0);
  EXPECT_EQ(r.residual, 0u);
  EXPECT_FALSE(r.residual_flag());
  EXPECT_EQ(r.total_cost, inst.cost.kappa.cost(distance_from_km(600)));
}

TEST(AllFct, UnreachableWindowIsResidual) {
  auto inst = test::euclidean_instance({{0, 0}, {1000, 0}, {0, 10}, {300, 10}});
  // 1000 km cannot be driven between 06:00 and 18:00 of the same day.
  test::add_request(inst, 0, 1, {360, 1080}, {{360, 1080}});
  test::add_request(inst, 2, 3, {360, 1080}, test::daily_windows(0, 7));
  const auto r = scenario_all_fct(inst, quick(100));
  EXPECT_GE(r.residual, 1u);
  EXPECT_TRUE(r.residual_flag());
  // Reported at the true spot price, not the penalty.
  EXPECT_EQ(r.outsourced_cost, inst.requests[0].sm_price);
}

TEST(AllFct, PenaltyFloor) {
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}});
  test::add_request(inst, 0, 1, {360, 1080}, test::daily_windows(0, 7));
  EXPECT_EQ(fct_penalty(inst), money_from_units(1060));
  EXPECT_EQ(fct_penalty(test::euclidean_instance({{0, 0}})), money_from_units(1));
}

TEST(Mixed, NeverAboveAllSmAndKpisClose) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 20; ++i) {
    const auto inst = test::random_micro(gen, 3 + i % 5);
    const auto r = scenario_mixed(inst, quick(200, static_cast<std::uint64_t>(i)));
    EXPECT_LE(r.total_cost, scenario_all_sm(inst).total_cost);
    EXPECT_EQ(r.vehicle_cost, inst.cost.kappa.cost(r.loaded + r.empty));
    Money bank = 0;
    for (auto q : r.solution.bank) bank += inst.requests[q].sm_price;
    EXPECT_EQ(r.outsourced_cost, bank);
    EXPECT_EQ(r.total_cost, r.vehicle_cost + r.outsourced_cost);
    EXPECT_DOUBLE_EQ(r.pct_own, 100.0 * static_cast<double>(r.solution.planned()) / static_cast<double>(inst.size()));
    EXPECT_EQ(r.vehicles, r.solution.trips.size());
    if (r.vehicles) {
      EXPECT_LE(r.min_trip, r.max_trip);
      EXPECT_GE(r.min_trip, inst.mu);
    }
  }
}

TEST(Csv, HeaderAndAllSmRow) {
  EXPECT_STREQ(kScenarioCsvHeader,
               "scenario,total_cost,vehicle_cost,outsourced_cost,vehicles,loaded_km,empty_km,"
               "outsourced_km,pct_own,min_km,avg_km,max_km,cpu_s");
  auto inst = test::euclidean_instance({{0, 0}, {100, 0}});
  test::add_request(inst, 0, 1, {360, 1080}, test::daily_windows(0, 7));
  EXPECT_EQ(scenario_csv_row(scenario_all_sm(inst)),
            "all-sm,175.00,0.00,175.00,0,0.0,0.0,100.0,0.00,0.0,0.0,0.0,0.000");
}

TEST(Compare, DeterministicReports) {
  std::mt19937_64 gen(3);
  const auto inst = test::random_micro(gen, 7);
  const auto a = compare(inst, quick(200, 4));
  const auto b = compare(inst, quick(200, 4));
  const auto csv = [](const Comparison& c) { return scenario_csv({c.all_sm, c.all_fct, c.mixed}); };
  EXPECT_EQ(drop_last_column(csv(a)), drop_last_column(csv(b)));
  EXPECT_EQ(table_csv("x", a), table_csv("x", b));
  EXPECT_LE(a.mixed.total_cost, a.all_sm.total_cost);
  EXPECT_GE(a.savings_pct(), 0.0);
}

TEST(Compare, TableRow) {
  std::mt19937_64 gen(4);
  const auto inst = test::random_micro(gen, 5);
  const auto c = compare(inst, quick(100));
  const auto t = table_csv("demo", c);
  EXPECT_EQ(t.substr(0, t.find('\n')), kTableCsvHeader);
  EXPECT_EQ(t.substr(t.find('\n') + 1, 5), "demo,");
}

TEST(Scenario, Names) {
  for (auto s : {Scenario::AllSm, Scenario::AllFct, Scenario::Mixed})
    EXPECT_EQ(scenario_from_string(to_string(s)), s);
  EXPECT_FALSE(scenario_from_string("all").has_value());
}

TEST(ScheduleCsv, ServiceRowsForEveryNode) {
  auto inst = test::euclidean_instance({{0, 0}, {600, 0}});
  test::add_request(inst, 0, 1, {360, 1080}, test::daily_windows(0, 7), money_from_units(5000));
  const auto s = build_initial(inst);
  ASSERT_EQ(s.trips.size(), 1u);
  const auto csv = schedule_csv(inst, s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "trip,node,request,kind,activity,start,end");
  EXPECT_NE(csv.find("0,0,r0,pickup,service,"), std::string::npos);
  EXPECT_NE(csv.find("0,1,r0,delivery,service,"), std::string::npos);
  EXPECT_NE(csv.find(",break,"), std::string::npos) << csv;
}
