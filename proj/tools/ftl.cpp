// Command-line front end: transform, solve, compare, oracle, emit-lp.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ftl/ftl.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kConfigError = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ftl::IoError("cannot write " + path);
  f << text;
  if (!f) throw ftl::IoError("write failed: " + path);
}

ftl::AlnsConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  ftl::AlnsConfig cfg = path.empty() ? ftl::AlnsConfig{} : ftl::read_config(path);
  if (seed) cfg.seed = *seed;
  if (const char* env = std::getenv("FTL_THREADS")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used != std::string(env).size() || n < 0) throw std::invalid_argument(env);
      cfg.operators.threads = n;
    } catch (const std::exception&) {
      throw ftl::ConfigError(std::string("FTL_THREADS must be a non-negative integer, got ") + env);
    }
  }
  cfg.validate();
  return cfg;
}

nlohmann::ordered_json solution_json(const ftl::Instance& inst, const ftl::Solution& sol) {
  nlohmann::ordered_json j;
  auto& trips = j["trips"] = nlohmann::ordered_json::array();
  for (const auto& t : sol.trips) {
    nlohmann::ordered_json tj;
    auto& ids = tj["requests"] = nlohmann::ordered_json::array();
    for (auto r : t.requests) ids.push_back(inst.requests[r].id);
    tj["loaded_km"] = ftl::to_km(t.loaded);
    tj["empty_km"] = ftl::to_km(t.empty);
    trips.push_back(std::move(tj));
  }
  auto& bank = j["outsourced"] = nlohmann::ordered_json::array();
  for (auto r : sol.bank) bank.push_back(inst.requests[r].id);
  j["vehicle_cost"] = ftl::to_units(sol.cost.vehicles);
  j["outsourced_cost"] = ftl::to_units(sol.cost.outsourced);
  j["total_cost"] = ftl::to_units(sol.cost.total);
  return j;
}

nlohmann::ordered_json result_json(const ftl::Instance& inst, const ftl::ScenarioResult& r) {
  nlohmann::ordered_json j;
  j["scenario"] = ftl::to_string(r.scenario);
  j["total_cost"] = ftl::to_units(r.total_cost);
  j["vehicle_cost"] = ftl::to_units(r.vehicle_cost);
  j["outsourced_cost"] = ftl::to_units(r.outsourced_cost);
  j["vehicles"] = r.vehicles;
  j["loaded_km"] = ftl::to_km(r.loaded);
  j["empty_km"] = ftl::to_km(r.empty);
  j["outsourced_km"] = ftl::to_km(r.outsourced);
  j["pct_own"] = r.pct_own;
  j["min_km"] = ftl::to_km(r.min_trip);
  j["avg_km"] = r.avg_trip_km;
  j["max_km"] = ftl::to_km(r.max_trip);
  j["cpu_s"] = r.cpu_s;
  if (r.scenario == ftl::Scenario::AllFct) j["residual"] = r.residual;
  j["solution"] = solution_json(inst, r.solution);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-truckload fleet vs spot-market planner"};
  app.require_subcommand(1);

  std::string gh_path, out_path, instance_path, config_path, out_dir, scenario_name = "mixed";
  double factor = 6.0;
  std::optional<std::uint64_t> seed;
  bool dump_schedule = false;

  auto* transform = app.add_subcommand("transform", "Convert a G&H instance to the native format");
  transform->add_option("--gh", gh_path, "G&H instance file")->required();
  transform->add_option("--factor", factor, "distance / time scale factor");
  transform->add_option("--out", out_path, "native instance output")->required();

  auto* solve = app.add_subcommand("solve", "Run one scenario");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--scenario", scenario_name)
      ->check(CLI::IsMember({"all-sm", "all-fct", "mixed"}));
  solve->add_option("--config", config_path, "ALNS config JSON");
  solve->add_option("--seed", seed);
  solve->add_option("--out", out_path, "result JSON");
  solve->add_flag("--dump-schedule", dump_schedule, "print vehicle schedules as CSV");

  auto* cmp = app.add_subcommand("compare", "Run all three scenarios");
  cmp->add_option("--instance", instance_path)->required();
  cmp->add_option("--config", config_path);
  cmp->add_option("--seed", seed);
  cmp->add_option("--out-dir", out_dir)->required();

  auto* oracle = app.add_subcommand("oracle", "Exact optimum of a small instance");
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_flag("--dump-schedule", dump_schedule, "print vehicle schedules as CSV");

  auto* lp = app.add_subcommand("emit-lp", "Write the routing model as an LP file");
  lp->add_option("--instance", instance_path)->required();
  lp->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*transform) {
      ftl::TransformConfig tc;
      tc.factor = factor;
      tc.validate();
      ftl::write_instance(ftl::transform(ftl::read_gh(gh_path), tc), out_path);
      return 0;
    }

    if (*lp) {
      const auto inst = ftl::read_instance(instance_path);
      ftl::emit_lp(ftl::build_arc_graph(inst), inst, out_path);
      return 0;
    }

    if (*oracle) {
      const auto inst = ftl::read_instance(instance_path);
      const auto best = ftl::brute_force(inst);
      std::cout << solution_json(inst, best).dump(1) << "\n";
      if (dump_schedule) std::cout << ftl::schedule_csv(inst, best);
      return 0;
    }

    // solve / compare need a config; config errors take precedence.
    ftl::AlnsConfig cfg;
    try {
      cfg = load_config(config_path, seed);
    } catch (const ftl::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    }
    const auto inst = ftl::read_instance(instance_path);

    if (*solve) {
      const auto sc = *ftl::scenario_from_string(scenario_name);
      const auto res = ftl::run_scenario(inst, sc, cfg);
      std::cout << ftl::kScenarioCsvHeader << "\n" << ftl::scenario_csv_row(res) << "\n";
      if (res.residual_flag())
        std::cerr << "warning: " << res.residual << " request(s) could not be served by the fleet\n";
      if (!out_path.empty()) write_file(out_path, result_json(inst, res).dump(1) + "\n");
      if (dump_schedule) std::cout << ftl::schedule_csv(inst, res.solution);
      return 0;
    }

    if (*cmp) {
      const auto c = ftl::compare(inst, cfg);
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      write_file((dir / "scenarios.csv").string(), ftl::scenario_csv({c.all_sm, c.all_fct, c.mixed}));
      const auto name = std::filesystem::path(instance_path).stem().string();
      write_file((dir / "table.csv").string(), ftl::table_csv(name, c));
      std::cout << ftl::scenario_csv({c.all_sm, c.all_fct, c.mixed});
      return 0;
    }
  } catch (const ftl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::runtime_error& e) {
    // Parse, schema, model, transform and I/O errors.
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
