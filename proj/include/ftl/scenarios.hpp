#pragma once

// The three business scenarios and their KPI reports.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ftl/engine.hpp"
#include "ftl/model.hpp"
#include "ftl/solution.hpp"

namespace ftl {

enum class Scenario { AllSm, AllFct, Mixed };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::AllSm: return "all-sm";
    case Scenario::AllFct: return "all-fct";
    case Scenario::Mixed: return "mixed";
  }
  return "?";
}

inline std::optional<Scenario> scenario_from_string(const std::string& s) {
  for (auto sc : {Scenario::AllSm, Scenario::AllFct, Scenario::Mixed})
    if (s == to_string(sc)) return sc;
  return std::nullopt;
}

struct ScenarioResult {
  Scenario scenario = Scenario::AllSm;
  Money total_cost = 0;
  Money vehicle_cost = 0;
  Money outsourced_cost = 0;
  std::size_t vehicles = 0;
  Distance loaded = 0;
  Distance empty = 0;
  Distance outsourced = 0;  // direct distance of banked requests
  double pct_own = 0;
  Distance min_trip = 0;
  double avg_trip_km = 0;
  Distance max_trip = 0;
  double cpu_s = 0;
  std::size_t residual = 0;  // all-fct only: requests the fleet could not take
  Solution solution;

  bool residual_flag() const { return residual > 0; }
};

// KPIs of a solution, costs taken at the instance's true spot prices.
inline ScenarioResult summarize(const Instance& inst, Scenario tag, const Solution& sol) {
  ScenarioResult r;
  r.scenario = tag;
  r.solution = sol;
  const auto cost = solution_cost(inst, sol);
  r.total_cost = cost.total;
  r.vehicle_cost = cost.vehicles;
  r.outsourced_cost = cost.outsourced;
  r.vehicles = sol.trips.size();
  r.loaded = sol.loaded();
  r.empty = sol.empty();
  for (auto q : sol.bank) r.outsourced += inst.direct(q);
  r.pct_own = inst.size() ? 100.0 * static_cast<double>(sol.planned()) / static_cast<double>(inst.size()) : 0.0;
  if (!sol.trips.empty()) {
    r.min_trip = sol.trips.front().distance();
    Distance sum = 0;
    for (const auto& t : sol.trips) {
      r.min_trip = std::min(r.min_trip, t.distance());
      r.max_trip = std::max(r.max_trip, t.distance());
      sum += t.distance();
    }
    r.avg_trip_km = to_km(sum) / static_cast<double>(sol.trips.size());
  }
  return r;
}

inline ScenarioResult scenario_all_sm(const Instance& inst) {
  return summarize(inst, Scenario::AllSm, all_outsourced(inst));
}

// Finite stand-in for an infinite outsourcing price.
inline Money fct_penalty(const Instance& inst) {
  Distance d = 0;
  for (std::size_t r = 0; r < inst.size(); ++r) d += inst.direct(r);
  return std::max<Money>(inst.cost.kappa.cost(d) * 10, kMoneyPerUnit);
}

inline ScenarioResult scenario_all_fct(const Instance& inst, const AlnsConfig& cfg) {
  Instance penalized = inst;
  const Money p = fct_penalty(inst);
  for (auto& r : penalized.requests) r.sm_price = p;
  auto res = run(penalized, cfg);
  Solution sol = std::move(res.best);
  update_cost(inst, sol);
  auto out = summarize(inst, Scenario::AllFct, sol);
  out.residual = sol.bank.size();
  out.cpu_s = res.report.wall_seconds;
  return out;
}

inline ScenarioResult scenario_mixed(const Instance& inst, const AlnsConfig& cfg) {
  auto res = run(inst, cfg);
  auto out = summarize(inst, Scenario::Mixed, res.best);
  out.cpu_s = res.report.wall_seconds;
  return out;
}

inline ScenarioResult run_scenario(const Instance& inst, Scenario s, const AlnsConfig& cfg) {
  switch (s) {
    case Scenario::AllSm: return scenario_all_sm(inst);
    case Scenario::AllFct: return scenario_all_fct(inst, cfg);
    case Scenario::Mixed: return scenario_mixed(inst, cfg);
  }
  return scenario_all_sm(inst);
}

inline constexpr const char* kScenarioCsvHeader =
    "scenario,total_cost,vehicle_cost,outsourced_cost,vehicles,loaded_km,empty_km,outsourced_km,"
    "pct_own,min_km,avg_km,max_km,cpu_s";

inline std::string scenario_csv_row(const ScenarioResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.2f,%.2f,%.2f,%zu,%.1f,%.1f,%.1f,%.2f,%.1f,%.1f,%.1f,%.3f",
                to_string(r.scenario), to_units(r.total_cost), to_units(r.vehicle_cost),
                to_units(r.outsourced_cost), r.vehicles, to_km(r.loaded), to_km(r.empty),
                to_km(r.outsourced), r.pct_own, to_km(r.min_trip), r.avg_trip_km, to_km(r.max_trip),
                r.cpu_s);
  return buf;
}

inline std::string scenario_csv(const std::vector<ScenarioResult>& rows) {
  std::string out = std::string(kScenarioCsvHeader) + "\n";
  for (const auto& r : rows) out += scenario_csv_row(r) + "\n";
  return out;
}

struct Comparison {
  ScenarioResult all_sm;
  ScenarioResult all_fct;
  ScenarioResult mixed;

  double savings_pct() const {
    if (all_sm.total_cost == 0) return 0;
    return 100.0 * static_cast<double>(all_sm.total_cost - mixed.total_cost) /
           static_cast<double>(all_sm.total_cost);
  }
};

// Scenario seeds derive from the master seed by fixed offsets.
inline constexpr std::uint64_t kFctSeedOffset = 1;
inline constexpr std::uint64_t kMixedSeedOffset = 2;

inline Comparison compare(const Instance& inst, const AlnsConfig& cfg) {
  Comparison c;
  c.all_sm = scenario_all_sm(inst);
  auto fct_cfg = cfg;
  fct_cfg.seed = cfg.seed + kFctSeedOffset;
  c.all_fct = scenario_all_fct(inst, fct_cfg);
  auto mixed_cfg = cfg;
  mixed_cfg.seed = cfg.seed + kMixedSeedOffset;
  c.mixed = scenario_mixed(inst, mixed_cfg);
  return c;
}

inline constexpr const char* kTableCsvHeader =
    "instance,nothing_km,nothing_cost,everything_km,everything_cost,pct_req,own_loaded_km,"
    "own_empty_km,own_cost,outsourced_km,outsourced_cost,mixed_total,savings_pct,fct_residual";

// One comparison row: outsourcing nothing,
// everything, and the mixed split.
inline std::string table_csv(const std::string& name, const Comparison& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.1f,%.2f,%.1f,%.2f,%.2f,%.1f,%.1f,%.2f,%.1f,%.2f,%.2f,%.4f,%zu\n",
                name.c_str(), to_km(c.all_fct.loaded + c.all_fct.empty), to_units(c.all_fct.total_cost),
                to_km(c.all_sm.outsourced), to_units(c.all_sm.total_cost), c.mixed.pct_own,
                to_km(c.mixed.loaded), to_km(c.mixed.empty), to_units(c.mixed.vehicle_cost),
                to_km(c.mixed.outsourced), to_units(c.mixed.outsourced_cost),
                to_units(c.mixed.total_cost), c.savings_pct(), c.all_fct.residual);
  return std::string(kTableCsvHeader) + "\n" + buf;
}

// Per-vehicle activity timeline.
inline std::string schedule_csv(const Instance& inst, const Solution& sol) {
  std::ostringstream os;
  os << "trip,node,request,kind,activity,start,end\n";
  for (std::size_t ti = 0; ti < sol.trips.size(); ++ti) {
    const auto& t = sol.trips[ti];
    const auto s = trip_schedule(inst, t);
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
      const auto& req = inst.requests[t.requests[k / 2]].id;
      const char* kind = k % 2 == 0 ? "pickup" : "delivery";
      for (const auto& seg : s.legs[k])
        os << ti << ',' << k << ',' << req << ',' << kind << ',' << to_string(seg.kind) << ','
           << seg.start << ',' << seg.end << '\n';
      os << ti << ',' << k << ',' << req << ',' << kind << ",service," << s.nodes[k].service_start
         << ',' << s.nodes[k].departure << '\n';
    }
  }
  return os.str();
}

}  // namespace ftl
