#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ftl/model.hpp"
#include "ftl/schedule.hpp"

namespace ftl {

class PartitionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One vehicle: requests in service order plus cached distances and labels.
struct Trip {
  std::vector<std::size_t> requests;
  Distance loaded = 0;
  Distance empty = 0;
  TripLabels labels;

  Distance distance() const { return loaded + empty; }
  std::size_t size() const { return requests.size(); }

  friend bool operator==(const Trip&, const Trip&) = default;
};

inline Distance loaded_distance(const Instance& inst, std::span<const std::size_t> seq) {
  Distance d = 0;
  for (auto r : seq) d += inst.direct(r);
  return d;
}

inline Distance empty_distance(const Instance& inst, std::span<const std::size_t> seq) {
  Distance d = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) d += inst.deadhead(seq[i - 1], seq[i]);
  return d;
}

// Builds a trip with fresh labels; Infeasible if the sequence cannot be served.
inline Checked<Trip> make_trip(const Instance& inst, std::vector<std::size_t> seq) {
  std::vector<Stop> stops;
  build_stops(inst, seq, stops);
  Trip trip;
  if (auto err = extend_labels(stops, inst.regs, Calendar(inst), trip.labels)) return *err;
  trip.loaded = loaded_distance(inst, seq);
  trip.empty = empty_distance(inst, seq);
  trip.requests = std::move(seq);
  return trip;
}

inline Schedule trip_schedule(const Instance& inst, const Trip& trip) {
  std::vector<Stop> stops;
  build_stops(inst, trip.requests, stops);
  return build_schedule(stops, trip.labels, inst.regs, Calendar(inst));
}

inline Checked<Schedule> check_insertion(const Instance& inst, const Trip& trip,
                                         std::size_t request, std::size_t pos) {
  return check_insertion(inst, trip.requests, trip.labels, request, pos);
}

struct CostBreakdown {
  Money vehicles = 0;
  Money outsourced = 0;
  Money total = 0;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

struct Solution {
  std::vector<Trip> trips;
  std::vector<std::size_t> bank;  // outsourced requests, sorted
  CostBreakdown cost;

  std::size_t planned() const {
    std::size_t n = 0;
    for (const auto& t : trips) n += t.size();
    return n;
  }
  Distance loaded() const {
    Distance d = 0;
    for (const auto& t : trips) d += t.loaded;
    return d;
  }
  Distance empty() const {
    Distance d = 0;
    for (const auto& t : trips) d += t.empty;
    return d;
  }

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Throws PartitionViolation unless trips and bank cover every request once.
inline void check_partition(const Instance& inst, const Solution& sol) {
  std::vector<int> seen(inst.size(), 0);
  auto mark = [&](std::size_t r) {
    if (r >= inst.size()) throw PartitionViolation("unknown request index " + std::to_string(r));
    if (++seen[r] > 1) throw PartitionViolation("request " + inst.requests[r].id + " duplicated");
  };
  for (const auto& t : sol.trips)
    for (auto r : t.requests) mark(r);
  for (auto r : sol.bank) mark(r);
  for (std::size_t r = 0; r < inst.size(); ++r)
    if (!seen[r]) throw PartitionViolation("request " + inst.requests[r].id + " missing");
}

// Recomputes the cost from scratch.
inline CostBreakdown solution_cost(const Instance& inst, const Solution& sol) {
  check_partition(inst, sol);
  Distance driven = 0;
  for (const auto& t : sol.trips)
    driven += loaded_distance(inst, t.requests) + empty_distance(inst, t.requests);
  CostBreakdown c;
  c.vehicles = inst.cost.kappa.cost(driven);
  for (auto r : sol.bank) c.outsourced += inst.requests[r].sm_price;
  c.total = c.vehicles + c.outsourced;
  return c;
}

// Refreshes the cached cost fields from the cached trip distances.
inline void update_cost(const Instance& inst, Solution& sol) {
  Distance driven = 0;
  for (const auto& t : sol.trips) driven += t.distance();
  sol.cost.vehicles = inst.cost.kappa.cost(driven);
  sol.cost.outsourced = 0;
  for (auto r : sol.bank) sol.cost.outsourced += inst.requests[r].sm_price;
  sol.cost.total = sol.cost.vehicles + sol.cost.outsourced;
}

inline Solution all_outsourced(const Instance& inst) {
  Solution s;
  for (std::size_t r = 0; r < inst.size(); ++r) s.bank.push_back(r);
  update_cost(inst, s);
  return s;
}

struct Violation {
  enum class Kind { Partition, Schedule, MinDistance, CachedCost };
  Kind kind;
  int trip = -1;
  std::string detail;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Partition: return "PartitionViolation";
    case Violation::Kind::Schedule: return "ScheduleViolation";
    case Violation::Kind::MinDistance: return "MinDistanceViolation";
    case Violation::Kind::CachedCost: return "CachedCostViolation";
  }
  return "?";
}

// Empty iff the partition holds, every trip is schedulable, every trip drives
// at least mu and the cached figures match a fresh recomputation.
inline std::vector<Violation> validate_solution(const Instance& inst, const Solution& sol) {
  std::vector<Violation> out;
  try {
    check_partition(inst, sol);
  } catch (const PartitionViolation& e) {
    out.push_back({Violation::Kind::Partition, -1, e.what()});
    return out;
  }
  for (std::size_t i = 0; i < sol.trips.size(); ++i) {
    const auto& t = sol.trips[i];
    const int ti = static_cast<int>(i);
    if (t.requests.empty()) {
      out.push_back({Violation::Kind::Schedule, ti, "empty trip"});
      continue;
    }
    auto sim = simulate_trip(inst, t.requests);
    if (auto* e = std::get_if<Infeasible>(&sim))
      out.push_back({Violation::Kind::Schedule, ti, to_string(*e)});
    const Distance d = loaded_distance(inst, t.requests) + empty_distance(inst, t.requests);
    if (d < inst.mu)
      out.push_back({Violation::Kind::MinDistance, ti,
                     "drives " + std::to_string(to_km(d)) + " km < mu"});
    if (d != t.distance())
      out.push_back({Violation::Kind::CachedCost, ti, "cached distance mismatch"});
  }
  if (solution_cost(inst, sol) != sol.cost)
    out.push_back({Violation::Kind::CachedCost, -1, "cached cost mismatch"});
  return out;
}

}  // namespace ftl
