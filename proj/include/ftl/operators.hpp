#pragma once

// Destroy and repair operators for the ALNS.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ftl/model.hpp"
#include "ftl/schedule.hpp"
#include "ftl/solution.hpp"

namespace ftl {

using Rng = std::mt19937_64;

enum class RemovalOp {
  RandomRoute,     // RRR
  TimeRoute,       // TRR
  StopRoute,       // SRR
  RandomShipment,  // RSR
  TimeShipment,    // TSR
  ShawDistanceTw,  // SR, distance and time windows
  ShawTw,          // SR, time windows only
};

inline constexpr RemovalOp kAllRemovalOps[] = {
    RemovalOp::RandomRoute,    RemovalOp::TimeRoute,      RemovalOp::StopRoute,
    RemovalOp::RandomShipment, RemovalOp::TimeShipment,   RemovalOp::ShawDistanceTw,
    RemovalOp::ShawTw};

inline const char* to_string(RemovalOp op) {
  switch (op) {
    case RemovalOp::RandomRoute: return "RRR";
    case RemovalOp::TimeRoute: return "TRR";
    case RemovalOp::StopRoute: return "SRR";
    case RemovalOp::RandomShipment: return "RSR";
    case RemovalOp::TimeShipment: return "TSR";
    case RemovalOp::ShawDistanceTw: return "SR";
    case RemovalOp::ShawTw: return "SR-TW";
  }
  return "?";
}

inline std::optional<RemovalOp> removal_from_string(const std::string& s) {
  for (auto op : kAllRemovalOps)
    if (s == to_string(op)) return op;
  return std::nullopt;
}

// k == 1 is greedy insertion, k >= 2 is k-regret.
struct InsertionOp {
  int k = 1;

  std::string name() const { return k == 1 ? "greedy" : std::to_string(k) + "-regret"; }
  friend bool operator==(const InsertionOp&, const InsertionOp&) = default;
};

struct OperatorParams {
  double shaw_exponent = 6.0;
  // Reads the regret sum as (k - 1)(c_k - c_1) instead of sum_i (c_i - c_1).
  bool literal_regret = false;
  // An empty vehicle competes with the existing trips as one more insertion
  // column while every trip drives at least mu.
  bool vehicle_column = true;
  // Opens a trip even when it costs more than outsourcing its first request
  // and keeps filling trips shorter than mu regardless of price. Afterwards
  // requests cheaper to outsource are pruned and trips dearer than
  // outsourcing all their requests are dissolved.
  bool speculative_trips = true;
  // Insertion noise: with probability noise_share a repair call perturbs every
  // candidate cost by up to noise * kappa * (longest matrix distance) when
  // choosing what to insert next. Profitability is judged on the true cost.
  double noise = 0.25;
  double noise_share = 0.5;
  int threads = 0;  // 0 = sequential cost-matrix evaluation
};

// q = min(psi, ceil(xi * planned), planned)
inline std::size_t removal_count(std::size_t planned, std::size_t psi, double xi) {
  const auto rel = static_cast<std::size_t>(std::ceil(xi * static_cast<double>(planned) - 1e-12));
  return std::min({psi, rel, planned});
}

namespace detail {

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Roulette over `weights`; all-zero weights fall back to a uniform pick.
inline std::size_t roulette(std::span<const double> weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0)) return uniform_index(rng, weights.size());
  const double u = uniform01(rng) * total;
  double acc = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

// Removes `drop` from the trips. Trips left empty vanish; a trip that
// becomes unschedulable is dissolved completely. Returns removed requests in
// removal order.
inline std::vector<std::size_t> detach(const Instance& inst, Solution& sol,
                                       const std::vector<std::size_t>& drop) {
  std::vector<char> gone(inst.size(), 0);
  for (auto r : drop) gone[r] = 1;
  std::vector<std::size_t> removed = drop;
  std::vector<Trip> kept;
  kept.reserve(sol.trips.size());
  for (auto& t : sol.trips) {
    if (std::none_of(t.requests.begin(), t.requests.end(), [&](auto r) { return gone[r]; })) {
      kept.push_back(std::move(t));
      continue;
    }
    std::vector<std::size_t> rest;
    for (auto r : t.requests)
      if (!gone[r]) rest.push_back(r);
    if (rest.empty()) continue;
    auto rebuilt = make_trip(inst, rest);
    if (auto* trip = std::get_if<Trip>(&rebuilt)) {
      kept.push_back(std::move(*trip));
    } else {
      removed.insert(removed.end(), rest.begin(), rest.end());
    }
  }
  sol.trips = std::move(kept);
  return removed;
}

inline std::vector<std::size_t> remove_routes(const Instance& inst, Solution& sol, std::size_t q,
                                              Rng& rng, std::vector<double> weights) {
  std::vector<std::size_t> order(sol.trips.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> drop;
  while (drop.size() < q && !order.empty()) {
    const std::size_t pick = roulette(weights, rng);
    const auto& t = sol.trips[order[pick]];
    drop.insert(drop.end(), t.requests.begin(), t.requests.end());
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return detach(inst, sol, drop);
}

inline std::vector<std::size_t> planned_requests(const Solution& sol) {
  std::vector<std::size_t> out;
  for (const auto& t : sol.trips) out.insert(out.end(), t.requests.begin(), t.requests.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Driving minutes of a trip, loaded and empty legs.
inline Minutes trip_drive_minutes(const Instance& inst, const Trip& t) {
  Minutes m = 0;
  for (std::size_t i = 0; i < t.requests.size(); ++i) {
    m += inst.direct_minutes(t.requests[i]);
    if (i > 0) m += inst.deadhead_minutes(t.requests[i - 1], t.requests[i]);
  }
  return m;
}

// RRR: whole routes, uniformly, until at least q requests are out.
inline std::vector<std::size_t> remove_random_routes(const Instance& inst, Solution& sol,
                                                     std::size_t q, Rng& rng) {
  return detail::remove_routes(inst, sol, q, rng, std::vector<double>(sol.trips.size(), 1.0));
}

// TRR: routes drawn proportionally to their total driving time.
inline std::vector<std::size_t> remove_time_routes(const Instance& inst, Solution& sol,
                                                   std::size_t q, Rng& rng) {
  std::vector<double> w;
  for (const auto& t : sol.trips) w.push_back(static_cast<double>(trip_drive_minutes(inst, t)));
  return detail::remove_routes(inst, sol, q, rng, std::move(w));
}

// SRR: routes drawn inversely proportionally to their number of requests.
inline std::vector<std::size_t> remove_stop_routes(const Instance& inst, Solution& sol,
                                                   std::size_t q, Rng& rng) {
  std::vector<double> w;
  for (const auto& t : sol.trips) w.push_back(1.0 / static_cast<double>(t.size()));
  return detail::remove_routes(inst, sol, q, rng, std::move(w));
}

// RSR: q planned requests, uniformly.
inline std::vector<std::size_t> remove_random_shipments(const Instance& inst, Solution& sol,
                                                        std::size_t q, Rng& rng) {
  auto pool = detail::planned_requests(sol);
  std::vector<std::size_t> drop;
  while (drop.size() < q && !pool.empty()) {
    const auto i = detail::uniform_index(rng, pool.size());
    drop.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return detail::detach(inst, sol, drop);
}

// Deadhead minutes into the origin and out of the destination of every
// planned request; first and last requests only have one side.
inline std::vector<std::pair<std::size_t, Minutes>> deadhead_weights(const Instance& inst,
                                                                     const Solution& sol) {
  std::vector<std::pair<std::size_t, Minutes>> out;
  for (const auto& t : sol.trips)
    for (std::size_t i = 0; i < t.size(); ++i) {
      Minutes w = 0;
      if (i > 0) w += inst.deadhead_minutes(t.requests[i - 1], t.requests[i]);
      if (i + 1 < t.size()) w += inst.deadhead_minutes(t.requests[i], t.requests[i + 1]);
      out.emplace_back(t.requests[i], w);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// TSR: q requests drawn proportionally to their surrounding empty driving.
inline std::vector<std::size_t> remove_time_shipments(const Instance& inst, Solution& sol,
                                                      std::size_t q, Rng& rng) {
  auto pool = deadhead_weights(inst, sol);
  std::vector<double> w;
  for (const auto& [r, m] : pool) w.push_back(static_cast<double>(m));
  std::vector<std::size_t> drop;
  while (drop.size() < q && !pool.empty()) {
    const auto i = detail::roulette(w, rng);
    drop.push_back(pool[i].first);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return detail::detach(inst, sol, drop);
}

// Lower means more similar.
inline double relatedness(const Instance& inst, std::size_t a, std::size_t b, bool use_distance) {
  const auto& ra = inst.requests[a];
  const auto& rb = inst.requests[b];
  double rel = std::abs(static_cast<double>(ra.pickup_window.start - rb.pickup_window.start)) /
               static_cast<double>(inst.horizon.end());
  if (use_distance) {
    const double dmax = static_cast<double>(inst.matrix.max_distance());
    if (dmax > 0)
      rel += static_cast<double>(inst.matrix.distance(ra.origin, rb.origin) +
                                 inst.matrix.distance(ra.destination, rb.destination)) /
             dmax;
  }
  return rel;
}

// SR: grows a set of mutually similar requests from a random seed.
inline std::vector<std::size_t> remove_shaw(const Instance& inst, Solution& sol, std::size_t q,
                                            Rng& rng, bool use_distance, double exponent = 6.0) {
  auto pool = detail::planned_requests(sol);
  std::vector<std::size_t> drop;
  if (pool.empty() || q == 0) return detail::detach(inst, sol, drop);
  const auto seed = detail::uniform_index(rng, pool.size());
  drop.push_back(pool[seed]);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(seed));
  while (drop.size() < q && !pool.empty()) {
    const std::size_t ref = drop[detail::uniform_index(rng, drop.size())];
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < pool.size(); ++i)
      ranked.emplace_back(relatedness(inst, ref, pool[i], use_distance), i);
    std::sort(ranked.begin(), ranked.end());
    const double u = detail::uniform01(rng);
    const auto rank = std::min(ranked.size() - 1,
                               static_cast<std::size_t>(std::pow(u, exponent) *
                                                        static_cast<double>(ranked.size())));
    const std::size_t i = ranked[rank].second;
    drop.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return detail::detach(inst, sol, drop);
}

inline std::vector<std::size_t> apply_removal(RemovalOp op, const Instance& inst, Solution& sol,
                                              std::size_t q, Rng& rng,
                                              const OperatorParams& params = {}) {
  switch (op) {
    case RemovalOp::RandomRoute: return remove_random_routes(inst, sol, q, rng);
    case RemovalOp::TimeRoute: return remove_time_routes(inst, sol, q, rng);
    case RemovalOp::StopRoute: return remove_stop_routes(inst, sol, q, rng);
    case RemovalOp::RandomShipment: return remove_random_shipments(inst, sol, q, rng);
    case RemovalOp::TimeShipment: return remove_time_shipments(inst, sol, q, rng);
    case RemovalOp::ShawDistanceTw: return remove_shaw(inst, sol, q, rng, true, params.shaw_exponent);
    case RemovalOp::ShawTw: return remove_shaw(inst, sol, q, rng, false, params.shaw_exponent);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Insertion

struct InsertionCostCell {
  std::size_t request = 0;
  std::size_t trip = 0;
  std::size_t position = 0;
  Money delta = 0;
  bool feasible = false;
};

// Extra distance of splicing `r` into `t` before position `pos`.
inline Distance insertion_distance(const Instance& inst, const Trip& t, std::size_t r,
                                   std::size_t pos) {
  Distance d = inst.direct(r);
  const bool has_prev = pos > 0;
  const bool has_next = pos < t.size();
  if (has_prev) d += inst.deadhead(t.requests[pos - 1], r);
  if (has_next) d += inst.deadhead(r, t.requests[pos]);
  if (has_prev && has_next) d -= inst.deadhead(t.requests[pos - 1], t.requests[pos]);
  return d;
}

// Cheapest feasible position of `r` in trip `ti`; ties go to the lowest
// position.
inline InsertionCostCell best_insertion(const Instance& inst, const Trip& t, std::size_t ti,
                                        std::size_t r, const Calendar& cal) {
  thread_local std::vector<std::pair<Distance, std::size_t>> cand;
  cand.clear();
  for (std::size_t pos = 0; pos <= t.size(); ++pos)
    cand.emplace_back(insertion_distance(inst, t, r, pos), pos);
  std::sort(cand.begin(), cand.end());
  for (const auto& [d, pos] : cand)
    if (insertion_feasible(inst, t.requests, t.labels, r, pos, cal))
      return {r, ti, pos, inst.cost.kappa.cost(d), true};
  return {r, ti, 0, 0, false};
}

namespace detail {

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto workers = static_cast<std::size_t>(threads);
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
}

inline void insert_sorted(std::vector<std::size_t>& v, std::size_t x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

}  // namespace detail

// Regret value of a row of per-route costs (already capped and padded).
inline Money regret_value(std::vector<Money> costs, int k, bool literal) {
  std::sort(costs.begin(), costs.end());
  if (costs.empty() || k < 2) return 0;
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), costs.size());
  if (literal) return static_cast<Money>(k - 1) * (costs[kk - 1] - costs[0]);
  Money sum = 0;
  for (std::size_t i = 1; i < kk; ++i) sum += costs[i] - costs[0];
  return sum;
}

namespace detail {

// Money saved by outsourcing every request of `t` instead of driving it.
inline Money trip_margin(const Instance& inst, const Trip& t) {
  Money s = 0;
  for (auto r : t.requests) s += inst.requests[r].sm_price;
  return s - inst.cost.kappa.cost(t.distance());
}

// Banks, one at a time, the request whose removal saves the most, while that
// saving is positive and the rest of the trip stays schedulable and at least mu.
inline void prune_trips(const Instance& inst, Solution& sol) {
  for (auto& t : sol.trips) {
    for (;;) {
      Money best_saving = 0;
      std::optional<Trip> best_trip;
      std::size_t best_request = 0;
      for (std::size_t i = 0; i < t.size() && t.size() > 1; ++i) {
        auto rest = t.requests;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        const Distance d = loaded_distance(inst, rest) + empty_distance(inst, rest);
        if (d < inst.mu) continue;
        const Money saving =
            inst.cost.kappa.cost(t.distance() - d) - inst.requests[t.requests[i]].sm_price;
        if (saving <= best_saving) continue;
        auto rebuilt = make_trip(inst, std::move(rest));
        if (auto* nt = std::get_if<Trip>(&rebuilt)) {
          best_saving = saving;
          best_trip = std::move(*nt);
          best_request = t.requests[i];
        }
      }
      if (!best_trip) break;
      t = std::move(*best_trip);
      insert_sorted(sol.bank, best_request);
    }
  }
}

// Greedy re-offer of requests from trips shorter than mu (and, when
// `unprofitable` is set, from trips dearer than outsourcing their requests);
// leftovers are banked. Repeats until no such trip is left.
inline void dissolve_short_trips(const Instance& inst, Solution& sol, bool unprofitable = false) {
  const Calendar cal(inst);
  for (;;) {
    auto it = std::find_if(sol.trips.begin(), sol.trips.end(), [&](const Trip& t) {
      return t.distance() < inst.mu || (unprofitable && trip_margin(inst, t) < 0);
    });
    if (it == sol.trips.end()) return;
    const auto orphans = it->requests;
    sol.trips.erase(it);
    for (auto r : orphans) {
      InsertionCostCell best;
      for (std::size_t p = 0; p < sol.trips.size(); ++p) {
        auto c = best_insertion(inst, sol.trips[p], p, r, cal);
        if (c.feasible && (!best.feasible || c.delta < best.delta)) best = c;
      }
      if (best.feasible && best.delta < inst.requests[r].sm_price) {
        auto& t = sol.trips[best.trip];
        TripLabels labels;
        check_insertion(inst, t.requests, t.labels, r, best.position, &labels);
        const Distance extra = insertion_distance(inst, t, r, best.position);
        t.requests.insert(t.requests.begin() + static_cast<std::ptrdiff_t>(best.position), r);
        t.labels = std::move(labels);
        t.loaded += inst.direct(r);
        t.empty += extra - inst.direct(r);
      } else {
        insert_sorted(sol.bank, r);
      }
    }
  }
}

}  // namespace detail

// Re-plans `removed` and the bank into `sol` following the outsourcing-aware insertion
// procedure: the next request is chosen greedily or by k-regret, inserted if
// cheaper than outsourcing, otherwise opened as a new trip when every trip
// already drives at least mu and the new trip is no dearer than outsourcing,
// otherwise banked. Trips shorter than mu are dissolved at the end.
// OperatorParams::vehicle_column and speculative_trips relax the new-trip rule.
inline void repair(const Instance& inst, Solution& sol, std::vector<std::size_t> removed,
                   InsertionOp op, const OperatorParams& params = {}, Rng* rng = nullptr) {
  const Calendar cal(inst);
  const bool noisy = rng && params.noise > 0 && detail::uniform01(*rng) < params.noise_share;
  const double amplitude =
      noisy ? params.noise * static_cast<double>(inst.cost.kappa.cost(inst.matrix.max_distance())) : 0.0;
  auto perturb = [&](Money c) -> Money {
    if (!noisy) return c;
    return c + static_cast<Money>(std::llround(amplitude * (2 * detail::uniform01(*rng) - 1)));
  };
  // Every unplanned request is offered again, banked ones included.
  removed.insert(removed.end(), sol.bank.begin(), sol.bank.end());
  sol.bank.clear();
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
  // cells[i][p]: best insertion of removed[i] into trip p
  std::vector<std::vector<InsertionCostCell>> cells(removed.size());
  std::vector<char> stale_trip(sol.trips.size(), 1);
  // solo[i]: removed[i] can be served by a vehicle of its own
  std::vector<char> solo(removed.size());
  for (std::size_t i = 0; i < removed.size(); ++i)
    solo[i] = std::holds_alternative<Trip>(make_trip(inst, {removed[i]}));
  auto open_cost = [&](std::size_t i) { return inst.cost.kappa.cost(inst.direct(removed[i])); };
  constexpr std::size_t kNewTrip = std::numeric_limits<std::size_t>::max();

  while (!removed.empty()) {
    // Refresh stale columns.
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t i = 0; i < removed.size(); ++i) {
      cells[i].resize(sol.trips.size());
      for (std::size_t p = 0; p < sol.trips.size(); ++p)
        if (stale_trip[p]) work.emplace_back(i, p);
    }
    detail::parallel_for(work.size(), params.threads, [&](std::size_t w) {
      const auto [i, p] = work[w];
      cells[i][p] = best_insertion(inst, sol.trips[p], p, removed[i], cal);
    });
    std::fill(stale_trip.begin(), stale_trip.end(), 0);

    const bool well_utilized = std::all_of(sol.trips.begin(), sol.trips.end(),
                                           [&](const Trip& t) { return t.distance() >= inst.mu; });
    const bool column = params.vehicle_column && well_utilized;

    // Pick (request row, target trip or kNewTrip) by the operator's rule.
    std::optional<std::size_t> pick_row;
    std::size_t pick_target = kNewTrip;
    if (op.k <= 1) {
      Money best = std::numeric_limits<Money>::max();
      for (std::size_t i = 0; i < removed.size(); ++i) {
        for (const auto& c : cells[i]) {
          if (!c.feasible) continue;
          const Money key = perturb(c.delta);
          if (key < best) {
            best = key;
            pick_row = i;
            pick_target = c.trip;
          }
        }
        if (column && solo[i]) {
          const Money key = perturb(open_cost(i));
          if (key < best) {
            best = key;
            pick_row = i;
            pick_target = kNewTrip;
          }
        }
      }
    } else {
      Money best_regret = std::numeric_limits<Money>::min();
      for (std::size_t i = 0; i < removed.size(); ++i) {
        const Money cap = inst.requests[removed[i]].sm_price;
        std::vector<Money> row;
        Money first = std::numeric_limits<Money>::max();
        std::size_t first_target = kNewTrip;
        for (const auto& c : cells[i]) {
          const Money key = c.feasible ? perturb(c.delta) : cap;
          row.push_back(key);
          if (c.feasible && key < first) {
            first = key;
            first_target = c.trip;
          }
        }
        if (column && solo[i]) {
          const Money key = perturb(open_cost(i));
          row.push_back(key);
          if (key < first) {
            first = key;
            first_target = kNewTrip;
          }
        }
        if (first == std::numeric_limits<Money>::max()) continue;
        while (row.size() < static_cast<std::size_t>(op.k)) row.push_back(cap);
        const Money regret = regret_value(std::move(row), op.k, params.literal_regret);
        if (regret > best_regret) {
          best_regret = regret;
          pick_row = i;
          pick_target = first_target;
        }
      }
    }
    if (!pick_row) {
      // Nothing fits anywhere: least outsourcing cost per km goes first.
      double best_ratio = std::numeric_limits<double>::infinity();
      pick_row = 0;
      pick_target = kNewTrip;
      for (std::size_t i = 0; i < removed.size(); ++i) {
        const auto d = inst.direct(removed[i]);
        const double ratio = d > 0 ? static_cast<double>(inst.requests[removed[i]].sm_price) /
                                         static_cast<double>(d)
                                   : std::numeric_limits<double>::infinity();
        if (ratio < best_ratio) {
          best_ratio = ratio;
          pick_row = i;
        }
      }
    }

    const std::size_t row = *pick_row;
    const std::size_t r = removed[row];
    const Money s_r = inst.requests[r].sm_price;
    const bool under_construction =
        params.speculative_trips && pick_target != kNewTrip && sol.trips[pick_target].distance() < inst.mu;
    if (pick_target != kNewTrip && (cells[row][pick_target].delta < s_r || under_construction)) {
      const auto& cell = cells[row][pick_target];
      auto& t = sol.trips[cell.trip];
      TripLabels labels;
      check_insertion(inst, t.requests, t.labels, r, cell.position, &labels);
      const Distance extra = insertion_distance(inst, t, r, cell.position);
      t.requests.insert(t.requests.begin() + static_cast<std::ptrdiff_t>(cell.position), r);
      t.labels = std::move(labels);
      t.loaded += inst.direct(r);
      t.empty += extra - inst.direct(r);
      stale_trip[cell.trip] = 1;
    } else {
      bool opened = false;
      if (well_utilized && solo[row] && (params.speculative_trips || open_cost(row) <= s_r)) {
        auto fresh = make_trip(inst, {r});
        sol.trips.push_back(std::move(std::get<Trip>(fresh)));
        stale_trip.push_back(1);
        opened = true;
      }
      if (!opened) detail::insert_sorted(sol.bank, r);
    }
    removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(row));
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(row));
    solo.erase(solo.begin() + static_cast<std::ptrdiff_t>(row));
  }

  if (params.speculative_trips) detail::prune_trips(inst, sol);
  detail::dissolve_short_trips(inst, sol, params.speculative_trips);
  update_cost(inst, sol);
}

// Everything outsourced, then one greedy repair pass over all requests.
inline Solution build_initial(const Instance& inst, const OperatorParams& params = {}) {
  Solution sol;
  std::vector<std::size_t> all(inst.size());
  std::iota(all.begin(), all.end(), 0);
  repair(inst, sol, std::move(all), InsertionOp{1}, params);
  return sol;
}

}  // namespace ftl
