#pragma once

// Instance builders and random generators shared by the suites.

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ftl/ftl.hpp"

namespace ftl::test {

inline std::string data_path(const std::string& name) { return std::string(FTL_TEST_DATA) + "/" + name; }

// Locations at the given km coordinates, Euclidean distances.
inline Instance euclidean_instance(const std::vector<std::pair<double, double>>& pts, int days = 7,
                                   int origin_weekday = 0) {
  Instance inst;
  const auto n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    inst.locations.push_back({std::to_string(i), pts[i].first, pts[i].second, {}});
  inst.matrix = TravelMatrix(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Distance d = a == b ? 0
                                : distance_from_km(std::hypot(pts[a].first - pts[b].first,
                                                              pts[a].second - pts[b].second));
      inst.matrix.set(a, b, d, inst.regs.travel_minutes(d));
    }
  inst.horizon = {origin_weekday, days};
  return inst;
}

// Locations with explicit travel times; distance in km equals minutes / 10.
inline Instance timed_instance(const std::vector<std::vector<Minutes>>& minutes, int days = 14,
                               int origin_weekday = 0) {
  Instance inst;
  const auto n = minutes.size();
  for (std::size_t i = 0; i < n; ++i) inst.locations.push_back({std::to_string(i), {}, {}, {}});
  inst.matrix = TravelMatrix(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) inst.matrix.set(a, b, minutes[a][b], minutes[a][b]);
  inst.horizon = {origin_weekday, days};
  return inst;
}

inline std::vector<TimeWindow> daily_windows(int from_day, int to_day, Minutes open = 360,
                                             Minutes close = 1080) {
  std::vector<TimeWindow> w;
  for (int d = from_day; d < to_day; ++d) w.push_back({d * kMinutesPerDay + open, d * kMinutesPerDay + close});
  return w;
}

// Adds a request; a non-positive price means "use the tiered spot price".
inline std::size_t add_request(Instance& inst, std::size_t origin, std::size_t destination,
                               TimeWindow pickup, std::vector<TimeWindow> delivery, Money price = 0) {
  Request r;
  r.id = "r" + std::to_string(inst.requests.size());
  r.origin = origin;
  r.destination = destination;
  r.pickup_window = pickup;
  r.delivery_windows = std::move(delivery);
  r.sm_price = price > 0 ? price : sm_price(inst.cost, inst.matrix.distance(origin, destination));
  inst.requests.push_back(std::move(r));
  return inst.requests.size() - 1;
}

// Small metric instance: 3..7 requests over a week, daily windows, spot
// prices scattered around the tier price, a random minimum distance.
inline Instance random_micro(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coord(0.0, 400.0);
  std::vector<std::pair<double, double>> pts;
  std::vector<std::pair<std::size_t, std::size_t>> od;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t o;
    // Some pickups sit at an earlier delivery site, which makes chaining cheap.
    if (!od.empty() && std::uniform_real_distribution<double>(0, 1)(rng) < 0.3) {
      o = od[std::uniform_int_distribution<std::size_t>(0, od.size() - 1)(rng)].second;
    } else {
      o = pts.size();
      pts.push_back({coord(rng), coord(rng)});
    }
    const std::size_t d = pts.size();
    pts.push_back({coord(rng), coord(rng)});
    od.push_back({o, d});
  }
  Instance inst = euclidean_instance(pts, 7);
  const double levels[] = {0.8, 1.0, 1.3};
  const Distance mus[] = {0, distance_from_km(250), distance_from_km(500)};
  inst.mu = mus[std::uniform_int_distribution<int>(0, 2)(rng)];
  for (const auto& [o, d] : od) {
    const int day = std::uniform_int_distribution<int>(0, 3)(rng);
    const double level = levels[std::uniform_int_distribution<int>(0, 2)(rng)];
    const Money base = sm_price(inst.cost, inst.matrix.distance(o, d));
    add_request(inst, o, d, {day * kMinutesPerDay + 360, day * kMinutesPerDay + 1080},
                daily_windows(day, 7), std::max<Money>(1, std::llround(level * static_cast<double>(base))));
  }
  inst.validate();
  return inst;
}

// Random trip of up to three requests on a two-week horizon where every
// time is a multiple of `g` minutes. Returns the instance; the trip is the
// request order 0, 1, ...
inline Instance random_schedule_case(std::mt19937_64& rng, Minutes g) {
  auto mult = [&](Minutes lo, Minutes hi) {
    return g * std::uniform_int_distribution<Minutes>(lo / g, hi / g)(rng);
  };
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  const std::size_t n = 2 * k;
  std::vector<std::vector<Minutes>> m(n, std::vector<Minutes>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) m[a][b] = mult(0, 1350);
  const int weekday = std::uniform_int_distribution<int>(0, 6)(rng);
  Instance inst = timed_instance(m, 14, weekday);
  const Minutes end = inst.horizon.end();

  auto window_after = [&](Minutes est) {
    const Minutes s = std::clamp<Minutes>(est + mult(0, 2 * kMinutesPerDay) - kMinutesPerDay, 0, end - 120);
    const Minutes e = std::min(end, s + mult(120, 1440));
    return TimeWindow{s, e};
  };

  Minutes est = mult(0, 4 * kMinutesPerDay);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t o = 2 * i, d = 2 * i + 1;
    if (i > 0) est += m[2 * i - 1][o] + 120;
    TimeWindow pick = window_after(est);
    if (i == 0) pick = {est, std::min(end, est + mult(120, 1440))};
    est = std::max(est, pick.start) + 120 + m[o][d];
    std::vector<TimeWindow> del;
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    Minutes cursor = est;
    for (int c = 0; c < count; ++c) {
      TimeWindow w = window_after(cursor);
      if (!del.empty() && w.start <= del.back().end) w.start = del.back().end + g;
      if (w.end > end) w.end = end;
      if (w.start + 120 > w.end) break;
      del.push_back(w);
      cursor = w.end + kMinutesPerDay;
    }
    if (del.empty()) del.push_back({end - 120, end});
    add_request(inst, o, d, pick, del, 1'000'000);
    est = del.front().start + 120;
  }
  inst.validate();
  return inst;
}

inline std::vector<std::size_t> identity_sequence(std::size_t n) {
  std::vector<std::size_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace ftl::test
