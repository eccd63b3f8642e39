#pragma once

// Domain types for full-truck-load routing with outsourcing.
//
// Units used throughout:
//   Minutes  - integer minutes from the horizon origin (Monday 00:00 by default)
//   Distance - integer tenths of a kilometre
//   Money    - integer millionths of a currency unit
// Integer units keep cost totals exact and order independent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftl {

using Minutes = std::int64_t;
using Distance = std::int64_t;  // 0.1 km
using Money = std::int64_t;     // 1e-6 currency

inline constexpr Minutes kMinutesPerDay = 1440;
inline constexpr Minutes kMinutesPerWeek = 7 * kMinutesPerDay;
inline constexpr Money kMoneyPerUnit = 1'000'000;

inline Distance distance_from_km(double km) { return std::llround(km * 10.0); }
inline double to_km(Distance d) { return static_cast<double>(d) / 10.0; }
inline Money money_from_units(double amount) {
  return std::llround(amount * static_cast<double>(kMoneyPerUnit));
}
inline double to_units(Money m) {
  return static_cast<double>(m) / static_cast<double>(kMoneyPerUnit);
}

// A per-km rate stored as money per 0.1 km; rates are kept to five decimals so
// that rate * distance is an exact integer.
struct Rate {
  Money per_tenth_km = 0;

  static Rate from_per_km(double per_km) { return Rate{std::llround(per_km * 1e5)}; }
  double per_km() const { return static_cast<double>(per_tenth_km) / 1e5; }
  Money cost(Distance d) const { return per_tenth_km * d; }

  friend bool operator==(const Rate&, const Rate&) = default;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegParams {
  Minutes tau_n = 450;    // max cumulative driving without a shift break
  Minutes tau_b = 990;    // shift break
  Minutes tau_s = 1320;   // Sunday break
  Minutes sigma = 120;    // one loading or unloading operation
  double nu = 70.0;       // km/h

  void validate() const {
    if (!(tau_b > 0) || tau_s < tau_b)
      throw ModelError("regs: require tau_s >= tau_b > 0");
    if (tau_n <= 0) throw ModelError("regs: require tau_n > 0");
    if (sigma < 0) throw ModelError("regs: require sigma >= 0");
    if (!(nu > 0)) throw ModelError("regs: require nu > 0");
  }

  // Whole minutes needed to cover `d`, rounded up.
  Minutes travel_minutes(Distance d) const {
    const double exact = static_cast<double>(d) * 6.0 / nu;
    return static_cast<Minutes>(std::ceil(exact - 1e-9));
  }

  friend bool operator==(const RegParams&, const RegParams&) = default;
};

struct SmTier {
  std::optional<Distance> upper;  // exclusive bound; nullopt for the final open tier
  Rate rate;

  friend bool operator==(const SmTier&, const SmTier&) = default;
};

struct CostModel {
  Rate kappa = Rate::from_per_km(1.06);
  std::vector<SmTier> sm_tiers = default_tiers();
  std::map<std::string, Money> explicit_sm_prices;

  static std::vector<SmTier> default_tiers() {
    return {{distance_from_km(150), Rate::from_per_km(1.75)},
            {distance_from_km(350), Rate::from_per_km(1.40)},
            {std::nullopt, Rate::from_per_km(1.15)}};
  }

  void validate() const {
    if (kappa.per_tenth_km <= 0) throw ModelError("cost: kappa must be > 0");
    if (sm_tiers.empty() || sm_tiers.back().upper)
      throw ModelError("cost: sm_tiers must end with an open tier");
    for (std::size_t i = 0; i < sm_tiers.size(); ++i) {
      if (sm_tiers[i].rate.per_tenth_km <= 0)
        throw ModelError("cost: tier rates must be > 0");
      if (i + 1 < sm_tiers.size()) {
        if (!sm_tiers[i].upper) throw ModelError("cost: only the last tier may be open");
        if (i > 0 && *sm_tiers[i].upper <= *sm_tiers[i - 1].upper)
          throw ModelError("cost: tier bounds must be strictly increasing");
      }
    }
  }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

// Outsourcing price of a request. A distance equal to a tier bound belongs to
// the next tier up.
inline Money sm_price(const CostModel& cost, Distance direct, const std::string& request_id = {}) {
  if (auto it = cost.explicit_sm_prices.find(request_id); it != cost.explicit_sm_prices.end())
    return it->second;
  for (const auto& tier : cost.sm_tiers)
    if (!tier.upper || direct < *tier.upper) return tier.rate.cost(direct);
  return cost.sm_tiers.back().rate.cost(direct);
}

struct TimeWindow {
  Minutes start = 0;
  Minutes end = 0;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct Location {
  std::string id;
  std::optional<double> x;
  std::optional<double> y;
  std::string name;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Request {
  std::string id;
  std::size_t origin = 0;       // location index
  std::size_t destination = 0;  // location index
  TimeWindow pickup_window;
  std::vector<TimeWindow> delivery_windows;
  Money sm_price = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(std::size_t n) : n_(n), distance_(n * n, 0), time_(n * n, 0) {}

  std::size_t size() const { return n_; }
  Distance distance(std::size_t a, std::size_t b) const { return distance_[a * n_ + b]; }
  Minutes time(std::size_t a, std::size_t b) const { return time_[a * n_ + b]; }
  void set(std::size_t a, std::size_t b, Distance d, Minutes t) {
    distance_[a * n_ + b] = d;
    time_[a * n_ + b] = t;
  }

  // Fills every travel time from the distances at speed `regs.nu`.
  void derive_times(const RegParams& regs) {
    for (std::size_t i = 0; i < distance_.size(); ++i) time_[i] = regs.travel_minutes(distance_[i]);
  }

  Distance max_distance() const {
    return distance_.empty() ? 0 : *std::max_element(distance_.begin(), distance_.end());
  }

  friend bool operator==(const TravelMatrix&, const TravelMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Distance> distance_;
  std::vector<Minutes> time_;
};

struct Horizon {
  int origin_weekday = 0;  // 0 = Monday ... 6 = Sunday
  int days = 7;

  Minutes end() const { return static_cast<Minutes>(days) * kMinutesPerDay; }

  friend bool operator==(const Horizon&, const Horizon&) = default;
};

struct Instance {
  std::vector<Location> locations;
  TravelMatrix matrix;
  std::vector<Request> requests;
  CostModel cost;
  RegParams regs;
  Distance mu = 0;
  Horizon horizon;

  std::size_t size() const { return requests.size(); }

  Distance direct(std::size_t r) const {
    return matrix.distance(requests[r].origin, requests[r].destination);
  }
  Minutes direct_minutes(std::size_t r) const {
    return matrix.time(requests[r].origin, requests[r].destination);
  }
  // Empty leg from the destination of `from` to the origin of `to`.
  Distance deadhead(std::size_t from, std::size_t to) const {
    return matrix.distance(requests[from].destination, requests[to].origin);
  }
  Minutes deadhead_minutes(std::size_t from, std::size_t to) const {
    return matrix.time(requests[from].destination, requests[to].origin);
  }

  Money all_outsourced_cost() const {
    Money total = 0;
    for (const auto& r : requests) total += r.sm_price;
    return total;
  }

  // Throws ModelError naming the first violated invariant.
  void validate() const {
    regs.validate();
    cost.validate();
    if (mu < 0) throw ModelError("mu must be >= 0");
    if (horizon.days <= 0 || horizon.origin_weekday < 0 || horizon.origin_weekday > 6)
      throw ModelError("horizon: days must be > 0 and origin_weekday in 0..6");
    if (matrix.size() != locations.size())
      throw ModelError("matrix size does not match the location count");
    for (std::size_t a = 0; a < matrix.size(); ++a)
      for (std::size_t b = 0; b < matrix.size(); ++b) {
        if (matrix.distance(a, b) < 0 || matrix.time(a, b) < 0)
          throw ModelError("matrix entries must be >= 0");
        if (a == b && (matrix.distance(a, b) != 0 || matrix.time(a, b) != 0))
          throw ModelError("matrix diagonal must be zero");
      }
    for (const auto& r : requests) {
      const auto where = "request " + r.id + ": ";
      if (r.origin >= locations.size() || r.destination >= locations.size())
        throw ModelError(where + "unknown location");
      if (r.origin == r.destination) throw ModelError(where + "origin equals destination");
      if (r.pickup_window.start > r.pickup_window.end)
        throw ModelError(where + "pickup window start after end");
      if (r.delivery_windows.empty()) throw ModelError(where + "no delivery windows");
      for (std::size_t i = 0; i < r.delivery_windows.size(); ++i) {
        const auto& w = r.delivery_windows[i];
        if (w.start > w.end) throw ModelError(where + "delivery window start after end");
        if (i > 0 && w.start <= r.delivery_windows[i - 1].end)
          throw ModelError(where + "delivery windows must be sorted and disjoint");
      }
      if (r.sm_price <= 0) throw ModelError(where + "sm_price must be > 0");
      if (r.pickup_window.end > horizon.end() || r.delivery_windows.back().end > horizon.end())
        throw ModelError(where + "window beyond the horizon");
    }
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace ftl
