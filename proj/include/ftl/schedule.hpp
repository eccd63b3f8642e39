#pragma once

// Earliest-arrival scheduling of a trip under time windows, (un)loading
// times, shift breaks and the Sunday driving ban.
//
// Rules realised here:
//  * a driver may drive at most tau_n minutes between two rests of at least
//    tau_b contiguous minutes; any idle time (break or waiting) is rest,
//    (un)loading is not;
//  * every Sunday, [Sunday 00:00, Sunday 00:00 + tau_s) is a blackout in
//    which neither driving nor (un)loading may happen;
//  * an (un)loading operation [s, s + sigma] lies inside one window of its
//    node and never overlaps a blackout.
//
// Inside a leg the driver drives in maximal stints and breaks exactly tau_b
// when the counter is exhausted. At a node two labels are kept: serve as early
// as possible, or rest tau_b first and then serve. Labels are pruned by
// (service start, nonstop driving) dominance, so the last node's frontier
// holds the earliest feasible completion.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ftl/model.hpp"

namespace ftl {

struct Label {
  Minutes arrival = 0;        // time at which service can start at the node
  Minutes nonstop_drive = 0;  // driving since the last qualifying rest

  friend bool operator==(const Label&, const Label&) = default;
};

enum class Activity { Drive, Break, Wait, Service };

inline const char* to_string(Activity a) {
  switch (a) {
    case Activity::Drive: return "drive";
    case Activity::Break: return "break";
    case Activity::Wait: return "wait";
    case Activity::Service: return "service";
  }
  return "?";
}

struct Segment {
  Activity kind = Activity::Wait;
  Minutes start = 0;
  Minutes end = 0;

  Minutes length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct NodeTimes {
  Minutes arrival = 0;
  Minutes service_start = 0;
  Minutes departure = 0;

  friend bool operator==(const NodeTimes&, const NodeTimes&) = default;
};

// legs[k] holds the drive / break / wait segments that end at node k's
// service start (legs[0] is the wait, if any, before the first pickup).
struct Schedule {
  std::vector<NodeTimes> nodes;
  std::vector<std::vector<Segment>> legs;

  // Every segment in time order, (un)loading included.
  std::vector<Segment> timeline() const {
    std::vector<Segment> out;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      out.insert(out.end(), legs[k].begin(), legs[k].end());
      out.push_back({Activity::Service, nodes[k].service_start, nodes[k].departure});
    }
    return out;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

enum class InfeasibleReason { NoWindow, HorizonExceeded };

struct Infeasible {
  std::size_t node = 0;  // 1-based position of the trip node that cannot be served
  InfeasibleReason reason = InfeasibleReason::NoWindow;

  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

inline std::string to_string(const Infeasible& e) {
  return std::string(e.reason == InfeasibleReason::NoWindow ? "NoWindow" : "HorizonExceeded") +
         " at node " + std::to_string(e.node);
}

template <typename T>
using Checked = std::variant<T, Infeasible>;

// Sunday blackouts and the horizon end.
class Calendar {
 public:
  Calendar(const Horizon& horizon, Minutes sunday_rest)
      : first_sunday_(((6 - horizon.origin_weekday) % 7 + 7) % 7 * kMinutesPerDay),
        rest_(sunday_rest),
        end_(horizon.end()) {}

  explicit Calendar(const Instance& inst) : Calendar(inst.horizon, inst.regs.tau_s) {}

  Minutes horizon_end() const { return end_; }

  // Blackout [start, end) containing t, or the first one starting after t.
  std::pair<Minutes, Minutes> blackout_from(Minutes t) const {
    Minutes k = 0;
    if (t > first_sunday_) k = (t - first_sunday_) / kMinutesPerWeek;
    Minutes start = first_sunday_ + k * kMinutesPerWeek;
    if (t >= start + rest_) start += kMinutesPerWeek;
    return {start, start + rest_};
  }

  bool in_blackout(Minutes t) const {
    auto [s, e] = blackout_from(t);
    return s <= t && t < e;
  }

 private:
  Minutes first_sunday_;
  Minutes rest_;
  Minutes end_;
};

// One node of a trip as seen by the scheduler.
struct Stop {
  std::span<const TimeWindow> windows;
  Minutes drive_in = 0;  // driving from the previous stop
};

// Nodes of a request sequence: origin, destination, origin, destination, ...
inline void build_stops(const Instance& inst, std::span<const std::size_t> seq,
                        std::vector<Stop>& out) {
  out.clear();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& r = inst.requests[seq[i]];
    out.push_back({std::span<const TimeWindow>(&r.pickup_window, 1),
                   i == 0 ? 0 : inst.deadhead_minutes(seq[i - 1], seq[i])});
    out.push_back({r.delivery_windows, inst.direct_minutes(seq[i])});
  }
}

namespace detail {

// Earliest s >= from such that [s, s + sigma] fits a window and avoids
// every blackout.
inline std::optional<Minutes> earliest_service(Minutes from, std::span<const TimeWindow> windows,
                                               Minutes sigma, const Calendar& cal) {
  for (const auto& w : windows) {
    Minutes s = std::max(from, w.start);
    while (s + sigma <= w.end) {
      auto [bs, be] = cal.blackout_from(s);
      const bool overlaps = sigma > 0 ? (bs < s + sigma && s < be) : (bs <= s && s < be);
      if (!overlaps) return s;
      s = be;
    }
  }
  return std::nullopt;
}

struct LegEnd {
  Minutes arrival;
  Minutes nonstop;
};

// Drives `drive` minutes starting at t with the counter at `nonstop`.
// Stops at the horizon end; the caller checks arrival against it.
inline LegEnd drive_leg(Minutes t, Minutes nonstop, Minutes drive, const RegParams& regs,
                        const Calendar& cal, std::vector<Segment>* out = nullptr) {
  Minutes rest = 0;
  auto emit = [&](Activity kind, Minutes a, Minutes b) {
    if (out && b > a) {
      if (!out->empty() && out->back().kind == kind && out->back().end == a)
        out->back().end = b;
      else
        out->push_back({kind, a, b});
    }
  };
  while (drive > 0) {
    if (t > cal.horizon_end()) break;
    auto [bs, be] = cal.blackout_from(t);
    if (bs <= t) {
      emit(Activity::Wait, t, be);
      rest += be - t;
      t = be;
      if (rest >= regs.tau_b) nonstop = 0;
      continue;
    }
    if (nonstop >= regs.tau_n) {
      emit(Activity::Break, t, t + regs.tau_b);
      t += regs.tau_b;
      rest += regs.tau_b;
      nonstop = 0;
      continue;
    }
    const Minutes stint = std::min({drive, regs.tau_n - nonstop, bs - t});
    emit(Activity::Drive, t, t + stint);
    t += stint;
    nonstop += stint;
    drive -= stint;
    rest = 0;
  }
  return {t, nonstop};
}

}  // namespace detail

// One member of a node's label frontier.
struct TraceLabel {
  Minutes arrival = 0;
  Minutes service_start = 0;
  Minutes nonstop = 0;
  int parent = -1;  // index into the previous node's frontier

  friend bool operator==(const TraceLabel&, const TraceLabel&) = default;
};

using Frontier = std::vector<TraceLabel>;

namespace detail {

inline void add_label(Frontier& f, const TraceLabel& l) {
  for (const auto& o : f)
    if (o.service_start <= l.service_start && o.nonstop <= l.nonstop) return;
  std::erase_if(f, [&](const TraceLabel& o) {
    return l.service_start <= o.service_start && l.nonstop <= o.nonstop;
  });
  auto pos = std::lower_bound(f.begin(), f.end(), l, [](const TraceLabel& a, const TraceLabel& b) {
    return a.service_start < b.service_start;
  });
  f.insert(pos, l);
}

// Labels at a node reached at `arrival` with `nonstop` minutes on the counter.
// Returns false when the arrival is past every window.
inline bool label_stop(Minutes arrival, Minutes nonstop, std::span<const TimeWindow> windows,
                       const RegParams& regs, const Calendar& cal, int parent, Frontier& out) {
  const auto asap = earliest_service(arrival, windows, regs.sigma, cal);
  if (!asap) return false;
  const bool reset = *asap - arrival >= regs.tau_b;
  add_label(out, {arrival, *asap, reset ? 0 : nonstop, parent});
  if (!reset && nonstop > 0) {
    if (auto rested = earliest_service(arrival + regs.tau_b, windows, regs.sigma, cal))
      add_label(out, {arrival, *rested, 0, parent});
  }
  return true;
}

// Frontier at stop k from the frontier at stop k - 1 (or the trip start).
// On failure `out` is empty and `horizon` tells whether every arrival ran
// past the horizon end.
inline void step(const Frontier* prev, const Stop& stop, const RegParams& regs,
                 const Calendar& cal, Frontier& out, bool& horizon) {
  out.clear();
  horizon = true;
  if (!prev) {
    // Trip start: the driver is rested and ready at the window start.
    const Minutes start = stop.windows.front().start;
    horizon = false;
    label_stop(start, 0, stop.windows, regs, cal, -1, out);
    return;
  }
  for (std::size_t j = 0; j < prev->size(); ++j) {
    const auto& l = (*prev)[j];
    const auto end = drive_leg(l.service_start + regs.sigma, l.nonstop, stop.drive_in, regs, cal);
    if (end.arrival > cal.horizon_end()) continue;
    horizon = false;
    label_stop(end.arrival, end.nonstop, stop.windows, regs, cal, static_cast<int>(j), out);
  }
}

inline Infeasible failure(std::size_t node, bool horizon) {
  return {node, horizon ? InfeasibleReason::HorizonExceeded : InfeasibleReason::NoWindow};
}

}  // namespace detail

// Per-node label frontiers of a feasible trip; prefix frontiers can be reused
// when evaluating insertions.
struct TripLabels {
  std::vector<Frontier> nodes;

  friend bool operator==(const TripLabels&, const TripLabels&) = default;
};

// Label at the target node for a single leg, serving as early as possible.
inline Checked<Label> propagate(const Label& label, Minutes depart_time, Minutes drive_minutes,
                                std::span<const TimeWindow> target_windows, const RegParams& regs,
                                const Calendar& cal) {
  const auto end = detail::drive_leg(depart_time, label.nonstop_drive, drive_minutes, regs, cal);
  if (end.arrival > cal.horizon_end()) return Infeasible{1, InfeasibleReason::HorizonExceeded};
  const auto s = detail::earliest_service(end.arrival, target_windows, regs.sigma, cal);
  if (!s) return Infeasible{1, InfeasibleReason::NoWindow};
  const Minutes nonstop = *s - end.arrival >= regs.tau_b ? 0 : end.nonstop;
  return Label{*s, nonstop};
}

// Computes the frontiers of stops[from..] given frontiers of stops[..from).
// `labels.nodes` is resized to stops.size() on success.
inline std::optional<Infeasible> extend_labels(std::span<const Stop> stops, const RegParams& regs,
                                               const Calendar& cal, TripLabels& labels,
                                               std::size_t from = 0) {
  labels.nodes.resize(stops.size());
  for (std::size_t k = from; k < stops.size(); ++k) {
    bool horizon = false;
    detail::step(k == 0 ? nullptr : &labels.nodes[k - 1], stops[k], regs, cal, labels.nodes[k],
                 horizon);
    if (labels.nodes[k].empty()) {
      labels.nodes.resize(k);
      return detail::failure(k + 1, horizon);
    }
  }
  return std::nullopt;
}

// Feasibility of stops[from..] continuing from `prefix` (the frontier at
// stop from - 1, or nullptr when from == 0). Allocation free after warm-up.
inline bool feasible_from(const Frontier* prefix, std::span<const Stop> stops,
                          const RegParams& regs, const Calendar& cal) {
  thread_local Frontier a, b;
  const Frontier* prev = prefix;
  Frontier* cur = &a;
  for (const auto& stop : stops) {
    bool horizon = false;
    detail::step(prev, stop, regs, cal, *cur, horizon);
    if (cur->empty()) return false;
    prev = cur;
    cur = (cur == &a) ? &b : &a;
  }
  return true;
}

// Materialises the earliest-completion schedule from complete frontiers.
inline Schedule build_schedule(std::span<const Stop> stops, const TripLabels& labels,
                               const RegParams& regs, const Calendar& cal) {
  Schedule sched;
  const std::size_t n = stops.size();
  sched.nodes.resize(n);
  sched.legs.resize(n);
  if (n == 0) return sched;

  // Last frontier is sorted by service start; ties go to the lower counter.
  std::vector<const TraceLabel*> chain(n);
  const Frontier& last = labels.nodes[n - 1];
  chain[n - 1] = &*std::min_element(last.begin(), last.end(), [](const auto& x, const auto& y) {
    return x.service_start != y.service_start ? x.service_start < y.service_start
                                              : x.nonstop < y.nonstop;
  });
  for (std::size_t k = n - 1; k > 0; --k) chain[k - 1] = &labels.nodes[k - 1][chain[k]->parent];

  for (std::size_t k = 0; k < n; ++k) {
    const auto& l = *chain[k];
    auto& leg = sched.legs[k];
    if (k > 0) {
      const Minutes depart = chain[k - 1]->service_start + regs.sigma;
      detail::drive_leg(depart, chain[k - 1]->nonstop, stops[k].drive_in, regs, cal, &leg);
    }
    if (l.service_start > l.arrival) {
      if (!leg.empty() && leg.back().kind == Activity::Wait && leg.back().end == l.arrival)
        leg.back().end = l.service_start;
      else
        leg.push_back({Activity::Wait, l.arrival, l.service_start});
    }
    sched.nodes[k] = {l.arrival, l.service_start, l.service_start + regs.sigma};
  }
  return sched;
}

// Earliest-arrival schedule for serving `seq` in order with one vehicle.
inline Checked<Schedule> simulate_trip(const Instance& inst, std::span<const std::size_t> seq,
                                       TripLabels* labels_out = nullptr) {
  std::vector<Stop> stops;
  build_stops(inst, seq, stops);
  const Calendar cal(inst);
  TripLabels labels;
  if (auto err = extend_labels(stops, inst.regs, cal, labels)) return *err;
  auto sched = build_schedule(stops, labels, inst.regs, cal);
  if (labels_out) *labels_out = std::move(labels);
  return sched;
}

// Sequence `seq` with `request` spliced in before position `pos`.
inline std::vector<std::size_t> spliced(std::span<const std::size_t> seq, std::size_t request,
                                        std::size_t pos) {
  std::vector<std::size_t> out(seq.begin(), seq.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), request);
  return out;
}

// Schedule of `seq` with `request` inserted at `pos`, reusing the frontiers
// of the untouched prefix. Identical to simulate_trip on the spliced
// sequence.
inline Checked<Schedule> check_insertion(const Instance& inst, std::span<const std::size_t> seq,
                                         const TripLabels& cached, std::size_t request,
                                         std::size_t pos, TripLabels* labels_out = nullptr) {
  const auto full = spliced(seq, request, pos);
  std::vector<Stop> stops;
  build_stops(inst, full, stops);
  const Calendar cal(inst);
  TripLabels labels;
  const std::size_t reuse = std::min(2 * pos, cached.nodes.size());
  labels.nodes.assign(cached.nodes.begin(), cached.nodes.begin() + static_cast<std::ptrdiff_t>(reuse));
  if (auto err = extend_labels(stops, inst.regs, cal, labels, reuse)) return *err;
  auto sched = build_schedule(stops, labels, inst.regs, cal);
  if (labels_out) *labels_out = std::move(labels);
  return sched;
}

// Fast feasibility test for the same splice.
inline bool insertion_feasible(const Instance& inst, std::span<const std::size_t> seq,
                               const TripLabels& cached, std::size_t request, std::size_t pos,
                               const Calendar& cal) {
  thread_local std::vector<Stop> stops;
  stops.clear();
  const auto& r = inst.requests[request];
  std::size_t start = 2 * pos;
  if (pos > 0) {
    stops.push_back({std::span<const TimeWindow>(&r.pickup_window, 1),
                     inst.deadhead_minutes(seq[pos - 1], request)});
  } else {
    stops.push_back({std::span<const TimeWindow>(&r.pickup_window, 1), 0});
  }
  stops.push_back({r.delivery_windows, inst.direct_minutes(request)});
  for (std::size_t i = pos; i < seq.size(); ++i) {
    const auto& q = inst.requests[seq[i]];
    const std::size_t prev = i == pos ? request : seq[i - 1];
    stops.push_back({std::span<const TimeWindow>(&q.pickup_window, 1),
                     inst.deadhead_minutes(prev, seq[i])});
    stops.push_back({q.delivery_windows, inst.direct_minutes(seq[i])});
  }
  const Frontier* prefix = start == 0 ? nullptr : &cached.nodes[start - 1];
  return feasible_from(prefix, stops, inst.regs, cal);
}

}  // namespace ftl
