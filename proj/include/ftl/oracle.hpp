#pragma once

// Exact reference machinery for small instances: exhaustive solver,
// time-stepped schedule search, an independent rule checker and an LP export
// of the routing / minimum-distance model.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ftl/instances.hpp"
#include "ftl/model.hpp"
#include "ftl/schedule.hpp"
#include "ftl/solution.hpp"

namespace ftl {

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceLimit = 8;

// ---------------------------------------------------------------------------
// Arc graph

struct Arc {
  enum class Kind { Start, Serve, Deadhead, End };
  Kind kind;
  std::size_t from_request;  // Start: unused
  std::size_t to_request;    // End: unused
  Distance distance = 0;
  Minutes time = 0;
};

struct ArcGraph {
  std::size_t requests = 0;
  std::vector<Arc> arcs;
  std::vector<std::size_t> start;  // per request
  std::vector<std::size_t> serve;
  std::vector<std::size_t> end;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> deadhead;

  std::optional<std::size_t> deadhead_arc(std::size_t r1, std::size_t r2) const {
    auto it = deadhead.find({r1, r2});
    if (it == deadhead.end()) return std::nullopt;
    return it->second;
  }
};

// Deadhead r1 -> r2 is kept iff r1^s + t(o1,d1) + t(d1,o2) + 3 sigma <= r2^e,
// r1^s being the start of r1's pickup window.
inline bool deadhead_admissible(const Instance& inst, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return false;
  const auto& a = inst.requests[r1];
  const auto& b = inst.requests[r2];
  return a.pickup_window.start + inst.direct_minutes(r1) + inst.deadhead_minutes(r1, r2) +
             3 * inst.regs.sigma <=
         b.pickup_window.end;
}

inline ArcGraph build_arc_graph(const Instance& inst) {
  ArcGraph g;
  const auto n = inst.size();
  g.requests = n;
  for (std::size_t r = 0; r < n; ++r) {
    g.start.push_back(g.arcs.size());
    g.arcs.push_back({Arc::Kind::Start, r, r, 0, 0});
  }
  for (std::size_t r = 0; r < n; ++r) {
    g.serve.push_back(g.arcs.size());
    g.arcs.push_back({Arc::Kind::Serve, r, r, inst.direct(r), inst.direct_minutes(r)});
  }
  for (std::size_t r1 = 0; r1 < n; ++r1)
    for (std::size_t r2 = 0; r2 < n; ++r2)
      if (deadhead_admissible(inst, r1, r2)) {
        g.deadhead[{r1, r2}] = g.arcs.size();
        g.arcs.push_back(
            {Arc::Kind::Deadhead, r1, r2, inst.deadhead(r1, r2), inst.deadhead_minutes(r1, r2)});
      }
  for (std::size_t r = 0; r < n; ++r) {
    g.end.push_back(g.arcs.size());
    g.arcs.push_back({Arc::Kind::End, r, r, 0, 0});
  }
  return g;
}

namespace detail {

inline std::string lp_token(const std::string& id) {
  std::string s;
  for (char c : id) s += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return s;
}

inline std::string arc_name(const Instance& inst, const Arc& a, char var) {
  auto node = [&](std::size_t r, bool origin) {
    return std::string(origin ? "o" : "d") + lp_token(inst.requests[r].id);
  };
  std::string src, dst;
  switch (a.kind) {
    case Arc::Kind::Start: src = "n0"; dst = node(a.to_request, true); break;
    case Arc::Kind::Serve: src = node(a.from_request, true); dst = node(a.to_request, false); break;
    case Arc::Kind::Deadhead: src = node(a.from_request, false); dst = node(a.to_request, true); break;
    case Arc::Kind::End: src = node(a.from_request, false); dst = "ninf"; break;
  }
  return std::string(1, var) + "_" + src + "_" + dst;
}

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Sum of all arc distances: a uniform bound on any cumulative distance.
inline Distance big_m(const ArcGraph& g) {
  Distance m = 0;
  for (const auto& a : g.arcs) m += a.distance;
  return m;
}

}  // namespace detail

// CPLEX-LP text of the routing / minimum-distance model. Distances in km,
// costs in currency units.
inline std::string lp_text(const ArcGraph& g, const Instance& inst) {
  using detail::arc_name;
  std::ostringstream os;
  const double kappa = inst.cost.kappa.per_km();
  os << "\\ FTL routing with outsourcing and minimum distance per vehicle.\n"
        "\\ Driving-time, time-window and Sunday rules are not part of this model;\n"
        "\\ they are checked on concrete trips by the schedule kernel.\n";
  os << "Minimize\n obj:";
  Money constant = 0;
  bool first = true;
  auto term = [&](double coef, const std::string& var) {
    if (coef == 0) return;
    os << (coef < 0 ? " - " : (first ? " " : " + ")) << detail::num(std::abs(coef)) << ' ' << var;
    first = false;
  };
  for (const auto& a : g.arcs) term(kappa * to_km(a.distance), arc_name(inst, a, 'x'));
  for (std::size_t r = 0; r < g.requests; ++r) {
    term(-to_units(inst.requests[r].sm_price), arc_name(inst, g.arcs[g.serve[r]], 'x'));
    constant += inst.requests[r].sm_price;
  }
  os << " + " << detail::fixed(to_units(constant), 6) << "\n";

  os << "Subject To\n";
  for (std::size_t r = 0; r < g.requests; ++r) {
    const auto tag = detail::lp_token(inst.requests[r].id);
    os << " kirchhoff1_" << tag << ":";
    for (const auto& a : g.arcs)
      if ((a.kind == Arc::Kind::Start || a.kind == Arc::Kind::Deadhead) && a.to_request == r)
        os << " + " << arc_name(inst, a, 'x');
    os << " - " << arc_name(inst, g.arcs[g.serve[r]], 'x') << " = 0\n";
  }
  for (std::size_t r = 0; r < g.requests; ++r) {
    const auto tag = detail::lp_token(inst.requests[r].id);
    os << " kirchhoff2_" << tag << ":";
    for (const auto& a : g.arcs)
      if ((a.kind == Arc::Kind::End || a.kind == Arc::Kind::Deadhead) && a.from_request == r)
        os << " + " << arc_name(inst, a, 'x');
    os << " - " << arc_name(inst, g.arcs[g.serve[r]], 'x') << " = 0\n";
  }
  // Flow-distance balance at every request node: out y = out d x + in y.
  for (std::size_t r = 0; r < g.requests; ++r) {
    for (bool origin : {true, false}) {
      os << " drivupdate_" << (origin ? "o" : "d") << detail::lp_token(inst.requests[r].id) << ":";
      for (const auto& a : g.arcs) {
        const bool out = origin ? (a.kind == Arc::Kind::Serve && a.from_request == r)
                                : ((a.kind == Arc::Kind::Deadhead || a.kind == Arc::Kind::End) &&
                                   a.from_request == r);
        const bool in = origin ? ((a.kind == Arc::Kind::Start || a.kind == Arc::Kind::Deadhead) &&
                                  a.to_request == r)
                               : (a.kind == Arc::Kind::Serve && a.to_request == r);
        if (out) {
          os << " + " << arc_name(inst, a, 'y');
          if (a.distance) os << " - " << detail::num(to_km(a.distance)) << ' ' << arc_name(inst, a, 'x');
        }
        if (in) os << " - " << arc_name(inst, a, 'y');
      }
      os << " = 0\n";
    }
  }
  for (std::size_t r = 0; r < g.requests; ++r)
    os << " n0_" << detail::lp_token(inst.requests[r].id) << ": "
       << arc_name(inst, g.arcs[g.start[r]], 'y') << " = 0\n";
  const double m = to_km(detail::big_m(g));
  for (std::size_t i = 0; i < g.arcs.size(); ++i)
    os << " bigm_" << i << ": " << arc_name(inst, g.arcs[i], 'y') << " - " << detail::num(m) << ' '
       << arc_name(inst, g.arcs[i], 'x') << " <= 0\n";
  for (std::size_t r = 0; r < g.requests; ++r)
    os << " mindriving_" << detail::lp_token(inst.requests[r].id) << ": "
       << arc_name(inst, g.arcs[g.end[r]], 'y') << " - " << detail::num(to_km(inst.mu)) << ' '
       << arc_name(inst, g.arcs[g.end[r]], 'x') << " >= 0\n";

  os << "Bounds\n";
  for (const auto& a : g.arcs) os << " " << arc_name(inst, a, 'y') << " >= 0\n";
  os << "Binary\n";
  for (const auto& a : g.arcs) os << " " << arc_name(inst, a, 'x') << "\n";
  os << "End\n";
  return os.str();
}

inline void emit_lp(const ArcGraph& g, const Instance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << lp_text(g, inst);
  if (!f) throw IoError("write failed: " + path);
}

struct LpAssignment {
  std::vector<int> x;
  std::vector<Distance> y;  // cumulative distance on arrival at the arc target
};

struct LpViolation {
  std::string constraint;
  std::string detail;
};

// Maps trips to arc flows; returns the names of arcs a trip needs but the
// graph lacks.
inline LpAssignment lp_assignment(const ArcGraph& g, const Instance& inst, const Solution& sol,
                                  std::vector<LpViolation>* missing = nullptr) {
  LpAssignment a{std::vector<int>(g.arcs.size(), 0), std::vector<Distance>(g.arcs.size(), 0)};
  for (const auto& t : sol.trips) {
    if (t.requests.empty()) continue;
    Distance y = 0;
    a.x[g.start[t.requests.front()]] = 1;
    for (std::size_t i = 0; i < t.requests.size(); ++i) {
      const auto r = t.requests[i];
      if (i > 0) {
        const auto prev = t.requests[i - 1];
        y += inst.deadhead(prev, r);
        if (auto arc = g.deadhead_arc(prev, r)) {
          a.x[*arc] = 1;
          a.y[*arc] = y;
        } else if (missing) {
          missing->push_back({"arcs", "no arc from " + inst.requests[prev].id + " to " + inst.requests[r].id});
        }
      }
      y += inst.direct(r);
      a.x[g.serve[r]] = 1;
      a.y[g.serve[r]] = y;
    }
    a.x[g.end[t.requests.back()]] = 1;
    a.y[g.end[t.requests.back()]] = y;
  }
  return a;
}

inline Money lp_objective(const ArcGraph& g, const Instance& inst, const LpAssignment& a) {
  Distance driven = 0;
  for (std::size_t i = 0; i < g.arcs.size(); ++i)
    if (a.x[i]) driven += g.arcs[i].distance;
  Money total = inst.cost.kappa.cost(driven);
  for (std::size_t r = 0; r < g.requests; ++r)
    if (!a.x[g.serve[r]]) total += inst.requests[r].sm_price;
  return total;
}

// Evaluates every model constraint on the assignment induced by `sol`.
inline std::vector<LpViolation> check_lp_assignment(const ArcGraph& g, const Instance& inst,
                                                    const Solution& sol) {
  std::vector<LpViolation> out;
  const auto a = lp_assignment(g, inst, sol, &out);
  const auto id = [&](std::size_t r) { return inst.requests[r].id; };
  for (std::size_t r = 0; r < g.requests; ++r) {
    int in = 0, outflow = 0;
    Distance yin = 0, yout = 0, dx = 0;
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
      const auto& arc = g.arcs[i];
      if ((arc.kind == Arc::Kind::Start || arc.kind == Arc::Kind::Deadhead) && arc.to_request == r) {
        in += a.x[i];
        yin += a.y[i];
      }
      if ((arc.kind == Arc::Kind::End || arc.kind == Arc::Kind::Deadhead) && arc.from_request == r)
        outflow += a.x[i];
    }
    const int serve = a.x[g.serve[r]];
    if (in != serve) out.push_back({"kirchhoff1", "request " + id(r)});
    if (outflow != serve) out.push_back({"kirchhoff2", "request " + id(r)});
    // Origin node: the serve arc leaves, start/deadhead arcs enter.
    yout = a.y[g.serve[r]];
    dx = g.arcs[g.serve[r]].distance * serve;
    if (yout != dx + yin) out.push_back({"drivupdate", "origin of " + id(r)});
    // Destination node: deadhead/end arcs leave, the serve arc enters.
    yout = 0;
    dx = 0;
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
      const auto& arc = g.arcs[i];
      if ((arc.kind == Arc::Kind::End || arc.kind == Arc::Kind::Deadhead) && arc.from_request == r) {
        yout += a.y[i];
        dx += arc.distance * a.x[i];
      }
    }
    if (yout != dx + a.y[g.serve[r]]) out.push_back({"drivupdate", "destination of " + id(r)});
    if (a.y[g.start[r]] != 0) out.push_back({"n0", "request " + id(r)});
    if (a.y[g.end[r]] < inst.mu * a.x[g.end[r]])
      out.push_back({"mindriving", "trip ending with " + id(r) + " drives " +
                                       detail::fixed(to_km(a.y[g.end[r]]), 1) + " km"});
  }
  const Distance m = detail::big_m(g);
  for (std::size_t i = 0; i < g.arcs.size(); ++i) {
    if (a.y[i] > m * a.x[i]) out.push_back({"bigm", detail::arc_name(inst, g.arcs[i], 'y')});
    if (a.y[i] < 0) out.push_back({"vars", detail::arc_name(inst, g.arcs[i], 'y')});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive solver

struct BruteForceOptions {
  bool arc_filter = false;  // only allow consecutive pairs admitted by the arc graph
};

namespace detail {

// Cheapest feasible single-trip order for every subset of requests.
struct SubsetTrips {
  std::vector<std::optional<Distance>> best;  // by bitmask
  std::vector<std::vector<std::size_t>> order;
};

inline SubsetTrips enumerate_trips(const Instance& inst, const BruteForceOptions& opt) {
  const std::size_t n = inst.size();
  const std::size_t full = std::size_t{1} << n;
  SubsetTrips st{std::vector<std::optional<Distance>>(full), std::vector<std::vector<std::size_t>>(full)};
  std::vector<std::size_t> seq;
  // Depth-first over orders; an infeasible prefix prunes all extensions.
  auto dfs = [&](auto&& self, std::size_t mask, Distance dist) -> void {
    for (std::size_t r = 0; r < n; ++r) {
      if (mask & (std::size_t{1} << r)) continue;
      if (opt.arc_filter && !seq.empty() && !deadhead_admissible(inst, seq.back(), r)) continue;
      Distance d = dist + inst.direct(r) + (seq.empty() ? 0 : inst.deadhead(seq.back(), r));
      seq.push_back(r);
      if (std::holds_alternative<Schedule>(simulate_trip(inst, seq))) {
        const auto m = mask | (std::size_t{1} << r);
        if (d >= inst.mu && (!st.best[m] || d < *st.best[m])) {
          st.best[m] = d;
          st.order[m] = seq;
        }
        self(self, m, d);
      }
      seq.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  return st;
}

}  // namespace detail

// Minimum-cost solution over every split into outsourced requests and
// ordered trips. Ties keep the first candidate in enumeration order.
inline Solution brute_force(const Instance& inst, const BruteForceOptions& opt = {}) {
  const std::size_t n = inst.size();
  if (n > kBruteForceLimit)
    throw TooLarge("brute force supports at most " + std::to_string(kBruteForceLimit) + " requests");
  const auto trips = detail::enumerate_trips(inst, opt);
  const std::size_t full = std::size_t{1} << n;
  const Rate kappa = inst.cost.kappa;
  std::vector<Money> best(full, 0);
  std::vector<std::size_t> choice(full, 0);  // 0 = outsource the lowest request, else the trip subset
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const auto r = static_cast<std::size_t>(std::countr_zero(low));
    best[mask] = inst.requests[r].sm_price + best[mask ^ low];
    choice[mask] = 0;
    const std::size_t rest = mask ^ low;
    // Trip subsets containing the lowest request.
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t t = sub | low;
      if (trips.best[t]) {
        const Money c = kappa.cost(*trips.best[t]) + best[mask ^ t];
        if (c < best[mask]) {
          best[mask] = c;
          choice[mask] = t;
        }
      }
      if (sub == 0) break;
    }
  }
  Solution sol;
  for (std::size_t mask = full - 1; mask;) {
    if (choice[mask] == 0) {
      const std::size_t low = mask & (~mask + 1);
      sol.bank.push_back(static_cast<std::size_t>(std::countr_zero(low)));
      mask ^= low;
    } else {
      auto trip = make_trip(inst, trips.order[choice[mask]]);
      sol.trips.push_back(std::get<Trip>(std::move(trip)));
      mask ^= choice[mask];
    }
  }
  std::sort(sol.bank.begin(), sol.bank.end());
  update_cost(inst, sol);
  return sol;
}

// ---------------------------------------------------------------------------
// Schedule search and rule checker

namespace detail {

// Blackout membership computed from the calendar definition directly.
inline bool sunday_blackout(const Instance& inst, Minutes t) {
  const Minutes day = t / kMinutesPerDay;
  const auto weekday = (inst.horizon.origin_weekday + day) % 7;
  return weekday == 6 && t - day * kMinutesPerDay < inst.regs.tau_s;
}

inline bool blackout_free(const Instance& inst, Minutes a, Minutes b) {
  for (Minutes t = a; t < b; ++t)
    if (sunday_blackout(inst, t)) return false;
  return true;
}

}  // namespace detail

// Earliest last service start over every placement of driving, waiting and
// breaks on a time grid of `granularity` minutes, or nullopt if none exists.
// Drive times, windows and regulation values must be multiples of the grid.
inline std::optional<Minutes> brute_force_schedule(std::span<const std::size_t> seq,
                                                   const Instance& inst, Minutes granularity = 1) {
  if (seq.empty()) return std::nullopt;
  const auto& regs = inst.regs;
  const Minutes g = granularity;
  struct Node {
    std::vector<TimeWindow> windows;
    Minutes drive_in;
  };
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& r = inst.requests[seq[i]];
    nodes.push_back({{r.pickup_window}, i == 0 ? 0 : inst.deadhead_minutes(seq[i - 1], seq[i])});
    nodes.push_back({r.delivery_windows, inst.direct_minutes(seq[i])});
  }
  const Minutes horizon = inst.horizon.end();
  // State: next node k, driving left on the leg into k, counter, contiguous rest.
  // State: time, next node k, driving left on the leg into k, counter,
  // contiguous rest, and whether it is a pre-placed service that skips the
  // dominance test.
  using State = std::tuple<Minutes, std::size_t, Minutes, Minutes, Minutes, bool>;
  std::priority_queue<State, std::vector<State>, std::greater<>> open;
  // Pareto sets of (counter, rest) already expanded per (k, drive left). An
  // earlier state dominates a later one because it can wait until then.
  std::map<std::pair<std::size_t, Minutes>, std::vector<std::pair<Minutes, Minutes>>> seen;
  auto can_serve = [&](std::size_t k, Minutes t) {
    const Minutes end = t + regs.sigma;
    if (end > horizon || !detail::blackout_free(inst, t, end)) return false;
    for (const auto& w : nodes[k].windows)
      if (w.start <= t && end <= w.end) return true;
    return false;
  };
  open.push({inst.requests[seq[0]].pickup_window.start, 0, 0, 0, 0, false});
  while (!open.empty()) {
    const auto [t, k, left, c, rest, placed] = open.top();
    open.pop();
    if (!placed) {
      auto& pareto = seen[{k, left}];
      bool dominated = false;
      for (const auto& [c2, r2] : pareto)
        if (c2 <= c && r2 >= rest) {
          dominated = true;
          break;
        }
      if (dominated) continue;
      std::erase_if(pareto, [&](const auto& p) { return c <= p.first && rest >= p.second; });
      pareto.push_back({c, rest});
    }

    if (left == 0 && can_serve(k, t)) {
      if (k + 1 == nodes.size()) return t;
      open.push({t + regs.sigma, k + 1, nodes[k + 1].drive_in, c, 0, false});
    }
    if (placed) continue;

    if (rest >= regs.tau_b) {
      // Fully rested: waiting no longer changes the state, so jump straight
      // to the first time the next action is possible.
      for (Minutes u = t + g; u + (left ? g : regs.sigma) <= horizon; u += g) {
        if (left == 0 && can_serve(k, u)) {
          open.push({u, k, 0, c, rest, true});
          break;
        }
        if (left >= g && detail::blackout_free(inst, u, u + g)) {
          open.push({u + g, k, left - g, c + g, 0, false});
          break;
        }
      }
    } else if (t + g <= horizon) {
      const Minutes r2 = std::min(rest + g, regs.tau_b);
      open.push({t + g, k, left, r2 >= regs.tau_b ? 0 : c, r2, false});
    }
    if (left >= g && c + g <= regs.tau_n && t + g <= horizon && detail::blackout_free(inst, t, t + g))
      open.push({t + g, k, left - g, c + g, 0, false});
  }
  return std::nullopt;
}

// Independent check of a schedule against the regulation, window, Sunday and
// horizon rules. Returns human-readable violations; empty means compliant.
inline std::vector<std::string> check_schedule_rules(const Instance& inst,
                                                     std::span<const std::size_t> seq,
                                                     const Schedule& s) {
  std::vector<std::string> out;
  const auto& regs = inst.regs;
  const std::size_t n = 2 * seq.size();
  if (s.nodes.size() != n || s.legs.size() != n) {
    out.push_back("node count");
    return out;
  }
  auto windows_of = [&](std::size_t k) -> std::vector<TimeWindow> {
    const auto& r = inst.requests[seq[k / 2]];
    if (k % 2 == 0) return {r.pickup_window};
    return r.delivery_windows;
  };
  auto drive_of = [&](std::size_t k) -> Minutes {
    if (k % 2 == 1) return inst.direct_minutes(seq[k / 2]);
    return k == 0 ? 0 : inst.deadhead_minutes(seq[k / 2 - 1], seq[k / 2]);
  };
  const auto start = inst.requests[seq[0]].pickup_window.start;
  Minutes cursor = start;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& node = s.nodes[k];
    const auto tag = "node " + std::to_string(k) + ": ";
    Minutes driven = 0;
    for (const auto& seg : s.legs[k]) {
      if (seg.start != cursor) out.push_back(tag + "segments do not tile");
      if (seg.end < seg.start) out.push_back(tag + "negative segment");
      if (seg.kind == Activity::Service) out.push_back(tag + "service inside a leg");
      if (seg.kind == Activity::Drive) driven += seg.end - seg.start;
      cursor = seg.end;
    }
    if (driven != drive_of(k)) out.push_back(tag + "drive time mismatch");
    if (cursor != node.service_start) out.push_back(tag + "leg does not end at service start");
    if (node.arrival > node.service_start) out.push_back(tag + "service before arrival");
    if (node.departure != node.service_start + regs.sigma) out.push_back(tag + "service length");
    bool inside = false;
    for (const auto& w : windows_of(k))
      if (w.start <= node.service_start && node.departure <= w.end) inside = true;
    if (!inside) out.push_back(tag + "service outside every window");
    cursor = node.departure;
  }
  if (cursor > inst.horizon.end()) out.push_back("schedule ends after the horizon");

  // Counter and Sunday rules over the whole timeline.
  Minutes counter = 0, rest = 0;
  for (const auto& seg : s.timeline()) {
    const bool active = seg.kind == Activity::Drive || seg.kind == Activity::Service;
    if (active && !detail::blackout_free(inst, seg.start, seg.end))
      out.push_back(std::string(to_string(seg.kind)) + " during a Sunday blackout at " +
                    std::to_string(seg.start));
    if (seg.kind == Activity::Drive) {
      counter += seg.length();
      rest = 0;
      if (counter > regs.tau_n)
        out.push_back("driving " + std::to_string(counter) + " min without a break at " +
                      std::to_string(seg.end));
    } else if (seg.kind == Activity::Service) {
      rest = 0;
    } else {
      rest += seg.length();
      if (rest >= regs.tau_b) counter = 0;
    }
  }
  // Every Sunday touched by the schedule holds a tau_s block free of driving
  // and service; time off tour counts as rest.
  if (!s.nodes.empty()) {
    const auto tl = s.timeline();
    const Minutes first = start, last = s.nodes.back().departure;
    for (Minutes day = first / kMinutesPerDay; day * kMinutesPerDay < last; ++day) {
      if ((inst.horizon.origin_weekday + day) % 7 != 6) continue;
      const Minutes d0 = day * kMinutesPerDay;
      const Minutes d1 = (day + 1) * kMinutesPerDay;
      Minutes free_run = 0, best_run = 0, t = d0;
      for (const auto& seg : tl) {
        if (seg.end <= d0 || seg.start >= d1) continue;
        const Minutes a = std::max(seg.start, d0), b = std::min(seg.end, d1);
        if (a > t) free_run += a - t;
        if (seg.kind == Activity::Drive || seg.kind == Activity::Service) {
          best_run = std::max(best_run, free_run);
          free_run = 0;
        } else {
          free_run += b - a;
        }
        t = b;
      }
      if (d1 > t) free_run += d1 - t;
      best_run = std::max(best_run, free_run);
      if (best_run < regs.tau_s)
        out.push_back("Sunday day " + std::to_string(day) + " lacks a " + std::to_string(regs.tau_s) +
                      "-minute rest");
    }
  }
  return out;
}

}  // namespace ftl
