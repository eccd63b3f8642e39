#pragma once

// Adaptive large neighbourhood search with simulated-annealing acceptance.

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftl/model.hpp"
#include "ftl/operators.hpp"
#include "ftl/solution.hpp"

namespace ftl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlnsConfig {
  long long max_iterations = 25'000;  // m
  long long segment_length = 200;     // n: weight update period
  std::size_t psi = 100;              // absolute removal cap
  double xi = 0.35;                   // relative removal cap
  double score_best = 33;
  double score_improve = 9;
  double score_accept = 13;
  double reaction = 0.1;
  double sa_start_gap = 0.05;
  double sa_start_accept = 0.5;
  double sa_end_fraction = 0.002;
  std::uint64_t seed = 1;
  double time_limit_s = 0;  // 0 = iterations only
  std::vector<RemovalOp> removal_ops = {RemovalOp::RandomRoute,  RemovalOp::StopRoute,
                                        RemovalOp::ShawDistanceTw, RemovalOp::ShawTw,
                                        RemovalOp::TimeShipment, RemovalOp::RandomShipment};
  std::vector<InsertionOp> insertion_ops = {{1}, {4}, {5}, {6}};
  OperatorParams operators;
  bool validate_accepted = false;  // run validate_solution on every accepted solution

  void validate() const {
    if (max_iterations <= 0) throw ConfigError("max_iterations must be > 0");
    if (segment_length <= 0) throw ConfigError("segment_length must be > 0");
    if (!(xi > 0 && xi <= 1)) throw ConfigError("xi must be in (0, 1]");
    if (!(reaction > 0 && reaction <= 1)) throw ConfigError("reaction must be in (0, 1]");
    if (score_best < 0 || score_improve < 0 || score_accept < 0)
      throw ConfigError("scores must be >= 0");
    if (!(sa_start_gap > 0)) throw ConfigError("sa_start_gap must be > 0");
    if (!(sa_start_accept > 0 && sa_start_accept < 1))
      throw ConfigError("sa_start_accept must be in (0, 1)");
    if (!(sa_end_fraction > 0 && sa_end_fraction <= 1))
      throw ConfigError("sa_end_fraction must be in (0, 1]");
    if (time_limit_s < 0) throw ConfigError("time_limit_s must be >= 0");
    if (removal_ops.empty()) throw ConfigError("no removal operators");
    if (insertion_ops.empty()) throw ConfigError("no insertion operators");
    for (const auto& op : insertion_ops)
      if (op.k < 1) throw ConfigError("insertion k must be >= 1");
    if (operators.shaw_exponent < 1) throw ConfigError("shaw_exponent must be >= 1");
    if (operators.threads < 0) throw ConfigError("threads must be >= 0");
    if (!(operators.noise >= 0)) throw ConfigError("noise must be >= 0");
    if (!(operators.noise_share >= 0 && operators.noise_share <= 1))
      throw ConfigError("noise_share must be in [0, 1]");
  }
};

inline AlnsConfig config_from_json(const nlohmann::json& j) {
  AlnsConfig c;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config field ") + key + ": " + e.what());
    }
  };
  get("max_iterations", c.max_iterations);
  get("segment_length", c.segment_length);
  get("psi", c.psi);
  get("xi", c.xi);
  get("score_best", c.score_best);
  get("score_improve", c.score_improve);
  get("score_accept", c.score_accept);
  get("reaction", c.reaction);
  get("sa_start_gap", c.sa_start_gap);
  get("sa_start_accept", c.sa_start_accept);
  get("sa_end_fraction", c.sa_end_fraction);
  get("seed", c.seed);
  get("time_limit_s", c.time_limit_s);
  get("shaw_exponent", c.operators.shaw_exponent);
  get("literal_regret", c.operators.literal_regret);
  get("vehicle_column", c.operators.vehicle_column);
  get("speculative_trips", c.operators.speculative_trips);
  get("noise", c.operators.noise);
  get("noise_share", c.operators.noise_share);
  get("threads", c.operators.threads);
  if (j.contains("removal_ops")) {
    c.removal_ops.clear();
    for (const auto& name : j["removal_ops"]) {
      if (!name.is_string()) throw ConfigError("removal_ops entries must be strings");
      auto op = removal_from_string(name.get<std::string>());
      if (!op) throw ConfigError("unknown removal operator " + name.get<std::string>());
      c.removal_ops.push_back(*op);
    }
  }
  if (j.contains("insertion_ops")) {
    c.insertion_ops.clear();
    for (const auto& name : j["insertion_ops"]) {
      if (!name.is_string()) throw ConfigError("insertion_ops entries must be strings");
      const auto s = name.get<std::string>();
      if (s == "greedy") {
        c.insertion_ops.push_back({1});
        continue;
      }
      const auto dash = s.find("-regret");
      if (dash == std::string::npos || dash + 7 != s.size()) throw ConfigError("unknown insertion operator " + s);
      try {
        c.insertion_ops.push_back({std::stoi(s.substr(0, dash))});
      } catch (const std::exception&) {
        throw ConfigError("unknown insertion operator " + s);
      }
    }
  }
  c.validate();
  return c;
}

inline nlohmann::ordered_json config_to_json(const AlnsConfig& c) {
  nlohmann::ordered_json j;
  j["max_iterations"] = c.max_iterations;
  j["segment_length"] = c.segment_length;
  j["psi"] = c.psi;
  j["xi"] = c.xi;
  j["score_best"] = c.score_best;
  j["score_improve"] = c.score_improve;
  j["score_accept"] = c.score_accept;
  j["reaction"] = c.reaction;
  j["sa_start_gap"] = c.sa_start_gap;
  j["sa_start_accept"] = c.sa_start_accept;
  j["sa_end_fraction"] = c.sa_end_fraction;
  j["seed"] = c.seed;
  j["time_limit_s"] = c.time_limit_s;
  j["shaw_exponent"] = c.operators.shaw_exponent;
  j["literal_regret"] = c.operators.literal_regret;
  j["vehicle_column"] = c.operators.vehicle_column;
  j["speculative_trips"] = c.operators.speculative_trips;
  j["noise"] = c.operators.noise;
  j["noise_share"] = c.operators.noise_share;
  j["threads"] = c.operators.threads;
  auto& rem = j["removal_ops"] = nlohmann::ordered_json::array();
  for (auto op : c.removal_ops) rem.push_back(to_string(op));
  auto& ins = j["insertion_ops"] = nlohmann::ordered_json::array();
  for (auto op : c.insertion_ops) ins.push_back(op.name());
  return j;
}

inline AlnsConfig read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  try {
    return config_from_json(nlohmann::json::parse(f));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
}

struct Temperature {
  double start = 1;
  double cooling = 1;  // per iteration
};

// Start temperature accepts a solution start_gap worse than the initial one
// with probability start_accept; cooling reaches end_fraction * start after
// max_iterations.
inline Temperature temperature_schedule(const AlnsConfig& c, double initial_cost) {
  Temperature t;
  t.start = -(c.sa_start_gap * initial_cost) / std::log(c.sa_start_accept);
  t.cooling = c.max_iterations > 0
                  ? std::pow(c.sa_end_fraction, 1.0 / static_cast<double>(c.max_iterations))
                  : 1.0;
  return t;
}

inline bool accept(double current, double candidate, double temperature, Rng& rng) {
  if (candidate < current) return true;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u < std::exp(-(candidate - current) / temperature);
}

struct OperatorStat {
  std::string name;
  double weight = 1;
  double segment_score = 0;
  long long segment_uses = 0;
  long long uses = 0;
  long long best_count = 0;
};

using OperatorStats = std::vector<OperatorStat>;

namespace detail {

inline void update_weights(OperatorStats& stats, double reaction) {
  for (auto& s : stats) {
    if (s.segment_uses > 0)
      s.weight = (1 - reaction) * s.weight +
                 reaction * (s.segment_score / static_cast<double>(s.segment_uses));
    s.weight = std::max(s.weight, 1e-6);
    s.segment_score = 0;
    s.segment_uses = 0;
  }
}

inline std::size_t choose(const OperatorStats& stats, Rng& rng) {
  std::vector<double> w;
  w.reserve(stats.size());
  for (const auto& s : stats) w.push_back(s.weight);
  return roulette(w, rng);
}

}  // namespace detail

struct TracePoint {
  long long iteration = 0;
  Money current = 0;
  Money best = 0;
  double temperature = 0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunReport {
  long long iterations = 0;
  Money initial_cost = 0;
  Money best_cost = 0;
  std::vector<TracePoint> trace;
  OperatorStats removal;
  OperatorStats insertion;
  double wall_seconds = 0;
};

struct RunResult {
  Solution best;
  RunReport report;
};

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The search loop. Does not check max_iterations > 0, so a zero-iteration
// run returns the initial solution.
class Alns {
 public:
  Alns(const Instance& inst, AlnsConfig cfg) : inst_(inst), cfg_(std::move(cfg)), rng_(cfg_.seed) {}

  RunResult solve() {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult out;
    auto& rep = out.report;
    for (auto op : cfg_.removal_ops) rep.removal.push_back({to_string(op)});
    for (auto op : cfg_.insertion_ops) rep.insertion.push_back({op.name()});

    Solution current = build_initial(inst_, cfg_.operators);
    check(current);
    Solution best = current;
    rep.initial_cost = current.cost.total;
    const auto temp = temperature_schedule(cfg_, to_units(current.cost.total));
    double T = temp.start;
    rep.trace.push_back({0, current.cost.total, best.cost.total, T});

    long long it = 0;
    const bool can_search = inst_.size() > 0 && current.cost.total > 0;
    for (; can_search && it < cfg_.max_iterations; ++it) {
      if (cfg_.time_limit_s > 0 && elapsed(t0) > cfg_.time_limit_s) break;
      const auto ri = detail::choose(rep.removal, rng_);
      const auto ii = detail::choose(rep.insertion, rng_);

      Solution cand = current;
      const auto q = removal_count(cand.planned(), cfg_.psi, cfg_.xi);
      std::vector<std::size_t> removed;
      if (q > 0) removed = apply_removal(cfg_.removal_ops[ri], inst_, cand, q, rng_, cfg_.operators);
      repair(inst_, cand, std::move(removed), cfg_.insertion_ops[ii], cfg_.operators, &rng_);

      double score = 0;
      const double cur_cost = to_units(current.cost.total);
      const double cand_cost = to_units(cand.cost.total);
      const bool new_best = cand.cost.total < best.cost.total;
      if (new_best || accept(cur_cost, cand_cost, T, rng_)) {
        check(cand);
        if (new_best) {
          score = cfg_.score_best;
          best = cand;
          ++rep.removal[ri].best_count;
          ++rep.insertion[ii].best_count;
        } else if (cand.cost.total < current.cost.total) {
          score = cfg_.score_improve;
        } else {
          score = cfg_.score_accept;
        }
        current = std::move(cand);
      }
      for (auto* s : {&rep.removal[ri], &rep.insertion[ii]}) {
        s->segment_score += score;
        ++s->segment_uses;
        ++s->uses;
      }
      T *= temp.cooling;
      if ((it + 1) % cfg_.segment_length == 0) {
        detail::update_weights(rep.removal, cfg_.reaction);
        detail::update_weights(rep.insertion, cfg_.reaction);
        rep.trace.push_back({it + 1, current.cost.total, best.cost.total, T});
      }
    }
    if (rep.trace.back().iteration != it) rep.trace.push_back({it, current.cost.total, best.cost.total, T});
    rep.iterations = it;
    rep.best_cost = best.cost.total;
    rep.wall_seconds = elapsed(t0);
    out.best = std::move(best);
    return out;
  }

 private:
  static double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  void check(const Solution& s) const {
    if (!cfg_.validate_accepted) return;
    const auto v = validate_solution(inst_, s);
    if (!v.empty()) throw ValidationFailure(std::string(to_string(v.front().kind)) + ": " + v.front().detail);
  }

  const Instance& inst_;
  AlnsConfig cfg_;
  Rng rng_;
};

inline RunResult run(const Instance& inst, const AlnsConfig& cfg) {
  cfg.validate();
  return Alns(inst, cfg).solve();
}

inline nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["iterations"] = r.iterations;
  j["initial_cost"] = to_units(r.initial_cost);
  j["best_cost"] = to_units(r.best_cost);
  j["wall_seconds"] = r.wall_seconds;
  auto stats = [](const OperatorStats& ss) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : ss)
      arr.push_back({{"name", s.name}, {"weight", s.weight}, {"uses", s.uses}, {"best_count", s.best_count}});
    return arr;
  };
  j["removal_operators"] = stats(r.removal);
  j["insertion_operators"] = stats(r.insertion);
  return j;
}

inline std::string trace_csv(const RunReport& r) {
  std::ostringstream os;
  os << "iteration,current_cost,best_cost,temperature\n";
  char buf[128];
  for (const auto& p : r.trace) {
    std::snprintf(buf, sizeof buf, "%lld,%.2f,%.2f,%.6g\n", p.iteration, to_units(p.current),
                  to_units(p.best), p.temperature);
    os << buf;
  }
  return os.str();
}

}  // namespace ftl
