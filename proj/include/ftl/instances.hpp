#pragma once

// Gehring & Homberger benchmark reader, the benchmark-to-FTL transformation
// and the native JSON instance format.

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftl/model.hpp"

namespace ftl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GhNode {
  int id = 0;
  double x = 0;
  double y = 0;
  double demand = 0;
  double tw_start = 0;
  double tw_end = 0;
  double service = 0;
};

struct GhInstance {
  std::string name;
  std::vector<GhNode> nodes;  // nodes[0] is the depot
};

// Reads the whitespace-column layout: a name line, a VEHICLE block and a
// CUSTOMER table of seven numeric columns.
inline GhInstance parse_gh(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  GhInstance gh;
  bool in_table = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (gh.name.empty() && !in_table) {
      gh.name = first;
      continue;
    }
    if (!in_table) {
      if (first == "CUST" || first == "cust") in_table = true;
      continue;
    }
    std::istringstream row(line);
    double v[7];
    for (int i = 0; i < 7; ++i) {
      std::string tok;
      if (!(row >> tok)) throw ParseError(lineno, "expected 7 columns");
      try {
        std::size_t used = 0;
        v[i] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(lineno, "non-numeric value '" + tok + "'");
      }
    }
    std::string extra;
    if (row >> extra) throw ParseError(lineno, "unexpected trailing value '" + extra + "'");
    gh.nodes.push_back({static_cast<int>(v[0]), v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  if (gh.name.empty()) throw ParseError(1, "empty file");
  if (!in_table) throw ParseError(lineno, "missing CUSTOMER table");
  if (gh.nodes.empty() || gh.nodes.front().id != 0)
    throw ParseError(lineno, "node 0 (depot) missing");
  return gh;
}

inline GhInstance read_gh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_gh(ss.str());
}

struct TransformConfig {
  double factor = 6.0;
  Minutes day_open = 360;
  Minutes day_close = 1080;
  double mu_per_day_km = 250.0;
  int slack_days = 7;
  int origin_weekday = 0;
  CostModel cost;
  RegParams regs;

  void validate() const {
    if (day_open >= day_close) throw TransformError("day_open must be before day_close");
    if (factor < 1) throw TransformError("factor must be >= 1");
    if (slack_days < 0) throw TransformError("slack_days must be >= 0");
  }
};

// Scaled Euclidean distance rounded to whole km.
inline Distance scaled_euclid(double x1, double y1, double x2, double y2, double factor) {
  const double km = std::round(factor * std::hypot(x1 - x2, y1 - y2));
  return distance_from_km(km);
}

// Pairs node i with node N/2 + i, scales distances and pickup ready times,
// opens every site daily between day_open and day_close.
inline Instance transform(const GhInstance& gh, const TransformConfig& cfg = {}) {
  cfg.validate();
  if (gh.nodes.empty()) throw TransformError("no depot");
  const std::size_t n = gh.nodes.size() - 1;
  if (n % 2 != 0) throw TransformError("odd number of non-depot nodes: " + std::to_string(n));
  const std::size_t half = n / 2;

  Instance inst;
  inst.cost = cfg.cost;
  inst.regs = cfg.regs;
  inst.locations.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& node = gh.nodes[i];
    inst.locations.push_back({std::to_string(node.id), node.x, node.y, {}});
  }
  inst.matrix = TravelMatrix(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& p = gh.nodes[a + 1];
      const auto& q = gh.nodes[b + 1];
      const Distance d = a == b ? 0 : scaled_euclid(p.x, p.y, q.x, q.y, cfg.factor);
      inst.matrix.set(a, b, d, cfg.regs.travel_minutes(d));
    }

  std::vector<Minutes> ready(half);
  std::set<Minutes> pickup_days;
  Minutes last_day = 0;
  for (std::size_t i = 0; i < half; ++i) {
    ready[i] = static_cast<Minutes>(std::floor(cfg.factor * gh.nodes[i + 1].tw_start /
                                               static_cast<double>(kMinutesPerDay)));
    pickup_days.insert(ready[i]);
    last_day = std::max(last_day, ready[i]);
  }
  inst.horizon = {cfg.origin_weekday, static_cast<int>(last_day + 1 + cfg.slack_days)};

  for (std::size_t i = 0; i < half; ++i) {
    Request r;
    r.id = std::to_string(i + 1);
    r.origin = i;
    r.destination = half + i;
    const Minutes day0 = ready[i] * kMinutesPerDay;
    r.pickup_window = {day0 + cfg.day_open, day0 + cfg.day_close};
    for (Minutes d = ready[i]; d < inst.horizon.days; ++d)
      r.delivery_windows.push_back(
          {d * kMinutesPerDay + cfg.day_open, d * kMinutesPerDay + cfg.day_close});
    r.sm_price = sm_price(inst.cost, inst.matrix.distance(r.origin, r.destination), r.id);
    inst.requests.push_back(std::move(r));
  }
  inst.mu = distance_from_km(cfg.mu_per_day_km * static_cast<double>(pickup_days.size()));
  return inst;
}

// ---------------------------------------------------------------------------
// Native JSON format

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline const json& at(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing field");
  return *it;
}

inline double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  return j.get<double>();
}

inline Minutes integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) {
    if (j.is_number_float() && std::floor(j.get<double>()) == j.get<double>())
      return static_cast<Minutes>(j.get<double>());
    throw SchemaError(ptr, "expected an integer");
  }
  return j.get<Minutes>();
}

inline std::string id_string(const json& j, const std::string& ptr) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SchemaError(ptr, "expected a string or integer id");
}

inline TimeWindow window(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(ptr, "expected [start, end]");
  TimeWindow w{integer(j[0], ptr + "/0"), integer(j[1], ptr + "/1")};
  if (w.start > w.end) throw SchemaError(ptr, "start after end");
  return w;
}

inline std::vector<std::vector<double>> square(const json& j, const std::string& ptr,
                                               std::size_t n) {
  if (!j.is_array() || j.size() != n) throw SchemaError(ptr, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<double>> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto rp = ptr + "/" + std::to_string(a);
    if (!j[a].is_array() || j[a].size() != n)
      throw SchemaError(rp, "expected " + std::to_string(n) + " columns");
    for (std::size_t b = 0; b < n; ++b) out[a].push_back(number(j[a][b], rp + "/" + std::to_string(b)));
  }
  return out;
}

}  // namespace detail

inline CostModel cost_from_json(const nlohmann::json& j, const std::string& ptr) {
  using namespace detail;
  CostModel c;
  c.kappa = Rate::from_per_km(number(at(j, ptr, "kappa"), ptr + "/kappa"));
  if (j.contains("sm_tiers")) {
    c.sm_tiers.clear();
    const auto& tiers = j["sm_tiers"];
    if (!tiers.is_array()) throw SchemaError(ptr + "/sm_tiers", "expected an array");
    for (std::size_t i = 0; i < tiers.size(); ++i) {
      const auto tp = ptr + "/sm_tiers/" + std::to_string(i);
      SmTier t;
      const auto& ub = at(tiers[i], tp, "upper_km");
      if (!ub.is_null()) t.upper = distance_from_km(number(ub, tp + "/upper_km"));
      t.rate = Rate::from_per_km(number(at(tiers[i], tp, "rate"), tp + "/rate"));
      c.sm_tiers.push_back(t);
    }
  }
  if (j.contains("explicit_sm_prices")) {
    const auto& m = j["explicit_sm_prices"];
    if (!m.is_object()) throw SchemaError(ptr + "/explicit_sm_prices", "expected an object");
    for (auto it = m.begin(); it != m.end(); ++it)
      c.explicit_sm_prices[it.key()] =
          money_from_units(number(it.value(), ptr + "/explicit_sm_prices/" + it.key()));
  }
  try {
    c.validate();
  } catch (const ModelError& e) {
    throw SchemaError(ptr, e.what());
  }
  return c;
}

inline RegParams regs_from_json(const nlohmann::json& j, const std::string& ptr) {
  using namespace detail;
  RegParams r;
  r.tau_n = integer(at(j, ptr, "tau_n"), ptr + "/tau_n");
  r.tau_b = integer(at(j, ptr, "tau_b"), ptr + "/tau_b");
  r.tau_s = integer(at(j, ptr, "tau_s"), ptr + "/tau_s");
  r.sigma = integer(at(j, ptr, "sigma"), ptr + "/sigma");
  r.nu = number(at(j, ptr, "nu"), ptr + "/nu");
  try {
    r.validate();
  } catch (const ModelError& e) {
    throw SchemaError(ptr, e.what());
  }
  return r;
}

inline Instance instance_from_json(const nlohmann::json& j) {
  using namespace detail;
  if (!j.is_object()) throw SchemaError("", "expected an object");
  Instance inst;
  inst.regs = regs_from_json(at(j, "", "regs"), "/regs");
  inst.cost = cost_from_json(at(j, "", "cost"), "/cost");
  inst.mu = distance_from_km(number(at(j, "", "mu"), "/mu"));

  const auto& hz = at(j, "", "horizon");
  inst.horizon.origin_weekday =
      static_cast<int>(integer(at(hz, "/horizon", "origin_weekday"), "/horizon/origin_weekday"));
  inst.horizon.days = static_cast<int>(integer(at(hz, "/horizon", "days"), "/horizon/days"));

  const auto& locs = at(j, "", "locations");
  if (!locs.is_array()) throw SchemaError("/locations", "expected an array");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const auto lp = "/locations/" + std::to_string(i);
    Location l;
    l.id = id_string(at(locs[i], lp, "id"), lp + "/id");
    if (locs[i].contains("x")) l.x = number(locs[i]["x"], lp + "/x");
    if (locs[i].contains("y")) l.y = number(locs[i]["y"], lp + "/y");
    if (locs[i].contains("name")) {
      if (!locs[i]["name"].is_string()) throw SchemaError(lp + "/name", "expected a string");
      l.name = locs[i]["name"].get<std::string>();
    }
    if (!index.emplace(l.id, i).second) throw SchemaError(lp + "/id", "duplicate location id");
    inst.locations.push_back(std::move(l));
  }

  const std::size_t n = inst.locations.size();
  const auto& mx = at(j, "", "matrix");
  inst.matrix = TravelMatrix(n);
  auto euclidean = [&](double factor) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto& p = inst.locations[a];
      if (!p.x || !p.y)
        throw SchemaError("/locations/" + std::to_string(a), "euclidean matrix needs x and y");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto& p = inst.locations[a];
        const auto& q = inst.locations[b];
        const Distance d = a == b ? 0 : scaled_euclid(*p.x, *p.y, *q.x, *q.y, factor);
        inst.matrix.set(a, b, d, inst.regs.travel_minutes(d));
      }
  };
  if (mx.is_string()) {
    if (mx.get<std::string>() != "euclidean") throw SchemaError("/matrix", "unknown directive");
    euclidean(1.0);
  } else if (mx.is_object() && mx.contains("euclidean")) {
    const auto& e = mx["euclidean"];
    double factor = 1.0;
    if (e.is_object() && e.contains("factor")) factor = number(e["factor"], "/matrix/euclidean/factor");
    euclidean(factor);
  } else {
    const auto dist = square(at(mx, "/matrix", "distance"), "/matrix/distance", n);
    std::vector<std::vector<double>> time;
    if (mx.contains("time")) time = square(mx["time"], "/matrix/time", n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Distance d = distance_from_km(dist[a][b]);
        const Minutes t = time.empty() ? inst.regs.travel_minutes(d)
                                       : static_cast<Minutes>(std::llround(time[a][b]));
        inst.matrix.set(a, b, d, t);
      }
  }

  const auto& reqs = at(j, "", "requests");
  if (!reqs.is_array()) throw SchemaError("/requests", "expected an array");
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const auto rp = "/requests/" + std::to_string(i);
    const auto& rj = reqs[i];
    Request r;
    r.id = id_string(at(rj, rp, "id"), rp + "/id");
    auto loc = [&](const char* key) {
      const auto id = id_string(at(rj, rp, key), rp + "/" + key);
      auto it = index.find(id);
      if (it == index.end()) throw SchemaError(rp + "/" + key, "unknown location '" + id + "'");
      return it->second;
    };
    r.origin = loc("origin");
    r.destination = loc("destination");
    r.pickup_window = window(at(rj, rp, "pickup_window"), rp + "/pickup_window");
    const auto& dw = at(rj, rp, "delivery_windows");
    if (!dw.is_array() || dw.empty()) throw SchemaError(rp + "/delivery_windows", "expected a nonempty array");
    for (std::size_t k = 0; k < dw.size(); ++k)
      r.delivery_windows.push_back(window(dw[k], rp + "/delivery_windows/" + std::to_string(k)));
    if (rj.contains("sm_price"))
      r.sm_price = money_from_units(number(rj["sm_price"], rp + "/sm_price"));
    else
      r.sm_price = sm_price(inst.cost, inst.matrix.distance(r.origin, r.destination), r.id);
    inst.requests.push_back(std::move(r));
  }

  try {
    inst.validate();
  } catch (const ModelError& e) {
    throw SchemaError("", e.what());
  }
  return inst;
}

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json locs = ordered_json::array();
  for (const auto& l : inst.locations) {
    ordered_json lj;
    lj["id"] = l.id;
    if (l.x) lj["x"] = *l.x;
    if (l.y) lj["y"] = *l.y;
    if (!l.name.empty()) lj["name"] = l.name;
    locs.push_back(std::move(lj));
  }
  j["locations"] = std::move(locs);

  const std::size_t n = inst.matrix.size();
  ordered_json dist = ordered_json::array(), time = ordered_json::array();
  for (std::size_t a = 0; a < n; ++a) {
    ordered_json dr = ordered_json::array(), tr = ordered_json::array();
    for (std::size_t b = 0; b < n; ++b) {
      dr.push_back(to_km(inst.matrix.distance(a, b)));
      tr.push_back(inst.matrix.time(a, b));
    }
    dist.push_back(std::move(dr));
    time.push_back(std::move(tr));
  }
  j["matrix"] = {{"distance", std::move(dist)}, {"time", std::move(time)}};

  ordered_json reqs = ordered_json::array();
  for (const auto& r : inst.requests) {
    ordered_json rj;
    rj["id"] = r.id;
    rj["origin"] = inst.locations[r.origin].id;
    rj["destination"] = inst.locations[r.destination].id;
    rj["pickup_window"] = {r.pickup_window.start, r.pickup_window.end};
    ordered_json dw = ordered_json::array();
    for (const auto& w : r.delivery_windows) dw.push_back({w.start, w.end});
    rj["delivery_windows"] = std::move(dw);
    rj["sm_price"] = to_units(r.sm_price);
    reqs.push_back(std::move(rj));
  }
  j["requests"] = std::move(reqs);

  ordered_json tiers = ordered_json::array();
  for (const auto& t : inst.cost.sm_tiers) {
    ordered_json tj;
    tj["upper_km"] = t.upper ? ordered_json(to_km(*t.upper)) : ordered_json(nullptr);
    tj["rate"] = t.rate.per_km();
    tiers.push_back(std::move(tj));
  }
  ordered_json cost;
  cost["kappa"] = inst.cost.kappa.per_km();
  cost["sm_tiers"] = std::move(tiers);
  if (!inst.cost.explicit_sm_prices.empty()) {
    ordered_json ex = ordered_json::object();
    for (const auto& [id, p] : inst.cost.explicit_sm_prices) ex[id] = to_units(p);
    cost["explicit_sm_prices"] = std::move(ex);
  }
  j["cost"] = std::move(cost);
  j["regs"] = {{"tau_n", inst.regs.tau_n},
               {"tau_b", inst.regs.tau_b},
               {"tau_s", inst.regs.tau_s},
               {"sigma", inst.regs.sigma},
               {"nu", inst.regs.nu}};
  j["mu"] = to_km(inst.mu);
  j["horizon"] = {{"origin_weekday", inst.horizon.origin_weekday}, {"days", inst.horizon.days}};
  return j;
}

inline std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(1) + "\n"; }

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline Instance read_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << dump_instance(inst);
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace ftl
