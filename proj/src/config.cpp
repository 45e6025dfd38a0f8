#include "sdnd/config.hpp"

#include <set>

namespace sdnd {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) error("", "must be an object");
  }

  ~Reader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) error(key, "unknown key");
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.is_object() && obj_.contains(key) && !obj_.at(key).is_null();
  }

  const json& at(const std::string& key) { return obj_.at(key); }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      error(key, "wrong type");
    }
  }

  void get_rational(const std::string& key, Rational& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    try {
      if (v.is_string()) {
        out = parse_rational(v.get<std::string>());
      } else if (v.is_number_integer()) {
        out = Rational(v.get<std::int64_t>());
      } else if (v.is_number()) {
        out = parse_rational(v.dump());
      } else {
        error(key, "expected a number or rational string");
      }
    } catch (const std::exception& e) {
      error(key, e.what());
    }
  }

  template <typename Parse, typename T>
  void get_enum(const std::string& key, T& out, Parse parse) {
    if (!has(key)) return;
    try {
      out = parse(obj_.at(key).get<std::string>());
    } catch (const std::exception& e) {
      error(key, e.what());
    }
  }

  void error(const std::string& key, const std::string& what) {
    std::string where = path_;
    if (!key.empty()) where += (where.empty() ? "" : ".") + key;
    errors_.push_back(where + ": " + what);
  }

  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void read_process(const json& doc, ArrivalProcess& out, std::vector<std::string>& errors) {
  Reader r(doc, "traffic.process", errors);
  std::string type;
  r.get("type", type);
  if (type == "poisson") {
    PoissonProcess p;
    if (auto* cur = std::get_if<PoissonProcess>(&out)) p = *cur;
    r.get("rate", p.rate);
    out = p;
  } else if (type == "pareto") {
    ParetoProcess p;
    if (auto* cur = std::get_if<ParetoProcess>(&out)) p = *cur;
    r.get("shape", p.shape);
    r.get("scale", p.scale);
    out = p;
  } else if (type == "constant") {
    ConstantProcess p;
    if (auto* cur = std::get_if<ConstantProcess>(&out)) p = *cur;
    r.get("rate", p.rate);
    out = p;
  } else if (type == "trace") {
    TraceCdfProcess p;
    r.get("path", p.path);
    out = p;
  } else {
    r.error("type", "expected poisson, pareto, constant or trace");
  }
}

json process_to_json(const ArrivalProcess& process) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PoissonProcess>) {
          return {{"type", "poisson"}, {"rate", p.rate}};
        } else if constexpr (std::is_same_v<P, ParetoProcess>) {
          return {{"type", "pareto"}, {"shape", p.shape}, {"scale", p.scale}};
        } else if constexpr (std::is_same_v<P, ConstantProcess>) {
          return {{"type", "constant"}, {"rate", p.rate}};
        } else {
          return {{"type", "trace"}, {"path", p.path}};
        }
      },
      process);
}

}  // namespace

void apply_config_json(const json& doc, RunConfig& cfg, std::vector<std::string>& errors) {
  Reader root(doc, "", errors);
  if (!doc.is_object()) return;
  if (root.has("topology")) {
    Reader r(root.at("topology"), "topology", errors);
    r.get_enum("kind", cfg.topology.kind, parse_topology_kind);
    r.get("k", cfg.topology.k);
    r.get("seed", cfg.topology.seed);
    r.get("hosts_min", cfg.topology.hosts_min);
    r.get("hosts_max", cfg.topology.hosts_max);
  }
  if (root.has("traffic")) {
    auto& tr = cfg.traffic;
    Reader r(root.at("traffic"), "traffic", errors);
    r.get("slot_length_us", tr.slot_length_us);
    if (r.has("process")) read_process(r.at("process"), tr.base_process, errors);
    if (r.has("hot_spot_pod")) {
      int pod = 0;
      r.get("hot_spot_pod", pod);
      cfg.hot_spot_pod = pod;
    }
    r.get("hot_spot_switches", tr.hot_spot_switches);
    r.get("hot_spot_rate", tr.hot_spot_rate);
    r.get("controller_capacity", tr.controller_capacity);
    r.get("switch_capacity", tr.switch_capacity);
    r.get("a_max", tr.a_max);
    r.get("b_max", tr.b_max);
    r.get("u_max", tr.u_max);
    r.get("seed", tr.seed);
  }
  root.get_enum("scheme", cfg.scheme, parse_scheme);
  root.get_rational("v", cfg.params.v);
  root.get_enum("devolution", cfg.params.devolution, parse_devolution);
  root.get("horizon", cfg.horizon_slots);
  root.get("run_seed", cfg.run_seed);
  root.get("stride", cfg.stride);
  root.get("diagnostics", cfg.diagnostics);
  root.get("record_decisions", cfg.record_decisions);
}

json config_to_json(const RunConfig& cfg) {
  const auto& tr = cfg.traffic;
  json traffic = {
      {"slot_length_us", tr.slot_length_us},
      {"process", process_to_json(tr.base_process)},
      {"hot_spot_pod", cfg.hot_spot_pod ? json(*cfg.hot_spot_pod) : json(nullptr)},
      {"hot_spot_switches", tr.hot_spot_switches},
      {"hot_spot_rate", tr.hot_spot_rate},
      {"controller_capacity", tr.controller_capacity},
      {"switch_capacity", tr.switch_capacity},
      {"a_max", tr.a_max},
      {"b_max", tr.b_max},
      {"u_max", tr.u_max},
      {"seed", tr.seed},
  };
  return {
      {"topology",
       {{"kind", to_string(cfg.topology.kind)},
        {"k", cfg.topology.k},
        {"seed", cfg.topology.seed},
        {"hosts_min", cfg.topology.hosts_min},
        {"hosts_max", cfg.topology.hosts_max}}},
      {"traffic", std::move(traffic)},
      {"scheme", to_string(cfg.scheme)},
      {"v", cfg.params.v.str()},
      {"devolution", to_string(cfg.params.devolution)},
      {"horizon", cfg.horizon_slots},
      {"run_seed", cfg.run_seed},
      {"stride", effective_stride(cfg)},
      {"diagnostics", cfg.diagnostics},
      {"record_decisions", cfg.record_decisions},
  };
}

json summary_to_json(const RunSummary& s) {
  return {
      {"slots", s.slots},
      {"f_bar", to_decimal(s.f_bar)},
      {"g_bar", to_decimal(s.g_bar)},
      {"total_cost", to_decimal(s.total_cost)},
      {"average_backlog", to_decimal(s.average_backlog)},
      {"final_backlog", s.final_backlog},
      {"final_ctrl_var", to_decimal(s.final_ctrl_var)},
      {"alpha", to_decimal(s.alpha)},
      {"alpha_exact", s.alpha.str()},
      {"min_cost_rate_variance", to_decimal(s.min_cost_rate_variance)},
      {"switches", s.n_switches},
      {"controllers", s.n_controllers},
  };
}

}  // namespace sdnd
