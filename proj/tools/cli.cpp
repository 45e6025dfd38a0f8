#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdnd/config.hpp"
#include "sdnd/engine.hpp"
#include "sdnd/topology.hpp"

namespace sdnd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SDND_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // fall through to the built-in default
    }
  }
  return 1;
}

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// CLI11 consumes a reversed argument vector.
int parse(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err, bool& done) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  done = false;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    done = true;
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    done = true;
    return kValidation;
  }
  return kOk;
}

struct RunFlags {
  std::string config;
  std::string kind;
  int k = 0;
  std::uint64_t topo_seed = 0;
  int hosts_min = 0;
  int hosts_max = 0;
  std::string process;
  double rate = 0;
  double shape = 0;
  double scale = 0;
  std::string cdf;
  int hot_spot_pod = 0;
  Count hot_spot_rate = 0;
  Count controller_capacity = 0;
  Count switch_capacity = 0;
  Count a_max = 0;
  Count slot_us = 0;
  std::string scheme;
  std::string v;
  std::string devolution;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::int64_t stride = 0;
  bool diagnostics = false;
  bool no_hot_spot = false;
  std::string out_dir = ".";
  bool trace_decisions = false;

  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_run_flags(CLI::App& app, RunFlags& f) {
  auto& o = f.opts;
  o["config"] = app.add_option("--config", f.config, "JSON run configuration file");
  o["kind"] = app.add_option("--kind", f.kind, "fat-tree | three-tier | f10 | jellyfish");
  o["k"] = app.add_option("--k", f.k, "switch port count");
  o["topo-seed"] = app.add_option("--topo-seed", f.topo_seed, "Jellyfish wiring / placement seed");
  o["hosts-min"] = app.add_option("--hosts-min", f.hosts_min, "Jellyfish hosts per switch, lower");
  o["hosts-max"] = app.add_option("--hosts-max", f.hosts_max, "Jellyfish hosts per switch, upper");
  o["process"] = app.add_option("--process", f.process, "poisson | pareto | constant | trace");
  o["rate"] = app.add_option("--rate", f.rate, "per-slot rate (poisson, constant)");
  o["shape"] = app.add_option("--shape", f.shape, "pareto shape");
  o["scale"] = app.add_option("--scale", f.scale, "pareto scale");
  o["cdf"] = app.add_option("--cdf", f.cdf, "inter-arrival CDF file (trace mode)");
  o["hot-spot-pod"] = app.add_option("--hot-spot-pod", f.hot_spot_pod, "pod used as hot spot");
  o["no-hot-spot"] = app.add_flag("--no-hot-spot", f.no_hot_spot, "disable any hot spot");
  o["hot-spot-rate"] = app.add_option("--hot-spot-rate", f.hot_spot_rate, "hot-spot requests per slot");
  o["controller-capacity"] = app.add_option("--controller-capacity", f.controller_capacity);
  o["switch-capacity"] = app.add_option("--switch-capacity", f.switch_capacity);
  o["a-max"] = app.add_option("--a-max", f.a_max, "per-slot arrival cap");
  o["slot-us"] = app.add_option("--slot-us", f.slot_us, "slot length in microseconds");
  o["scheme"] = app.add_option("--scheme", f.scheme, "greedy | static | random | jsq");
  o["v"] = app.add_option("--v", f.v, "trade-off weight V (exact: 10, 1e4, 3/2)");
  o["devolution"] = app.add_option("--devolution", f.devolution, "on | off");
  o["horizon"] = app.add_option("--horizon", f.horizon, "number of slots");
  o["seed"] = app.add_option("--seed", f.seed, "traffic and run seed (default $SDND_SEED or 1)");
  o["stride"] = app.add_option("--stride", f.stride, "export every n-th slot");
  o["diagnostics"] = app.add_flag("--diagnostics", f.diagnostics, "log Lyapunov columns");
  o["out-dir"] = app.add_option("--out-dir", f.out_dir, "output directory");
  o["trace-decisions"] = app.add_flag("--trace-decisions", f.trace_decisions, "write decisions.csv");
}

RunConfig resolve(const RunFlags& f, std::vector<std::string>& errors) {
  RunConfig cfg;
  const std::uint64_t seed = default_seed();
  cfg.topology.seed = seed;
  cfg.traffic.seed = seed;
  cfg.run_seed = seed;
  bool horizon_given = false;

  if (f.given("config")) {
    std::ifstream in(f.config);
    if (!in) {
      errors.push_back("config: cannot open '" + f.config + "'");
    } else {
      try {
        json doc = json::parse(in);
        horizon_given = doc.is_object() && doc.contains("horizon");
        apply_config_json(doc, cfg, errors);
      } catch (const json::parse_error& e) {
        errors.push_back("config: " + std::string(e.what()));
      }
    }
  }

  auto guarded = [&](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back(std::string(field) + ": " + e.what());
    }
  };
  if (f.given("kind")) guarded("kind", [&] { cfg.topology.kind = parse_topology_kind(f.kind); });
  if (f.given("k")) cfg.topology.k = f.k;
  if (f.given("topo-seed")) cfg.topology.seed = f.topo_seed;
  if (f.given("hosts-min")) cfg.topology.hosts_min = f.hosts_min;
  if (f.given("hosts-max")) cfg.topology.hosts_max = f.hosts_max;

  auto& tr = cfg.traffic;
  if (f.given("process")) {
    if (f.process == "poisson") tr.base_process = PoissonProcess{5.88};
    else if (f.process == "pareto") tr.base_process = ParetoProcess{2, 2.94};
    else if (f.process == "constant") tr.base_process = ConstantProcess{6};
    else if (f.process == "trace") tr.base_process = TraceCdfProcess{};
    else errors.push_back("process: expected poisson, pareto, constant or trace");
  }
  if (f.given("rate")) {
    if (auto* p = std::get_if<PoissonProcess>(&tr.base_process)) p->rate = f.rate;
    else if (auto* c = std::get_if<ConstantProcess>(&tr.base_process)) c->rate = static_cast<Count>(f.rate);
    else errors.push_back("rate: only valid for poisson or constant processes");
  }
  if (f.given("shape") || f.given("scale")) {
    if (auto* p = std::get_if<ParetoProcess>(&tr.base_process)) {
      if (f.given("shape")) p->shape = f.shape;
      if (f.given("scale")) p->scale = f.scale;
    } else {
      errors.push_back("shape/scale: only valid for the pareto process");
    }
  }
  if (f.given("cdf")) {
    if (auto* p = std::get_if<TraceCdfProcess>(&tr.base_process)) p->path = f.cdf;
    else errors.push_back("cdf: only valid for the trace process");
  }
  if (f.given("hot-spot-pod")) cfg.hot_spot_pod = f.hot_spot_pod;
  if (f.no_hot_spot) {
    cfg.hot_spot_pod.reset();
    tr.hot_spot_switches.clear();
  }
  if (f.given("hot-spot-rate")) tr.hot_spot_rate = f.hot_spot_rate;
  if (f.given("controller-capacity")) tr.controller_capacity = f.controller_capacity;
  if (f.given("switch-capacity")) tr.switch_capacity = f.switch_capacity;
  if (f.given("a-max")) tr.a_max = f.a_max;
  if (f.given("slot-us")) tr.slot_length_us = f.slot_us;

  if (f.given("scheme")) guarded("scheme", [&] { cfg.scheme = parse_scheme(f.scheme); });
  if (f.given("v")) guarded("v", [&] { cfg.params.v = parse_rational(f.v); });
  if (f.given("devolution")) guarded("devolution", [&] { cfg.params.devolution = parse_devolution(f.devolution); });
  if (f.given("horizon")) {
    cfg.horizon_slots = f.horizon;
    horizon_given = true;
  }
  if (f.given("seed")) {
    tr.seed = f.seed;
    cfg.run_seed = f.seed;
  }
  if (f.given("stride")) cfg.stride = f.stride;
  if (f.diagnostics) cfg.diagnostics = true;
  if (f.trace_decisions) cfg.record_decisions = true;

  if (!horizon_given) {
    errors.emplace_back("horizon: required (--horizon or \"horizon\" in the config file)");
  }
  for (auto& e : validate(cfg)) {
    if (!horizon_given && e.rfind("horizon", 0) == 0) continue;
    errors.push_back(std::move(e));
  }
  return cfg;
}

int report(const std::vector<std::string>& errors, const std::string& cmd, std::ostream& err) {
  for (const auto& e : errors) err << cmd << ": " << e << '\n';
  return kValidation;
}

json run_document(const RunConfig& cfg, const RunResult& result) {
  return {{"config", config_to_json(cfg)},
          {"summary", summary_to_json(result.summary)},
          {"warnings", result.warnings}};
}

void write_decisions(const fs::path& path, const std::vector<Association>& decisions) {
  std::ofstream out(path);
  out << 't';
  std::size_t n = decisions.empty() ? 0 : decisions.front().size();
  for (std::size_t i = 0; i < n; ++i) out << ",s" << i;
  out << '\n';
  for (std::size_t t = 0; t < decisions.size(); ++t) {
    out << t;
    for (int target : decisions[t].targets()) {
      out << ',';
      if (target == Association::kLocal) out << 'L';
      else out << target;
    }
    out << '\n';
  }
}

std::string summary_line(const RunConfig& cfg, const RunSummary& s) {
  std::ostringstream out;
  out << "scheme=" << to_string(cfg.scheme) << " v=" << cfg.params.v.str()
      << " devolution=" << to_string(cfg.params.devolution) << " seed=" << cfg.traffic.seed
      << " slots=" << s.slots << " f_bar=" << to_decimal(s.f_bar) << " g_bar=" << to_decimal(s.g_bar)
      << " total_cost=" << to_decimal(s.total_cost) << " avg_backlog=" << to_decimal(s.average_backlog)
      << " alpha=" << to_decimal(s.alpha);
  return out.str();
}

int run_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
              const std::string& name, bool fixed_schemes) {
  CLI::App app("Run one summary row per (scheme, V, seed)", name);
  RunFlags f;
  add_run_flags(app, f);
  std::string grid;
  std::string schemes = "greedy";
  std::string seeds;
  unsigned jobs = 1;
  bool series = false;
  app.add_option("--v-grid", grid, "comma-separated V values")->required();
  auto* schemes_opt = app.add_option("--schemes", schemes, "comma-separated schemes");
  app.add_option("--seeds", seeds, "comma-separated seeds");
  app.add_option("--jobs", jobs, "concurrent runs");
  app.add_flag("--series", series, "also write each run's time series");
  bool done = false;
  int rc = parse(app, args, out, err, done);
  if (done) return rc;

  std::vector<std::string> errors;
  RunConfig base = resolve(f, errors);

  std::vector<Rational> vs;
  for (const auto& item : split(grid)) {
    try {
      Rational v = parse_rational(item);
      if (std::find(vs.begin(), vs.end(), v) != vs.end()) {
        errors.push_back("v-grid: duplicate value " + item);
      } else if (v < 0) {
        errors.push_back("v-grid: negative value " + item);
      } else {
        vs.push_back(v);
      }
    } catch (const std::exception& e) {
      errors.push_back(std::string("v-grid: ") + e.what());
    }
  }
  if (vs.empty()) errors.emplace_back("v-grid: no values");

  std::vector<Scheme> scheme_list;
  if (fixed_schemes) {
    if (schemes_opt->count()) errors.emplace_back("schemes: compare always runs all four schemes");
    scheme_list = {Scheme::Greedy, Scheme::Static, Scheme::Random, Scheme::JSQ};
  } else {
    for (const auto& item : split(schemes)) {
      try {
        Scheme s = parse_scheme(item);
        if (std::find(scheme_list.begin(), scheme_list.end(), s) != scheme_list.end()) {
          errors.push_back("schemes: duplicate " + item);
        }
        scheme_list.push_back(s);
      } catch (const std::exception& e) {
        errors.push_back(std::string("schemes: ") + e.what());
      }
    }
    if (scheme_list.empty()) errors.emplace_back("schemes: none given");
  }

  std::vector<std::uint64_t> seed_list;
  if (seeds.empty()) {
    seed_list.push_back(base.traffic.seed);
  } else {
    for (const auto& item : split(seeds)) {
      try {
        seed_list.push_back(std::stoull(item));
      } catch (const std::exception&) {
        errors.push_back("seeds: not an integer '" + item + "'");
      }
    }
  }
  if (jobs == 0) errors.emplace_back("jobs: must be at least 1");
  if (!errors.empty()) return report(errors, name, err);

  try {
    Scenario scenario = build_scenario(base.topology);
    std::vector<RunConfig> cfgs;
    for (Scheme scheme : scheme_list) {
      for (std::uint64_t seed : seed_list) {
        for (const auto& v : vs) {
          RunConfig c = base;
          c.scheme = scheme;
          c.params.v = v;
          c.traffic.seed = seed;
          c.run_seed = seed;
          c.record_decisions = false;
          cfgs.push_back(std::move(c));
        }
      }
    }
    auto results = run_many(cfgs, scenario, jobs);

    fs::create_directories(f.out_dir);
    std::ofstream csv(fs::path(f.out_dir) / (name + ".csv"));
    csv << "scheme,v,seed,devolution,f_bar,g_bar,total_cost,average_backlog,final_backlog,final_ctrl_var\n";
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      const auto& c = cfgs[i];
      const auto& s = results[i].summary;
      csv << to_string(c.scheme) << ',' << c.params.v.str() << ',' << c.traffic.seed << ','
          << to_string(c.params.devolution) << ',' << to_decimal(s.f_bar) << ','
          << to_decimal(s.g_bar) << ',' << to_decimal(s.total_cost) << ','
          << to_decimal(s.average_backlog) << ',' << s.final_backlog << ','
          << to_decimal(s.final_ctrl_var) << '\n';
      if (series) {
        fs::path dir = fs::path(f.out_dir) / "series";
        fs::create_directories(dir);
        std::ofstream ts(dir / (to_string(c.scheme) + "_v" + std::to_string(i) + "_seed" +
                                std::to_string(c.traffic.seed) + ".csv"));
        write_csv_header(ts, c.diagnostics);
        for (const auto& r : results[i].records) write_csv_row(ts, r, c.diagnostics);
      }
    }
    json meta = {{"config", config_to_json(base)},
                 {"alpha", to_decimal(scenario.cost.alpha(0))},
                 {"alpha_exact", scenario.cost.alpha(0).str()},
                 {"seeds", seed_list},
                 {"jobs", jobs}};
    for (Scheme s : scheme_list) meta["schemes"].push_back(to_string(s));
    for (const auto& v : vs) meta["v_grid"].push_back(v.str());
    std::ofstream(fs::path(f.out_dir) / (name + ".json")) << meta.dump() << '\n';
    for (const auto& w : results.front().warnings) err << name << ": warning: " << w << '\n';
    out << name << ": wrote " << cfgs.size() << " rows to "
        << (fs::path(f.out_dir) / (name + ".csv")).string() << '\n';
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

}  // namespace

int cmd_topo(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Generate a topology and report its controller placement", "topo");
  TopologySpec spec;
  std::string kind = "fat-tree";
  std::string out_path;
  bool print_edges = false;
  spec.seed = default_seed();
  app.add_option("--kind", kind, "fat-tree | three-tier | f10 | jellyfish");
  app.add_option("--k", spec.k, "switch port count")->required();
  app.add_option("--seed", spec.seed, "Jellyfish wiring / placement seed");
  app.add_option("--hosts-min", spec.hosts_min);
  app.add_option("--hosts-max", spec.hosts_max);
  app.add_option("--out", out_path, "write the edge list to this file");
  app.add_flag("--edges", print_edges, "print the edge list to standard output");
  bool done = false;
  int rc = parse(app, args, out, err, done);
  if (done) return rc;

  try {
    spec.kind = parse_topology_kind(kind);
  } catch (const std::exception& e) {
    return report({std::string("kind: ") + e.what()}, "topo", err);
  }
  if (spec.k < 4 || spec.k % 2 != 0) {
    return report({"k: must be even and at least 4, got " + std::to_string(spec.k)}, "topo", err);
  }
  try {
    Scenario sc = build_scenario(spec);
    if (!out_path.empty()) {
      std::ofstream file(out_path);
      if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
      write_edge_list(file, sc.topo);
    }
    if (print_edges) write_edge_list(out, sc.topo);
    out << "kind=" << to_string(spec.kind) << " k=" << spec.k << " seed=" << spec.seed
        << " switches=" << sc.topo.n_switches << " hosts=" << sc.topo.n_hosts
        << " controllers=" << sc.placement.controller_count()
        << " alpha=" << to_decimal(sc.cost.alpha(0)) << " alpha_exact=" << sc.cost.alpha(0).str()
        << '\n';
  } catch (const TopologyError& e) {
    err << "topo: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "topo: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

int cmd_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Simulate one configuration", "run");
  RunFlags f;
  add_run_flags(app, f);
  bool done = false;
  int rc = parse(app, args, out, err, done);
  if (done) return rc;

  std::vector<std::string> errors;
  RunConfig cfg = resolve(f, errors);
  if (!errors.empty()) return report(errors, "run", err);

  try {
    Scenario scenario = build_scenario(cfg.topology);
    fs::create_directories(f.out_dir);
    std::ofstream csv(fs::path(f.out_dir) / "metrics.csv");
    write_csv_header(csv, cfg.diagnostics);
    RunResult result = run(cfg, scenario, [&](const MetricsRecord& r) {
      write_csv_row(csv, r, cfg.diagnostics);
    });
    std::ofstream(fs::path(f.out_dir) / "summary.json") << run_document(cfg, result).dump() << '\n';
    if (cfg.record_decisions) write_decisions(fs::path(f.out_dir) / "decisions.csv", result.decisions);
    for (const auto& w : result.warnings) err << "run: warning: " << w << '\n';
    out << summary_line(cfg, result.summary) << '\n';
  } catch (const std::invalid_argument& e) {
    err << "run: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "run: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

int cmd_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_sweep(args, out, err, "sweep", false);
}

int cmd_compare(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_sweep(args, out, err, "compare", true);
}

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  static const char* usage =
      "usage: sdnd <topo|run|sweep|compare> [options]\n"
      "       sdnd <command> --help\n";
  if (argv.empty()) {
    err << usage;
    return kValidation;
  }
  const std::string& cmd = argv.front();
  std::vector<std::string> rest(argv.begin() + 1, argv.end());
  if (cmd == "topo") return cmd_topo(rest, out, err);
  if (cmd == "run") return cmd_run(rest, out, err);
  if (cmd == "sweep") return cmd_sweep(rest, out, err);
  if (cmd == "compare") return cmd_compare(rest, out, err);
  if (cmd == "--help" || cmd == "-h") {
    out << usage;
    return kOk;
  }
  err << "sdnd: unknown command '" << cmd << "'\n" << usage;
  return kValidation;
}

}  // namespace sdnd::cli
