#include "sdnd/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sdnd {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Greedy: return "greedy";
    case Scheme::Static: return "static";
    case Scheme::Random: return "random";
    case Scheme::JSQ: return "jsq";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "greedy") return Scheme::Greedy;
  if (name == "static") return Scheme::Static;
  if (name == "random") return Scheme::Random;
  if (name == "jsq") return Scheme::JSQ;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(Devolution d) { return d == Devolution::On ? "on" : "off"; }

Devolution parse_devolution(const std::string& name) {
  if (name == "on") return Devolution::On;
  if (name == "off") return Devolution::Off;
  throw std::invalid_argument("devolution must be 'on' or 'off', got '" + name + "'");
}

Scenario build_scenario(const TopologySpec& spec) {
  Scenario sc;
  switch (spec.kind) {
    case TopologyKind::FatTree: sc.topo = gen_fat_tree(spec.k); break;
    case TopologyKind::ThreeTier: sc.topo = gen_three_tier(spec.k); break;
    case TopologyKind::F10: sc.topo = gen_f10(spec.k); break;
    case TopologyKind::Jellyfish:
      sc.topo = gen_jellyfish(spec.k, spec.hosts_min, spec.hosts_max, spec.seed);
      break;
  }
  sc.placement = place_controllers(sc.topo, spec.seed);
  HopMatrix w = hop_matrix(sc.topo, sc.placement);
  Rational alpha = derive_alpha(w);
  sc.cost = CostModel<Rational>::uniform(std::move(w), alpha);
  return sc;
}

std::shared_ptr<const Scenario> share_scenario(const TopologySpec& spec) {
  return std::make_shared<const Scenario>(build_scenario(spec));
}

std::vector<int> hot_spot_switches(const Topology& topo, int pod) {
  if (topo.kind != TopologyKind::Jellyfish) {
    if (pod < 0 || pod >= static_cast<int>(topo.pods.size())) {
      throw std::invalid_argument("hot-spot pod " + std::to_string(pod) + " out of range");
    }
    return topo.pods[pod];
  }
  const int block = topo.n_switches / topo.port_count;
  if (pod < 0 || (pod + 1) * block > topo.n_switches) {
    throw std::invalid_argument("hot-spot pod " + std::to_string(pod) + " out of range");
  }
  std::vector<int> out(block);
  for (int s = 0; s < block; ++s) out[s] = pod * block + s;
  return out;
}

TrafficConfig resolve_traffic(const RunConfig& cfg, const Scenario& scenario) {
  TrafficConfig traffic = cfg.traffic;
  if (cfg.hot_spot_pod) {
    for (int s : hot_spot_switches(scenario.topo, *cfg.hot_spot_pod)) {
      if (std::find(traffic.hot_spot_switches.begin(), traffic.hot_spot_switches.end(), s) ==
          traffic.hot_spot_switches.end()) {
        traffic.hot_spot_switches.push_back(s);
      }
    }
    std::sort(traffic.hot_spot_switches.begin(), traffic.hot_spot_switches.end());
  }
  return traffic;
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> errors;
  const auto& tr = cfg.traffic;
  if (cfg.horizon_slots < 1) errors.emplace_back("horizon: must be at least 1 slot");
  if (cfg.topology.k < 4 || cfg.topology.k % 2 != 0) {
    errors.emplace_back("topology.k: must be even and at least 4");
  }
  if (cfg.params.v < 0) errors.emplace_back("v: must be nonnegative");
  if (cfg.stride < 0) errors.emplace_back("stride: must be nonnegative");
  if (tr.slot_length_us < 1) errors.emplace_back("traffic.slot_length_us: must be positive");
  if (tr.controller_capacity < 0) errors.emplace_back("traffic.controller_capacity: must be nonnegative");
  if (tr.switch_capacity < 0) errors.emplace_back("traffic.switch_capacity: must be nonnegative");
  if (tr.hot_spot_rate < 0) errors.emplace_back("traffic.hot_spot_rate: must be nonnegative");
  if (tr.a_max < 0 || tr.b_max < 0 || tr.u_max < 0) {
    errors.emplace_back("traffic caps a_max/b_max/u_max: must be nonnegative");
  }
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PoissonProcess>) {
          if (!(p.rate >= 0)) errors.emplace_back("traffic.process.rate: must be nonnegative");
        } else if constexpr (std::is_same_v<P, ConstantProcess>) {
          if (p.rate < 0) errors.emplace_back("traffic.process.rate: must be nonnegative");
        } else if constexpr (std::is_same_v<P, ParetoProcess>) {
          if (!(p.shape > 0) || !(p.scale > 0)) {
            errors.emplace_back("traffic.process: pareto shape and scale must be positive");
          }
        } else {
          if (p.path.empty()) errors.emplace_back("traffic.process.path: required for trace mode");
        }
      },
      tr.base_process);
  if (cfg.topology.kind == TopologyKind::Jellyfish &&
      (cfg.topology.hosts_min < 1 || cfg.topology.hosts_max < cfg.topology.hosts_min)) {
    errors.emplace_back("topology.hosts_min/hosts_max: invalid range");
  }
  return errors;
}

std::int64_t effective_stride(const RunConfig& cfg) {
  if (cfg.stride > 0) return cfg.stride;
  return cfg.horizon_slots <= 10'000 ? 1 : 10;
}

DecisionKernel make_kernel(Scheme scheme, const CostModel<Rational>& cost,
                           const SchedulerParams<Rational>& params, std::uint64_t run_seed) {
  switch (scheme) {
    case Scheme::Greedy: {
      auto kernel = std::make_shared<const PricedKernel<Rational>>(cost, params);
      return [kernel](const QueueState& q, const CountVector&) { return kernel->decide(q); };
    }
    case Scheme::Static: {
      Association fixed = static_decide(cost);
      return [fixed](const QueueState&, const CountVector&) { return fixed; };
    }
    case Scheme::Random: {
      auto rng = std::make_shared<std::mt19937_64>(switch_stream(run_seed, 0, 0x52414e44u));
      auto n_s = static_cast<std::size_t>(cost.n_switches());
      auto n_c = static_cast<std::size_t>(cost.n_controllers());
      return [rng, n_s, n_c](const QueueState&, const CountVector&) {
        return random_decide(n_s, n_c, *rng);
      };
    }
    case Scheme::JSQ:
      return [](const QueueState& q, const CountVector&) { return jsq_decide(q); };
  }
  throw std::invalid_argument("unknown scheme");
}

Simulation::Simulation(CostModel<Rational> cost, ArrivalSource arrivals, DecisionKernel kernel,
                       CountVector controller_service, CountVector switch_service, Rational v,
                       bool diagnostics)
    : cost_(std::move(cost)),
      arrivals_(std::move(arrivals)),
      kernel_(std::move(kernel)),
      input_{CountVector(), std::move(controller_service), std::move(switch_service)},
      v_(std::move(v)),
      diagnostics_(diagnostics),
      queues_(QueueState::zeros(cost_.n_switches(), cost_.n_controllers())) {
  if (input_.controller_service.size() != cost_.n_controllers() ||
      input_.switch_service.size() != cost_.n_switches()) {
    throw std::invalid_argument("service vectors do not match the cost model");
  }
}

MetricsRecord Simulation::step() {
  input_.arrivals = arrivals_();
  if (input_.arrivals.size() != cost_.n_switches()) {
    throw std::runtime_error("arrival source produced the wrong number of switches");
  }
  const QueueState& snapshot = queues_;
  Association decision = kernel_(snapshot, input_.arrivals);
  if (!is_feasible(decision, static_cast<std::size_t>(cost_.n_switches()),
                   static_cast<std::size_t>(cost_.n_controllers()))) {
    throw std::logic_error("decision kernel returned an infeasible association");
  }

  SlotValues slot;
  slot.t = t_;
  slot.f_slot = slot_comm_cost(decision, input_.arrivals, cost_);
  slot.g_slot = slot_comp_cost(decision, input_.arrivals, cost_);

  QueueState next = advance_queues(snapshot, input_, decision);
  last_served_ = snapshot.total() + input_.arrivals.sum() - next.total();

  slot.total_backlog = next.total();
  slot.ctrl_var = controller_variance(next.q_c);
  slot.uploads = static_cast<Count>(decision.upload_count());
  slot.locals = static_cast<Count>(decision.local_count());
  if (diagnostics_) {
    Rational before = lyapunov(snapshot);
    Rational after = lyapunov(next);
    slot.lyapunov = after;
    slot.drift_penalty = after - before + v_ * (slot.f_slot + slot.g_slot);
  }

  queues_ = std::move(next);
  last_arrivals_ = input_.arrivals;
  last_decision_ = std::move(decision);
  ++t_;
  return update(sums_, slot);
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "; " : "") << parts[i];
  return out.str();
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  auto errors = validate(cfg);
  if (!errors.empty()) throw std::invalid_argument(join(errors));
  return run(cfg, build_scenario(cfg.topology));
}

RunResult run(const RunConfig& cfg, const Scenario& scenario, const RecordSink& sink) {
  auto errors = validate(cfg);
  if (!errors.empty()) throw std::invalid_argument(join(errors));

  const auto n_s = static_cast<std::size_t>(scenario.cost.n_switches());
  const auto n_c = static_cast<std::size_t>(scenario.cost.n_controllers());
  TrafficConfig traffic = resolve_traffic(cfg, scenario);

  RunResult result;
  result.warnings = capacity_check(
      traffic, n_s, n_c,
      cfg.scheme == Scheme::Greedy ? cfg.params.devolution : Devolution::Off);

  auto arrivals = std::make_shared<ArrivalState>(traffic, n_s);
  auto [ctrl_service, sw_service] = sample_slot_services(traffic, n_c, n_s);
  Simulation sim(scenario.cost, [arrivals] { return arrivals->sample_slot(); },
                 make_kernel(cfg.scheme, scenario.cost, cfg.params, cfg.run_seed),
                 std::move(ctrl_service), std::move(sw_service), cfg.params.v, cfg.diagnostics);

  const std::int64_t stride = effective_stride(cfg);
  for (std::int64_t t = 0; t < cfg.horizon_slots; ++t) {
    MetricsRecord record = sim.step();
    if (cfg.record_decisions) result.decisions.push_back(sim.last_decision());
    if (t % stride == 0 || t == cfg.horizon_slots - 1) {
      if (sink) sink(record);
      result.records.push_back(std::move(record));
    }
  }

  auto& s = result.summary;
  s.slots = sim.sums().slots;
  s.f_bar = sim.sums().f_bar();
  s.g_bar = sim.sums().g_bar();
  s.total_cost = s.f_bar + s.g_bar;
  s.average_backlog = sim.sums().average_backlog();
  s.final_backlog = sim.queues().total();
  s.final_ctrl_var = controller_variance(sim.queues().q_c);
  s.alpha = scenario.cost.alpha.size() ? scenario.cost.alpha(0) : Rational(0);
  std::vector<Rational> rates(n_s);
  for (std::size_t i = 0; i < n_s; ++i) {
    double mean = expected_arrivals(traffic, static_cast<int>(i));
    rates[i] = std::isfinite(mean) ? Rational(mean) : Rational(0);
  }
  s.min_cost_rate_variance = min_cost_arrival_variance(scenario.cost.w, rates);
  s.n_switches = static_cast<int>(n_s);
  s.n_controllers = static_cast<int>(n_c);
  return result;
}

std::vector<RunResult> run_many(const std::vector<RunConfig>& cfgs, const Scenario& scenario,
                                unsigned jobs) {
  std::vector<RunResult> results(cfgs.size());
  std::vector<std::exception_ptr> failures(cfgs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfgs.size(); i = next++) {
      try {
        results[i] = run(cfgs[i], scenario);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cfgs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

std::vector<SweepRow> sweep(const RunConfig& cfg, const std::vector<Rational>& v_values,
                            unsigned jobs) {
  if (v_values.empty()) throw std::invalid_argument("sweep: empty V list");
  auto errors = validate(cfg);
  if (!errors.empty()) throw std::invalid_argument(join(errors));
  Scenario scenario = build_scenario(cfg.topology);
  std::vector<RunConfig> cfgs;
  for (const auto& v : v_values) {
    RunConfig c = cfg;
    c.params.v = v;
    c.record_decisions = false;
    cfgs.push_back(std::move(c));
  }
  auto results = run_many(cfgs, scenario, jobs);
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < v_values.size(); ++i) rows.push_back({v_values[i], results[i].summary});
  return rows;
}

std::vector<std::string> capacity_check(const TrafficConfig& traffic, std::size_t n_switches,
                                        std::size_t n_controllers, Devolution devolution) {
  TrafficConfig base = traffic;
  base.hot_spot_switches.clear();
  const double base_mean = n_switches > 0 ? expected_arrivals(base, -1) : 0.0;
  std::set<int> hot(traffic.hot_spot_switches.begin(), traffic.hot_spot_switches.end());
  double demand = 0;
  for (std::size_t i = 0; i < n_switches; ++i) {
    demand += hot.count(static_cast<int>(i)) ? static_cast<double>(traffic.hot_spot_rate) : base_mean;
  }
  auto [ctrl, sw] = sample_slot_services(traffic, n_controllers, n_switches);
  const double controller_supply = static_cast<double>(ctrl.sum());
  const double switch_supply = static_cast<double>(sw.sum());

  std::vector<std::string> warnings;
  auto fmt = [](double x) {
    std::ostringstream out;
    out << x;
    return out.str();
  };
  if (demand > 0 && demand >= controller_supply + switch_supply) {
    warnings.push_back("supercritical load: mean arrivals " + fmt(demand) +
                       " per slot >= total service " + fmt(controller_supply + switch_supply));
  }
  if (devolution == Devolution::Off && demand > 0 && demand >= controller_supply) {
    warnings.push_back("supercritical load without devolution: mean arrivals " + fmt(demand) +
                       " per slot >= controller service " + fmt(controller_supply));
  }
  return warnings;
}

std::vector<std::string> capacity_check(const RunConfig& cfg) {
  Scenario scenario = build_scenario(cfg.topology);
  return capacity_check(resolve_traffic(cfg, scenario),
                        static_cast<std::size_t>(scenario.cost.n_switches()),
                        static_cast<std::size_t>(scenario.cost.n_controllers()),
                        cfg.scheme == Scheme::Greedy ? cfg.params.devolution : Devolution::Off);
}

}  // namespace sdnd
