#ifndef SDND_ENGINE_HPP
#define SDND_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdnd/metrics.hpp"
#include "sdnd/model.hpp"
#include "sdnd/scheduler.hpp"
#include "sdnd/topology.hpp"
#include "sdnd/traffic.hpp"

namespace sdnd {

enum class Scheme { Greedy, Static, Random, JSQ };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);
std::string to_string(Devolution d);
Devolution parse_devolution(const std::string& name);

struct TopologySpec {
  TopologyKind kind = TopologyKind::FatTree;
  int k = 4;
  std::uint64_t seed = 1;  // Jellyfish wiring and controller placement
  int hosts_min = 4;
  int hosts_max = 5;
};

struct RunConfig {
  TopologySpec topology;
  TrafficConfig traffic;
  // Pod whose switches become the hot spot; merged into traffic.hot_spot_switches.
  std::optional<int> hot_spot_pod;
  Scheme scheme = Scheme::Greedy;
  SchedulerParams<Rational> params;
  std::int64_t horizon_slots = 0;
  std::uint64_t run_seed = 1;  // Random scheme stream
  std::int64_t stride = 0;     // 0 selects the default export stride
  bool diagnostics = false;
  bool record_decisions = false;
};

/// Built topology with its controllers and cost model; immutable and shared across runs.
struct Scenario {
  Topology topo;
  PlacementResult placement;
  CostModel<Rational> cost;
};

Scenario build_scenario(const TopologySpec& spec);
std::shared_ptr<const Scenario> share_scenario(const TopologySpec& spec);

/// Switch indices of a hot-spot pod. Jellyfish has no pods; its "pod" p is the
/// p-th block of floor(|S| / k) switch indices.
std::vector<int> hot_spot_switches(const Topology& topo, int pod);

/// Validation errors, all at once; empty when the config is runnable.
std::vector<std::string> validate(const RunConfig& cfg);

std::int64_t effective_stride(const RunConfig& cfg);

using DecisionKernel = std::function<Association(const QueueState&, const CountVector&)>;
using ArrivalSource = std::function<CountVector()>;

DecisionKernel make_kernel(Scheme scheme, const CostModel<Rational>& cost,
                           const SchedulerParams<Rational>& params, std::uint64_t run_seed);

/// One run's mutable state: queues, arrival stream, running sums and slot counter.
class Simulation {
 public:
  Simulation(CostModel<Rational> cost, ArrivalSource arrivals, DecisionKernel kernel,
             CountVector controller_service, CountVector switch_service, Rational v,
             bool diagnostics = false);

  /// Sample arrivals, decide on the pre-slot snapshot, charge costs, update
  /// queues and metrics, advance t.
  MetricsRecord step();

  std::int64_t t() const { return t_; }
  const QueueState& queues() const { return queues_; }
  const RunningSums& sums() const { return sums_; }
  const Association& last_decision() const { return last_decision_; }
  const CountVector& last_arrivals() const { return last_arrivals_; }
  /// Requests served in the last slot.
  Count last_served() const { return last_served_; }

 private:
  CostModel<Rational> cost_;
  ArrivalSource arrivals_;
  DecisionKernel kernel_;
  SlotInput input_;
  Rational v_;
  bool diagnostics_;
  QueueState queues_;
  RunningSums sums_;
  Association last_decision_;
  CountVector last_arrivals_;
  Count last_served_ = 0;
  std::int64_t t_ = 0;
};

struct RunSummary {
  std::int64_t slots = 0;
  Rational f_bar;
  Rational g_bar;
  Rational total_cost;
  Rational average_backlog;
  Count final_backlog = 0;
  Rational final_ctrl_var;
  Rational alpha;
  Rational min_cost_rate_variance;
  int n_switches = 0;
  int n_controllers = 0;
};

struct RunResult {
  std::vector<MetricsRecord> records;      // stride-filtered, final slot always kept
  std::vector<Association> decisions;      // every slot, when requested
  std::vector<std::string> warnings;
  RunSummary summary;
};

using RecordSink = std::function<void(const MetricsRecord&)>;

/// Throws std::invalid_argument listing every validation failure.
RunResult run(const RunConfig& cfg);
RunResult run(const RunConfig& cfg, const Scenario& scenario, const RecordSink& sink = {});

struct SweepRow {
  Rational v;
  RunSummary summary;
};

/// One run per V with identical seeds; up to `jobs` runs execute concurrently.
std::vector<SweepRow> sweep(const RunConfig& cfg, const std::vector<Rational>& v_values,
                            unsigned jobs = 1);

/// Executes independent runs on a shared scenario, preserving input order.
std::vector<RunResult> run_many(const std::vector<RunConfig>& cfgs, const Scenario& scenario,
                                unsigned jobs);

std::vector<std::string> capacity_check(const TrafficConfig& traffic, std::size_t n_switches,
                                        std::size_t n_controllers, Devolution devolution);
std::vector<std::string> capacity_check(const RunConfig& cfg);

/// Traffic config with the hot-spot pod resolved against the scenario.
TrafficConfig resolve_traffic(const RunConfig& cfg, const Scenario& scenario);

}  // namespace sdnd

#endif  // SDND_ENGINE_HPP
