#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "../tools/cli.hpp"
#include "fixtures.hpp"
#include "sdnd/engine.hpp"

using namespace sdnd;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

RunConfig desk(Scheme scheme, Rational v, std::uint64_t seed) {
  RunConfig cfg;
  cfg.topology = {TopologyKind::FatTree, 4, 1, 4, 5};
  cfg.traffic.base_process = PoissonProcess{2.0};
  cfg.hot_spot_pod = 0;
  cfg.traffic.hot_spot_rate = 20;
  cfg.traffic.controller_capacity = 60;
  cfg.traffic.switch_capacity = 4;
  cfg.traffic.seed = seed;
  cfg.run_seed = seed;
  cfg.scheme = scheme;
  cfg.params.v = v;
  cfg.horizon_slots = 20000;
  cfg.stride = 1;
  return cfg;
}

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

void oracle_equivalence() {
  auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  int instances = 0, mismatches = 0;
  auto check = [&](const testing_support::Instance& inst) {
    auto ctx = inst.ctx();
    if (slot_objective(greedy_decide(ctx), ctx) != slot_objective(brute_force_decide(ctx), ctx)) ++mismatches;
    ++instances;
  };
  for (int n = 0; n < 1500; ++n) check(testing_support::random_instance(rng));
  for (int n = 0; n < 100; ++n) check(testing_support::random_instance(rng, {}, 6, 4));
  double secs = seconds_since(start);
  report(1, mismatches == 0 && instances >= 1000 && secs < 60,
         std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s");
}

void fig1_fixture() {
  testing_support::Fig1 fig;
  auto forced = [&](const Association& x) {
    CountVector a = fig.arrivals;
    Simulation sim(fig.cost, [a] { return a; }, [x](const QueueState&, const CountVector&) { return x; },
                   fig.controller_service, fig.switch_service, 0);
    return sim.step();
  };
  MetricsRecord x2 = forced(testing_support::Fig1::x2());
  MetricsRecord x1 = forced(testing_support::Fig1::x1());
  bool ok = x2.f_slot + x2.g_slot == 13 && x2.total_backlog == 2 && x1.total_backlog == 4;
  report(2, ok, "X2 cost " + Rational(x2.f_slot + x2.g_slot).str() + " unfinished " + std::to_string(x2.total_backlog) +
                    ", X1 unfinished " + std::to_string(x1.total_backlog));
}

void alpha_reproduction() {
  auto start = Clock::now();
  auto alpha = [](const Topology& t) { return to_double(derive_alpha(hop_matrix(t, place_controllers(t, 1)))); };
  double ft = alpha(gen_fat_tree(24));
  double tt = alpha(gen_three_tier(26));
  double f10 = alpha(gen_f10(24));
  double secs = seconds_since(start);
  bool ok = std::abs(ft - 4.13) <= 0.01 && std::abs(tt - 4.81) <= 0.01 && std::abs(f10 - ft) <= 0.01 && secs < 30;
  report(3, ok, "fat-tree(24) " + fmt(ft) + ", three-tier(26) " + fmt(tt) + ", f10(24) " + fmt(f10) + ", " +
                    fmt(secs) + " s");
}

void jsq_degeneracy() {
  std::mt19937_64 rng(77);
  const Rational huge("20000000000000000000000000000");
  int jsq_mismatch = 0, off_mismatch = 0;
  for (int n = 0; n < 1000; ++n) {
    auto inst = testing_support::random_instance(rng);
    inst.params = {0, Devolution::Off};
    if (jsq_decide(inst.q) != association_only_decide(inst.ctx())) ++jsq_mismatch;

    static const Count vs[] = {1, 10, 100};
    inst.params = {vs[n % 3], Devolution::On};
    inst.cost.alpha.setConstant(huge);
    Association greedy = greedy_decide(inst.ctx());
    inst.params.devolution = Devolution::Off;
    if (greedy != association_only_decide(inst.ctx())) ++off_mismatch;
  }
  report(4, jsq_mismatch == 0 && off_mismatch == 0,
         "1000 snapshots, JSQ mismatches " + std::to_string(jsq_mismatch) + ", alpha=2e28 mismatches " +
             std::to_string(off_mismatch));
}

struct DeskResults {
  std::vector<Rational> v_grid{0, 10, 100, 1000, 10000};
  std::vector<Rational> mean_cost, mean_backlog;
  std::vector<RunResult> v10;
  std::vector<RunResult> statics;
  double seconds = 0;
};

DeskResults desk_runs() {
  auto start = Clock::now();
  DeskResults d;
  Scenario scenario = build_scenario(desk(Scheme::Greedy, 0, 1).topology);
  std::vector<RunConfig> cfgs;
  for (const auto& v : d.v_grid) {
    for (auto seed : kSeeds) cfgs.push_back(desk(Scheme::Greedy, v, seed));
  }
  for (auto seed : kSeeds) cfgs.push_back(desk(Scheme::Static, 0, seed));
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto results = run_many(cfgs, scenario, jobs);
  const auto n_seeds = static_cast<long>(kSeeds.size());
  for (std::size_t g = 0; g < d.v_grid.size(); ++g) {
    Rational cost = 0, backlog = 0;
    for (std::size_t s = 0; s < kSeeds.size(); ++s) {
      const auto& r = results[g * kSeeds.size() + s];
      cost += r.summary.total_cost;
      backlog += r.summary.average_backlog;
      if (d.v_grid[g] == 10) d.v10.push_back(r);
    }
    d.mean_cost.push_back(cost / n_seeds);
    d.mean_backlog.push_back(backlog / n_seeds);
  }
  for (std::size_t s = 0; s < kSeeds.size(); ++s) d.statics.push_back(results[d.v_grid.size() * kSeeds.size() + s]);
  d.seconds = seconds_since(start);
  return d;
}

void trade_off(const DeskResults& d) {
  bool cost_ok = true, backlog_ok = true;
  std::string detail = "cost";
  for (std::size_t g = 0; g < d.v_grid.size(); ++g) {
    detail += " " + to_decimal(d.mean_cost[g], 3);
    if (g > 0 && d.mean_cost[g] > d.mean_cost[g - 1] * Rational(102, 100)) cost_ok = false;
  }
  detail += "; backlog";
  for (std::size_t g = 0; g < d.v_grid.size(); ++g) {
    detail += " " + to_decimal(d.mean_backlog[g], 3);
    if (g + 2 >= d.v_grid.size() && d.mean_backlog[g] < d.mean_backlog[g - 1]) {
      backlog_ok = false;
    }
  }
  detail += "; " + fmt(d.seconds) + " s";
  report(5, cost_ok && backlog_ok && d.seconds < 120, detail);
}

Rational window(const RunResult& r, std::int64_t from, std::int64_t to) {
  Rational sum = 0;
  for (const auto& rec : r.records) {
    if (rec.t >= from && rec.t < to) sum += rec.total_backlog;
  }
  return sum / (to - from);
}

Rational ctrl_var_after(const RunResult& r, std::int64_t slots) {
  // the record for slot t holds the state after t + 1 updates
  for (const auto& rec : r.records) {
    if (rec.t == slots - 1) return rec.ctrl_var;
  }
  throw std::runtime_error("missing record");
}

void stability(const DeskResults& d) {
  bool ok = true;
  std::string detail = "V=10 windows";
  for (const auto& r : d.v10) {
    Rational early = window(r, 10000, 15000), late = window(r, 15000, 20000);
    detail += " " + to_decimal(early, 2) + "/" + to_decimal(late, 2);
    if (abs(late - early) > early / 10) ok = false;
  }
  detail += "; static variance growth";
  for (const auto& r : d.statics) {
    Rational v1 = ctrl_var_after(r, 1000), v2 = ctrl_var_after(r, 20000);
    detail += " " + (v1 > 0 ? fmt(to_double(v2 / v1)) : std::string("inf"));
    if (v2 < 10 * v1 || v2 == 0) ok = false;
  }
  report(6, ok, detail);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism() {
  fs::path root = fs::temp_directory_path() / "sdnd_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> common{"--kind", "fat-tree", "--k", "4", "--rate", "2", "--hot-spot-pod", "0",
                                  "--hot-spot-rate", "20", "--controller-capacity", "60", "--switch-capacity",
                                  "4", "--horizon", "2000", "--seed", "11"};
  bool ok = true;
  std::ostringstream sink;
  for (const char* scheme : {"greedy", "static", "random", "jsq"}) {
    std::vector<std::string> args{"run", "--scheme", scheme, "--v", "100", "--diagnostics", "--trace-decisions"};
    args.insert(args.end(), common.begin(), common.end());
    auto a = args, b = args;
    a.insert(a.end(), {"--out-dir", (root / scheme / "a").string()});
    b.insert(b.end(), {"--out-dir", (root / scheme / "b").string()});
    ok &= cli::dispatch(a, sink, sink) == 0 && cli::dispatch(b, sink, sink) == 0;
    for (const char* file : {"metrics.csv", "decisions.csv", "summary.json"}) {
      std::string x = slurp(root / scheme / "a" / file);
      ok &= !x.empty() && x == slurp(root / scheme / "b" / file);
    }
  }
  std::vector<std::string> sweep{"compare", "--v-grid", "0,10,100", "--seeds", "1,2"};
  sweep.insert(sweep.end(), common.begin(), common.end());
  auto a = sweep, b = sweep;
  a.insert(a.end(), {"--jobs", "4", "--out-dir", (root / "compare" / "a").string()});
  b.insert(b.end(), {"--jobs", "1", "--out-dir", (root / "compare" / "b").string()});
  ok &= cli::dispatch(a, sink, sink) == 0 && cli::dispatch(b, sink, sink) == 0;
  std::string x = slurp(root / "compare" / "a" / "compare.csv");
  ok &= !x.empty() && x == slurp(root / "compare" / "b" / "compare.csv");
  fs::remove_all(root);
  report(7, ok, "repeated run and compare outputs byte-identical");
}

double empirical_mean(ArrivalProcess process, std::int64_t slots) {
  TrafficConfig cfg;
  cfg.base_process = process;
  cfg.seed = 8;
  ArrivalState state(cfg, 1);
  double sum = 0;
  for (std::int64_t t = 0; t < slots; ++t) sum += static_cast<double>(state.sample_slot()(0));
  return sum / static_cast<double>(slots);
}

void distributions() {
  double poisson = empirical_mean(PoissonProcess{5.88}, 100000);
  double pareto = empirical_mean(ParetoProcess{2.0, 2.94}, 1000000);
  bool ok = std::abs(poisson - 5.88) <= 0.02 * 5.88 && std::abs(pareto - 5.88) <= 0.05 * 5.88;
  report(8, ok, "Poisson(5.88) mean " + fmt(poisson) + ", Pareto(2, 2.94) mean " + fmt(pareto));
}

}  // namespace

int main() {
  try {
    oracle_equivalence();
    fig1_fixture();
    alpha_reproduction();
    jsq_degeneracy();
    DeskResults desk_results = desk_runs();
    trade_off(desk_results);
    stability(desk_results);
    determinism();
    distributions();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
