#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sdnd/traffic.hpp"

using namespace sdnd;

namespace {

InterarrivalDistribution parse_text(const std::string& text) {
  std::istringstream in(text);
  return InterarrivalDistribution::parse(in, "test");
}

double mean_per_slot(ArrivalState& state, int slots, int sw = 0) {
  double sum = 0;
  for (int t = 0; t < slots; ++t) sum += static_cast<double>(state.sample_slot()(sw));
  return sum / slots;
}

int error_line(const std::string& text) {
  try {
    parse_text(text);
  } catch (const CdfError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Cdf, PointMassGivesConstantInterarrivals) {
  auto dist = std::make_shared<const InterarrivalDistribution>(parse_text("# trace\n1700 1.0\n"));
  EXPECT_DOUBLE_EQ(dist->mean(), 1700.0);
  TrafficConfig cfg;
  cfg.base_process = TraceCdfProcess{"unused"};
  ArrivalState state(cfg, 2, dist);
  double m = mean_per_slot(state, 17000);
  EXPECT_NEAR(m, 10000.0 / 1700.0, 1e-3);
}

TEST(Cdf, RejectsInvalidFilesWithLineNumbers) {
  EXPECT_EQ(error_line("1000 0.2\n2000 0.9\n"), 2);        // does not reach 1
  EXPECT_EQ(error_line("1000 0.5\n900 1.0\n"), 2);          // value decreases
  EXPECT_EQ(error_line("1000 0.5\n2000 0.5\n3000 1.0\n"), 2);  // probability flat
  EXPECT_EQ(error_line("# only comments\n"), 1);            // empty
  EXPECT_EQ(error_line("1000 0.5\nabc 1.0\n"), 2);          // malformed
  EXPECT_EQ(error_line("1000 0.5 7\n"), 1);                 // extra field
  EXPECT_THROW(InterarrivalDistribution::load("/nonexistent/cdf.txt"), CdfError);
}

TEST(Cdf, UniformSamplerMean) {
  auto dist = parse_text("1000 0.0\n2400 1.0\n");
  EXPECT_DOUBLE_EQ(dist.mean(), 1700.0);
  std::mt19937_64 rng(2024);
  double sum = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += dist.sample(rng);
  EXPECT_NEAR(sum / n, 1700.0, 17.0);
}

TEST(Cdf, QuantileInterpolates) {
  auto dist = parse_text("100 0.5\n300 1.0\n");
  EXPECT_DOUBLE_EQ(dist.quantile(0.1), 100.0);
  EXPECT_DOUBLE_EQ(dist.quantile(0.75), 200.0);
  EXPECT_DOUBLE_EQ(dist.quantile(1.0), 300.0);
  EXPECT_DOUBLE_EQ(dist.mean(), 0.5 * 100 + 0.5 * 200);
}

TEST(Cdf, LoadsFromFile) {
  const std::string path = testing::TempDir() + "cdf_load.txt";
  std::ofstream(path) << "# inter-arrival CDF\n1000 0.0\n2400 1.0\n";
  EXPECT_DOUBLE_EQ(InterarrivalDistribution::load(path).mean(), 1700.0);
  TrafficConfig cfg;
  cfg.base_process = TraceCdfProcess{path};
  EXPECT_NEAR(expected_arrivals(cfg, 0), 10000.0 / 1700.0, 1e-12);
  ArrivalState state(cfg, 1);
  EXPECT_NEAR(mean_per_slot(state, 20000), 10000.0 / 1700.0, 0.06);
}

TEST(Arrivals, TraceModeLosesNoEventAtSlotBoundaries) {
  auto dist = std::make_shared<const InterarrivalDistribution>(parse_text("100 0.1\n5000 1.0\n"));
  TrafficConfig cfg;
  cfg.base_process = TraceCdfProcess{"unused"};
  cfg.seed = 77;
  const int n_s = 3, slots = 400;
  ArrivalState state(cfg, n_s, dist);
  CountVector total = CountVector::Zero(n_s);
  for (int t = 0; t < slots; ++t) total += state.sample_slot();
  // Replay each switch's event stream and count events in [0, T*L).
  const double horizon = static_cast<double>(slots) * static_cast<double>(cfg.slot_length_us);
  for (int i = 0; i < n_s; ++i) {
    auto rng = switch_stream(cfg.seed, static_cast<std::size_t>(i));
    Count events = 0;
    for (double time = dist->sample(rng); time < horizon; time += dist->sample(rng)) ++events;
    EXPECT_EQ(total(i), events) << "switch " << i;
  }
}

TEST(Arrivals, HotSpotIsConstant) {
  TrafficConfig cfg;
  cfg.base_process = PoissonProcess{5.88};
  cfg.hot_spot_switches = {1};
  cfg.hot_spot_rate = 200;
  ArrivalState state(cfg, 3);
  for (int t = 0; t < 100; ++t) EXPECT_EQ(state.sample_slot()(1), 200);
}

TEST(Arrivals, HotSpotLeavesOtherStreamsUnchanged) {
  TrafficConfig plain;
  plain.base_process = PoissonProcess{3.0};
  plain.seed = 5;
  TrafficConfig hot = plain;
  hot.hot_spot_switches = {0, 2};
  ArrivalState a(plain, 4), b(hot, 4);
  for (int t = 0; t < 500; ++t) {
    CountVector x = a.sample_slot(), y = b.sample_slot();
    EXPECT_EQ(x(1), y(1));
    EXPECT_EQ(x(3), y(3));
  }
  // and adding switches does not perturb existing ones
  ArrivalState small(plain, 2), large(plain, 6);
  for (int t = 0; t < 200; ++t) EXPECT_EQ(small.sample_slot(), large.sample_slot().head(2));
}

TEST(Arrivals, PoissonMean) {
  TrafficConfig cfg;
  cfg.base_process = PoissonProcess{5.88};
  ArrivalState state(cfg, 1);
  EXPECT_NEAR(mean_per_slot(state, 100000), 5.88, 0.02 * 5.88);
}

TEST(Arrivals, ParetoMean) {
  TrafficConfig cfg;
  cfg.base_process = ParetoProcess{2, 2.94};
  EXPECT_DOUBLE_EQ(expected_arrivals(cfg, 0), 5.88);
  ArrivalState state(cfg, 1);
  EXPECT_NEAR(mean_per_slot(state, 1'000'000), 5.88, 0.05 * 5.88);
}

TEST(Arrivals, CountsClampedToCap) {
  TrafficConfig cfg;
  cfg.base_process = ParetoProcess{1.1, 50};
  cfg.a_max = 60;
  cfg.hot_spot_switches = {1};
  cfg.hot_spot_rate = 200;
  ArrivalState state(cfg, 2);
  for (int t = 0; t < 5000; ++t) EXPECT_LE(state.sample_slot().maxCoeff(), 60);
}

TEST(Arrivals, SameSeedSameSequence) {
  TrafficConfig cfg;
  cfg.base_process = ParetoProcess{2, 2.94};
  cfg.seed = 123;
  ArrivalState a(cfg, 5), b(cfg, 5);
  for (int t = 0; t < 1000; ++t) EXPECT_EQ(a.sample_slot(), b.sample_slot());
  TrafficConfig other = cfg;
  other.seed = 124;
  ArrivalState c(cfg, 5), d(other, 5);
  bool differs = false;
  for (int t = 0; t < 50; ++t) differs |= c.sample_slot() != d.sample_slot();
  EXPECT_TRUE(differs);
}

TEST(Arrivals, ZeroRatePoisson) {
  TrafficConfig cfg;
  cfg.base_process = PoissonProcess{0};
  ArrivalState state(cfg, 3);
  EXPECT_EQ(state.sample_slot().sum(), 0);
  EXPECT_EQ(state.slot(), 1);
}

TEST(Services, ConstantVectors) {
  TrafficConfig cfg;
  cfg.controller_capacity = 600;
  auto [ctrl, sw] = sample_slot_services(cfg, 12, 720);
  EXPECT_EQ(ctrl, CountVector::Constant(12, 600));
  EXPECT_EQ(sw, CountVector::Constant(720, 10));
  cfg.controller_capacity = 0;
  EXPECT_EQ(sample_slot_services(cfg, 3, 1).first.sum(), 0);
  cfg.controller_capacity = 700;
  cfg.b_max = 650;
  EXPECT_EQ(sample_slot_services(cfg, 1, 1).first(0), 650);
}

TEST(Services, HotSpotOutOfRangeRejected) {
  TrafficConfig cfg;
  cfg.hot_spot_switches = {4};
  EXPECT_THROW(ArrivalState(cfg, 4), std::invalid_argument);
}
