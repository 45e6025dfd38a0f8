#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "sdnd/metrics.hpp"

using namespace sdnd;

namespace {

CountVector counts(std::initializer_list<Count> xs) {
  CountVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Count x : xs) v(i++) = x;
  return v;
}

SlotValues slot_with(std::int64_t t, Rational f, Rational g) {
  SlotValues s;
  s.t = t;
  s.f_slot = f;
  s.g_slot = g;
  return s;
}

}  // namespace

TEST(Update, TwoPointAverage) {
  RunningSums sums;
  update(sums, slot_with(0, 2, 0));
  MetricsRecord r = update(sums, slot_with(1, 4, 0));
  EXPECT_EQ(r.f_bar, 3);
  EXPECT_EQ(r.g_bar, 0);
  EXPECT_EQ(r.t, 1);
}

TEST(Update, AllZero) {
  RunningSums sums;
  MetricsRecord r;
  for (int t = 0; t < 10; ++t) r = update(sums, slot_with(t, 0, 0));
  EXPECT_EQ(r.f_bar, 0);
  EXPECT_EQ(r.g_bar, 0);
  EXPECT_EQ(RunningSums{}.f_bar(), 0);
}

TEST(Update, MatchesRecomputationFromSeries) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> d(0, 1000);
  RunningSums sums;
  std::vector<Rational> fs, gs;
  for (int t = 0; t < 1000; ++t) {
    Rational f(d(rng), 1 + d(rng) % 9), g(d(rng), 10);
    fs.push_back(f);
    gs.push_back(g);
    MetricsRecord r = update(sums, slot_with(t, f, g));
    if (t % 97 == 0 || t == 999) {
      Rational fsum = 0, gsum = 0;
      for (int k = 0; k <= t; ++k) {
        fsum += fs[k];
        gsum += gs[k];
      }
      EXPECT_EQ(r.f_bar * (t + 1), fsum);
      EXPECT_EQ(r.g_bar, gsum / (t + 1));
    }
  }
}

TEST(ControllerVariance, Examples) {
  EXPECT_EQ(controller_variance(counts({5, 5, 5})), 0);
  EXPECT_EQ(controller_variance(counts({0, 4})), 4);
  EXPECT_EQ(controller_variance(counts({1, 2, 3})), Rational(2, 3));
  EXPECT_THROW(controller_variance(CountVector(0)), std::invalid_argument);
}

TEST(ControllerVariance, PermutationInvariant) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<Count> d(0, 500);
  for (int n = 0; n < 200; ++n) {
    std::vector<Count> xs(6);
    for (auto& x : xs) x = d(rng);
    CountVector a = Eigen::Map<CountVector>(xs.data(), 6);
    std::shuffle(xs.begin(), xs.end(), rng);
    CountVector b = Eigen::Map<CountVector>(xs.data(), 6);
    EXPECT_EQ(controller_variance(a), controller_variance(b));
  }
}

TEST(MinCostArrivalVariance, Examples) {
  HopMatrix one(2, 1);
  one << 1, 4;
  EXPECT_EQ(min_cost_arrival_variance(one, {5, 5}), 0);
  HopMatrix sym(2, 2);
  sym << 1, 2,
         2, 1;
  EXPECT_EQ(min_cost_arrival_variance(sym, {5, 5}), 0);
  HopMatrix skew(2, 2);
  skew << 1, 2,
          1, 2;
  EXPECT_EQ(min_cost_arrival_variance(skew, {5, 5}), 25);
  // ties contribute to every minimum-cost controller
  HopMatrix tie(1, 2);
  tie << 3, 3;
  EXPECT_EQ(min_cost_arrival_variance(tie, {7}), 0);
  EXPECT_THROW(min_cost_arrival_variance(skew, {5}), std::invalid_argument);
}

TEST(Csv, HeaderAndRowFormat) {
  std::ostringstream out;
  write_csv_header(out, false);
  MetricsRecord r;
  r.t = 3;
  r.f_slot = 13;
  r.g_slot = Rational(1, 3);
  r.f_bar = Rational(9, 2);
  r.g_bar = 0;
  r.total_backlog = 2;
  r.ctrl_var = Rational(1, 4);
  r.uploads = 2;
  r.locals = 1;
  write_csv_row(out, r, false);
  EXPECT_EQ(out.str(),
            "t,f_slot,g_slot,f_bar,g_bar,total_backlog,ctrl_var,uploads,locals\n"
            "3,13.000000,0.333333,4.500000,0.000000,2,0.250000,2,1\n");
  std::ostringstream diag;
  write_csv_header(diag, true);
  r.lyapunov = Rational(5, 2);
  r.drift_penalty = Rational(-1);
  write_csv_row(diag, r, true);
  EXPECT_EQ(diag.str(),
            "t,f_slot,g_slot,f_bar,g_bar,total_backlog,ctrl_var,uploads,locals,lyapunov,drift_penalty\n"
            "3,13.000000,0.333333,4.500000,0.000000,2,0.250000,2,1,2.500000,-1.000000\n");
}
