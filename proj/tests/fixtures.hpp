#ifndef SDND_TESTS_FIXTURES_HPP
#define SDND_TESTS_FIXTURES_HPP

#include <random>

#include "sdnd/model.hpp"
#include "sdnd/scheduler.hpp"

namespace sdnd::testing_support {

// Three switches, two controllers, one slot. W(s2,c1) = 1 follows from the
// X1 total of 9; W(s2,c2) and W(s3,c1) are not given and set to 3.
struct Fig1 {
  CostModel<Rational> cost;
  CountVector arrivals;
  CountVector controller_service;
  CountVector switch_service;

  Fig1() {
    HopMatrix w(3, 2);
    w << 1, 3,
         1, 3,
         3, 3;
    cost = CostModel<Rational>::uniform(w, 2);
    arrivals = CountVector(3);
    arrivals << 3, 2, 2;
    controller_service = CountVector::Constant(2, 2);
    switch_service = CountVector::Constant(3, 1);
  }

  SlotInput input() const { return {arrivals, controller_service, switch_service}; }

  // (s1,c1), (s2,c1), s3 local
  static Association x1() { return Association(std::vector<int>{0, 0, Association::kLocal}); }
  // (s1,c1), s2 local, (s3,c2)
  static Association x2() { return Association(std::vector<int>{0, Association::kLocal, 1}); }
};

struct Instance {
  QueueState q;
  CountVector arrivals;
  CostModel<Rational> cost;
  SchedulerParams<Rational> params;

  DecisionContext<Rational> ctx() const { return {q, arrivals, cost, params}; }
};

struct InstanceRanges {
  int max_switches = 6;
  int max_controllers = 4;
  Count max_queue = 100;
  Count max_arrival = 10;
  Count max_hops = 10;
  bool rational_alpha = true;
};

// Random instance: queues in [0, max_queue], arrivals in [0, max_arrival],
// W in [1, max_hops], alpha in [1, 10], V from {0, 1, 10, 100}.
inline Instance random_instance(std::mt19937_64& rng, const InstanceRanges& r = {},
                                int n_switches = 0, int n_controllers = 0) {
  auto uni = [&](Count lo, Count hi) { return std::uniform_int_distribution<Count>(lo, hi)(rng); };
  const int n_s = n_switches > 0 ? n_switches : static_cast<int>(uni(1, r.max_switches));
  const int n_c = n_controllers > 0 ? n_controllers : static_cast<int>(uni(1, r.max_controllers));
  Instance inst;
  inst.q = QueueState::zeros(n_s, n_c);
  inst.arrivals = CountVector(n_s);
  inst.cost.w = HopMatrix(n_s, n_c);
  inst.cost.alpha = ScalarVector<Rational>(n_s);
  for (int i = 0; i < n_s; ++i) {
    inst.q.q_s(i) = uni(0, r.max_queue);
    inst.arrivals(i) = uni(0, r.max_arrival);
    for (int j = 0; j < n_c; ++j) inst.cost.w(i, j) = uni(1, r.max_hops);
    if (r.rational_alpha) {
      // alpha = n/d within [1, 10]
      Count d = uni(1, 6);
      inst.cost.alpha(i) = Rational(uni(d, 10 * d), d);
    } else {
      inst.cost.alpha(i) = Rational(uni(1, 10));
    }
  }
  for (int j = 0; j < n_c; ++j) inst.q.q_c(j) = uni(0, r.max_queue);
  static const Count vs[] = {0, 1, 10, 100};
  inst.params.v = vs[uni(0, 3)];
  return inst;
}

}  // namespace sdnd::testing_support

#endif  // SDND_TESTS_FIXTURES_HPP
