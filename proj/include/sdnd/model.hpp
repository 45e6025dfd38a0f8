#ifndef SDND_MODEL_HPP
#define SDND_MODEL_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sdnd/rational.hpp"

namespace sdnd {

using CountVector = Eigen::Matrix<Count, Eigen::Dynamic, 1>;
using HopMatrix = Eigen::Matrix<Count, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ScalarVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class TopologyKind { FatTree, ThreeTier, F10, Jellyfish };
enum class SwitchLayer { Core, Aggregate, Edge };

std::string to_string(TopologyKind kind);
TopologyKind parse_topology_kind(const std::string& name);

// Node ids: switches occupy [0, n_switches), host h is node n_switches + h.
struct Topology {
  TopologyKind kind = TopologyKind::FatTree;
  int port_count = 0;
  int n_switches = 0;
  int n_hosts = 0;
  std::vector<SwitchLayer> layer;
  std::vector<std::vector<int>> adjacency;
  // Pod groups over switch indices; empty for Jellyfish.
  std::vector<std::vector<int>> pods;
  // ToR switch of each host.
  std::vector<int> host_switch;

  int host_node(int host) const { return n_switches + host; }
  int node_count() const { return n_switches + n_hosts; }
  int degree(int node) const { return static_cast<int>(adjacency[node].size()); }

  /// Undirected edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;
  /// Hosts attached to a switch.
  int host_count(int sw) const;
  /// Neighbors of a switch that are switches.
  int switch_degree(int sw) const;
};

/// Per-switch computation cost alpha and switch-by-controller hop counts w.
template <typename Scalar = Rational>
struct CostModel {
  HopMatrix w;
  ScalarVector<Scalar> alpha;

  Eigen::Index n_switches() const { return w.rows(); }
  Eigen::Index n_controllers() const { return w.cols(); }

  static CostModel uniform(HopMatrix hops, const Scalar& a) {
    CostModel cost;
    cost.alpha = ScalarVector<Scalar>::Constant(hops.rows(), a);
    cost.w = std::move(hops);
    return cost;
  }
};

struct QueueState {
  CountVector q_s;
  CountVector q_c;

  static QueueState zeros(Eigen::Index n_switches, Eigen::Index n_controllers) {
    return {CountVector::Zero(n_switches), CountVector::Zero(n_controllers)};
  }
  Count total() const { return q_s.sum() + q_c.sum(); }
  bool operator==(const QueueState& other) const {
    return q_s == other.q_s && q_c == other.q_c;
  }
};

struct SlotInput {
  CountVector arrivals;
  CountVector controller_service;
  CountVector switch_service;
};

/// Per-switch destination for one slot: LOCAL or a single controller index.
/// At most one controller per switch holds by construction.
class Association {
 public:
  static constexpr int kLocal = -1;

  Association() = default;
  explicit Association(std::size_t n_switches, int target = kLocal)
      : target_(n_switches, target) {}
  explicit Association(std::vector<int> targets) : target_(std::move(targets)) {}

  std::size_t size() const { return target_.size(); }
  int target(std::size_t sw) const { return target_[sw]; }
  bool is_local(std::size_t sw) const { return target_[sw] == kLocal; }
  void set(std::size_t sw, int controller) { target_[sw] = controller; }
  void set_local(std::size_t sw) { target_[sw] = kLocal; }
  const std::vector<int>& targets() const { return target_; }

  std::size_t upload_count() const {
    return static_cast<std::size_t>(
        std::count_if(target_.begin(), target_.end(), [](int t) { return t != kLocal; }));
  }
  std::size_t local_count() const { return size() - upload_count(); }

  bool operator==(const Association&) const = default;

 private:
  std::vector<int> target_;
};

enum class Devolution { On, Off };

template <typename Scalar = Rational>
struct SchedulerParams {
  Scalar v = 0;
  Devolution devolution = Devolution::On;
};

inline bool is_feasible(const Association& assoc, std::size_t n_switches,
                        std::size_t n_controllers) {
  if (assoc.size() != n_switches) return false;
  return std::all_of(assoc.targets().begin(), assoc.targets().end(), [&](int t) {
    return t == Association::kLocal ||
           (t >= 0 && static_cast<std::size_t>(t) < n_controllers);
  });
}

/// Service covers backlog plus this slot's locally kept arrivals.
constexpr Count step_switch_queue(Count q, Count routed_local, Count service) {
  return std::max<Count>(q + routed_local - service, 0);
}

constexpr Count step_controller_queue(Count q, Count routed_in, Count service) {
  return std::max<Count>(q + routed_in - service, 0);
}

/// Requests routed into each controller this slot.
inline CountVector routed_to_controllers(const Association& assoc, const CountVector& arrivals,
                                         Eigen::Index n_controllers) {
  CountVector in = CountVector::Zero(n_controllers);
  for (std::size_t i = 0; i < assoc.size(); ++i) {
    if (!assoc.is_local(i)) in(assoc.target(i)) += arrivals(static_cast<Eigen::Index>(i));
  }
  return in;
}

/// Queue state at the start of the next slot.
inline QueueState advance_queues(const QueueState& q, const SlotInput& input,
                                 const Association& assoc) {
  assert(assoc.size() == static_cast<std::size_t>(q.q_s.size()));
  QueueState next = q;
  CountVector routed_in = routed_to_controllers(assoc, input.arrivals, q.q_c.size());
  for (Eigen::Index i = 0; i < q.q_s.size(); ++i) {
    Count kept = assoc.is_local(static_cast<std::size_t>(i)) ? input.arrivals(i) : 0;
    next.q_s(i) = step_switch_queue(q.q_s(i), kept, input.switch_service(i));
  }
  for (Eigen::Index j = 0; j < q.q_c.size(); ++j) {
    next.q_c(j) = step_controller_queue(q.q_c(j), routed_in(j), input.controller_service(j));
  }
  return next;
}

template <typename Scalar>
Scalar slot_comm_cost(const Association& assoc, const CountVector& arrivals,
                      const CostModel<Scalar>& cost) {
  Count total = 0;
  for (std::size_t i = 0; i < assoc.size(); ++i) {
    if (assoc.is_local(i)) continue;
    auto row = static_cast<Eigen::Index>(i);
    total += cost.w(row, assoc.target(i)) * arrivals(row);
  }
  return Scalar(total);
}

template <typename Scalar>
Scalar slot_comp_cost(const Association& assoc, const CountVector& arrivals,
                      const CostModel<Scalar>& cost) {
  Scalar total = 0;
  for (std::size_t i = 0; i < assoc.size(); ++i) {
    if (!assoc.is_local(i)) continue;
    auto row = static_cast<Eigen::Index>(i);
    total += cost.alpha(row) * arrivals(row);
  }
  return total;
}

/// Half the sum of squared backlogs over every switch and controller queue.
template <typename Scalar = Rational>
Scalar lyapunov(const QueueState& q) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < q.q_s.size(); ++i) sum += Scalar(q.q_s(i)) * q.q_s(i);
  for (Eigen::Index j = 0; j < q.q_c.size(); ++j) sum += Scalar(q.q_c(j)) * q.q_c(j);
  return sum / 2;
}

}  // namespace sdnd

#endif  // SDND_MODEL_HPP
