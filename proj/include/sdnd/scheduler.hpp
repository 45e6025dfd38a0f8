#ifndef SDND_SCHEDULER_HPP
#define SDND_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "sdnd/model.hpp"

namespace sdnd {

/// Read-only view of everything one slot's decision depends on.
template <typename Scalar = Rational>
struct DecisionContext {
  const QueueState& q;
  const CountVector& arrivals;
  const CostModel<Scalar>& cost;
  SchedulerParams<Scalar> params;
};

class OracleTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Weight of uploading switch i's batch to controller j.
/// Non-positive values mark upload-eligible controllers.
template <typename Scalar>
Scalar omega(Eigen::Index i, Eigen::Index j, const DecisionContext<Scalar>& ctx) {
  const Scalar& v = ctx.params.v;
  return v * (Scalar(ctx.cost.w(i, j)) - ctx.cost.alpha(i)) + Scalar(ctx.q.q_c(j) - ctx.q.q_s(i));
}

/// Drift-plus-penalty greedy with control devolution. For each switch the
/// eligible set is {j : omega <= 0}; the switch goes LOCAL when it is empty,
/// otherwise uploads to its minimum-omega controller (lowest index on ties).
template <typename Scalar>
Association greedy_decide(const DecisionContext<Scalar>& ctx) {
  const Eigen::Index n_s = ctx.cost.n_switches();
  const Eigen::Index n_c = ctx.cost.n_controllers();
  Association assoc(static_cast<std::size_t>(n_s));
  for (Eigen::Index i = 0; i < n_s; ++i) {
    std::optional<Scalar> best;
    for (Eigen::Index j = 0; j < n_c; ++j) {
      Scalar w = omega(i, j, ctx);
      if (w <= 0 && (!best || w < *best)) {
        best = std::move(w);
        assoc.set(static_cast<std::size_t>(i), static_cast<int>(j));
      }
    }
  }
  return assoc;
}

/// Devolution disabled: argmin_j V*W_ij + Q^c_j, never LOCAL.
template <typename Scalar>
Association association_only_decide(const DecisionContext<Scalar>& ctx) {
  const Eigen::Index n_s = ctx.cost.n_switches();
  const Eigen::Index n_c = ctx.cost.n_controllers();
  Association assoc(static_cast<std::size_t>(n_s), 0);
  for (Eigen::Index i = 0; i < n_s; ++i) {
    std::optional<Scalar> best;
    for (Eigen::Index j = 0; j < n_c; ++j) {
      Scalar score = ctx.params.v * Scalar(ctx.cost.w(i, j)) + Scalar(ctx.q.q_c(j));
      if (!best || score < *best) {
        best = std::move(score);
        assoc.set(static_cast<std::size_t>(i), static_cast<int>(j));
      }
    }
  }
  return assoc;
}

/// Nearest controller by hop count, lowest index on ties.
template <typename Scalar>
Association static_decide(const CostModel<Scalar>& cost) {
  Association assoc(static_cast<std::size_t>(cost.n_switches()), 0);
  for (Eigen::Index i = 0; i < cost.n_switches(); ++i) {
    Eigen::Index best = 0;
    cost.w.row(i).minCoeff(&best);  // first minimum
    assoc.set(static_cast<std::size_t>(i), static_cast<int>(best));
  }
  return assoc;
}

template <typename Rng>
Association random_decide(std::size_t n_switches, std::size_t n_controllers, Rng& rng) {
  if (n_controllers == 0) throw std::invalid_argument("random_decide: no controllers");
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n_controllers) - 1);
  Association assoc(n_switches, 0);
  for (std::size_t i = 0; i < n_switches; ++i) assoc.set(i, pick(rng));
  return assoc;
}

/// Every switch joins the controller with the smallest snapshot backlog.
inline Association jsq_decide(const QueueState& q) {
  Eigen::Index best = 0;
  q.q_c.minCoeff(&best);
  return Association(static_cast<std::size_t>(q.q_s.size()), static_cast<int>(best));
}

/// Full per-slot drift-plus-penalty objective, constant term included:
///   sum_i (V a_i + Qs_i) A_i + sum_ij (V W_ij + Qc_j - V a_i - Qs_i) X_ij A_i
template <typename Scalar>
Scalar slot_objective(const Association& assoc, const DecisionContext<Scalar>& ctx) {
  const Scalar& v = ctx.params.v;
  Scalar total = 0;
  for (Eigen::Index i = 0; i < ctx.cost.n_switches(); ++i) {
    const Count a = ctx.arrivals(i);
    if (a == 0) continue;
    Scalar local = v * ctx.cost.alpha(i) + Scalar(ctx.q.q_s(i));
    total += local * a;
    int j = assoc.target(static_cast<std::size_t>(i));
    if (j != Association::kLocal) {
      total += (v * Scalar(ctx.cost.w(i, j)) + Scalar(ctx.q.q_c(j)) - local) * a;
    }
  }
  return total;
}

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// Exhaustive search over every feasible association. Returns the first
/// minimizer in lexicographic order of the target vector (LOCAL first).
template <typename Scalar>
Association brute_force_decide(const DecisionContext<Scalar>& ctx) {
  const auto n_s = static_cast<std::size_t>(ctx.cost.n_switches());
  const auto n_c = static_cast<int>(ctx.cost.n_controllers());
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n_s; ++i) {
    space *= static_cast<std::uint64_t>(n_c) + 1;
    if (space > kOracleLimit) {
      throw OracleTooLarge("brute force refused: (C+1)^S exceeds " + std::to_string(kOracleLimit));
    }
  }
  Association current(n_s, Association::kLocal);
  Association best = current;
  Scalar best_value = slot_objective(current, ctx);
  for (std::uint64_t step = 1; step < space; ++step) {
    // odometer increment, last switch least significant
    for (std::size_t pos = n_s; pos-- > 0;) {
      if (current.target(pos) + 1 < n_c) {
        current.set(pos, current.target(pos) + 1);
        break;
      }
      current.set_local(pos);
    }
    Scalar value = slot_objective(current, ctx);
    if (value < best_value) {
      best_value = std::move(value);
      best = current;
    }
  }
  return best;
}

/// Greedy and association-only kernels with the V-scaled prices cached for a
/// fixed cost model. Decisions equal greedy_decide / association_only_decide.
template <typename Scalar = Rational>
class PricedKernel {
 public:
  PricedKernel(const CostModel<Scalar>& cost, const SchedulerParams<Scalar>& params)
      : devolution_(params.devolution),
        price_(cost.n_switches(), cost.n_controllers()) {
    for (Eigen::Index i = 0; i < cost.n_switches(); ++i) {
      for (Eigen::Index j = 0; j < cost.n_controllers(); ++j) {
        price_(i, j) = devolution_ == Devolution::On
                           ? Scalar(params.v * (Scalar(cost.w(i, j)) - cost.alpha(i)))
                           : Scalar(params.v * Scalar(cost.w(i, j)));
      }
    }
  }

  Association decide(const QueueState& q) const {
    const Eigen::Index n_s = price_.rows();
    const Eigen::Index n_c = price_.cols();
    Association assoc(static_cast<std::size_t>(n_s));
    Scalar score;
    Scalar best;
    for (Eigen::Index i = 0; i < n_s; ++i) {
      bool found = false;
      for (Eigen::Index j = 0; j < n_c; ++j) {
        score = price_(i, j);
        score += q.q_c(j);
        if (!found || score < best) {
          best = score;
          found = true;
          assoc.set(static_cast<std::size_t>(i), static_cast<int>(j));
        }
      }
      // omega = price + Qc - Qs; ineligible when the best omega is positive
      if (devolution_ == Devolution::On && best > q.q_s(i)) assoc.set_local(static_cast<std::size_t>(i));
    }
    return assoc;
  }

 private:
  Devolution devolution_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> price_;
};

}  // namespace sdnd

#endif  // SDND_SCHEDULER_HPP
