#ifndef SDND_METRICS_HPP
#define SDND_METRICS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "sdnd/model.hpp"

namespace sdnd {

/// Values observed in one slot, before averaging.
struct SlotValues {
  std::int64_t t = 0;
  Rational f_slot;
  Rational g_slot;
  Count total_backlog = 0;
  Rational ctrl_var;
  Count uploads = 0;
  Count locals = 0;
  std::optional<Rational> lyapunov;
  std::optional<Rational> drift_penalty;
};

/// One exported row. Averages cover slots 0..t inclusive.
struct MetricsRecord {
  std::int64_t t = 0;
  Rational f_slot;
  Rational g_slot;
  Rational f_bar;
  Rational g_bar;
  Count total_backlog = 0;
  Rational ctrl_var;
  Count uploads = 0;
  Count locals = 0;
  std::optional<Rational> lyapunov;
  std::optional<Rational> drift_penalty;
};

/// Exact sums; averages are always recomputed from these.
struct RunningSums {
  std::int64_t slots = 0;
  Rational f_sum;
  Rational g_sum;
  Rational backlog_sum;

  Rational f_bar() const { return slots == 0 ? Rational(0) : f_sum / slots; }
  Rational g_bar() const { return slots == 0 ? Rational(0) : g_sum / slots; }
  Rational average_backlog() const { return slots == 0 ? Rational(0) : backlog_sum / slots; }
};

MetricsRecord update(RunningSums& sums, const SlotValues& slot);

/// Population variance.
Rational controller_variance(const CountVector& q_c);

/// Variance over controllers of the arrival rate they would receive if every
/// switch sent to all of its minimum-hop controllers.
Rational min_cost_arrival_variance(const HopMatrix& w, const std::vector<Rational>& rates);

void write_csv_header(std::ostream& out, bool diagnostics);
void write_csv_row(std::ostream& out, const MetricsRecord& record, bool diagnostics);

}  // namespace sdnd

#endif  // SDND_METRICS_HPP
