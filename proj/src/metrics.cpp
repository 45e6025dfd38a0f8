#include "sdnd/metrics.hpp"

#include <stdexcept>

namespace sdnd {

MetricsRecord update(RunningSums& sums, const SlotValues& slot) {
  sums.slots += 1;
  sums.f_sum += slot.f_slot;
  sums.g_sum += slot.g_slot;
  sums.backlog_sum += slot.total_backlog;

  MetricsRecord r;
  r.t = slot.t;
  r.f_slot = slot.f_slot;
  r.g_slot = slot.g_slot;
  r.f_bar = sums.f_bar();
  r.g_bar = sums.g_bar();
  r.total_backlog = slot.total_backlog;
  r.ctrl_var = slot.ctrl_var;
  r.uploads = slot.uploads;
  r.locals = slot.locals;
  r.lyapunov = slot.lyapunov;
  r.drift_penalty = slot.drift_penalty;
  return r;
}

namespace {

template <typename Values>
Rational population_variance(const Values& xs) {
  if (xs.empty()) throw std::invalid_argument("variance of an empty set");
  Rational mean = 0;
  for (const auto& x : xs) mean += x;
  mean /= static_cast<Count>(xs.size());
  Rational acc = 0;
  for (const auto& x : xs) {
    Rational d = Rational(x) - mean;
    acc += d * d;
  }
  return acc / static_cast<Count>(xs.size());
}

}  // namespace

Rational controller_variance(const CountVector& q_c) {
  std::vector<Count> xs(q_c.data(), q_c.data() + q_c.size());
  return population_variance(xs);
}

Rational min_cost_arrival_variance(const HopMatrix& w, const std::vector<Rational>& rates) {
  if (static_cast<Eigen::Index>(rates.size()) != w.rows()) {
    throw std::invalid_argument("min_cost_arrival_variance: one rate per switch required");
  }
  std::vector<Rational> per_controller(static_cast<std::size_t>(w.cols()), Rational(0));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const Count best = w.row(i).minCoeff();
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (w(i, j) == best) per_controller[static_cast<std::size_t>(j)] += rates[static_cast<std::size_t>(i)];
    }
  }
  return population_variance(per_controller);
}

void write_csv_header(std::ostream& out, bool diagnostics) {
  out << "t,f_slot,g_slot,f_bar,g_bar,total_backlog,ctrl_var,uploads,locals";
  if (diagnostics) out << ",lyapunov,drift_penalty";
  out << '\n';
}

void write_csv_row(std::ostream& out, const MetricsRecord& r, bool diagnostics) {
  out << r.t << ',' << to_decimal(r.f_slot) << ',' << to_decimal(r.g_slot) << ','
      << to_decimal(r.f_bar) << ',' << to_decimal(r.g_bar) << ',' << r.total_backlog << ','
      << to_decimal(r.ctrl_var) << ',' << r.uploads << ',' << r.locals;
  if (diagnostics) {
    out << ',' << (r.lyapunov ? to_decimal(*r.lyapunov) : "") << ','
        << (r.drift_penalty ? to_decimal(*r.drift_penalty) : "");
  }
  out << '\n';
}

}  // namespace sdnd
