#include "sdnd/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sdnd {

InterarrivalDistribution InterarrivalDistribution::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CdfError(path, 0, "cannot open file");
  return parse(in, path);
}

InterarrivalDistribution InterarrivalDistribution::parse(std::istream& in,
                                                         const std::string& source) {
  InterarrivalDistribution dist;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double value = 0;
    double cumulative = 0;
    std::string extra;
    if (!(fields >> value >> cumulative) || (fields >> extra)) {
      throw CdfError(source, line_no, "expected '<interarrival_us> <cumulative_probability>'");
    }
    if (!(value > 0) || !std::isfinite(value)) {
      throw CdfError(source, line_no, "inter-arrival time must be positive");
    }
    if (cumulative < 0 || cumulative > 1) {
      throw CdfError(source, line_no, "cumulative probability outside [0, 1]");
    }
    if (!dist.points_.empty()) {
      const auto& prev = dist.points_.back();
      if (value <= prev.value_us || cumulative <= prev.cumulative) {
        throw CdfError(source, line_no, "CDF must be strictly increasing in both columns");
      }
    }
    dist.points_.push_back({value, cumulative});
  }
  if (dist.points_.empty()) throw CdfError(source, line_no, "empty CDF");
  if (dist.points_.back().cumulative != 1.0) {
    throw CdfError(source, line_no, "final cumulative probability must be exactly 1.0");
  }
  return dist;
}

double InterarrivalDistribution::quantile(double u) const {
  if (u <= points_.front().cumulative) return points_.front().value_us;
  auto hi = std::lower_bound(points_.begin(), points_.end(), u,
                             [](const Point& p, double x) { return p.cumulative < x; });
  if (hi == points_.end()) return points_.back().value_us;
  auto lo = hi - 1;
  double frac = (u - lo->cumulative) / (hi->cumulative - lo->cumulative);
  return lo->value_us + frac * (hi->value_us - lo->value_us);
}

double InterarrivalDistribution::mean() const {
  double m = points_.front().value_us * points_.front().cumulative;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    double mass = points_[i].cumulative - points_[i - 1].cumulative;
    m += mass * 0.5 * (points_[i].value_us + points_[i - 1].value_us);
  }
  return m;
}

std::mt19937_64 switch_stream(std::uint64_t seed, std::size_t index, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    tag};
  return std::mt19937_64(seq);
}

ArrivalState::ArrivalState(const TrafficConfig& cfg, std::size_t n_switches)
    : ArrivalState(cfg, n_switches,
                   std::holds_alternative<TraceCdfProcess>(cfg.base_process)
                       ? std::make_shared<const InterarrivalDistribution>(
                             InterarrivalDistribution::load(
                                 std::get<TraceCdfProcess>(cfg.base_process).path))
                       : nullptr) {}

ArrivalState::ArrivalState(const TrafficConfig& cfg, std::size_t n_switches,
                           std::shared_ptr<const InterarrivalDistribution> cdf)
    : cfg_(cfg), cdf_(std::move(cdf)) {
  if (std::holds_alternative<TraceCdfProcess>(cfg_.base_process) && !cdf_) {
    throw std::invalid_argument("trace arrival process requires a loaded CDF");
  }
  streams_.reserve(n_switches);
  for (std::size_t i = 0; i < n_switches; ++i) {
    streams_.push_back({switch_stream(cfg_.seed, i), 0.0, false});
  }
  for (int s : cfg_.hot_spot_switches) {
    if (s < 0 || static_cast<std::size_t>(s) >= n_switches) {
      throw std::invalid_argument("hot-spot switch index out of range: " + std::to_string(s));
    }
    streams_[s].hot = true;
  }
  if (cdf_) {
    for (auto& stream : streams_) stream.next_event_us = cdf_->sample(stream.rng);
  }
}

Count ArrivalState::draw(Stream& stream) {
  if (stream.hot) return cfg_.hot_spot_rate;
  return std::visit(
      [&](const auto& process) -> Count {
        using P = std::decay_t<decltype(process)>;
        if constexpr (std::is_same_v<P, ConstantProcess>) {
          return process.rate;
        } else if constexpr (std::is_same_v<P, PoissonProcess>) {
          if (process.rate <= 0) return 0;
          return std::poisson_distribution<Count>(process.rate)(stream.rng);
        } else if constexpr (std::is_same_v<P, ParetoProcess>) {
          double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(stream.rng);
          double x = process.scale / std::pow(u, 1.0 / process.shape);
          if (!(x < static_cast<double>(cfg_.a_max))) return cfg_.a_max;
          return std::llround(x);
        } else {
          const double end = static_cast<double>(slot_ + 1) * static_cast<double>(cfg_.slot_length_us);
          Count n = 0;
          while (stream.next_event_us < end) {
            ++n;
            stream.next_event_us += cdf_->sample(stream.rng);
          }
          return n;
        }
      },
      cfg_.base_process);
}

CountVector ArrivalState::sample_slot() {
  CountVector out(static_cast<Eigen::Index>(streams_.size()));
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = std::min(draw(streams_[i]), cfg_.a_max);
  }
  ++slot_;
  return out;
}

std::pair<CountVector, CountVector> sample_slot_services(const TrafficConfig& cfg,
                                                         std::size_t n_controllers,
                                                         std::size_t n_switches) {
  return {CountVector::Constant(static_cast<Eigen::Index>(n_controllers),
                                std::min(cfg.controller_capacity, cfg.b_max)),
          CountVector::Constant(static_cast<Eigen::Index>(n_switches),
                                std::min(cfg.switch_capacity, cfg.u_max))};
}

double expected_arrivals(const TrafficConfig& cfg, int switch_index) {
  if (std::find(cfg.hot_spot_switches.begin(), cfg.hot_spot_switches.end(), switch_index) !=
      cfg.hot_spot_switches.end()) {
    return static_cast<double>(cfg.hot_spot_rate);
  }
  return std::visit(
      [&](const auto& process) -> double {
        using P = std::decay_t<decltype(process)>;
        if constexpr (std::is_same_v<P, ConstantProcess>) {
          return static_cast<double>(process.rate);
        } else if constexpr (std::is_same_v<P, PoissonProcess>) {
          return process.rate;
        } else if constexpr (std::is_same_v<P, ParetoProcess>) {
          if (process.shape <= 1) return std::numeric_limits<double>::infinity();
          return process.shape * process.scale / (process.shape - 1);
        } else {
          auto dist = InterarrivalDistribution::load(process.path);
          return static_cast<double>(cfg.slot_length_us) / dist.mean();
        }
      },
      cfg.base_process);
}

}  // namespace sdnd
