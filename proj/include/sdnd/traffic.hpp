#ifndef SDND_TRAFFIC_HPP
#define SDND_TRAFFIC_HPP

#include <cstdint>
#include <istream>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sdnd/model.hpp"

namespace sdnd {

struct PoissonProcess {
  double rate = 0;  // mean requests per slot
};
struct ParetoProcess {
  double shape = 2;
  double scale = 1;
};
struct ConstantProcess {
  Count rate = 0;
};
struct TraceCdfProcess {
  std::string path;
};
using ArrivalProcess = std::variant<PoissonProcess, ParetoProcess, ConstantProcess, TraceCdfProcess>;

struct TrafficConfig {
  Count slot_length_us = 10000;
  ArrivalProcess base_process = PoissonProcess{5.88};
  std::vector<int> hot_spot_switches;
  Count hot_spot_rate = 200;
  Count controller_capacity = 600;
  Count switch_capacity = 10;
  Count a_max = 1'000'000;
  Count b_max = 1'000'000;
  Count u_max = 1'000'000;
  std::uint64_t seed = 1;
};

class CdfError : public std::runtime_error {
 public:
  CdfError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Piecewise-linear empirical inter-arrival distribution in microseconds.
/// The first point is an atom carrying its cumulative probability; mass
/// between consecutive points is spread uniformly.
class InterarrivalDistribution {
 public:
  struct Point {
    double value_us;
    double cumulative;
  };

  static InterarrivalDistribution load(const std::string& path);
  static InterarrivalDistribution parse(std::istream& in, const std::string& source = "<input>");

  double quantile(double u) const;
  double mean() const;
  const std::vector<Point>& points() const { return points_; }

  template <typename Rng>
  double sample(Rng& rng) const {
    return quantile(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }

 private:
  std::vector<Point> points_;
};

/// Per-switch arrival generators. One independent stream per switch index.
class ArrivalState {
 public:
  ArrivalState(const TrafficConfig& cfg, std::size_t n_switches);
  ArrivalState(const TrafficConfig& cfg, std::size_t n_switches,
               std::shared_ptr<const InterarrivalDistribution> cdf);

  CountVector sample_slot();
  std::int64_t slot() const { return slot_; }
  std::size_t n_switches() const { return streams_.size(); }

 private:
  struct Stream {
    std::mt19937_64 rng;
    double next_event_us = 0;
    bool hot = false;
  };
  Count draw(Stream& stream);

  TrafficConfig cfg_;
  std::shared_ptr<const InterarrivalDistribution> cdf_;
  std::vector<Stream> streams_;
  std::int64_t slot_ = 0;
};

/// Counts for the current slot, clamped to a_max; advances the state one slot.
inline CountVector sample_slot_arrivals(ArrivalState& state) { return state.sample_slot(); }

/// Deterministic service vectors (controller, switch), clamped to b_max / u_max.
std::pair<CountVector, CountVector> sample_slot_services(const TrafficConfig& cfg,
                                                         std::size_t n_controllers,
                                                         std::size_t n_switches);

/// Stream seed for switch `index`; independent of every other index.
std::mt19937_64 switch_stream(std::uint64_t seed, std::size_t index, std::uint32_t tag = 0);

/// Mean requests per slot at one switch (infinite Pareto means are +inf).
double expected_arrivals(const TrafficConfig& cfg, int switch_index);

}  // namespace sdnd

#endif  // SDND_TRAFFIC_HPP
