#ifndef SDND_TOPOLOGY_HPP
#define SDND_TOPOLOGY_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "sdnd/model.hpp"

namespace sdnd {

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlacementResult {
  std::vector<int> controller_hosts;  // host indices, not node ids
  int controller_count() const { return static_cast<int>(controller_hosts.size()); }
};

// Switch order: core, then per pod its aggregates followed by its edges.
// Hosts are numbered by edge switch.
Topology gen_fat_tree(int k);

// k core, k aggregate, k(k-1) edge. Each aggregate roots one pod of k-1 edges.
Topology gen_three_tier(int k);

// Fat-tree node counts; odd pods wire aggregate a to core group (a + k/4) mod k/2.
Topology gen_f10(int k);

// 5k^2/4 ToR switches carrying k^3/4 hosts, remaining ports randomly paired.
Topology gen_jellyfish(int k, int hosts_per_switch_min, int hosts_per_switch_max,
                       std::uint64_t seed);

/// One controller per pod pair; Jellyfish picks hosts with pairwise
/// non-adjacent ToRs from a seeded order.
PlacementResult place_controllers(const Topology& topo, std::uint64_t seed);

/// BFS hop count from every switch to every controller host.
HopMatrix hop_matrix(const Topology& topo, const PlacementResult& placement);

/// Single-source BFS distances over all nodes; -1 marks unreachable.
std::vector<int> bfs_distances(const Topology& topo, int source_node);

/// Mean entry of a non-empty hop matrix.
Rational derive_alpha(const HopMatrix& w);

/// `# kind=... k=... switches=... hosts=...` followed by one `u v` line per edge.
void write_edge_list(std::ostream& out, const Topology& topo);

}  // namespace sdnd

#endif  // SDND_TOPOLOGY_HPP
