#include "sdnd/topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <string>

namespace sdnd {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::FatTree: return "fat-tree";
    case TopologyKind::ThreeTier: return "three-tier";
    case TopologyKind::F10: return "f10";
    case TopologyKind::Jellyfish: return "jellyfish";
  }
  return "unknown";
}

TopologyKind parse_topology_kind(const std::string& name) {
  if (name == "fat-tree" || name == "fattree") return TopologyKind::FatTree;
  if (name == "three-tier" || name == "3-tier") return TopologyKind::ThreeTier;
  if (name == "f10") return TopologyKind::F10;
  if (name == "jellyfish") return TopologyKind::Jellyfish;
  throw std::invalid_argument("unknown topology kind '" + name + "'");
}

std::vector<std::pair<int, int>> Topology::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < node_count(); ++u) {
    for (int v : adjacency[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Topology::host_count(int sw) const {
  return static_cast<int>(std::count_if(adjacency[sw].begin(), adjacency[sw].end(),
                                        [&](int v) { return v >= n_switches; }));
}

int Topology::switch_degree(int sw) const { return degree(sw) - host_count(sw); }

namespace {

void check_port_count(int k) {
  if (k < 4 || k % 2 != 0) {
    throw TopologyError("port count k must be even and at least 4, got " + std::to_string(k));
  }
}

class Builder {
 public:
  explicit Builder(Topology& topo) : topo_(topo) {}

  void switches(int n, SwitchLayer layer) {
    topo_.n_switches += n;
    topo_.layer.insert(topo_.layer.end(), n, layer);
  }

  void link(int u, int v) { links_.emplace_back(u, v); }

  // Hosts must be attached after all switches exist.
  void attach_hosts(int sw, int count) {
    for (int h = 0; h < count; ++h) host_links_.push_back(sw);
  }

  void finish() {
    topo_.n_hosts = static_cast<int>(host_links_.size());
    topo_.adjacency.assign(topo_.node_count(), {});
    topo_.host_switch = host_links_;
    for (auto [u, v] : links_) {
      topo_.adjacency[u].push_back(v);
      topo_.adjacency[v].push_back(u);
    }
    for (int h = 0; h < topo_.n_hosts; ++h) {
      int node = topo_.host_node(h);
      topo_.adjacency[host_links_[h]].push_back(node);
      topo_.adjacency[node].push_back(host_links_[h]);
    }
    for (auto& nbrs : topo_.adjacency) std::sort(nbrs.begin(), nbrs.end());
  }

 private:
  Topology& topo_;
  std::vector<std::pair<int, int>> links_;
  std::vector<int> host_links_;
};

Topology pod_tree(int k, TopologyKind kind) {
  check_port_count(k);
  Topology topo;
  topo.kind = kind;
  topo.port_count = k;
  const int half = k / 2;
  const int cores = half * half;
  Builder b(topo);
  b.switches(cores, SwitchLayer::Core);
  for (int p = 0; p < k; ++p) {
    b.switches(half, SwitchLayer::Aggregate);
    b.switches(half, SwitchLayer::Edge);
  }
  for (int p = 0; p < k; ++p) {
    const int base = cores + p * k;
    std::vector<int> pod;
    for (int a = 0; a < half; ++a) {
      const int agg = base + a;
      pod.push_back(agg);
      int group = a;
      if (kind == TopologyKind::F10 && p % 2 == 1) group = (a + k / 4) % half;
      for (int m = 0; m < half; ++m) b.link(agg, group * half + m);
    }
    for (int e = 0; e < half; ++e) {
      const int edge = base + half + e;
      pod.push_back(edge);
      for (int a = 0; a < half; ++a) b.link(edge, base + a);
    }
    topo.pods.push_back(std::move(pod));
  }
  for (int p = 0; p < k; ++p) {
    for (int e = 0; e < half; ++e) b.attach_hosts(cores + p * k + half + e, half);
  }
  b.finish();
  return topo;
}

bool connected(const Topology& topo) {
  auto dist = bfs_distances(topo, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

}  // namespace

Topology gen_fat_tree(int k) { return pod_tree(k, TopologyKind::FatTree); }

Topology gen_f10(int k) { return pod_tree(k, TopologyKind::F10); }

Topology gen_three_tier(int k) {
  check_port_count(k);
  Topology topo;
  topo.kind = TopologyKind::ThreeTier;
  topo.port_count = k;
  Builder b(topo);
  b.switches(k, SwitchLayer::Core);
  b.switches(k, SwitchLayer::Aggregate);
  b.switches(k * (k - 1), SwitchLayer::Edge);
  for (int p = 0; p < k; ++p) {
    const int agg = k + p;
    std::vector<int> pod{agg};
    for (int c = 0; c < k; ++c) b.link(agg, c);
    for (int e = 0; e < k - 1; ++e) {
      const int edge = 2 * k + p * (k - 1) + e;
      pod.push_back(edge);
      b.link(edge, agg);
    }
    topo.pods.push_back(std::move(pod));
  }
  for (int e = 0; e < k * (k - 1); ++e) b.attach_hosts(2 * k + e, k / 2);
  b.finish();
  return topo;
}

Topology gen_jellyfish(int k, int hosts_min, int hosts_max, std::uint64_t seed) {
  check_port_count(k);
  if (hosts_min < 1 || hosts_max > k - 1 || hosts_min > hosts_max) {
    throw TopologyError("jellyfish host range must lie within [1, k-1]");
  }
  const int n = 5 * k * k / 4;
  const long total_hosts = static_cast<long>(k) * k * k / 4;
  if (total_hosts < static_cast<long>(hosts_min) * n ||
      total_hosts > static_cast<long>(hosts_max) * n) {
    throw TopologyError("jellyfish host range " + std::to_string(hosts_min) + ".." +
                        std::to_string(hosts_max) + " cannot place " +
                        std::to_string(total_hosts) + " hosts on " + std::to_string(n) +
                        " switches");
  }
  // Even spread: the first (total mod n) switches carry one extra host.
  std::vector<int> hosts(n, static_cast<int>(total_hosts / n));
  for (long s = 0; s < total_hosts % n; ++s) ++hosts[s];

  std::vector<int> free(n);
  for (int s = 0; s < n; ++s) free[s] = k - hosts[s];
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::pair<int, int>> links;
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  auto connect = [&](int a, int b) {
    adj[a][b] = adj[b][a] = 1;
    links.emplace_back(std::min(a, b), std::max(a, b));
    --free[a];
    --free[b];
  };
  auto disconnect = [&](std::size_t idx) {
    auto [x, y] = links[idx];
    adj[x][y] = adj[y][x] = 0;
    links[idx] = links.back();
    links.pop_back();
    ++free[x];
    ++free[y];
  };
  auto open_switches = [&] {
    std::vector<int> open;
    for (int s = 0; s < n; ++s) {
      if (free[s] > 0) open.push_back(s);
    }
    return open;
  };

  std::vector<int> open = open_switches();
  const std::size_t repair_limit = 100 * static_cast<std::size_t>(n) * k;
  std::size_t repairs = 0;
  while (!open.empty()) {
    bool joined = false;
    for (std::size_t attempt = 0; attempt < 4 * open.size() + 16 && open.size() >= 2; ++attempt) {
      int a = open[uniform(open.size())];
      int b = open[uniform(open.size())];
      if (a != b && !adj[a][b]) {
        connect(a, b);
        joined = true;
        break;
      }
    }
    if (!joined) {
      // Random picks keep failing: look for any remaining valid pair.
      const std::size_t offset = open.size() > 1 ? uniform(open.size()) : 0;
      for (std::size_t x = 0; x < open.size() && !joined; ++x) {
        for (std::size_t y = x + 1; y < open.size() && !joined; ++y) {
          int a = open[(x + offset) % open.size()];
          int b = open[(y + offset) % open.size()];
          if (!adj[a][b]) {
            connect(a, b);
            joined = true;
          }
        }
      }
    }
    if (!joined) {
      // Stuck: break a random link to make room for the switches with free ports.
      int a = open[uniform(open.size())];
      int b = -1;
      if (free[a] < 2) {
        for (int s : open) {
          if (s != a) {
            b = s;
            break;
          }
        }
        if (b < 0) break;  // a single leftover port cannot be used
      }
      const int partner = b < 0 ? a : b;
      for (std::size_t tries = 0; tries < 64 * links.size(); ++tries) {
        std::size_t idx = uniform(links.size());
        auto [x, y] = links[idx];
        if (uniform(2) == 1) std::swap(x, y);
        if (x == a || y == a || x == partner || y == partner) continue;
        if (adj[a][x] || adj[partner][y]) continue;
        disconnect(idx);
        connect(a, x);
        connect(partner, y);
        break;
      }
      if (++repairs > repair_limit) {
        throw TopologyError("jellyfish wiring did not converge for seed " + std::to_string(seed));
      }
    }
    std::erase_if(open, [&](int s) { return free[s] == 0; });
  }

  Topology topo;
  topo.kind = TopologyKind::Jellyfish;
  topo.port_count = k;
  Builder b(topo);
  b.switches(n, SwitchLayer::Edge);
  std::sort(links.begin(), links.end());
  for (auto [u, v] : links) b.link(u, v);
  for (int s = 0; s < n; ++s) b.attach_hosts(s, hosts[s]);
  b.finish();
  if (!connected(topo)) {
    throw TopologyError("jellyfish graph is disconnected for seed " + std::to_string(seed));
  }
  return topo;
}

PlacementResult place_controllers(const Topology& topo, std::uint64_t seed) {
  std::vector<std::vector<int>> hosts_of(topo.n_switches);
  for (int h = 0; h < topo.n_hosts; ++h) hosts_of[topo.host_switch[h]].push_back(h);

  PlacementResult result;
  if (topo.kind != TopologyKind::Jellyfish) {
    for (std::size_t p = 0; p < topo.pods.size(); p += 2) {
      const auto& pod = topo.pods[p];
      auto edge = std::find_if(pod.begin(), pod.end(), [&](int s) {
        return topo.layer[s] == SwitchLayer::Edge && !hosts_of[s].empty();
      });
      if (edge == pod.end()) throw TopologyError("pod without hosts");
      result.controller_hosts.push_back(hosts_of[*edge].front());
    }
    return result;
  }

  // Jellyfish: same count as the fat-tree of equal k.
  const int wanted = (topo.port_count + 1) / 2;
  std::vector<char> adjacent(static_cast<std::size_t>(topo.n_switches) * topo.n_switches, 0);
  for (int s = 0; s < topo.n_switches; ++s) {
    for (int v : topo.adjacency[s]) {
      if (v < topo.n_switches) adjacent[static_cast<std::size_t>(s) * topo.n_switches + v] = 1;
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<int> order(topo.n_hosts);
  constexpr int kRestarts = 64;
  for (int restart = 0; restart < kRestarts; ++restart) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> chosen;
    std::vector<int> tors;
    for (int h : order) {
      int tor = topo.host_switch[h];
      bool ok = std::none_of(tors.begin(), tors.end(), [&](int t) {
        return t == tor || adjacent[static_cast<std::size_t>(t) * topo.n_switches + tor];
      });
      if (!ok) continue;
      chosen.push_back(h);
      tors.push_back(tor);
      if (static_cast<int>(chosen.size()) == wanted) {
        result.controller_hosts = std::move(chosen);
        return result;
      }
    }
  }
  throw TopologyError("no placement of " + std::to_string(wanted) +
                      " controllers on non-adjacent ToRs found for seed " + std::to_string(seed));
}

std::vector<int> bfs_distances(const Topology& topo, int source) {
  std::vector<int> dist(topo.node_count(), -1);
  std::queue<int> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v : topo.adjacency[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

HopMatrix hop_matrix(const Topology& topo, const PlacementResult& placement) {
  HopMatrix w(topo.n_switches, placement.controller_count());
  for (int j = 0; j < placement.controller_count(); ++j) {
    auto dist = bfs_distances(topo, topo.host_node(placement.controller_hosts[j]));
    for (int i = 0; i < topo.n_switches; ++i) {
      if (dist[i] < 0) {
        throw TopologyError("switch s" + std::to_string(i) + " cannot reach controller " +
                            std::to_string(j));
      }
      w(i, j) = dist[i];
    }
  }
  return w;
}

Rational derive_alpha(const HopMatrix& w) {
  if (w.size() == 0) throw std::invalid_argument("derive_alpha: empty cost matrix");
  return Rational(w.sum(), static_cast<Count>(w.size()));
}

void write_edge_list(std::ostream& out, const Topology& topo) {
  auto label = [&](int node) {
    return node < topo.n_switches ? "s" + std::to_string(node)
                                  : "h" + std::to_string(node - topo.n_switches);
  };
  out << "# kind=" << to_string(topo.kind) << " k=" << topo.port_count
      << " switches=" << topo.n_switches << " hosts=" << topo.n_hosts << '\n';
  for (auto [u, v] : topo.edges()) out << label(u) << ' ' << label(v) << '\n';
}

}  // namespace sdnd
