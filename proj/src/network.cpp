#include "evesim/network.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "evesim/output.hpp"

namespace evesim {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

void HabitatNetwork::assign(int n, double w_max) {
  if (n < 0) throw std::invalid_argument("network: negative node count");
  if (w_max <= 0.0) throw std::invalid_argument("network: w_max must be > 0");
  n_ = n;
  w_max_ = w_max;
  edges_.clear();
  adj_.resize(static_cast<std::size_t>(n));
  for (auto& a : adj_) a.clear();
  adj_.resize(static_cast<std::size_t>(n));
}

std::size_t HabitatNetwork::find_edge(int i, int j) const {
  const auto& nbrs = adj_[static_cast<std::size_t>(i)];
  for (const Neighbor& nb : nbrs) {
    if (nb.id == j) return nb.edge_index;
  }
  return npos;
}

void HabitatNetwork::add_edge(int i, int j, double w) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::invalid_argument("add_edge: node out of range");
  }
  if (i == j) throw std::invalid_argument("add_edge: self-loop");
  if (w < 0.0 || w > w_max_) {
    throw std::invalid_argument("add_edge: weight outside [0, w_max]");
  }
  if (find_edge(i, j) != npos) {
    throw std::invalid_argument("add_edge: duplicate edge");
  }
  const std::size_t idx = edges_.size();
  edges_.push_back({std::min(i, j), std::max(i, j), w});
  adj_[static_cast<std::size_t>(i)].push_back({j, idx});
  adj_[static_cast<std::size_t>(j)].push_back({i, idx});
}

bool HabitatNetwork::has_edge(int i, int j) const {
  return find_edge(i, j) != npos;
}

double HabitatNetwork::weight(int i, int j) const {
  const std::size_t idx = find_edge(i, j);
  if (idx == npos) throw std::invalid_argument("weight: no such edge");
  return edges_[idx].w;
}

void HabitatNetwork::set_weight(std::size_t edge_index, double w) {
  edges_.at(edge_index).w = std::clamp(w, 0.0, w_max_);
}

double HabitatNetwork::incident_weight_sum(int i) const {
  double s = 0.0;
  for (const Neighbor& nb : adj_[static_cast<std::size_t>(i)]) {
    s += edges_[nb.edge_index].w;
  }
  return s;
}

double HabitatNetwork::mean_weight() const {
  if (edges_.empty()) return 0.0;
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s / static_cast<double>(edges_.size());
}

HabitatNetwork HabitatNetwork::thresholded(double tau) const {
  HabitatNetwork out(n_, w_max_);
  for (const Edge& e : edges_) {
    if (e.w >= tau) out.add_edge(e.a, e.b, e.w);
  }
  return out;
}

HabitatNetwork watts_strogatz(int n, int k, double p, double w_init,
                              double w_max, RngStream& rng) {
  if (k < 2 || k % 2 != 0 || n <= k) {
    throw std::invalid_argument(
        "watts_strogatz: requires n > k >= 2 with k even");
  }
  // Work on a plain edge table first; rewiring replaces far endpoints.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k) / 2);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  auto key = [n](int a, int b) {
    return static_cast<std::uint64_t>(std::min(a, b)) *
               static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(std::max(a, b));
  };
  std::unordered_set<std::uint64_t> present;
  for (int j = 1; j <= k / 2; ++j) {
    for (int i = 0; i < n; ++i) {
      const int t = (i + j) % n;
      edges.emplace_back(i, t);
      present.insert(key(i, t));
      ++degree[static_cast<std::size_t>(i)];
      ++degree[static_cast<std::size_t>(t)];
    }
  }
  for (auto& [u, v] : edges) {
    if (!rng.bernoulli(p)) continue;
    if (degree[static_cast<std::size_t>(u)] == n - 1) continue;  // saturated
    int t;
    do {
      t = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    } while (t == u || present.contains(key(u, t)));
    present.erase(key(u, v));
    present.insert(key(u, t));
    --degree[static_cast<std::size_t>(v)];
    ++degree[static_cast<std::size_t>(t)];
    v = t;
  }
  HabitatNetwork net(n, w_max);
  for (const auto& [u, v] : edges) net.add_edge(u, v, w_init);
  return net;
}

HabitatNetwork complete_graph(int n, double w_init, double w_max) {
  HabitatNetwork net(n, w_max);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) net.add_edge(i, j, w_init);
  }
  return net;
}

double clustering_coefficient(const HabitatNetwork& net) {
  const int n = net.node_count();
  if (n < 1) throw std::invalid_argument("clustering_coefficient: empty graph");
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    const auto nbrs = net.neighbors(v);
    const int d = static_cast<int>(nbrs.size());
    if (d < 2) continue;
    int links = 0;
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        if (net.has_edge(nbrs[x].id, nbrs[y].id)) ++links;
      }
    }
    total += static_cast<double>(links) / static_cast<double>(d * (d - 1) / 2);
  }
  return total / static_cast<double>(n);
}

double characteristic_path_length(const HabitatNetwork& net) {
  const int n = net.node_count();
  if (n < 2) {
    throw std::domain_error("characteristic_path_length: needs >= 2 nodes");
  }
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> queue(static_cast<std::size_t>(n));
  long long total = 0;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    queue[0] = s;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
      const int u = queue[head++];
      for (const auto& nb : net.neighbors(u)) {
        if (dist[static_cast<std::size_t>(nb.id)] < 0) {
          dist[static_cast<std::size_t>(nb.id)] =
              dist[static_cast<std::size_t>(u)] + 1;
          queue[tail++] = nb.id;
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (dist[static_cast<std::size_t>(t)] < 0) {
        throw std::domain_error("characteristic_path_length: disconnected");
      }
      total += dist[static_cast<std::size_t>(t)];
    }
  }
  const long long pairs =
      static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
  return static_cast<double>(total) / static_cast<double>(pairs);
}

std::vector<std::vector<int>> components_at(const HabitatNetwork& net,
                                            double tau) {
  const int n = net.node_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : net.edges()) {
    if (e.w < tau) continue;
    const int ra = find(e.a), rb = find(e.b);
    if (ra != rb) parent[static_cast<std::size_t>(rb)] = ra;
  }
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) groups[static_cast<std::size_t>(find(v))].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return out;
}

std::vector<MigrationEvent> migrate(const HabitatNetwork& net,
                                    std::vector<Habitat>& habitats,
                                    double p_mig, std::uint32_t epoch,
                                    const RngDiscipline& rng) {
  std::vector<MigrationEvent> events;
  for (Habitat& src : habitats) {
    const auto nbrs = net.neighbors(src.id);
    if (nbrs.empty()) continue;
    const double wsum = net.incident_weight_sum(src.id);
    const double prob =
        p_mig * (wsum / (static_cast<double>(nbrs.size()) * net.w_max()));
    if (prob <= 0.0) continue;
    RngStream stream = rng.stream(StreamKind::habitat,
                                  static_cast<std::uint64_t>(src.id), epoch,
                                  Phase::migrate);
    for (const Agent& agent : src.population) {
      if (!stream.bernoulli(prob)) continue;
      const double r = stream.uniform01() * wsum;
      double acc = 0.0;
      int dest = nbrs.back().id;
      for (const auto& nb : nbrs) {
        acc += net.edges()[nb.edge_index].w;
        if (r < acc) {
          dest = nb.id;
          break;
        }
      }
      Habitat& dst = habitats[static_cast<std::size_t>(dest)];
      Agent copy{dst.fresh_id(), agent.genome, epoch, src.id};
      events.push_back({copy.id, src.id, dest, epoch});
      dst.inbox.push_back(std::move(copy));
    }
  }
  return events;
}

void hebbian_update(HabitatNetwork& net,
                    std::span<const std::pair<int, int>> successes, double eta,
                    double lambda) {
  if (eta < 0.0 || lambda < 0.0 || lambda >= 1.0) {
    throw std::invalid_argument("hebbian_update: need eta >= 0, 0 <= lambda < 1");
  }
  // Reinforcement first; clamped increments commute.
  for (const auto& [i, j] : successes) {
    if (!net.has_edge(i, j)) {
      throw std::invalid_argument("hebbian_update: unknown edge in successes");
    }
    std::size_t idx = 0;
    for (const auto& nb : net.neighbors(i)) {
      if (nb.id == j) {
        idx = nb.edge_index;
        break;
      }
    }
    net.set_weight(idx, net.edges()[idx].w + eta);
  }
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    net.set_weight(e, net.edges()[e].w * (1.0 - lambda));
  }
}

std::string to_edge_list(const HabitatNetwork& net) {
  std::vector<Edge> sorted(net.edges());
  std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::string out;
  for (const Edge& e : sorted) {
    out += std::to_string(e.a);
    out += ' ';
    out += std::to_string(e.b);
    out += ' ';
    out += format_double(e.w);
    out += '\n';
  }
  return out;
}

HabitatNetwork parse_edge_list(const std::string& text, double w_max) {
  struct Parsed {
    int a, b;
    double w;
    int line;
  };
  std::vector<Parsed> rows;
  int max_node = -1;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    long a = 0, b = 0;
    double w = 0.0;
    std::string extra;
    if (!(ls >> a >> b >> w) || (ls >> extra)) {
      throw EdgeListError(line_no, "malformed edge line");
    }
    if (a < 0 || b < 0 || a == b) {
      throw EdgeListError(line_no, "invalid endpoints");
    }
    if (w < 0.0 || w > w_max) {
      throw EdgeListError(line_no, "weight outside [0, w_max]");
    }
    rows.push_back({static_cast<int>(a), static_cast<int>(b), w, line_no});
    max_node = std::max({max_node, static_cast<int>(a), static_cast<int>(b)});
  }
  HabitatNetwork net(max_node + 1, w_max);
  for (const Parsed& r : rows) {
    if (net.has_edge(r.a, r.b)) throw EdgeListError(r.line, "duplicate edge");
    net.add_edge(r.a, r.b, r.w);
  }
  return net;
}

}  // namespace evesim
