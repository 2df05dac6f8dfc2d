#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evesim/habitat.hpp"
#include "evesim/rng.hpp"

namespace evesim {

struct Edge {
  int a = 0;  // a < b
  int b = 0;
  double w = 0.0;
};

// Undirected weighted habitat graph. The edge set is fixed after
// construction; weights change through Hebbian updates and decay.
class HabitatNetwork {
 public:
  struct Neighbor {
    int id = 0;
    std::size_t edge_index = 0;
  };

  HabitatNetwork() = default;
  HabitatNetwork(int n, double w_max) { assign(n, w_max); }

  // Reset to n isolated nodes, keeping allocated capacity.
  void assign(int n, double w_max);

  void add_edge(int i, int j, double w);
  bool has_edge(int i, int j) const;
  double weight(int i, int j) const;
  void set_weight(std::size_t edge_index, double w);

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  double w_max() const { return w_max_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(int i) const {
    return adj_[static_cast<std::size_t>(i)];
  }
  int degree(int i) const {
    return static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
  }
  double incident_weight_sum(int i) const;
  double mean_weight() const;

  // Subgraph keeping edges with w >= tau (same node set).
  HabitatNetwork thresholded(double tau) const;

 private:
  std::size_t find_edge(int i, int j) const;  // npos if absent

  int n_ = 0;
  double w_max_ = 1.0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Ring lattice over k nearest neighbors with each lattice edge rewired
// with probability p; always nk/2 edges, no self-loops or duplicates.
HabitatNetwork watts_strogatz(int n, int k, double p, double w_init,
                              double w_max, RngStream& rng);

HabitatNetwork complete_graph(int n, double w_init, double w_max);

// Mean over nodes of (edges among neighbors) / (deg*(deg-1)/2);
// nodes with degree < 2 contribute 0.
double clustering_coefficient(const HabitatNetwork& net);

// Mean shortest-path hop count over unordered node pairs.
// Throws std::domain_error if the graph is disconnected or has < 2 nodes.
double characteristic_path_length(const HabitatNetwork& net);

// Connected components of the subgraph with w >= tau,
// sorted by (size desc, smallest id asc); members ascending.
std::vector<std::vector<int>> components_at(const HabitatNetwork& net,
                                            double tau);

struct MigrationEvent {
  AgentId agent_id = 0;  // id of the migrating copy
  int source = 0;
  int dest = 0;
  std::uint32_t epoch = 0;
};

// Each agent of habitat i emigrates a copy with probability
// p_mig * (sum_j w_ij / (deg_i * w_max)); the destination is drawn
// proportional to w_ij. Copies get fresh destination-side ids and land in
// the destination inbox; originals stay.
std::vector<MigrationEvent> migrate(const HabitatNetwork& net,
                                    std::vector<Habitat>& habitats,
                                    double p_mig, std::uint32_t epoch,
                                    const RngDiscipline& rng);

// Phase 1: each success (i, j) adds eta to w_ij, clamped at w_max.
// Phase 2: every edge decays by factor (1 - lambda).
void hebbian_update(HabitatNetwork& net,
                    std::span<const std::pair<int, int>> successes, double eta,
                    double lambda);

// "i j w" per line, edges sorted by (i, j).
std::string to_edge_list(const HabitatNetwork& net);

struct EdgeListError : std::runtime_error {
  int line;
  EdgeListError(int line_, const std::string& what)
      : std::runtime_error(what), line(line_) {}
};

HabitatNetwork parse_edge_list(const std::string& text, double w_max);

}  // namespace evesim
