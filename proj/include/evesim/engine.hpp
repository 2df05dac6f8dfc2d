#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evesim/genome.hpp"
#include "evesim/habitat.hpp"
#include "evesim/network.hpp"
#include "evesim/requests.hpp"
#include "evesim/rng.hpp"

namespace evesim {

struct SectorConfig {
  int count = 1;
  double noise_rate = 0.05;
  double drift_rate = 0.005;
  int archetype_length = 12;
};

enum class Topology { watts_strogatz, complete, edges };

struct NetworkConfig {
  Topology topology = Topology::watts_strogatz;
  int k = 4;                 // watts_strogatz only
  double rewire_prob = 0.1;  // watts_strogatz only
  double w_init = 0.1;
  double w_max = 1.0;
  double eta = 0.05;    // Hebbian increment per successful exchange
  double lambda = 0.01; // per-epoch decay
  std::vector<Edge> edges;  // explicit topology
};

struct FeedbackConfig {
  int floor = 0;       // 0 disables the global feedback
  double boost = 2.0;  // mutation multiplier while active
};

struct SimConfig {
  std::uint64_t seed = 1;
  int n_habitats = 10;
  int epochs = 100;               // T; run() emits T+1 reports
  int generations_per_epoch = 5;  // G
  double p_migration = 0.05;
  double species_theta = 0.1;
  double report_tau = 0.05;  // weight threshold for per-epoch graph stats
  GenomeLimits genome;
  GAParams ga;
  SectorConfig sectors;
  NetworkConfig network;
  FeedbackConfig feedback;

  // One message per offending field; empty means valid.
  std::vector<std::string> validate() const;
};

struct ConfigError : std::runtime_error {
  std::vector<std::string> details;
  explicit ConfigError(std::vector<std::string> details_)
      : std::runtime_error(details_.empty() ? "invalid config"
                                            : details_.front()),
        details(std::move(details_)) {}
};

struct EpochReport {
  std::uint32_t epoch = 0;
  std::vector<double> best_fitness;  // per habitat
  std::vector<double> mean_fitness;  // per habitat
  int species_count = 0;
  std::vector<int> abundance;  // cluster sizes, descending
  double shannon = 0.0;
  std::size_t migrations = 0;
  std::size_t accepted = 0;
  double mean_weight = 0.0;
  double clustering = 0.0;                // of the tau-thresholded graph
  std::optional<double> path_length;      // empty if disconnected
  int components = 0;                     // at tau
  bool feedback_active = false;
  std::vector<MigrationEvent> events;  // not serialized to CSV

  double best_fitness_mean() const;
  double mean_fitness_mean() const;
};

struct SimState {
  SimConfig config;
  std::uint32_t epoch = 0;
  std::vector<Habitat> habitats;  // index == habitat id
  HabitatNetwork network;
  std::vector<SectorProfile> sectors;
  bool feedback_active = false;

  RngDiscipline rng() const { return {config.seed}; }
  const SectorProfile& sector_of(int habitat_id) const;
};

// Validates the config (throws ConfigError) and builds epoch-0 state:
// random populations, sector archetypes, topology, and epoch-0 requests.
SimState build_initial_state(const SimConfig& config);

// Metrics snapshot of the current state (no phase is executed).
EpochReport snapshot_report(const SimState& state, int n_threads = 1);

// One epoch in fixed phase order: drift, per-habitat GA, migration,
// absorption, Hebbian update, global feedback, metrics.
EpochReport step_epoch(SimState& state, int n_threads = 1);

// Sets every habitat's effective mutation rate depending on whether the
// global species count is below the floor.
void feedback_check(SimState& state, int species_count, int floor,
                    double boost);

struct RunResult {
  std::vector<EpochReport> reports;  // epochs 0..T
  SimState final_state;
};

// Pure function of the config: same config, same reports, regardless of
// n_threads.
RunResult run(const SimConfig& config, int n_threads = 1);

// All agents of all habitats, by (habitat id, agent id).
std::vector<Agent> union_population(const SimState& state);

}  // namespace evesim
