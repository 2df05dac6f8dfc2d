#pragma once

#include <string>
#include <vector>

#include "evesim/engine.hpp"

namespace evesim {

// Canned multi-run experiments with fixed seeds. Each returns the measured
// statistics plus a pass flag; the CLI serializes them as verdict JSON.

struct SmallWorldResult {
  int seeds = 0;
  double clustering_lattice = 0.0;
  double clustering_rewired = 0.0;
  double path_length_lattice = 0.0;
  double path_length_rewired = 0.0;
  double c_ratio = 0.0;  // C(p=0.1) / C(p=0)
  double l_ratio = 0.0;  // L(p=0.1) / L(p=0)
  bool pass_c = false;   // c_ratio >= 0.6
  bool pass_l = false;   // l_ratio <= 0.5
  bool pass = false;
};
SmallWorldResult recipe_smallworld();

struct ConvergenceResult {
  int seeds = 0;
  int successes = 0;  // best fitness hit 1.0 within the generation budget
  int generations_budget = 0;
  double success_fraction = 0.0;
  bool pass = false;  // fraction >= 0.9
};
ConvergenceResult recipe_convergence(int n_threads = 1);

struct PriorSamplingResult {
  int seeds = 0;
  double target_fitness = 0.95;
  int epoch_cap = 0;  // censored runs count as cap + 1
  std::vector<int> epochs_networked;
  std::vector<int> epochs_isolated;
  double median_networked = 0.0;
  double median_isolated = 0.0;
  bool pass = false;  // networked median strictly lower
};
PriorSamplingResult recipe_prior_sampling(int n_threads = 1);

struct SectorsResult {
  int seeds = 0;
  int wins = 0;  // seeds with intra-sector mean weight > inter-sector
  double mean_intra = 0.0;  // averaged over seeds
  double mean_inter = 0.0;
  bool pass = false;  // wins >= 18 of 20
};
SectorsResult recipe_sectors(int n_threads = 1);

struct FragmentationResult {
  int seeds = 0;
  std::vector<double> divergence_connected;
  std::vector<double> divergence_isolated;
  double median_connected = 0.0;
  double median_isolated = 0.0;
  bool pass = false;  // isolated median strictly higher
};
FragmentationResult recipe_fragmentation(int n_threads = 1);

inline const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = {
      "convergence", "prior-sampling", "sectors", "fragmentation",
      "smallworld"};
  return names;
}

}  // namespace evesim
