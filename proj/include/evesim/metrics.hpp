#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evesim/habitat.hpp"
#include "evesim/rng.hpp"

namespace evesim {

// H = -sum p_i ln p_i. Throws on empty input or non-positive counts.
double shannon_diversity(std::span<const int> abundances);

// Sample skewness of {ln count_i}; qualitative pass band |skew| <= 1.
// Fewer than 10 species is inconclusive, not an error.
struct LogNormalCheck {
  bool conclusive = false;
  int n_species = 0;
  double skewness = 0.0;
  bool pass = false;
};
LogNormalCheck lognormal_shape_check(std::span<const int> abundances);

// Least-squares slope of log S against log area. Needs >= 2 distinct
// areas and positive values throughout.
double power_law_exponent(
    std::span<const std::pair<double, double>> area_species);

struct SpeciesAreaPoint {
  int area = 0;
  double mean_species = 0.0;
};
struct SpeciesAreaResult {
  std::vector<SpeciesAreaPoint> curve;
  double exponent = 0.0;
};

// For each sample size, draws `replicates` random habitat subsets, counts
// species in the pooled population at theta, then fits the power law.
SpeciesAreaResult species_area(std::span<const Habitat> habitats,
                               std::span<const int> sample_sizes, double theta,
                               int replicates, RngStream& rng);

// Mean normalized genome distance over the full population cross product.
double divergence(const Habitat& a, const Habitat& b);

}  // namespace evesim
