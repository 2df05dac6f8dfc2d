#pragma once

#include <vector>

#include "evesim/genome.hpp"
#include "evesim/rng.hpp"

namespace evesim {

// A group of habitats sharing one request archetype.
struct SectorProfile {
  int id = 0;
  Genome archetype;
  std::vector<int> members;  // habitat ids, ascending
  double noise_rate = 0.05;  // per symbol, per request
  double drift_rate = 0.005;  // per symbol, per epoch

  bool has_member(int habitat_id) const;
};

// The archetype with each symbol independently resampled (to a different
// symbol) with probability noise_rate. Deterministic in
// (seed, habitat, epoch).
Request next_request(const SectorProfile& s, int habitat_id,
                     std::uint32_t epoch, const RngDiscipline& rng,
                     int alphabet);

// Resample archetype symbols in place with probability drift_rate each;
// length never changes.
void drift(SectorProfile& s, std::uint32_t epoch, const RngDiscipline& rng,
           int alphabet);

}  // namespace evesim
