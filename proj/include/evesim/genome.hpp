#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evesim/rng.hpp"

namespace evesim {

using Symbol = std::uint16_t;
using AgentId = std::uint64_t;

struct GenomeLimits {
  int alphabet = 16;    // symbols live in [0, alphabet)
  int max_length = 64;  // lengths live in [1, max_length]
};

// A service composition: an ordered, variable-length sequence of service ids.
struct Genome {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  bool operator==(const Genome&) const = default;
};

struct GenomeHash {
  std::size_t operator()(const Genome& g) const noexcept;
};

bool valid_genome(const Genome& g, const GenomeLimits& limits);

Genome random_genome(int length, int alphabet, RngStream& rng);

// uniform draw over the alphabet excluding `current`
Symbol resample_different(Symbol current, int alphabet, RngStream& rng);

struct Agent {
  AgentId id = 0;
  Genome genome;
  std::uint32_t birth_epoch = 0;
  int home_habitat = 0;
};

struct Request {
  Genome target;
  std::uint32_t epoch = 0;
};

// Levenshtein(a, b) in edit operations (insert, delete, substitute).
int edit_distance(const Genome& a, const Genome& b);

// edit_distance / max(|a|, |b|); defined as 0 for two empty genomes.
double distance(const Genome& a, const Genome& b);

// Equivalent to distance(a, b) <= theta, with banded early exit.
bool within_distance(const Genome& a, const Genome& b, double theta);

double fitness(const Genome& g, const Genome& target);
double fitness(const Agent& a, const Request& r);

// Single-linkage clusters under normalized distance <= theta.
// Clusters are sorted by (size desc, smallest member id asc); members asc.
struct SpeciesPartition {
  std::vector<std::vector<AgentId>> clusters;
  double theta = 0.0;
};

SpeciesPartition species_partition(std::span<const Agent> population,
                                   double theta);

}  // namespace evesim
