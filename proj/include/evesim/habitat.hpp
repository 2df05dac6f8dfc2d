#pragma once

#include <span>
#include <utility>
#include <vector>

#include "evesim/genome.hpp"
#include "evesim/rng.hpp"

namespace evesim {

struct GAParams {
  int pop_capacity = 50;
  int tournament_size = 3;
  double crossover_prob = 0.7;
  double mutation_rate = 0.02;  // per symbol
  double indel_rate = 0.01;     // per genome
  int elitism = 1;
};

struct FitnessEntry {
  AgentId id = 0;
  double fitness = 0.0;
};

// Draws k entrants uniformly without replacement and returns the id of the
// fittest; ties go to the lower id.
AgentId tournament_select(std::span<const FitnessEntry> fits, int k,
                          RngStream& rng);

// One-point crossover at `cut`, 1 <= cut <= min(|g1|, |g2|) - 1.
std::pair<Genome, Genome> crossover(const Genome& g1, const Genome& g2,
                                    std::size_t cut, int max_length);

// Per-symbol resampling with probability `rate`, then with probability
// `indel` one insert or delete (50/50, uniform position); length is kept
// in [1, max_length] by skipping the infeasible operation.
void mutate(Genome& g, double rate, double indel, const GenomeLimits& limits,
            RngStream& rng);

// One peer node: a population plus its local generational GA.
class Habitat {
 public:
  int id = 0;
  GAParams params;
  GenomeLimits limits;
  std::vector<Agent> population;  // sorted by agent id
  std::vector<Agent> inbox;       // pending migrants
  Request current_request;
  double effective_mutation_rate = 0.02;
  std::uint64_t next_serial = 0;

  // Ids are sharded per habitat so parallel habitats never collide.
  AgentId fresh_id() {
    return (static_cast<AgentId>(static_cast<std::uint64_t>(id)) << 40) |
           next_serial++;
  }

  // Fitness of every member under current_request, ordered by agent id.
  std::vector<FitnessEntry> evaluate() const;

  // Generational step: keep the elite, fill the rest with mutated
  // (possibly recombined) tournament offspring. Population size is
  // preserved; offspring get fresh ids and birth_epoch = epoch.
  void evolve_generation(std::uint32_t epoch, RngStream& rng);

  // Append the inbox, truncate to capacity by fitness (ties to lower id),
  // clear the inbox. Returns ids of migrants that survived.
  std::vector<AgentId> absorb_inbox();

  // Rebuild the population from bare genomes (fresh ids, given birth epoch).
  void replace_population(const std::vector<Genome>& genomes,
                          std::uint32_t epoch);
};

}  // namespace evesim
