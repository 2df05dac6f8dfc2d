#include "evesim/habitat.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace evesim {

namespace {

// fitness desc, then id asc
bool fitter(const FitnessEntry& a, const FitnessEntry& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.id < b.id;
}

std::vector<FitnessEntry> score(const std::vector<Agent>& agents,
                                const Genome& target) {
  // Converged populations carry many duplicate genomes; score each
  // distinct genome once.
  std::unordered_map<Genome, double, GenomeHash> cache;
  std::vector<FitnessEntry> fits;
  fits.reserve(agents.size());
  for (const Agent& a : agents) {
    auto it = cache.find(a.genome);
    if (it == cache.end()) {
      it = cache.emplace(a.genome, fitness(a.genome, target)).first;
    }
    fits.push_back({a.id, it->second});
  }
  return fits;
}

}  // namespace

AgentId tournament_select(std::span<const FitnessEntry> fits, int k,
                          RngStream& rng) {
  if (fits.empty()) {
    throw std::invalid_argument("tournament_select: empty fitness list");
  }
  if (k < 1 || static_cast<std::size_t>(k) > fits.size()) {
    throw std::invalid_argument("tournament_select: k out of range");
  }
  // Partial Fisher-Yates over indices draws k entrants without replacement.
  std::vector<std::size_t> idx(fits.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const FitnessEntry* best = nullptr;
  for (int t = 0; t < k; ++t) {
    const std::size_t pick =
        static_cast<std::size_t>(t) +
        rng.index(idx.size() - static_cast<std::size_t>(t));
    std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
    const FitnessEntry& e = fits[idx[static_cast<std::size_t>(t)]];
    if (best == nullptr || fitter(e, *best)) best = &e;
  }
  return best->id;
}

std::pair<Genome, Genome> crossover(const Genome& g1, const Genome& g2,
                                    std::size_t cut, int max_length) {
  const std::size_t min_len = std::min(g1.size(), g2.size());
  if (cut < 1 || cut > min_len - 1 || min_len < 2) {
    throw std::out_of_range("crossover: cut out of range");
  }
  Genome c1, c2;
  c1.symbols.assign(g1.symbols.begin(),
                    g1.symbols.begin() + static_cast<std::ptrdiff_t>(cut));
  c1.symbols.insert(c1.symbols.end(),
                    g2.symbols.begin() + static_cast<std::ptrdiff_t>(cut),
                    g2.symbols.end());
  c2.symbols.assign(g2.symbols.begin(),
                    g2.symbols.begin() + static_cast<std::ptrdiff_t>(cut));
  c2.symbols.insert(c2.symbols.end(),
                    g1.symbols.begin() + static_cast<std::ptrdiff_t>(cut),
                    g1.symbols.end());
  const std::size_t cap = static_cast<std::size_t>(max_length);
  if (c1.symbols.size() > cap) c1.symbols.resize(cap);
  if (c2.symbols.size() > cap) c2.symbols.resize(cap);
  return {std::move(c1), std::move(c2)};
}

void mutate(Genome& g, double rate, double indel, const GenomeLimits& limits,
            RngStream& rng) {
  for (Symbol& s : g.symbols) {
    if (rng.bernoulli(rate)) s = resample_different(s, limits.alphabet, rng);
  }
  if (rng.bernoulli(indel)) {
    if (rng.bernoulli(0.5)) {
      if (g.symbols.size() < static_cast<std::size_t>(limits.max_length)) {
        const std::size_t pos = rng.index(g.symbols.size() + 1);
        const Symbol s = static_cast<Symbol>(
            rng.index(static_cast<std::size_t>(limits.alphabet)));
        g.symbols.insert(g.symbols.begin() + static_cast<std::ptrdiff_t>(pos),
                         s);
      }
    } else {
      if (g.symbols.size() > 1) {
        const std::size_t pos = rng.index(g.symbols.size());
        g.symbols.erase(g.symbols.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }
  }
}

std::vector<FitnessEntry> Habitat::evaluate() const {
  return score(population, current_request.target);
}

void Habitat::evolve_generation(std::uint32_t epoch, RngStream& rng) {
  if (population.empty()) {
    throw std::logic_error("evolve_generation: empty population");
  }
  const std::vector<FitnessEntry> fits = evaluate();
  std::vector<std::size_t> order(fits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fitter(fits[a], fits[b]);
  });

  std::unordered_map<AgentId, const Agent*> by_id;
  by_id.reserve(population.size());
  for (const Agent& a : population) by_id.emplace(a.id, &a);

  const std::size_t size = population.size();
  std::vector<Agent> next;
  next.reserve(size);
  const std::size_t n_elite =
      std::min(static_cast<std::size_t>(params.elitism), size);
  for (std::size_t e = 0; e < n_elite; ++e) {
    next.push_back(*by_id.at(fits[order[e]].id));
  }

  const int k = std::min<int>(params.tournament_size,
                              static_cast<int>(fits.size()));
  while (next.size() < size) {
    const AgentId p1 = tournament_select(fits, k, rng);
    const AgentId p2 = tournament_select(fits, k, rng);
    const Genome& g1 = by_id.at(p1)->genome;
    const Genome& g2 = by_id.at(p2)->genome;
    Genome c1 = g1;
    Genome c2 = g2;
    const std::size_t min_len = std::min(g1.size(), g2.size());
    if (rng.bernoulli(params.crossover_prob) && min_len >= 2) {
      const std::size_t cut = 1 + rng.index(min_len - 1);
      std::tie(c1, c2) = crossover(g1, g2, cut, limits.max_length);
    }
    mutate(c1, effective_mutation_rate, params.indel_rate, limits, rng);
    mutate(c2, effective_mutation_rate, params.indel_rate, limits, rng);
    next.push_back({fresh_id(), std::move(c1), epoch, id});
    if (next.size() < size) {
      next.push_back({fresh_id(), std::move(c2), epoch, id});
    }
  }
  std::sort(next.begin(), next.end(),
            [](const Agent& a, const Agent& b) { return a.id < b.id; });
  population = std::move(next);
}

std::vector<AgentId> Habitat::absorb_inbox() {
  if (inbox.empty()) return {};
  std::vector<AgentId> inbox_ids;
  inbox_ids.reserve(inbox.size());
  for (const Agent& a : inbox) inbox_ids.push_back(a.id);

  population.insert(population.end(), std::make_move_iterator(inbox.begin()),
                    std::make_move_iterator(inbox.end()));
  inbox.clear();
  std::sort(population.begin(), population.end(),
            [](const Agent& a, const Agent& b) { return a.id < b.id; });

  const std::size_t cap = static_cast<std::size_t>(params.pop_capacity);
  if (population.size() > cap) {
    std::vector<FitnessEntry> fits = score(population, current_request.target);
    std::vector<std::size_t> order(fits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fitter(fits[a], fits[b]);
    });
    std::vector<Agent> kept;
    kept.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) {
      kept.push_back(std::move(population[order[i]]));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Agent& a, const Agent& b) { return a.id < b.id; });
    population = std::move(kept);
  }

  std::vector<AgentId> accepted;
  std::sort(inbox_ids.begin(), inbox_ids.end());
  for (AgentId mid : inbox_ids) {
    const auto it = std::lower_bound(
        population.begin(), population.end(), mid,
        [](const Agent& a, AgentId v) { return a.id < v; });
    if (it != population.end() && it->id == mid) accepted.push_back(mid);
  }
  return accepted;
}

void Habitat::replace_population(const std::vector<Genome>& genomes,
                                 std::uint32_t epoch) {
  population.clear();
  population.reserve(genomes.size());
  for (const Genome& g : genomes) {
    population.push_back({fresh_id(), g, epoch, id});
  }
}

}  // namespace evesim
