#include "evesim/recipes.hpp"

#include <algorithm>
#include <cmath>

#include "evesim/metrics.hpp"

namespace evesim {

namespace {

constexpr std::uint64_t kSeedBase = 1;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_int(const std::vector<int>& v) {
  std::vector<double> d(v.begin(), v.end());
  return median(std::move(d));
}

SimConfig static_single_habitat_config(std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_habitats = 1;
  cfg.sectors.count = 1;
  cfg.sectors.noise_rate = 0.0;
  cfg.sectors.drift_rate = 0.0;
  cfg.network.topology = Topology::edges;
  cfg.network.edges.clear();
  return cfg;
}

}  // namespace

SmallWorldResult recipe_smallworld() {
  SmallWorldResult r;
  r.seeds = 10;
  const int n = 200;
  const int k = 8;
  double c0 = 0.0, c1 = 0.0, l0 = 0.0, l1 = 0.0;
  for (int s = 0; s < r.seeds; ++s) {
    const RngDiscipline rngd{kSeedBase + static_cast<std::uint64_t>(s)};
    RngStream lattice_rng = rngd.stream(StreamKind::network, 0, 0,
                                        Phase::topology);
    RngStream rewired_rng = rngd.stream(StreamKind::network, 1, 0,
                                        Phase::topology);
    const auto lattice = watts_strogatz(n, k, 0.0, 0.1, 1.0, lattice_rng);
    const auto rewired = watts_strogatz(n, k, 0.1, 0.1, 1.0, rewired_rng);
    c0 += clustering_coefficient(lattice);
    c1 += clustering_coefficient(rewired);
    l0 += characteristic_path_length(lattice);
    l1 += characteristic_path_length(rewired);
  }
  const double inv = 1.0 / static_cast<double>(r.seeds);
  r.clustering_lattice = c0 * inv;
  r.clustering_rewired = c1 * inv;
  r.path_length_lattice = l0 * inv;
  r.path_length_rewired = l1 * inv;
  r.c_ratio = r.clustering_rewired / r.clustering_lattice;
  r.l_ratio = r.path_length_rewired / r.path_length_lattice;
  r.pass_c = r.c_ratio >= 0.6;
  r.pass_l = r.l_ratio <= 0.5;
  r.pass = r.pass_c && r.pass_l;
  return r;
}

ConvergenceResult recipe_convergence(int n_threads) {
  ConvergenceResult r;
  r.seeds = 20;
  r.generations_budget = 200;
  for (int s = 0; s < r.seeds; ++s) {
    SimConfig cfg =
        static_single_habitat_config(kSeedBase + static_cast<std::uint64_t>(s));
    cfg.epochs = r.generations_budget / cfg.generations_per_epoch;
    const RunResult res = run(cfg, n_threads);
    const bool hit = std::any_of(
        res.reports.begin(), res.reports.end(),
        [](const EpochReport& rep) { return rep.best_fitness_mean() >= 1.0; });
    if (hit) ++r.successes;
  }
  r.success_fraction =
      static_cast<double>(r.successes) / static_cast<double>(r.seeds);
  r.pass = r.success_fraction >= 0.9;
  return r;
}

namespace {

// Two habitats in one static sector; habitat 0 starts from the supplied
// genomes, habitat 1 starts cold. Returns the first epoch at which
// habitat 1's best fitness reaches `target`, or epoch_cap + 1.
int epochs_to_target(std::uint64_t seed, double link_weight,
                     const std::vector<Genome>& warm, double target,
                     int epoch_cap, int n_threads) {
  SimConfig cfg = static_single_habitat_config(seed);
  cfg.n_habitats = 2;
  cfg.network.edges = {{0, 1, link_weight}};
  SimState st = build_initial_state(cfg);
  st.habitats[0].replace_population(warm, 0);
  for (int e = 1; e <= epoch_cap; ++e) {
    const EpochReport rep = step_epoch(st, n_threads);
    if (rep.best_fitness[1] >= target) return e;
  }
  return epoch_cap + 1;
}

}  // namespace

PriorSamplingResult recipe_prior_sampling(int n_threads) {
  PriorSamplingResult r;
  r.seeds = 20;
  r.target_fitness = 0.95;
  r.epoch_cap = 100;
  const int warmup_epochs = 60;
  for (int s = 0; s < r.seeds; ++s) {
    const std::uint64_t seed = kSeedBase + static_cast<std::uint64_t>(s);
    // a neighbor that has already evolved on the same archetype
    SimConfig warm_cfg = static_single_habitat_config(seed);
    warm_cfg.epochs = warmup_epochs;
    const RunResult warm = run(warm_cfg, n_threads);
    std::vector<Genome> warm_genomes;
    for (const Agent& a : warm.final_state.habitats[0].population) {
      warm_genomes.push_back(a.genome);
    }
    r.epochs_networked.push_back(epochs_to_target(
        seed, 1.0, warm_genomes, r.target_fitness, r.epoch_cap, n_threads));
    r.epochs_isolated.push_back(epochs_to_target(
        seed, 0.0, warm_genomes, r.target_fitness, r.epoch_cap, n_threads));
  }
  r.median_networked = median_int(r.epochs_networked);
  r.median_isolated = median_int(r.epochs_isolated);
  r.pass = r.median_networked < r.median_isolated;
  return r;
}

SectorsResult recipe_sectors(int n_threads) {
  SectorsResult r;
  r.seeds = 20;
  double intra_sum = 0.0, inter_sum = 0.0;
  for (int s = 0; s < r.seeds; ++s) {
    SimConfig cfg;
    cfg.seed = kSeedBase + static_cast<std::uint64_t>(s);
    cfg.n_habitats = 10;
    cfg.sectors.count = 2;
    cfg.network.topology = Topology::complete;
    cfg.epochs = 300;
    const RunResult res = run(cfg, n_threads);
    double intra = 0.0, inter = 0.0;
    int n_intra = 0, n_inter = 0;
    for (const Edge& e : res.final_state.network.edges()) {
      const bool same_sector = (e.a < 5) == (e.b < 5);
      if (same_sector) {
        intra += e.w;
        ++n_intra;
      } else {
        inter += e.w;
        ++n_inter;
      }
    }
    intra /= static_cast<double>(n_intra);
    inter /= static_cast<double>(n_inter);
    intra_sum += intra;
    inter_sum += inter;
    if (intra > inter) ++r.wins;
  }
  r.mean_intra = intra_sum / static_cast<double>(r.seeds);
  r.mean_inter = inter_sum / static_cast<double>(r.seeds);
  r.pass = r.wins >= 18;
  return r;
}

FragmentationResult recipe_fragmentation(int n_threads) {
  FragmentationResult r;
  r.seeds = 20;
  for (int s = 0; s < r.seeds; ++s) {
    const std::uint64_t seed = kSeedBase + static_cast<std::uint64_t>(s);
    for (const bool connected : {true, false}) {
      SimConfig cfg;
      cfg.seed = seed;
      cfg.n_habitats = 2;
      cfg.sectors.count = 1;
      cfg.epochs = 200;
      cfg.network.topology = Topology::edges;
      // a weight-0 link carries no migrants: the habitats are isolated
      cfg.network.edges = {{0, 1, connected ? cfg.network.w_max : 0.0}};
      const RunResult res = run(cfg, n_threads);
      const double d = divergence(res.final_state.habitats[0],
                                  res.final_state.habitats[1]);
      (connected ? r.divergence_connected : r.divergence_isolated).push_back(d);
    }
  }
  r.median_connected = median(r.divergence_connected);
  r.median_isolated = median(r.divergence_isolated);
  r.pass = r.median_isolated > r.median_connected;
  return r;
}

}  // namespace evesim
