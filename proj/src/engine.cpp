#include "evesim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "evesim/metrics.hpp"

namespace evesim {

namespace {

void append_prob_error(std::vector<std::string>& errs, const char* name,
                       double v) {
  if (v < 0.0 || v > 1.0) {
    errs.push_back(std::string(name) + " must be in [0, 1]");
  }
}

// Runs fn(0..n-1) on up to n_threads workers. Each index must touch only
// its own slot of shared data; scheduling order never affects results.
void parallel_for(int n_threads, int n, const std::function<void(int)>& fn) {
  if (n_threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min(n_threads, n);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

double EpochReport::best_fitness_mean() const {
  if (best_fitness.empty()) return 0.0;
  return std::accumulate(best_fitness.begin(), best_fitness.end(), 0.0) /
         static_cast<double>(best_fitness.size());
}

double EpochReport::mean_fitness_mean() const {
  if (mean_fitness.empty()) return 0.0;
  return std::accumulate(mean_fitness.begin(), mean_fitness.end(), 0.0) /
         static_cast<double>(mean_fitness.size());
}

std::vector<std::string> SimConfig::validate() const {
  std::vector<std::string> errs;
  if (n_habitats < 1) errs.push_back("n_habitats must be >= 1");
  if (epochs < 0) errs.push_back("epochs must be >= 0");
  if (generations_per_epoch < 1) {
    errs.push_back("generations_per_epoch must be >= 1");
  }
  append_prob_error(errs, "p_migration", p_migration);
  if (species_theta < 0.0 || species_theta >= 1.0) {
    errs.push_back("species_theta must be in [0, 1)");
  }
  if (report_tau < 0.0 || report_tau > network.w_max) {
    errs.push_back("report_tau must be in [0, w_max]");
  }
  if (genome.alphabet < 2 || genome.alphabet > 65536) {
    errs.push_back("genome.alphabet must be in [2, 65536]");
  }
  if (genome.max_length < 1) errs.push_back("genome.max_length must be >= 1");
  if (ga.pop_capacity < 1) errs.push_back("ga.pop_capacity must be >= 1");
  if (ga.tournament_size < 1 || ga.tournament_size > ga.pop_capacity) {
    errs.push_back("ga.tournament_size must be in [1, pop_capacity]");
  }
  if (ga.elitism < 0 || ga.elitism > ga.pop_capacity) {
    errs.push_back("ga.elitism must be in [0, pop_capacity]");
  }
  append_prob_error(errs, "ga.crossover_prob", ga.crossover_prob);
  append_prob_error(errs, "ga.mutation_rate", ga.mutation_rate);
  append_prob_error(errs, "ga.indel_rate", ga.indel_rate);
  if (sectors.count < 1) {
    errs.push_back("sectors.count must be >= 1");
  } else if (n_habitats >= 1 && n_habitats % sectors.count != 0) {
    errs.push_back("sectors.count must divide n_habitats");
  }
  append_prob_error(errs, "sectors.noise_rate", sectors.noise_rate);
  append_prob_error(errs, "sectors.drift_rate", sectors.drift_rate);
  if (sectors.archetype_length < 1 ||
      sectors.archetype_length > genome.max_length) {
    errs.push_back("sectors.archetype_length must be in [1, genome.max_length]");
  }
  if (network.w_max <= 0.0) errs.push_back("network.w_max must be > 0");
  if (network.w_init < 0.0 || network.w_init > network.w_max) {
    errs.push_back("network.w_init must be in [0, w_max]");
  }
  if (network.eta < 0.0) errs.push_back("network.eta must be >= 0");
  if (network.lambda < 0.0 || network.lambda >= 1.0) {
    errs.push_back("network.lambda must be in [0, 1)");
  }
  switch (network.topology) {
    case Topology::watts_strogatz:
      if (network.k < 2 || network.k % 2 != 0 || n_habitats <= network.k) {
        errs.push_back("network.k must be even with n_habitats > k >= 2");
      }
      append_prob_error(errs, "network.rewire_prob", network.rewire_prob);
      break;
    case Topology::complete:
      break;
    case Topology::edges: {
      if (network.edges.empty() && n_habitats > 1) {
        errs.push_back("network.edges must be nonempty for n_habitats > 1");
      }
      for (const Edge& e : network.edges) {
        if (e.a < 0 || e.b < 0 || e.a >= n_habitats || e.b >= n_habitats) {
          errs.push_back("network.edges: endpoint out of range");
        } else if (e.a == e.b) {
          errs.push_back("network.edges: self-loop");
        }
        if (e.w < 0.0 || e.w > network.w_max) {
          errs.push_back("network.edges: weight outside [0, w_max]");
        }
      }
      break;
    }
  }
  if (feedback.floor < 0) errs.push_back("feedback.floor must be >= 0");
  if (feedback.boost < 0.0) errs.push_back("feedback.boost must be >= 0");
  return errs;
}

const SectorProfile& SimState::sector_of(int habitat_id) const {
  for (const SectorProfile& s : sectors) {
    if (s.has_member(habitat_id)) return s;
  }
  throw std::logic_error("sector_of: habitat not in any sector");
}

SimState build_initial_state(const SimConfig& config) {
  auto errs = config.validate();
  if (!errs.empty()) throw ConfigError(std::move(errs));

  SimState st;
  st.config = config;
  const RngDiscipline rngd = st.rng();

  const int per_sector = config.n_habitats / config.sectors.count;
  for (int s = 0; s < config.sectors.count; ++s) {
    SectorProfile profile;
    profile.id = s;
    profile.noise_rate = config.sectors.noise_rate;
    profile.drift_rate = config.sectors.drift_rate;
    for (int i = s * per_sector; i < (s + 1) * per_sector; ++i) {
      profile.members.push_back(i);
    }
    RngStream stream = rngd.stream(StreamKind::sector,
                                   static_cast<std::uint64_t>(s), 0,
                                   Phase::archetype);
    profile.archetype = random_genome(config.sectors.archetype_length,
                                      config.genome.alphabet, stream);
    st.sectors.push_back(std::move(profile));
  }

  switch (config.network.topology) {
    case Topology::watts_strogatz: {
      RngStream stream =
          rngd.stream(StreamKind::network, 0, 0, Phase::topology);
      st.network = watts_strogatz(config.n_habitats, config.network.k,
                                  config.network.rewire_prob,
                                  config.network.w_init, config.network.w_max,
                                  stream);
      break;
    }
    case Topology::complete:
      st.network = complete_graph(config.n_habitats, config.network.w_init,
                                  config.network.w_max);
      break;
    case Topology::edges: {
      st.network.assign(config.n_habitats, config.network.w_max);
      for (const Edge& e : config.network.edges) {
        st.network.add_edge(e.a, e.b, e.w);
      }
      break;
    }
  }

  st.habitats.reserve(static_cast<std::size_t>(config.n_habitats));
  for (int i = 0; i < config.n_habitats; ++i) {
    Habitat h;
    h.id = i;
    h.params = config.ga;
    h.limits = config.genome;
    h.effective_mutation_rate = config.ga.mutation_rate;
    RngStream stream = rngd.stream(StreamKind::habitat,
                                   static_cast<std::uint64_t>(i), 0,
                                   Phase::init);
    std::vector<Genome> genomes;
    genomes.reserve(static_cast<std::size_t>(config.ga.pop_capacity));
    for (int a = 0; a < config.ga.pop_capacity; ++a) {
      genomes.push_back(random_genome(config.sectors.archetype_length,
                                      config.genome.alphabet, stream));
    }
    h.replace_population(genomes, 0);
    h.current_request =
        next_request(st.sector_of(i), i, 0, rngd, config.genome.alphabet);
    st.habitats.push_back(std::move(h));
  }
  return st;
}

namespace {

EpochReport compute_report(const SimState& st, std::uint32_t epoch,
                           const SpeciesPartition& partition,
                           std::vector<MigrationEvent> events,
                           std::size_t accepted, int n_threads) {
  EpochReport rep;
  rep.epoch = epoch;
  rep.migrations = events.size();
  rep.accepted = accepted;
  rep.events = std::move(events);
  rep.feedback_active = st.feedback_active;

  const int n = static_cast<int>(st.habitats.size());
  rep.best_fitness.assign(static_cast<std::size_t>(n), 0.0);
  rep.mean_fitness.assign(static_cast<std::size_t>(n), 0.0);
  parallel_for(n_threads, n, [&](int i) {
    const auto fits = st.habitats[static_cast<std::size_t>(i)].evaluate();
    double best = 0.0, sum = 0.0;
    for (const auto& f : fits) {
      best = std::max(best, f.fitness);
      sum += f.fitness;
    }
    rep.best_fitness[static_cast<std::size_t>(i)] = best;
    rep.mean_fitness[static_cast<std::size_t>(i)] =
        fits.empty() ? 0.0 : sum / static_cast<double>(fits.size());
  });

  for (const auto& cluster : partition.clusters) {
    rep.abundance.push_back(static_cast<int>(cluster.size()));
  }
  rep.species_count = static_cast<int>(rep.abundance.size());
  rep.shannon = rep.abundance.empty() ? 0.0 : shannon_diversity(rep.abundance);

  rep.mean_weight = st.network.mean_weight();
  const HabitatNetwork view = st.network.thresholded(st.config.report_tau);
  rep.clustering = clustering_coefficient(view);
  const auto comps = components_at(st.network, st.config.report_tau);
  rep.components = static_cast<int>(comps.size());
  if (rep.components == 1 && view.node_count() >= 2) {
    rep.path_length = characteristic_path_length(view);
  }
  return rep;
}

}  // namespace

std::vector<Agent> union_population(const SimState& state) {
  std::vector<Agent> all;
  for (const Habitat& h : state.habitats) {
    all.insert(all.end(), h.population.begin(), h.population.end());
  }
  return all;
}

void feedback_check(SimState& state, int species_count, int floor,
                    double boost) {
  const bool low = species_count < floor;
  state.feedback_active = low;
  for (Habitat& h : state.habitats) {
    h.effective_mutation_rate =
        low ? std::min(h.params.mutation_rate * boost, 0.5)
            : h.params.mutation_rate;
  }
}

EpochReport snapshot_report(const SimState& state, int n_threads) {
  const auto partition =
      species_partition(union_population(state), state.config.species_theta);
  return compute_report(state, state.epoch, partition, {}, 0, n_threads);
}

EpochReport step_epoch(SimState& st, int n_threads) {
  const std::uint32_t epoch = st.epoch + 1;
  const RngDiscipline rngd = st.rng();
  const SimConfig& cfg = st.config;

  // 1. sector drift
  for (SectorProfile& s : st.sectors) {
    drift(s, epoch, rngd, cfg.genome.alphabet);
  }

  // 2. per habitat: draw request, run G generations
  parallel_for(n_threads, static_cast<int>(st.habitats.size()), [&](int i) {
    Habitat& h = st.habitats[static_cast<std::size_t>(i)];
    h.current_request =
        next_request(st.sector_of(i), i, epoch, rngd, cfg.genome.alphabet);
    RngStream ga_rng = rngd.stream(StreamKind::habitat,
                                   static_cast<std::uint64_t>(i), epoch,
                                   Phase::ga);
    for (int g = 0; g < cfg.generations_per_epoch; ++g) {
      h.evolve_generation(epoch, ga_rng);
    }
  });

  // 3. migration
  std::vector<MigrationEvent> events =
      migrate(st.network, st.habitats, cfg.p_migration, epoch, rngd);

  // 4. absorption; surviving migrants are the Hebbian success signal
  std::unordered_map<AgentId, const MigrationEvent*> event_by_id;
  event_by_id.reserve(events.size());
  for (const MigrationEvent& e : events) event_by_id.emplace(e.agent_id, &e);
  std::vector<std::pair<int, int>> successes;
  std::size_t accepted_total = 0;
  for (Habitat& h : st.habitats) {
    const auto accepted = h.absorb_inbox();
    accepted_total += accepted.size();
    for (AgentId id : accepted) {
      const MigrationEvent* e = event_by_id.at(id);
      successes.emplace_back(e->source, e->dest);
    }
  }

  // 5. Hebbian reinforcement and decay
  hebbian_update(st.network, successes, cfg.network.eta, cfg.network.lambda);

  // 6. global negative feedback on the species count
  const auto partition =
      species_partition(union_population(st), cfg.species_theta);
  feedback_check(st, static_cast<int>(partition.clusters.size()),
                 cfg.feedback.floor, cfg.feedback.boost);

  // 7. metrics
  EpochReport rep = compute_report(st, epoch, partition, std::move(events),
                                   accepted_total, n_threads);
  st.epoch = epoch;
  return rep;
}

RunResult run(const SimConfig& config, int n_threads) {
  RunResult result;
  result.final_state = build_initial_state(config);
  result.reports.reserve(static_cast<std::size_t>(config.epochs) + 1);
  result.reports.push_back(snapshot_report(result.final_state, n_threads));
  for (int t = 0; t < config.epochs; ++t) {
    result.reports.push_back(step_epoch(result.final_state, n_threads));
  }
  return result;
}

}  // namespace evesim
