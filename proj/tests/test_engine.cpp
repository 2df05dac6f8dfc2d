#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "evesim/engine.hpp"
#include "evesim/output.hpp"

using namespace evesim;

namespace {

SimConfig small_config(std::uint64_t seed = 1) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_habitats = 4;
  cfg.epochs = 8;
  cfg.ga.pop_capacity = 12;
  cfg.sectors.count = 2;
  cfg.sectors.archetype_length = 6;
  cfg.network.topology = Topology::complete;
  return cfg;
}

SimConfig single_static_config(std::uint64_t seed = 1) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_habitats = 1;
  cfg.epochs = 20;
  cfg.ga.pop_capacity = 20;
  cfg.sectors.count = 1;
  cfg.sectors.noise_rate = 0.0;
  cfg.sectors.drift_rate = 0.0;
  cfg.sectors.archetype_length = 6;
  cfg.network.topology = Topology::edges;
  cfg.network.edges.clear();
  return cfg;
}

}  // namespace

TEST_CASE("run with T = 0 emits only the initial report") {
  SimConfig cfg = small_config();
  cfg.epochs = 0;
  const auto result = run(cfg);
  REQUIRE(result.reports.size() == 1);
  CHECK(result.reports[0].epoch == 0);
  CHECK(result.reports[0].migrations == 0);
}

TEST_CASE("static single habitat has monotone best fitness") {
  const auto result = run(single_static_config(3));
  REQUIRE(result.reports.size() == 21);
  double best = 0.0;
  for (const auto& rep : result.reports) {
    CHECK(rep.best_fitness[0] >= best);
    best = rep.best_fitness[0];
  }
}

TEST_CASE("weights stay constant without migration or decay") {
  SimConfig cfg = small_config();
  cfg.p_migration = 0.0;
  cfg.network.lambda = 0.0;
  const auto result = run(cfg);
  for (const auto& rep : result.reports) {
    CHECK(rep.mean_weight == result.reports.front().mean_weight);
    CHECK(rep.mean_weight == doctest::Approx(cfg.network.w_init).epsilon(1e-12));
    CHECK(rep.migrations == 0);
    CHECK(rep.accepted == 0);
  }
  for (const Edge& e : result.final_state.network.edges()) {
    CHECK(e.w == cfg.network.w_init);
  }
}

TEST_CASE("identical configs reproduce byte-identical reports") {
  const auto a = run(small_config(17));
  const auto b = run(small_config(17));
  CHECK(reports_to_csv(a.reports) == reports_to_csv(b.reports));
}

TEST_CASE("different seeds give different report series") {
  const auto a = run(small_config(1));
  const auto b = run(small_config(2));
  CHECK(reports_to_csv(a.reports) != reports_to_csv(b.reports));
}

TEST_CASE("thread counts never change the results") {
  SimConfig cfg = small_config(23);
  cfg.epochs = 6;
  const auto serial = run(cfg, 1);
  const auto parallel = run(cfg, 4);
  CHECK(reports_to_csv(serial.reports) == reports_to_csv(parallel.reports));
  CHECK(to_edge_list(serial.final_state.network) ==
        to_edge_list(parallel.final_state.network));
}

TEST_CASE("forced migration copies every agent every epoch") {
  SimConfig cfg;
  cfg.seed = 5;
  cfg.n_habitats = 2;
  cfg.epochs = 4;
  cfg.ga.pop_capacity = 10;
  cfg.sectors.count = 1;
  cfg.sectors.archetype_length = 6;
  cfg.p_migration = 1.0;
  cfg.network.topology = Topology::edges;
  cfg.network.edges = {{0, 1, 1.0}};  // w == w_max
  const auto result = run(cfg);
  for (std::size_t i = 1; i < result.reports.size(); ++i) {
    CHECK(result.reports[i].migrations == 20);
  }
}

TEST_CASE("migration events always reference connected habitats") {
  SimConfig cfg = small_config(29);
  cfg.p_migration = 0.5;
  const auto result = run(cfg);
  const auto& net = result.final_state.network;
  for (const auto& rep : result.reports) {
    for (const auto& e : rep.events) {
      CHECK(net.has_edge(e.source, e.dest));
      CHECK(e.epoch == rep.epoch);
    }
  }
}

TEST_CASE("total population never exceeds the capacity budget") {
  SimConfig cfg = small_config(31);
  cfg.p_migration = 0.8;
  const auto result = run(cfg);
  const std::size_t budget =
      static_cast<std::size_t>(cfg.n_habitats) *
      static_cast<std::size_t>(cfg.ga.pop_capacity);
  std::size_t total = 0;
  for (const Habitat& h : result.final_state.habitats) {
    CHECK(h.population.size() <= static_cast<std::size_t>(cfg.ga.pop_capacity));
    CHECK(h.inbox.empty());
    total += h.population.size();
  }
  CHECK(total <= budget);
  // abundance bookkeeping reconciles with the union population
  for (const auto& rep : result.reports) {
    const long long abundance_total =
        std::accumulate(rep.abundance.begin(), rep.abundance.end(), 0LL);
    CHECK(rep.species_count == static_cast<int>(rep.abundance.size()));
    if (rep.epoch == result.final_state.epoch) {
      CHECK(abundance_total == static_cast<long long>(total));
    }
    CHECK(std::is_sorted(rep.abundance.rbegin(), rep.abundance.rend()));
  }
}

TEST_CASE("feedback boosts the mutation rate below the species floor") {
  SimConfig cfg = small_config(37);
  cfg.feedback.floor = 100000;  // far above any reachable species count
  cfg.feedback.boost = 2.0;
  cfg.epochs = 3;
  const auto result = run(cfg);
  CHECK(result.reports.front().feedback_active == false);  // initial snapshot
  for (std::size_t i = 1; i < result.reports.size(); ++i) {
    CHECK(result.reports[i].feedback_active == true);
  }
  for (const Habitat& h : result.final_state.habitats) {
    CHECK(h.effective_mutation_rate ==
          doctest::Approx(cfg.ga.mutation_rate * 2.0).epsilon(1e-12));
  }
}

TEST_CASE("feedback clamps the boosted rate at 0.5") {
  SimState st = build_initial_state(small_config(41));
  for (Habitat& h : st.habitats) h.params.mutation_rate = 0.4;
  feedback_check(st, 1, 10, 2.0);
  CHECK(st.feedback_active);
  for (const Habitat& h : st.habitats) {
    CHECK(h.effective_mutation_rate == 0.5);
  }
  feedback_check(st, 10, 10, 2.0);
  CHECK_FALSE(st.feedback_active);
  for (const Habitat& h : st.habitats) {
    CHECK(h.effective_mutation_rate == 0.4);
  }
}

TEST_CASE("feedback never activates with floor 0") {
  SimConfig cfg = small_config(43);
  cfg.feedback.floor = 0;
  const auto result = run(cfg);
  for (const auto& rep : result.reports) {
    CHECK(rep.feedback_active == false);
  }
  for (const Habitat& h : result.final_state.habitats) {
    CHECK(h.effective_mutation_rate == cfg.ga.mutation_rate);
  }
}

TEST_CASE("config validation lists every offending field") {
  SimConfig cfg;
  cfg.n_habitats = 0;
  cfg.epochs = -1;
  cfg.p_migration = 1.5;
  cfg.ga.tournament_size = 99;
  cfg.network.lambda = 1.0;
  const auto errs = cfg.validate();
  CHECK(errs.size() >= 5);
  CHECK_THROWS_AS(build_initial_state(cfg), ConfigError);
}

TEST_CASE("sector membership partitions the habitats") {
  const SimState st = build_initial_state(small_config(47));
  REQUIRE(st.sectors.size() == 2);
  std::vector<int> seen;
  for (const auto& s : st.sectors) {
    for (int m : s.members) seen.push_back(m);
  }
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<int>{0, 1, 2, 3});
  CHECK(st.sector_of(0).id == 0);
  CHECK(st.sector_of(3).id == 1);
}

TEST_CASE("reports are unaffected by extra snapshot computations") {
  SimConfig cfg = small_config(53);
  cfg.epochs = 4;
  SimState a = build_initial_state(cfg);
  SimState b = build_initial_state(cfg);
  std::vector<EpochReport> ra, rb;
  for (int t = 0; t < cfg.epochs; ++t) {
    ra.push_back(step_epoch(a));
    snapshot_report(b);  // read-only metrics must not disturb the run
    rb.push_back(step_epoch(b));
    snapshot_report(b);
  }
  CHECK(reports_to_csv(ra) == reports_to_csv(rb));
}
