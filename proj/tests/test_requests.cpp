#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evesim/requests.hpp"
#include "oracles.hpp"

using namespace evesim;
using oracles::genome;

namespace {

SectorProfile make_sector(int id, const Genome& archetype,
                          std::vector<int> members, double noise,
                          double drift_rate) {
  SectorProfile s;
  s.id = id;
  s.archetype = archetype;
  s.members = std::move(members);
  s.noise_rate = noise;
  s.drift_rate = drift_rate;
  return s;
}

}  // namespace

TEST_CASE("next_request with zero noise is the archetype") {
  const auto s = make_sector(0, genome("ABCD"), {0, 1}, 0.0, 0.0);
  const RngDiscipline rng{1};
  for (std::uint32_t epoch = 0; epoch < 5; ++epoch) {
    CHECK(next_request(s, 0, epoch, rng, 16).target == s.archetype);
    CHECK(next_request(s, 1, epoch, rng, 16).target == s.archetype);
  }
}

TEST_CASE("next_request with noise 1 over a binary alphabet flips everything") {
  const auto s = make_sector(0, genome("ABAB"), {0}, 1.0, 0.0);
  const RngDiscipline rng{2};
  CHECK(next_request(s, 0, 3, rng, 2).target == genome("BABA"));
}

TEST_CASE("next_request is deterministic in (seed, habitat, epoch)") {
  const auto s = make_sector(0, genome("ABCDEFAB"), {0, 1, 2}, 0.3, 0.0);
  const RngDiscipline rng{3};
  for (int habitat : {0, 1, 2}) {
    for (std::uint32_t epoch : {0u, 1u, 17u}) {
      const auto a = next_request(s, habitat, epoch, rng, 16);
      const auto b = next_request(s, habitat, epoch, rng, 16);
      CHECK(a.target == b.target);
      CHECK(a.epoch == epoch);
    }
  }
  // distinct habitats see distinct noise (statistically certain here)
  const auto r0 = next_request(s, 0, 5, rng, 16);
  const auto r1 = next_request(s, 1, 5, rng, 16);
  const auto r2 = next_request(s, 2, 5, rng, 16);
  CHECK((r0.target != r1.target || r1.target != r2.target));
}

TEST_CASE("next_request rejects non-members") {
  const auto s = make_sector(0, genome("AB"), {0, 2}, 0.0, 0.0);
  const RngDiscipline rng{4};
  CHECK_THROWS_AS(next_request(s, 1, 0, rng, 16), std::invalid_argument);
}

TEST_CASE("drift with rate 0 never moves the archetype") {
  auto s = make_sector(0, genome("ABCD"), {0}, 0.0, 0.0);
  const RngDiscipline rng{5};
  const Genome original = s.archetype;
  for (std::uint32_t epoch = 1; epoch <= 50; ++epoch) {
    drift(s, epoch, rng, 16);
    CHECK(s.archetype == original);
  }
}

TEST_CASE("drift with rate 1 over a binary alphabet flips each epoch") {
  auto s = make_sector(0, genome("AABB"), {0}, 0.0, 1.0);
  const RngDiscipline rng{6};
  drift(s, 1, rng, 2);
  CHECK(s.archetype == genome("BBAA"));
  drift(s, 2, rng, 2);
  CHECK(s.archetype == genome("AABB"));
}

TEST_CASE("drift trajectories replay exactly") {
  const RngDiscipline rng{7};
  auto a = make_sector(2, genome("ABCDABCD"), {0}, 0.0, 0.2);
  auto b = a;
  for (std::uint32_t epoch = 1; epoch <= 30; ++epoch) {
    drift(a, epoch, rng, 16);
    drift(b, epoch, rng, 16);
    CHECK(a.archetype == b.archetype);
  }
  CHECK(a.archetype.size() == 8);
}

TEST_CASE("same-epoch requests in one sector disagree at most 2*noise") {
  const double q = 0.05;
  const int draws = 10000;
  const int len = 12;
  const RngDiscipline rng{8};
  RngStream arch_rng(9);
  const auto s = make_sector(0, random_genome(len, 16, arch_rng), {0, 1}, q, 0.0);
  long long disagreements = 0;
  for (int i = 0; i < draws; ++i) {
    const auto a = next_request(s, 0, static_cast<std::uint32_t>(i), rng, 16);
    const auto b = next_request(s, 1, static_cast<std::uint32_t>(i), rng, 16);
    for (int p = 0; p < len; ++p) {
      if (a.target.symbols[static_cast<std::size_t>(p)] !=
          b.target.symbols[static_cast<std::size_t>(p)]) {
        ++disagreements;
      }
    }
  }
  const double observed =
      static_cast<double>(disagreements) / static_cast<double>(draws * len);
  const double sigma = std::sqrt(0.25 / static_cast<double>(draws * len));
  CHECK(observed <= 2.0 * q + 3.0 * sigma);
}

TEST_CASE("independently seeded sectors are far apart in genome space") {
  const RngDiscipline rng{10};
  RngStream arch_a(11), arch_b(12);
  const auto sa = make_sector(0, random_genome(12, 16, arch_a), {0}, 0.05, 0.0);
  const auto sb = make_sector(1, random_genome(12, 16, arch_b), {1}, 0.05, 0.0);
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto ra = next_request(sa, 0, static_cast<std::uint32_t>(i), rng, 16);
    const auto rb = next_request(sb, 1, static_cast<std::uint32_t>(i), rng, 16);
    sum += distance(ra.target, rb.target);
  }
  CHECK(sum / 1000.0 > 0.5);
}
