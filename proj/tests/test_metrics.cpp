#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "evesim/metrics.hpp"
#include "oracles.hpp"

using namespace evesim;

TEST_CASE("shannon_diversity spot values") {
  CHECK(shannon_diversity(std::vector<int>{42}) == 0.0);
  CHECK(shannon_diversity(std::vector<int>{5, 5, 5, 5}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(shannon_diversity(std::vector<int>{2, 1, 1}) ==
        doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(shannon_diversity(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(shannon_diversity(std::vector<int>{3, 0}),
                  std::invalid_argument);
}

TEST_CASE("shannon_diversity is maximal only for uniform abundances") {
  RngStream rng(1);
  for (int k : {2, 3, 5, 8}) {
    std::vector<int> uniform(static_cast<std::size_t>(k), 7);
    CHECK(shannon_diversity(uniform) ==
          doctest::Approx(std::log(static_cast<double>(k))).epsilon(1e-12));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> skewed;
      bool all_equal = true;
      for (int i = 0; i < k; ++i) {
        skewed.push_back(1 + static_cast<int>(rng.index(9)));
        if (skewed.back() != skewed.front()) all_equal = false;
      }
      if (all_equal) continue;
      CHECK(shannon_diversity(skewed) <
            std::log(static_cast<double>(k)) + 1e-12);
    }
  }
  // permutation invariance
  std::vector<int> counts = {9, 1, 4, 4, 2};
  const double base = shannon_diversity(counts);
  std::sort(counts.begin(), counts.end());
  CHECK(shannon_diversity(counts) == base);
}

TEST_CASE("lognormal_shape_check on symmetric and skewed data") {
  // a 1,2,4,2,1 octave histogram: 10 species symmetric in log space
  const std::vector<int> symmetric = {1, 2, 2, 4, 4, 4, 4, 8, 8, 16};
  const auto sym = lognormal_shape_check(symmetric);
  CHECK(sym.conclusive);
  CHECK(sym.skewness == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sym.pass);

  // geometric series: ln-counts equally spaced
  const std::vector<int> geometric = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
  const auto geo = lognormal_shape_check(geometric);
  CHECK(geo.conclusive);
  CHECK(geo.skewness == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(geo.pass);

  const std::vector<int> nine = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_FALSE(lognormal_shape_check(nine).conclusive);

  // heavily one-sided counts should fail the band
  const std::vector<int> lopsided = {1, 1, 1, 1, 1, 1, 1, 1, 1, 100000};
  const auto bad = lognormal_shape_check(lopsided);
  CHECK(bad.conclusive);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("power_law_exponent spot values") {
  using P = std::pair<double, double>;
  const std::vector<P> doubling = {{1, 2}, {2, 4}, {4, 8}};
  CHECK(power_law_exponent(doubling) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<P> flat = {{1, 5}, {2, 5}, {4, 5}, {8, 5}};
  CHECK(power_law_exponent(flat) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<P> sqrt_points = {{1, 1}, {4, 2}, {16, 4}};
  CHECK(power_law_exponent(sqrt_points) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(power_law_exponent(std::vector<P>{{1, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(power_law_exponent(std::vector<P>{{1, 2}, {1, 4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(power_law_exponent(std::vector<P>{{1, 0}, {2, 4}}),
                  std::invalid_argument);
}

TEST_CASE("power_law_exponent is invariant under uniform count scaling") {
  using P = std::pair<double, double>;
  const std::vector<P> base = {{1, 3}, {2, 5}, {4, 6}, {8, 11}};
  const double z = power_law_exponent(base);
  std::vector<P> scaled;
  for (const auto& [a, s] : base) scaled.emplace_back(a, s * 37.0);
  CHECK(power_law_exponent(scaled) == doctest::Approx(z).epsilon(1e-12));
}

namespace {

Habitat habitat_with(const std::vector<std::string>& genomes, int id = 0) {
  Habitat h;
  h.id = id;
  h.limits = {26, 16};
  std::vector<Genome> gs;
  for (const auto& s : genomes) gs.push_back(oracles::genome(s));
  h.replace_population(gs, 0);
  return h;
}

}  // namespace

TEST_CASE("divergence spot values") {
  const auto a = habitat_with({"AB"}, 0);
  const auto b = habitat_with({"AB"}, 1);
  CHECK(divergence(a, b) == 0.0);

  const auto c = habitat_with({"CD"}, 1);
  CHECK(divergence(a, c) == 1.0);

  const auto x = habitat_with({"AB", "AC", "BD"}, 0);
  double full = 0.0;
  for (const Agent& p : x.population) {
    for (const Agent& q : x.population) {
      full += distance(p.genome, q.genome);
    }
  }
  full /= 9.0;
  CHECK(divergence(x, x) == doctest::Approx(full).epsilon(1e-12));

  const auto empty = habitat_with({});
  CHECK_THROWS_AS(divergence(empty, a), std::invalid_argument);
}

TEST_CASE("species_area on planted uniform habitats") {
  // every habitat holds the same single genome: species count is 1 at all
  // areas, so the fitted exponent is 0
  std::vector<Habitat> habitats;
  for (int i = 0; i < 8; ++i) habitats.push_back(habitat_with({"ABCD"}, i));
  RngStream rng(3);
  const std::vector<int> areas = {1, 2, 4, 8};
  const auto result = species_area(habitats, areas, 0.1, 20, rng);
  REQUIRE(result.curve.size() == 4);
  for (const auto& p : result.curve) CHECK(p.mean_species == 1.0);
  CHECK(result.exponent == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("species_area grows with disjoint per-habitat species") {
  // habitat i holds only its private genome, maximally distant from the
  // others: pooling a habitats yields exactly a species
  std::vector<Habitat> habitats;
  const std::vector<std::string> letters = {"AAAA", "BBBB", "CCCC", "DDDD",
                                            "EEEE", "FFFF", "GGGG", "HHHH"};
  for (int i = 0; i < 8; ++i) {
    habitats.push_back(habitat_with({letters[static_cast<std::size_t>(i)],
                                     letters[static_cast<std::size_t>(i)]},
                                    i));
  }
  RngStream rng(4);
  const std::vector<int> areas = {1, 2, 4, 8};
  const auto result = species_area(habitats, areas, 0.1, 20, rng);
  for (std::size_t i = 0; i < areas.size(); ++i) {
    CHECK(result.curve[i].mean_species ==
          static_cast<double>(areas[i]));
  }
  CHECK(result.exponent == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      species_area(habitats, std::vector<int>{9}, 0.1, 5, rng),
      std::invalid_argument);
}
