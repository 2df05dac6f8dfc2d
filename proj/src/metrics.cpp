#include "evesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace evesim {

double shannon_diversity(std::span<const int> abundances) {
  if (abundances.empty()) {
    throw std::invalid_argument("shannon_diversity: empty abundance vector");
  }
  long long total = 0;
  for (int c : abundances) {
    if (c <= 0) {
      throw std::invalid_argument("shannon_diversity: non-positive count");
    }
    total += c;
  }
  double h = 0.0;
  for (int c : abundances) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

LogNormalCheck lognormal_shape_check(std::span<const int> abundances) {
  LogNormalCheck out;
  out.n_species = static_cast<int>(abundances.size());
  if (out.n_species < 10) return out;  // inconclusive
  for (int c : abundances) {
    if (c <= 0) {
      throw std::invalid_argument("lognormal_shape_check: non-positive count");
    }
  }
  std::vector<double> logs;
  logs.reserve(abundances.size());
  for (int c : abundances) logs.push_back(std::log(static_cast<double>(c)));
  const double n = static_cast<double>(logs.size());
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : logs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  out.conclusive = true;
  out.skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
  out.pass = std::abs(out.skewness) <= 1.0;
  return out;
}

double power_law_exponent(
    std::span<const std::pair<double, double>> area_species) {
  if (area_species.size() < 2) {
    throw std::invalid_argument("power_law_exponent: need >= 2 points");
  }
  std::vector<double> xs, ys;
  for (const auto& [a, s] : area_species) {
    if (a <= 0.0 || s <= 0.0) {
      throw std::invalid_argument("power_law_exponent: non-positive point");
    }
    xs.push_back(std::log(a));
    ys.push_back(std::log(s));
  }
  const double n = static_cast<double>(xs.size());
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("power_law_exponent: all areas equal");
  }
  return sxy / sxx;
}

SpeciesAreaResult species_area(std::span<const Habitat> habitats,
                               std::span<const int> sample_sizes, double theta,
                               int replicates, RngStream& rng) {
  const int n = static_cast<int>(habitats.size());
  SpeciesAreaResult out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  for (const int area : sample_sizes) {
    if (area < 1 || area > n) {
      throw std::invalid_argument("species_area: sample size out of range");
    }
    double sum = 0.0;
    for (int rep = 0; rep < replicates; ++rep) {
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::vector<Agent> pooled;
      for (int t = 0; t < area; ++t) {
        const std::size_t pick =
            static_cast<std::size_t>(t) +
            rng.index(idx.size() - static_cast<std::size_t>(t));
        std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
        const Habitat& h = habitats[idx[static_cast<std::size_t>(t)]];
        pooled.insert(pooled.end(), h.population.begin(), h.population.end());
      }
      sum += static_cast<double>(species_partition(pooled, theta).clusters.size());
    }
    out.curve.push_back({area, sum / static_cast<double>(replicates)});
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& p : out.curve) {
    points.emplace_back(static_cast<double>(p.area), p.mean_species);
  }
  out.exponent = power_law_exponent(points);
  return out;
}

double divergence(const Habitat& a, const Habitat& b) {
  if (a.population.empty() || b.population.empty()) {
    throw std::invalid_argument("divergence: empty population");
  }
  double sum = 0.0;
  for (const Agent& x : a.population) {
    for (const Agent& y : b.population) {
      sum += distance(x.genome, y.genome);
    }
  }
  return sum / (static_cast<double>(a.population.size()) *
                static_cast<double>(b.population.size()));
}

}  // namespace evesim
