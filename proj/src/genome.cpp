#include "evesim/genome.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace evesim {

std::size_t GenomeHash::operator()(const Genome& g) const noexcept {
  // FNV-1a over symbol bytes
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Symbol s : g.symbols) {
    h = (h ^ (s & 0xff)) * 0x100000001b3ull;
    h = (h ^ (s >> 8)) * 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

bool valid_genome(const Genome& g, const GenomeLimits& limits) {
  if (g.symbols.empty() ||
      g.symbols.size() > static_cast<std::size_t>(limits.max_length)) {
    return false;
  }
  return std::all_of(g.symbols.begin(), g.symbols.end(), [&](Symbol s) {
    return static_cast<int>(s) < limits.alphabet;
  });
}

Genome random_genome(int length, int alphabet, RngStream& rng) {
  Genome g;
  g.symbols.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    g.symbols.push_back(static_cast<Symbol>(rng.index(static_cast<std::size_t>(alphabet))));
  }
  return g;
}

Symbol resample_different(Symbol current, int alphabet, RngStream& rng) {
  const std::uint64_t r = rng.below(static_cast<std::uint64_t>(alphabet - 1));
  return static_cast<Symbol>(r >= current ? r + 1 : r);
}

int edit_distance(const Genome& a, const Genome& b) {
  const auto& s = a.symbols;
  const auto& t = b.symbols;
  const std::size_t m = s.size();
  const std::size_t n = t.size();
  if (m == 0) return static_cast<int>(n);
  if (n == 0) return static_cast<int>(m);

  std::vector<int> row(n + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    int corner = row[0];
    row[0] = static_cast<int>(i) + 1;
    for (std::size_t j = 0; j < n; ++j) {
      const int upper = row[j + 1];
      const int sub = corner + (s[i] == t[j] ? 0 : 1);
      row[j + 1] = std::min({sub, upper + 1, row[j] + 1});
      corner = upper;
    }
  }
  return row[n];
}

double distance(const Genome& a, const Genome& b) {
  const std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return 0.0;
  return static_cast<double>(edit_distance(a, b)) / static_cast<double>(len);
}

namespace {

// Banded edit distance: returns the exact distance if it is <= cutoff,
// otherwise any value > cutoff.
int edit_distance_bounded(const std::vector<Symbol>& s,
                          const std::vector<Symbol>& t, int cutoff) {
  const int m = static_cast<int>(s.size());
  const int n = static_cast<int>(t.size());
  if (std::abs(m - n) > cutoff) return cutoff + 1;
  const int inf = cutoff + 1;
  std::vector<int> row(static_cast<std::size_t>(n) + 1, inf);
  for (int j = 0; j <= std::min(n, cutoff); ++j) row[static_cast<std::size_t>(j)] = j;
  for (int i = 1; i <= m; ++i) {
    const int lo = std::max(1, i - cutoff);
    const int hi = std::min(n, i + cutoff);
    int corner = row[static_cast<std::size_t>(lo) - 1];
    row[static_cast<std::size_t>(lo) - 1] = (lo - 1 == 0) ? i : inf;
    int best = row[static_cast<std::size_t>(lo) - 1];
    for (int j = lo; j <= hi; ++j) {
      const int upper = row[static_cast<std::size_t>(j)];
      const int sub = corner + (s[static_cast<std::size_t>(i) - 1] ==
                                        t[static_cast<std::size_t>(j) - 1]
                                    ? 0
                                    : 1);
      int v = std::min(sub, std::min(upper, row[static_cast<std::size_t>(j) - 1]) + 1);
      if (v > inf) v = inf;
      row[static_cast<std::size_t>(j)] = v;
      best = std::min(best, v);
      corner = upper;
    }
    if (hi < n) row[static_cast<std::size_t>(hi) + 1] = inf;
    if (best > cutoff) return cutoff + 1;
  }
  return row[static_cast<std::size_t>(n)];
}

}  // namespace

bool within_distance(const Genome& a, const Genome& b, double theta) {
  const std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return true;
  // +1 margin absorbs any floor rounding; the final comparison is the
  // exact predicate distance(a, b) <= theta.
  const int cutoff =
      static_cast<int>(std::floor(theta * static_cast<double>(len))) + 1;
  const int d = edit_distance_bounded(a.symbols, b.symbols, cutoff);
  if (d > cutoff) return false;
  return static_cast<double>(d) / static_cast<double>(len) <= theta;
}

double fitness(const Genome& g, const Genome& target) {
  return 1.0 - distance(g, target);
}

double fitness(const Agent& a, const Request& r) {
  return fitness(a.genome, r.target);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

SpeciesPartition species_partition(std::span<const Agent> population,
                                   double theta) {
  if (theta < 0.0 || theta >= 1.0) {
    throw std::invalid_argument("species_partition: theta must be in [0, 1)");
  }
  SpeciesPartition out;
  out.theta = theta;
  if (population.empty()) return out;

  // Agents with equal genomes always share a cluster, so cluster the
  // distinct genomes and expand afterwards.
  std::unordered_map<Genome, int, GenomeHash> index;
  std::vector<const Genome*> distinct;
  std::vector<std::vector<AgentId>> members;
  for (const Agent& a : population) {
    auto [it, inserted] =
        index.emplace(a.genome, static_cast<int>(distinct.size()));
    if (inserted) {
      distinct.push_back(&it->first);
      members.emplace_back();
    }
    members[static_cast<std::size_t>(it->second)].push_back(a.id);
  }

  UnionFind uf(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      if (uf.find(static_cast<int>(i)) == uf.find(static_cast<int>(j))) continue;
      if (within_distance(*distinct[i], *distinct[j], theta)) {
        uf.unite(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }

  std::unordered_map<int, std::size_t> cluster_of_root;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const int root = uf.find(static_cast<int>(i));
    auto [it, inserted] = cluster_of_root.emplace(root, out.clusters.size());
    if (inserted) out.clusters.emplace_back();
    auto& cluster = out.clusters[it->second];
    cluster.insert(cluster.end(), members[i].begin(), members[i].end());
  }
  for (auto& cluster : out.clusters) std::sort(cluster.begin(), cluster.end());
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return out;
}

}  // namespace evesim
