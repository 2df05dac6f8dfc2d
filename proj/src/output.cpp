#include "evesim/output.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "evesim/engine.hpp"
#include "evesim/metrics.hpp"

namespace evesim {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  return "epoch,best_fitness_mean,mean_fitness_mean,species_count,shannon,"
         "migrations,accepted,mean_weight,clustering,path_length,components,"
         "feedback_active";
}

std::string report_csv_row(const EpochReport& r) {
  std::string row;
  row += std::to_string(r.epoch);
  row += ',';
  row += format_double(r.best_fitness_mean());
  row += ',';
  row += format_double(r.mean_fitness_mean());
  row += ',';
  row += std::to_string(r.species_count);
  row += ',';
  row += format_double(r.shannon);
  row += ',';
  row += std::to_string(r.migrations);
  row += ',';
  row += std::to_string(r.accepted);
  row += ',';
  row += format_double(r.mean_weight);
  row += ',';
  row += format_double(r.clustering);
  row += ',';
  if (r.path_length) row += format_double(*r.path_length);
  row += ',';
  row += std::to_string(r.components);
  row += ',';
  row += r.feedback_active ? '1' : '0';
  return row;
}

std::string reports_to_csv(std::span<const EpochReport> reports) {
  std::string out = csv_header();
  out += '\n';
  for (const EpochReport& r : reports) {
    out += report_csv_row(r);
    out += '\n';
  }
  return out;
}

std::string network_to_json(const HabitatNetwork& net) {
  nlohmann::ordered_json j;
  j["nodes"] = net.node_count();
  auto edges = nlohmann::ordered_json::array();
  std::vector<Edge> sorted(net.edges());
  std::sort(sorted.begin(), sorted.end(), [](const Edge& x, const Edge& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  for (const Edge& e : sorted) {
    edges.push_back(nlohmann::ordered_json::array({e.a, e.b, e.w}));
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::string analysis_to_json(const SimState& st) {
  const RngDiscipline rngd = st.rng();
  RngStream stream =
      rngd.stream(StreamKind::run, 0, st.epoch, Phase::analysis);
  nlohmann::ordered_json j;

  const auto partition =
      species_partition(union_population(st), st.config.species_theta);
  std::vector<int> abundance;
  for (const auto& c : partition.clusters) {
    abundance.push_back(static_cast<int>(c.size()));
  }

  // species-area over power-of-two habitat counts
  {
    std::vector<int> areas;
    for (int a = 1; a < st.config.n_habitats; a *= 2) areas.push_back(a);
    areas.push_back(st.config.n_habitats);
    nlohmann::ordered_json sa;
    if (areas.size() >= 2) {
      const auto result = species_area(st.habitats, areas,
                                       st.config.species_theta, 20, stream);
      auto curve = nlohmann::ordered_json::array();
      for (const auto& p : result.curve) {
        curve.push_back(
            nlohmann::ordered_json::array({p.area, p.mean_species}));
      }
      sa["curve"] = std::move(curve);
      sa["exponent_z"] = result.exponent;
    } else {
      sa["curve"] = nlohmann::ordered_json::array();
      sa["exponent_z"] = nullptr;
    }
    j["species_area"] = std::move(sa);
  }

  {
    const auto check = lognormal_shape_check(abundance);
    nlohmann::ordered_json ln;
    ln["n_species"] = check.n_species;
    ln["conclusive"] = check.conclusive;
    if (check.conclusive) {
      ln["skewness"] = check.skewness;
      ln["pass"] = check.pass;
    } else {
      ln["skewness"] = nullptr;
      ln["pass"] = nullptr;
    }
    j["lognormal"] = std::move(ln);
  }

  // cross-habitat divergence: all pairs when small, a fixed sample otherwise
  {
    const int n = st.config.n_habitats;
    std::vector<std::pair<int, int>> pairs;
    if (n <= 16) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
      }
    } else {
      for (int k = 0; k < 100; ++k) {
        const int a = static_cast<int>(stream.index(static_cast<std::size_t>(n)));
        int b = static_cast<int>(stream.index(static_cast<std::size_t>(n) - 1));
        if (b >= a) ++b;
        pairs.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    auto rows = nlohmann::ordered_json::array();
    double sum = 0.0;
    for (const auto& [a, b] : pairs) {
      const double d = divergence(st.habitats[static_cast<std::size_t>(a)],
                                  st.habitats[static_cast<std::size_t>(b)]);
      sum += d;
      rows.push_back(nlohmann::ordered_json::array({a, b, d}));
    }
    nlohmann::ordered_json dv;
    dv["pairs"] = std::move(rows);
    dv["mean"] = pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size());
    j["divergence"] = std::move(dv);
  }

  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace evesim
