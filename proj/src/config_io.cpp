#include "evesim/config_io.hpp"

#include <fstream>
#include <set>

namespace evesim {

namespace {

using nlohmann::json;

// Tracks which keys of one JSON object were consumed and reports the rest.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path, std::vector<std::string>& errs)
      : j_(j), path_(std::move(path)), errs_(errs) {
    if (!j_.is_object()) {
      errs_.push_back(path_ + ": expected an object");
      ok_ = false;
    }
  }

  bool ok() const { return ok_; }

  void get_u64(const char* key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_unsigned() && !v->is_number_integer()) {
      type_error(key, "unsigned integer");
      return;
    }
    if (v->is_number_integer() && v->get<std::int64_t>() < 0) {
      type_error(key, "unsigned integer");
      return;
    }
    out = v->get<std::uint64_t>();
  }

  void get_int(const char* key, int& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer() && !v->is_number_unsigned()) {
      type_error(key, "integer");
      return;
    }
    out = v->get<int>();
  }

  void get_double(const char* key, double& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) {
      type_error(key, "number");
      return;
    }
    out = v->get<double>();
  }

  void get_string(const char* key, std::string& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) {
      type_error(key, "string");
      return;
    }
    out = v->get<std::string>();
  }

  const json* take(const char* key) {
    if (!ok_) return nullptr;
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() {
    if (!ok_) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) {
        errs_.push_back("unknown key: " + join(key));
      }
    }
  }

  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  void type_error(const char* key, const char* expected) {
    errs_.push_back(join(key) + ": expected " + expected);
  }

  const json& j_;
  std::string path_;
  std::vector<std::string>& errs_;
  std::set<std::string> seen_;
  bool ok_ = true;
};

}  // namespace

SimConfig config_from_json(const nlohmann::json& j) {
  SimConfig cfg;
  std::vector<std::string> errs;
  StrictObject root(j, "", errs);

  if (root.ok()) {
    const json* ver = root.take("schema_version");
    if (!ver) {
      errs.push_back("schema_version: required");
    } else if (!ver->is_number_integer() ||
               ver->get<int>() != kConfigSchemaVersion) {
      errs.push_back("schema_version: expected " +
                     std::to_string(kConfigSchemaVersion));
    }

    root.get_u64("seed", cfg.seed);
    root.get_int("n_habitats", cfg.n_habitats);
    root.get_int("epochs", cfg.epochs);
    root.get_int("generations_per_epoch", cfg.generations_per_epoch);
    root.get_double("p_migration", cfg.p_migration);
    root.get_double("species_theta", cfg.species_theta);
    root.get_double("report_tau", cfg.report_tau);

    if (const json* sub = root.take("genome")) {
      StrictObject o(*sub, "genome", errs);
      o.get_int("alphabet", cfg.genome.alphabet);
      o.get_int("max_length", cfg.genome.max_length);
      o.finish();
    }
    if (const json* sub = root.take("ga")) {
      StrictObject o(*sub, "ga", errs);
      o.get_int("pop_capacity", cfg.ga.pop_capacity);
      o.get_int("tournament_size", cfg.ga.tournament_size);
      o.get_double("crossover_prob", cfg.ga.crossover_prob);
      o.get_double("mutation_rate", cfg.ga.mutation_rate);
      o.get_double("indel_rate", cfg.ga.indel_rate);
      o.get_int("elitism", cfg.ga.elitism);
      o.finish();
    }
    if (const json* sub = root.take("sectors")) {
      StrictObject o(*sub, "sectors", errs);
      o.get_int("count", cfg.sectors.count);
      o.get_double("noise_rate", cfg.sectors.noise_rate);
      o.get_double("drift_rate", cfg.sectors.drift_rate);
      o.get_int("archetype_length", cfg.sectors.archetype_length);
      o.finish();
    }
    if (const json* sub = root.take("network")) {
      StrictObject o(*sub, "network", errs);
      std::string topology = "watts_strogatz";
      o.get_string("topology", topology);
      if (topology == "watts_strogatz") {
        cfg.network.topology = Topology::watts_strogatz;
      } else if (topology == "complete") {
        cfg.network.topology = Topology::complete;
      } else if (topology == "edges") {
        cfg.network.topology = Topology::edges;
      } else {
        errs.push_back(
            "network.topology: expected watts_strogatz, complete or edges");
      }
      o.get_int("k", cfg.network.k);
      o.get_double("rewire_prob", cfg.network.rewire_prob);
      o.get_double("w_init", cfg.network.w_init);
      o.get_double("w_max", cfg.network.w_max);
      o.get_double("eta", cfg.network.eta);
      o.get_double("lambda", cfg.network.lambda);
      if (const json* edges = o.take("edges")) {
        if (!edges->is_array()) {
          errs.push_back("network.edges: expected an array of [i, j, w]");
        } else {
          cfg.network.edges.clear();
          int idx = 0;
          for (const json& e : *edges) {
            const std::string where =
                "network.edges[" + std::to_string(idx++) + "]";
            if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
                !e[1].is_number_integer() || !e[2].is_number()) {
              errs.push_back(where + ": expected [i, j, w]");
              continue;
            }
            cfg.network.edges.push_back(
                {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
          }
        }
      }
      o.finish();
    }
    if (const json* sub = root.take("feedback")) {
      StrictObject o(*sub, "feedback", errs);
      o.get_int("floor", cfg.feedback.floor);
      o.get_double("boost", cfg.feedback.boost);
      o.finish();
    }
    root.finish();
  }

  if (errs.empty()) {
    auto field_errs = cfg.validate();
    errs.insert(errs.end(), field_errs.begin(), field_errs.end());
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

nlohmann::ordered_json config_to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["seed"] = cfg.seed;
  j["n_habitats"] = cfg.n_habitats;
  j["epochs"] = cfg.epochs;
  j["generations_per_epoch"] = cfg.generations_per_epoch;
  j["p_migration"] = cfg.p_migration;
  j["species_theta"] = cfg.species_theta;
  j["report_tau"] = cfg.report_tau;
  j["genome"] = {{"alphabet", cfg.genome.alphabet},
                 {"max_length", cfg.genome.max_length}};
  j["ga"] = {{"pop_capacity", cfg.ga.pop_capacity},
             {"tournament_size", cfg.ga.tournament_size},
             {"crossover_prob", cfg.ga.crossover_prob},
             {"mutation_rate", cfg.ga.mutation_rate},
             {"indel_rate", cfg.ga.indel_rate},
             {"elitism", cfg.ga.elitism}};
  j["sectors"] = {{"count", cfg.sectors.count},
                  {"noise_rate", cfg.sectors.noise_rate},
                  {"drift_rate", cfg.sectors.drift_rate},
                  {"archetype_length", cfg.sectors.archetype_length}};
  std::string topology;
  switch (cfg.network.topology) {
    case Topology::watts_strogatz: topology = "watts_strogatz"; break;
    case Topology::complete: topology = "complete"; break;
    case Topology::edges: topology = "edges"; break;
  }
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : cfg.network.edges) {
    edges.push_back(nlohmann::ordered_json::array({e.a, e.b, e.w}));
  }
  j["network"] = {{"topology", topology},
                  {"k", cfg.network.k},
                  {"rewire_prob", cfg.network.rewire_prob},
                  {"w_init", cfg.network.w_init},
                  {"w_max", cfg.network.w_max},
                  {"eta", cfg.network.eta},
                  {"lambda", cfg.network.lambda},
                  {"edges", std::move(edges)}};
  j["feedback"] = {{"floor", cfg.feedback.floor},
                   {"boost", cfg.feedback.boost}};
  return j;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({"cannot open config file: " + path});
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("config parse error: ") + e.what()});
  }
  return config_from_json(j);
}

}  // namespace evesim
