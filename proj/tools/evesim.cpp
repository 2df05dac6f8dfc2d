#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evesim/config_io.hpp"
#include "evesim/engine.hpp"
#include "evesim/metrics.hpp"
#include "evesim/network.hpp"
#include "evesim/output.hpp"
#include "evesim/recipes.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int default_threads() {
  if (const char* env = std::getenv("EVE_SIM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

void print_config_errors(const evesim::ConfigError& e) {
  for (const std::string& msg : e.details) {
    std::cerr << "config error: " << msg << "\n";
  }
}

int write_run_output(const evesim::SimConfig& cfg,
                     const evesim::RunResult& result, const fs::path& out) {
  fs::create_directories(out);
  evesim::write_file((out / "report.csv").string(),
                     evesim::reports_to_csv(result.reports));
  evesim::write_file((out / "network_final.edges").string(),
                     evesim::to_edge_list(result.final_state.network));
  evesim::write_file((out / "network_final.json").string(),
                     evesim::network_to_json(result.final_state.network));
  evesim::write_file((out / "analysis.json").string(),
                     evesim::analysis_to_json(result.final_state));
  evesim::write_file((out / "config_resolved.json").string(),
                     evesim::config_to_json(cfg).dump(2) + "\n");
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, int threads) {
  evesim::SimConfig cfg;
  try {
    cfg = evesim::load_config_file(config_path);
  } catch (const evesim::ConfigError& e) {
    print_config_errors(e);
    return kExitConfig;
  }
  if (seed) cfg.seed = *seed;
  const evesim::RunResult result = evesim::run(cfg, threads);
  write_run_output(cfg, result, out_dir);
  std::cout << "wrote " << result.reports.size() << " epoch reports to "
            << out_dir << "\n";
  return kExitOk;
}

int cmd_netstats(const std::string& edges_path, double tau) {
  std::string text;
  try {
    text = evesim::read_file(edges_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  evesim::HabitatNetwork net;
  try {
    net = evesim::parse_edge_list(text, 1.0);
  } catch (const evesim::EdgeListError& e) {
    std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
    return kExitConfig;
  }
  const evesim::HabitatNetwork view = net.thresholded(tau);
  const auto comps = evesim::components_at(net, tau);
  ordered_json j;
  j["clustering"] = evesim::clustering_coefficient(view);
  if (comps.size() == 1 && view.node_count() >= 2) {
    j["path_length"] = evesim::characteristic_path_length(view);
  } else {
    j["path_length"] = "disconnected";
  }
  j["components"] = comps.size();
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, int n_seeds,
              const std::string& out_dir, int threads) {
  evesim::SimConfig base;
  try {
    base = evesim::load_config_file(config_path);
  } catch (const evesim::ConfigError& e) {
    print_config_errors(e);
    return kExitConfig;
  }

  std::vector<double> values;
  {
    std::string tmp = values_csv;
    std::size_t pos = 0;
    while (pos <= tmp.size()) {
      const std::size_t comma = tmp.find(',', pos);
      const std::string tok =
          tmp.substr(pos, comma == std::string::npos ? std::string::npos
                                                     : comma - pos);
      try {
        values.push_back(std::stod(tok));
      } catch (...) {
        std::cerr << "error: bad value '" << tok << "' in --values\n";
        return kExitConfig;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (values.empty() || n_seeds < 1) {
    std::cerr << "error: need at least one value and one seed\n";
    return kExitConfig;
  }

  // resolve the dotted key against the resolved config document
  ordered_json doc = evesim::config_to_json(base);
  std::vector<std::string> parts;
  {
    std::size_t pos = 0;
    while (pos <= param.size()) {
      const std::size_t dot = param.find('.', pos);
      parts.push_back(param.substr(
          pos, dot == std::string::npos ? std::string::npos : dot - pos));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  }
  ordered_json* slot = &doc;
  for (const std::string& p : parts) {
    if (!slot->is_object() || !slot->contains(p)) {
      std::cerr << "error: unknown sweep parameter: " << param << "\n";
      return kExitConfig;
    }
    slot = &(*slot)[p];
  }
  if (!slot->is_number()) {
    std::cerr << "error: parameter is not numeric: " << param << "\n";
    return kExitConfig;
  }
  const bool integral = slot->is_number_integer() || slot->is_number_unsigned();

  fs::create_directories(out_dir);
  std::string sweep_csv = "run,param,value,seed," + evesim::csv_header() + "\n";
  int run_index = 0;
  for (const double value : values) {
    if (integral && value != std::floor(value)) {
      std::cerr << "error: parameter " << param
                << " needs integer values, got " << value << "\n";
      return kExitConfig;
    }
    for (int s = 0; s < n_seeds; ++s) {
      ordered_json variant = doc;
      ordered_json* vslot = &variant;
      for (const std::string& p : parts) vslot = &(*vslot)[p];
      if (integral) {
        *vslot = static_cast<std::int64_t>(value);
      } else {
        *vslot = value;
      }
      const std::uint64_t seed = base.seed + static_cast<std::uint64_t>(s);
      variant["seed"] = seed;
      evesim::SimConfig cfg;
      try {
        cfg = evesim::config_from_json(nlohmann::json(variant));
      } catch (const evesim::ConfigError& e) {
        print_config_errors(e);
        return kExitConfig;
      }
      const evesim::RunResult result = evesim::run(cfg, threads);
      const std::string run_file = "run_" + std::to_string(run_index) + ".csv";
      evesim::write_file((fs::path(out_dir) / run_file).string(),
                         evesim::reports_to_csv(result.reports));
      sweep_csv += std::to_string(run_index) + "," + param + "," +
                   evesim::format_double(value) + "," + std::to_string(seed) +
                   "," + evesim::report_csv_row(result.reports.back()) + "\n";
      ++run_index;
    }
  }
  evesim::write_file((fs::path(out_dir) / "sweep.csv").string(), sweep_csv);
  std::cout << "wrote " << run_index << " runs to " << out_dir << "\n";
  return kExitOk;
}

ordered_json smallworld_json(const evesim::SmallWorldResult& r) {
  ordered_json j;
  j["recipe"] = "smallworld";
  j["seeds"] = r.seeds;
  j["clustering_lattice"] = r.clustering_lattice;
  j["clustering_rewired"] = r.clustering_rewired;
  j["path_length_lattice"] = r.path_length_lattice;
  j["path_length_rewired"] = r.path_length_rewired;
  j["c_ratio"] = r.c_ratio;
  j["l_ratio"] = r.l_ratio;
  j["pass_c"] = r.pass_c;
  j["pass_l"] = r.pass_l;
  j["pass"] = r.pass;
  return j;
}

ordered_json convergence_json(const evesim::ConvergenceResult& r) {
  ordered_json j;
  j["recipe"] = "convergence";
  j["seeds"] = r.seeds;
  j["generations_budget"] = r.generations_budget;
  j["successes"] = r.successes;
  j["success_fraction"] = r.success_fraction;
  j["pass"] = r.pass;
  return j;
}

ordered_json prior_sampling_json(const evesim::PriorSamplingResult& r) {
  ordered_json j;
  j["recipe"] = "prior-sampling";
  j["seeds"] = r.seeds;
  j["target_fitness"] = r.target_fitness;
  j["epoch_cap"] = r.epoch_cap;
  j["epochs_networked"] = r.epochs_networked;
  j["epochs_isolated"] = r.epochs_isolated;
  j["median_networked"] = r.median_networked;
  j["median_isolated"] = r.median_isolated;
  j["pass"] = r.pass;
  return j;
}

ordered_json sectors_json(const evesim::SectorsResult& r) {
  ordered_json j;
  j["recipe"] = "sectors";
  j["seeds"] = r.seeds;
  j["wins"] = r.wins;
  j["mean_intra"] = r.mean_intra;
  j["mean_inter"] = r.mean_inter;
  j["pass"] = r.pass;
  return j;
}

ordered_json fragmentation_json(const evesim::FragmentationResult& r) {
  ordered_json j;
  j["recipe"] = "fragmentation";
  j["seeds"] = r.seeds;
  j["divergence_connected"] = r.divergence_connected;
  j["divergence_isolated"] = r.divergence_isolated;
  j["median_connected"] = r.median_connected;
  j["median_isolated"] = r.median_isolated;
  j["pass"] = r.pass;
  return j;
}

int cmd_recipe(const std::string& name, const std::string& out_dir,
               int threads) {
  ordered_json j;
  if (name == "smallworld") {
    j = smallworld_json(evesim::recipe_smallworld());
  } else if (name == "convergence") {
    j = convergence_json(evesim::recipe_convergence(threads));
  } else if (name == "prior-sampling") {
    j = prior_sampling_json(evesim::recipe_prior_sampling(threads));
  } else if (name == "sectors") {
    j = sectors_json(evesim::recipe_sectors(threads));
  } else if (name == "fragmentation") {
    j = fragmentation_json(evesim::recipe_fragmentation(threads));
  } else {
    std::cerr << "error: unknown recipe '" << name << "'; known:";
    for (const std::string& known : evesim::recipe_names()) {
      std::cerr << " " << known;
    }
    std::cerr << "\n";
    return kExitConfig;
  }
  fs::create_directories(out_dir);
  evesim::write_file((fs::path(out_dir) / (name + ".json")).string(),
                     j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evesim: digital-ecosystem simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, edges_path, param, values, recipe_name;
  std::optional<std::uint64_t> seed;
  int threads = default_threads();
  int n_seeds = 1;
  double tau = 0.0;

  auto* run_cmd = app.add_subcommand("run", "execute one simulation");
  run_cmd->add_option("--config", config_path, "config JSON path")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_option("--seed", seed, "override the config seed");
  run_cmd->add_option("--threads", threads, "worker threads");

  auto* net_cmd =
      app.add_subcommand("netstats", "graph statistics of an edge list");
  net_cmd->add_option("--edges", edges_path, "edge list path")->required();
  net_cmd->add_option("--tau", tau, "weight threshold");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd->add_option("--config", config_path, "config JSON path")
      ->required();
  sweep_cmd->add_option("--param", param, "dotted numeric config key")
      ->required();
  sweep_cmd->add_option("--values", values, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--seeds", n_seeds, "seeds per value")->required();
  sweep_cmd->add_option("--out", out_dir, "output directory")->required();
  sweep_cmd->add_option("--threads", threads, "worker threads");

  auto* recipe_cmd =
      app.add_subcommand("recipe", "run a canned experiment");
  recipe_cmd->add_option("name", recipe_name, "recipe name")->required();
  recipe_cmd->add_option("--out", out_dir, "output directory")->required();
  recipe_cmd->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(config_path, out_dir, seed, threads);
    }
    if (net_cmd->parsed()) {
      return cmd_netstats(edges_path, tau);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(config_path, param, values, n_seeds, out_dir, threads);
    }
    if (recipe_cmd->parsed()) {
      return cmd_recipe(recipe_name, out_dir, threads);
    }
  } catch (const evesim::ConfigError& e) {
    print_config_errors(e);
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
