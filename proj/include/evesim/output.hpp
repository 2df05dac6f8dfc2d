#pragma once

#include <span>
#include <string>

namespace evesim {

struct EpochReport;
struct SimState;
class HabitatNetwork;

// Shortest decimal that round-trips the exact double value.
std::string format_double(double v);

// Fixed column order:
// epoch,best_fitness_mean,mean_fitness_mean,species_count,shannon,
// migrations,accepted,mean_weight,clustering,path_length,components,
// feedback_active
// path_length is blank when the thresholded graph is disconnected.
std::string reports_to_csv(std::span<const EpochReport> reports);

std::string csv_header();
std::string report_csv_row(const EpochReport& r);

// Adjacency dump {"nodes": n, "edges": [[i, j, w], ...]} for analysis tools.
std::string network_to_json(const HabitatNetwork& net);

// Species-area curve, log-abundance shape check and cross-habitat
// divergence of the final state, as a JSON document.
std::string analysis_to_json(const SimState& final_state);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace evesim
