#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maqd/archive.hpp"
#include "maqd/grid_search.hpp"
#include "maqd/run.hpp"

namespace maqd {

// Shortest decimal text that round-trips the exact double; '.' decimal point.
std::string format_double(double v);

// metrics.csv: iteration,env_interactions,max_fitness,coverage,qd_score.
// max_fitness is an empty field while the archive is empty.
void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);

// One row per occupied cell: index components, descriptor components, fitness.
void write_heatmap_csv(const Archive& archive, const std::string& path);

// Archive as a JSON document: grid shape, one entry per occupied cell with a
// genome_ref into a flat genome table, plus an optional per-agent policy
// shape block. Saving a loaded archive reproduces the file byte for byte.
void save_archive_json(const Archive& archive, const std::vector<MlpSpec>& agent_specs,
                       const std::string& path);

struct LoadedArchive {
    Archive archive;
    std::vector<MlpSpec> agent_specs;  // empty when the file carries none
};

LoadedArchive load_archive_json(const std::string& path);

void write_grid_search_csv(const GridSearchResult& result, const std::string& rows_path,
                           const std::string& means_path);

void write_sweep_csv(const std::vector<std::pair<std::string, std::vector<SweepRow>>>& tables,
                     const std::string& path);

// Deterministic run summary: config echo, per-operator insertion statistics
// and simulator timestep totals.
void write_run_summary_json(const RunConfig& config, const RunArtifacts& artifacts,
                            const std::string& path);

}  // namespace maqd
