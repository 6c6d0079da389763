#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "maqd/genome.hpp"
#include "maqd/rng.hpp"

namespace maqd {

using CellIndex = std::vector<int>;

// Regular grid over descriptor space; dims[k] cells on axis k.
struct GridConfig {
    std::vector<int> dims;
    std::vector<double> lower_bounds;
    std::vector<double> upper_bounds;

    // d axes, `cells` cells each, bounds [0, 1] per axis.
    static GridConfig uniform(int d, int cells);

    int dimensions() const { return static_cast<int>(dims.size()); }
    long total_cells() const;
    void validate() const;
};

struct Elite {
    TeamGenome genome;
    double fitness = 0.0;
    std::vector<double> descriptor;
};

enum class InsertOutcome { InsertedEmpty, Replaced, Rejected };

struct ArchiveMetrics {
    std::optional<double> max_fitness;  // absent when the archive is empty
    double coverage = 0.0;
    double qd_score = 0.0;
};

// Per axis k: floor((b_k - lower_k) / (upper_k - lower_k) * dims_k),
// clamped to [0, dims_k - 1] so boundary and slightly out-of-range
// descriptors land in edge cells.
CellIndex descriptor_to_cell(std::span<const double> descriptor, const GridConfig& config);

// One elite per cell; a candidate replaces the incumbent only on strictly
// higher fitness, so per-cell fitness, coverage and max fitness are all
// non-decreasing over any insertion sequence.
class Archive {
public:
    explicit Archive(GridConfig config);

    const GridConfig& config() const { return config_; }

    InsertOutcome try_insert(TeamGenome genome, double fitness,
                             std::span<const double> descriptor);

    // k independent uniform draws (with replacement) over occupied cells;
    // returned genomes are copies, never references into the archive.
    std::vector<TeamGenome> sample_elites(int k, RngStream& rng) const;

    ArchiveMetrics compute_metrics() const;

    std::size_t occupied_count() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const std::map<CellIndex, Elite>& cells() const { return cells_; }
    const Elite* cell(const CellIndex& index) const;

private:
    GridConfig config_;
    std::map<CellIndex, Elite> cells_;
    std::vector<CellIndex> occupied_;  // insertion order, for O(1) sampling
};

}  // namespace maqd
