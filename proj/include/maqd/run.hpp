#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "maqd/archive.hpp"
#include "maqd/config.hpp"
#include "maqd/evaluate.hpp"

namespace maqd {

struct MetricsRow {
    int iteration = 0;
    long env_interactions = 0;  // evaluations so far: n_initial + iteration * batch_size
    std::optional<double> max_fitness;
    double coverage = 0.0;
    double qd_score = 0.0;
};

// Indexed by OperatorKind; slot 3 counts initial solutions.
struct OperatorStats {
    std::array<long, 4> emitted{};
    std::array<long, 4> inserted_empty{};
    std::array<long, 4> replaced{};
    std::array<long, 4> rejected{};
};

struct RunArtifacts {
    std::vector<MetricsRow> metrics;
    Archive archive;
    OperatorStats operator_stats;
    // Offspring counts per iteration in operator order
    // (polynomial, iso-line, crossover).
    std::vector<std::array<int, 3>> per_iteration_emitted;
    long total_env_steps = 0;  // simulator timesteps, distinct from evaluations
};

using IterationObserver =
    std::function<void(int iteration, const Archive& archive, const MetricsRow& row)>;

// The main loop: populate the grid with random solutions, then per iteration
// emit a batch, evaluate it, and apply the insertions sequentially in batch
// order. Fully determined by config.seed. The observer fires for every
// logged metrics row, including the post-initialisation row.
RunArtifacts run_map_elites(const RunConfig& config, const IterationObserver& observer = {});

enum class Scenario { GravityUpdate, LegDysfunction };

struct SweepRow {
    double value = 0.0;
    double adapted_fitness = 0.0;
};

// Few-shot adaptation table: for each sweep value, build the corresponding
// modifiers and report adapted_best_fitness of the trained archive.
std::vector<SweepRow> generalisation_sweep(const Task& task, const Archive& archive,
                                           Scenario scenario, std::span<const double> values,
                                           int dysfunction_leg = 0, int n_evals = 100);

// Default sweep values when the CLI is given none.
std::vector<double> default_sweep_values(Scenario scenario);

}  // namespace maqd
