#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maqd/archive.hpp"
#include "maqd/arm_env.hpp"
#include "maqd/evaluate.hpp"
#include "maqd/gait_env.hpp"
#include "maqd/variation.hpp"

namespace maqd {

// Everything one experiment needs. Loadable from a sectioned key-value file
// (see docs/config.md); unknown sections or keys are errors.
struct RunConfig {
    Variant variant = Variant::MixME;
    std::uint64_t seed = 0;
    int n_iterations = 1000;
    int batch_size = 4096;
    std::optional<int> n_initial_solutions;  // defaults to batch_size
    int metrics_every = 1;

    std::string env_name = "gait";  // "gait" | "arm"
    GaitParams gait;
    ArmParams arm;

    std::vector<int> hidden_dims{64, 64};
    double param_lower = -5.0;
    double param_upper = 5.0;

    std::optional<std::vector<int>> grid_dims;  // default: cells_per_dim per axis
    int cells_per_dim = 10;
    double grid_lower = 0.0;
    double grid_upper = 1.0;

    VariationConfig variation;

    int initial_solutions() const { return n_initial_solutions.value_or(batch_size); }
    void validate() const;
};

Variant parse_variant(const std::string& name);   // "sa" | "naive" | "mixme"
std::string variant_name(Variant variant);

RunConfig load_run_config(const std::string& path);

std::unique_ptr<Task> make_task(const RunConfig& config);
GridConfig make_grid(const RunConfig& config, int descriptor_dim);

}  // namespace maqd
