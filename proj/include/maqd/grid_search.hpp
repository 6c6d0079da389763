#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maqd/config.hpp"

namespace maqd {

struct GridSearchSpace {
    std::vector<double> sigma_iso{0.0001, 0.001, 0.01, 0.1, 1.0};
    std::vector<double> sigma_line{0.0001, 0.001, 0.01, 0.1, 1.0};
    std::vector<double> eta{4, 8, 16, 32, 64, 128, 256};
};

struct GridSearchRow {
    double sigma_iso = 0.0;
    double sigma_line = 0.0;
    double eta = 0.0;
    std::uint64_t seed = 0;
    double qd_score = 0.0;
};

struct GridSearchMean {
    double sigma_iso = 0.0;
    double sigma_line = 0.0;
    double eta = 0.0;
    double mean_qd_score = 0.0;
};

struct GridSearchResult {
    VariationConfig best;
    std::vector<GridSearchRow> rows;    // combinations x seeds, enumeration order
    std::vector<GridSearchMean> means;  // one per combination
};

// Final QD score of one configured run; injectable so the search mechanics
// can be exercised against synthetic objectives.
using RunScoreFn = std::function<double(const RunConfig&)>;

// Evaluates every (sigma_iso, sigma_line, eta) combination with seeds
// base.seed .. base.seed + n_seeds - 1 and returns the argmax of the mean
// final QD score. Combinations are enumerated lexicographically, and an
// earlier combination wins ties.
GridSearchResult grid_search(const RunConfig& base, const GridSearchSpace& space,
                             int n_seeds = 3, const RunScoreFn& score = {});

}  // namespace maqd
