#include "maqd/grid_search.hpp"

#include <algorithm>
#include <stdexcept>

#include "maqd/run.hpp"

namespace maqd {

GridSearchResult grid_search(const RunConfig& base, const GridSearchSpace& space, int n_seeds,
                             const RunScoreFn& score) {
    if (space.sigma_iso.empty() || space.sigma_line.empty() || space.eta.empty())
        throw std::invalid_argument("grid_search: empty search space");
    if (n_seeds < 1) throw std::invalid_argument("grid_search: n_seeds must be >= 1");

    const RunScoreFn run_score = score ? score : [](const RunConfig& config) {
        return run_map_elites(config).metrics.back().qd_score;
    };

    // enumerate in ascending order so keeping the first maximum implements
    // the lexicographic tie-break
    GridSearchSpace sorted = space;
    std::sort(sorted.sigma_iso.begin(), sorted.sigma_iso.end());
    std::sort(sorted.sigma_line.begin(), sorted.sigma_line.end());
    std::sort(sorted.eta.begin(), sorted.eta.end());

    GridSearchResult result;
    bool have_best = false;
    double best_mean = 0.0;
    for (double sigma_iso : sorted.sigma_iso) {
        for (double sigma_line : sorted.sigma_line) {
            for (double eta : sorted.eta) {
                double sum = 0.0;
                for (int s = 0; s < n_seeds; ++s) {
                    RunConfig config = base;
                    config.variation.sigma_iso = sigma_iso;
                    config.variation.sigma_line = sigma_line;
                    config.variation.eta = eta;
                    config.seed = base.seed + static_cast<std::uint64_t>(s);
                    const double qd = run_score(config);
                    result.rows.push_back({sigma_iso, sigma_line, eta, config.seed, qd});
                    sum += qd;
                }
                const double mean = sum / n_seeds;
                result.means.push_back({sigma_iso, sigma_line, eta, mean});
                if (!have_best || mean > best_mean) {
                    have_best = true;
                    best_mean = mean;
                    result.best = base.variation;
                    result.best.sigma_iso = sigma_iso;
                    result.best.sigma_line = sigma_line;
                    result.best.eta = eta;
                }
            }
        }
    }
    return result;
}

}  // namespace maqd
