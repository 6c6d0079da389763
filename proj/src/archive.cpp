#include "maqd/archive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maqd {

GridConfig GridConfig::uniform(int d, int cells) {
    GridConfig config;
    config.dims.assign(static_cast<std::size_t>(d), cells);
    config.lower_bounds.assign(static_cast<std::size_t>(d), 0.0);
    config.upper_bounds.assign(static_cast<std::size_t>(d), 1.0);
    return config;
}

long GridConfig::total_cells() const {
    long total = 1;
    for (int d : dims) total *= d;
    return total;
}

void GridConfig::validate() const {
    if (dims.empty()) throw std::invalid_argument("GridConfig: dims must be non-empty");
    if (lower_bounds.size() != dims.size() || upper_bounds.size() != dims.size())
        throw std::invalid_argument("GridConfig: bounds length must match dims");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] < 1) throw std::invalid_argument("GridConfig: dims must be >= 1");
        if (!(lower_bounds[k] < upper_bounds[k]))
            throw std::invalid_argument("GridConfig: lower bound must be < upper bound");
    }
}

CellIndex descriptor_to_cell(std::span<const double> descriptor, const GridConfig& config) {
    if (descriptor.size() != config.dims.size())
        throw std::invalid_argument("descriptor_to_cell: descriptor length " +
                                    std::to_string(descriptor.size()) + " != grid dimension " +
                                    std::to_string(config.dims.size()));
    CellIndex index(descriptor.size());
    for (std::size_t k = 0; k < descriptor.size(); ++k) {
        const double b = descriptor[k];
        if (!std::isfinite(b))
            throw std::invalid_argument("descriptor_to_cell: non-finite descriptor component");
        const double lo = config.lower_bounds[k];
        const double hi = config.upper_bounds[k];
        const int cells = config.dims[k];
        int i = static_cast<int>(std::floor((b - lo) / (hi - lo) * cells));
        if (i < 0) i = 0;
        if (i >= cells) i = cells - 1;
        index[k] = i;
    }
    return index;
}

Archive::Archive(GridConfig config) : config_(std::move(config)) {
    config_.validate();
}

InsertOutcome Archive::try_insert(TeamGenome genome, double fitness,
                                  std::span<const double> descriptor) {
    if (!std::isfinite(fitness))
        throw std::invalid_argument("Archive::try_insert: non-finite fitness");
    CellIndex index = descriptor_to_cell(descriptor, config_);

    auto it = cells_.find(index);
    if (it == cells_.end()) {
        cells_.emplace(index, Elite{std::move(genome), fitness,
                                    {descriptor.begin(), descriptor.end()}});
        occupied_.push_back(std::move(index));
        return InsertOutcome::InsertedEmpty;
    }
    if (fitness > it->second.fitness) {
        it->second = Elite{std::move(genome), fitness, {descriptor.begin(), descriptor.end()}};
        return InsertOutcome::Replaced;
    }
    return InsertOutcome::Rejected;
}

std::vector<TeamGenome> Archive::sample_elites(int k, RngStream& rng) const {
    if (k < 0) throw std::invalid_argument("Archive::sample_elites: negative count");
    if (k == 0) return {};
    if (cells_.empty())
        throw std::invalid_argument("Archive::sample_elites: archive is empty");
    std::vector<TeamGenome> sampled;
    sampled.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const std::size_t pick = rng.next_below(occupied_.size());
        sampled.push_back(cells_.at(occupied_[pick]).genome);
    }
    return sampled;
}

ArchiveMetrics Archive::compute_metrics() const {
    ArchiveMetrics metrics;
    metrics.coverage =
        static_cast<double>(cells_.size()) / static_cast<double>(config_.total_cells());
    for (const auto& [index, elite] : cells_) {
        metrics.qd_score += elite.fitness;
        if (!metrics.max_fitness || elite.fitness > *metrics.max_fitness)
            metrics.max_fitness = elite.fitness;
    }
    return metrics;
}

const Elite* Archive::cell(const CellIndex& index) const {
    auto it = cells_.find(index);
    return it == cells_.end() ? nullptr : &it->second;
}

}  // namespace maqd
