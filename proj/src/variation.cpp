#include "maqd/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maqd {

void VariationConfig::validate() const {
    if (eta < 0.0) throw std::invalid_argument("VariationConfig: eta must be >= 0");
    if (sigma_iso < 0.0 || sigma_line < 0.0)
        throw std::invalid_argument("VariationConfig: sigmas must be >= 0");
    if (p_mut && (*p_mut <= 0.0 || *p_mut > 1.0))
        throw std::invalid_argument("VariationConfig: p_mut must be in (0, 1]");
}

namespace {

double clamp(double v, Bounds bounds) {
    return std::min(std::max(v, bounds.lower), bounds.upper);
}

void check_in_bounds(std::span<const double> x, Bounds bounds, const char* who) {
    for (double v : x)
        if (!(v >= bounds.lower && v <= bounds.upper))
            throw std::invalid_argument(std::string(who) + ": input gene outside bounds");
}

}  // namespace

double polynomial_mutation_gene(double x, double u, double eta, Bounds bounds) {
    const double exponent = 1.0 / (eta + 1.0);
    double mutated;
    if (u <= 0.5) {
        const double delta = std::pow(2.0 * u, exponent) - 1.0;
        mutated = x + delta * (x - bounds.lower);
    } else {
        const double delta = 1.0 - std::pow(2.0 * (1.0 - u), exponent);
        mutated = x + delta * (bounds.upper - x);
    }
    return clamp(mutated, bounds);
}

std::vector<double> polynomial_mutation(std::span<const double> x, const VariationConfig& cfg,
                                        Bounds bounds, RngStream& rng) {
    cfg.validate();
    check_in_bounds(x, bounds, "polynomial_mutation");
    const double p = cfg.p_mut ? *cfg.p_mut : 1.0 / static_cast<double>(x.size());
    std::vector<double> out(x.begin(), x.end());
    for (double& gene : out) {
        if (rng.uniform01() <= p)
            gene = polynomial_mutation_gene(gene, rng.uniform01(), cfg.eta, bounds);
    }
    return out;
}

std::vector<double> isoline_step(std::span<const double> x1, std::span<const double> x2,
                                 std::span<const double> eps, double xi,
                                 const VariationConfig& cfg, Bounds bounds) {
    if (x1.size() != x2.size() || x1.size() != eps.size())
        throw std::invalid_argument("isoline_step: length mismatch");
    std::vector<double> out(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double v = x1[i] + cfg.sigma_iso * eps[i] + cfg.sigma_line * xi * (x2[i] - x1[i]);
        out[i] = clamp(v, bounds);
    }
    return out;
}

std::vector<double> isoline_variation(std::span<const double> x1, std::span<const double> x2,
                                      const VariationConfig& cfg, Bounds bounds, RngStream& rng) {
    cfg.validate();
    if (x1.size() != x2.size())
        throw std::invalid_argument("isoline_variation: parent length mismatch");
    check_in_bounds(x1, bounds, "isoline_variation");
    check_in_bounds(x2, bounds, "isoline_variation");
    std::vector<double> eps(x1.size());
    for (double& e : eps) e = rng.normal();
    const double xi = rng.normal();
    return isoline_step(x1, x2, eps, xi, cfg, bounds);
}

TeamGenome naive_team_variation(const TeamGenome& parent, OperatorKind op,
                                const VariationConfig& cfg, Bounds bounds,
                                const RngStream& rng) {
    if (op == OperatorKind::TeamCrossover)
        throw std::invalid_argument("naive_team_variation: crossover is not a mutation");
    TeamGenome offspring;
    offspring.agents.reserve(parent.agents.size());
    for (std::size_t i = 0; i < parent.agents.size(); ++i) {
        RngStream agent_rng = rng.fork(i);
        const auto& theta = parent.agents[i];
        if (op == OperatorKind::PolynomialMutation)
            offspring.agents.push_back(polynomial_mutation(theta, cfg, bounds, agent_rng));
        else
            offspring.agents.push_back(isoline_variation(theta, theta, cfg, bounds, agent_rng));
    }
    return offspring;
}

TeamGenome team_isoline_variation(const TeamGenome& parent, const TeamGenome& mate,
                                  const VariationConfig& cfg, Bounds bounds,
                                  const RngStream& rng) {
    if (parent.agents.size() != mate.agents.size())
        throw std::invalid_argument("team_isoline_variation: team size mismatch");
    TeamGenome offspring;
    offspring.agents.reserve(parent.agents.size());
    for (std::size_t i = 0; i < parent.agents.size(); ++i) {
        RngStream agent_rng = rng.fork(i);
        offspring.agents.push_back(
            isoline_variation(parent.agents[i], mate.agents[i], cfg, bounds, agent_rng));
    }
    return offspring;
}

TeamGenome team_crossover(const std::vector<TeamGenome>& parents) {
    const std::size_t n = parents.size();
    if (n == 0) throw std::invalid_argument("team_crossover: no parents");
    for (const auto& parent : parents) {
        if (parent.agents.size() != n)
            throw std::invalid_argument(
                "team_crossover: parent count must equal team size");
        for (std::size_t i = 0; i < n; ++i)
            if (parent.agents[i].size() != parents.front().agents[i].size())
                throw std::invalid_argument("team_crossover: heterogeneous team shapes");
    }
    TeamGenome offspring;
    offspring.agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        offspring.agents.push_back(parents[i].agents[i]);
    return offspring;
}

BatchSplit split_batch(int batch_size, Variant variant) {
    if (batch_size < 0) throw std::invalid_argument("split_batch: negative batch size");
    BatchSplit split;
    if (variant == Variant::MixME) {
        const int base = batch_size / 3;
        const int rem = batch_size % 3;
        split.polynomial = base + (rem > 0 ? 1 : 0);
        split.isoline = base + (rem > 1 ? 1 : 0);
        split.crossover = base;
    } else {
        split.polynomial = batch_size / 2 + batch_size % 2;
        split.isoline = batch_size / 2;
    }
    return split;
}

std::vector<Offspring> emit_batch(const Archive& archive, int batch_size, Variant variant,
                                  const VariationConfig& cfg, Bounds bounds,
                                  const RngStream& rng) {
    if (batch_size < 1) throw std::invalid_argument("emit_batch: batch_size must be >= 1");
    if (archive.empty()) throw std::invalid_argument("emit_batch: archive is empty");
    cfg.validate();

    const BatchSplit split = split_batch(batch_size, variant);
    std::vector<Offspring> batch;
    batch.reserve(static_cast<std::size_t>(batch_size));
    for (int i = 0; i < batch_size; ++i) {
        RngStream child = rng.fork(static_cast<std::uint64_t>(i));
        if (i < split.polynomial) {
            auto parents = archive.sample_elites(1, child);
            batch.push_back({naive_team_variation(parents[0], OperatorKind::PolynomialMutation,
                                                  cfg, bounds, child),
                             OperatorKind::PolynomialMutation});
        } else if (i < split.polynomial + split.isoline) {
            auto parents = archive.sample_elites(2, child);
            batch.push_back({team_isoline_variation(parents[0], parents[1], cfg, bounds, child),
                             OperatorKind::IsoLineVariation});
        } else {
            const int team_size =
                static_cast<int>(archive.cells().begin()->second.genome.agents.size());
            auto parents = archive.sample_elites(team_size, child);
            batch.push_back({team_crossover(parents), OperatorKind::TeamCrossover});
        }
    }
    return batch;
}

}  // namespace maqd
