#include "maqd/run.hpp"

#include <stdexcept>

namespace maqd {

namespace {

// Stream derivation domains under the master seed.
constexpr std::uint64_t kInitDomain = 0;
constexpr std::uint64_t kVariationDomain = 1;

std::size_t op_slot(const std::optional<OperatorKind>& op) {
    return op ? static_cast<std::size_t>(*op) : 3;
}

}  // namespace

RunArtifacts run_map_elites(const RunConfig& config, const IterationObserver& observer) {
    config.validate();
    const auto task = make_task(config);
    const GridConfig grid = make_grid(config, task->descriptor_dim());
    const Bounds bounds = task->genome_bounds();

    RunArtifacts artifacts{.metrics = {}, .archive = Archive(grid)};

    const RngStream master(config.seed);
    const RngStream init_root = master.fork(kInitDomain);
    const RngStream variation_root = master.fork(kVariationDomain);

    auto record = [&](std::vector<EvalResult>&& results, std::vector<TeamGenome>&& genomes,
                      const std::vector<std::optional<OperatorKind>>& tags) {
        for (std::size_t i = 0; i < results.size(); ++i) {
            results[i].operator_tag = tags[i];
            const std::size_t slot = op_slot(tags[i]);
            ++artifacts.operator_stats.emitted[slot];
            artifacts.total_env_steps += results[i].steps_executed;
            switch (artifacts.archive.try_insert(std::move(genomes[i]), results[i].fitness,
                                                 results[i].descriptor)) {
                case InsertOutcome::InsertedEmpty:
                    ++artifacts.operator_stats.inserted_empty[slot];
                    break;
                case InsertOutcome::Replaced:
                    ++artifacts.operator_stats.replaced[slot];
                    break;
                case InsertOutcome::Rejected:
                    ++artifacts.operator_stats.rejected[slot];
                    break;
            }
        }
    };

    auto log_row = [&](int iteration) {
        const ArchiveMetrics m = artifacts.archive.compute_metrics();
        MetricsRow row{iteration,
                       config.initial_solutions() +
                           static_cast<long>(iteration) * config.batch_size,
                       m.max_fitness, m.coverage, m.qd_score};
        artifacts.metrics.push_back(row);
        if (observer) observer(iteration, artifacts.archive, row);
    };

    // Initial population.
    {
        const int n_init = config.initial_solutions();
        std::vector<TeamGenome> genomes;
        genomes.reserve(static_cast<std::size_t>(n_init));
        for (int i = 0; i < n_init; ++i) {
            RngStream stream = init_root.fork(static_cast<std::uint64_t>(i));
            genomes.push_back(task->init_team(stream));
        }
        auto results = evaluate_batch(*task, genomes, EnvModifiers{});
        const std::vector<std::optional<OperatorKind>> tags(genomes.size(), std::nullopt);
        record(std::move(results), std::move(genomes), tags);
        log_row(0);
    }

    for (int iteration = 1; iteration <= config.n_iterations; ++iteration) {
        const RngStream iter_rng = variation_root.fork(static_cast<std::uint64_t>(iteration));
        auto offspring = emit_batch(artifacts.archive, config.batch_size, config.variant,
                                    config.variation, bounds, iter_rng);

        std::vector<TeamGenome> genomes;
        std::vector<std::optional<OperatorKind>> tags;
        genomes.reserve(offspring.size());
        tags.reserve(offspring.size());
        std::array<int, 3> emitted{};
        for (auto& child : offspring) {
            ++emitted[static_cast<std::size_t>(child.op)];
            tags.emplace_back(child.op);
            genomes.push_back(std::move(child.genome));
        }
        artifacts.per_iteration_emitted.push_back(emitted);

        auto results = evaluate_batch(*task, genomes, EnvModifiers{});
        record(std::move(results), std::move(genomes), tags);
        if (iteration % config.metrics_every == 0) log_row(iteration);
    }
    return artifacts;
}

std::vector<SweepRow> generalisation_sweep(const Task& task, const Archive& archive,
                                           Scenario scenario, std::span<const double> values,
                                           int dysfunction_leg, int n_evals) {
    if (archive.empty())
        throw std::invalid_argument("generalisation_sweep: archive is empty");
    std::vector<SweepRow> table;
    table.reserve(values.size());
    for (double value : values) {
        EnvModifiers modifiers;
        if (scenario == Scenario::GravityUpdate) {
            modifiers.gravity_multiplier = value;
        } else {
            modifiers.dysfunctional_leg = dysfunction_leg;
            modifiers.dysfunction_coefficient = value;
        }
        table.push_back({value, adapted_best_fitness(archive, task, modifiers, n_evals)});
    }
    return table;
}

std::vector<double> default_sweep_values(Scenario scenario) {
    if (scenario == Scenario::GravityUpdate)
        return {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    return {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
}

}  // namespace maqd
