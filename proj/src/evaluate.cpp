#include "maqd/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maqd/parallel.hpp"

namespace maqd {

GaitTask::GaitTask(GaitParams params, std::vector<int> hidden_dims, bool single_agent,
                   double param_lower, double param_upper)
    : env_(params, single_agent) {
    const EnvSpec& spec = env_.spec();
    specs_.reserve(static_cast<std::size_t>(spec.n_agents));
    for (int a = 0; a < spec.n_agents; ++a) {
        MlpSpec mlp;
        mlp.input_dim = spec.obs_dims[static_cast<std::size_t>(a)];
        mlp.hidden_dims = hidden_dims;
        mlp.output_dim = spec.action_dims[static_cast<std::size_t>(a)];
        mlp.param_lower = param_lower;
        mlp.param_upper = param_upper;
        mlp.validate();
        specs_.push_back(std::move(mlp));
    }
}

std::vector<std::size_t> GaitTask::agent_param_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(specs_.size());
    for (const auto& spec : specs_) sizes.push_back(spec.param_count());
    return sizes;
}

Bounds GaitTask::genome_bounds() const {
    return {specs_.front().param_lower, specs_.front().param_upper};
}

TeamGenome GaitTask::init_team(RngStream& rng) const {
    TeamGenome team;
    team.agents.reserve(specs_.size());
    for (std::size_t a = 0; a < specs_.size(); ++a) {
        RngStream agent_rng = rng.fork(a);
        team.agents.push_back(init_random(specs_[a], agent_rng).theta);
    }
    return team;
}

EvalResult GaitTask::evaluate(const TeamGenome& team, const EnvModifiers& modifiers) const {
    return rollout(env_, specs_, team, modifiers);
}

ArmTask::ArmTask(ArmParams params) : arm_(params) {}

Bounds ArmTask::genome_bounds() const {
    return {-3.14159265358979323846, 3.14159265358979323846};
}

TeamGenome ArmTask::init_team(RngStream& rng) const {
    const Bounds bounds = genome_bounds();
    TeamGenome team;
    team.agents.reserve(arm_.agent_sizes().size());
    for (std::size_t a = 0; a < arm_.agent_sizes().size(); ++a) {
        RngStream agent_rng = rng.fork(a);
        std::vector<double> angles(arm_.agent_sizes()[a]);
        for (double& angle : angles) angle = agent_rng.uniform(bounds.lower, bounds.upper);
        team.agents.push_back(std::move(angles));
    }
    return team;
}

EvalResult ArmTask::evaluate(const TeamGenome& team, const EnvModifiers& modifiers) const {
    auto [fitness, descriptor] = arm_.evaluate(team, modifiers);
    EvalResult result;
    result.fitness = fitness;
    result.descriptor = std::move(descriptor);
    result.steps_executed = 0;  // closed form, no rollout
    return result;
}

EvalResult rollout(const GaitEnv& env, std::span<const MlpSpec> specs, const TeamGenome& team,
                   const EnvModifiers& modifiers) {
    const EnvSpec& spec = env.spec();
    if (team.agents.size() != static_cast<std::size_t>(spec.n_agents) ||
        specs.size() != team.agents.size())
        throw std::invalid_argument("rollout: team size does not match environment");
    for (std::size_t a = 0; a < team.agents.size(); ++a)
        if (team.agents[a].size() != specs[a].param_count())
            throw std::invalid_argument("rollout: agent parameter count does not match policy");

    GaitState state = env.initial_state();
    auto observations = env.observe(state);

    EvalResult result;
    result.contacts.n_feet = spec.n_feet;
    MlpWorkspace ws;
    std::vector<std::vector<double>> actions(team.agents.size());

    for (int t = 0; t < spec.episode_length; ++t) {
        for (std::size_t a = 0; a < team.agents.size(); ++a)
            forward_into(specs[a], team.agents[a], observations[a], ws, actions[a]);
        StepResult step = env.step(state, actions, modifiers);
        result.fitness += step.reward;
        result.contacts.append(step.foot_contacts);
        ++result.steps_executed;
        state = std::move(step.next_state);
        observations = std::move(step.observations);
        if (step.done) break;
    }
    result.descriptor = behaviour_descriptor(result.contacts);
    return result;
}

std::vector<EvalResult> evaluate_batch(const Task& task, std::span<const TeamGenome> teams,
                                       const EnvModifiers& modifiers) {
    std::vector<EvalResult> results(teams.size());
    parallel_for(teams.size(),
                 [&](std::size_t i) { results[i] = task.evaluate(teams[i], modifiers); });
    return results;
}

double adapted_best_fitness(const Archive& archive, const Task& task,
                            const EnvModifiers& modifiers, int n_evals) {
    if (archive.empty())
        throw std::invalid_argument("adapted_best_fitness: archive is empty");
    if (n_evals < 1)
        throw std::invalid_argument("adapted_best_fitness: n_evals must be >= 1");
    const int repeats = task.deterministic() ? 1 : n_evals;

    std::vector<const Elite*> elites;
    elites.reserve(archive.occupied_count());
    for (const auto& [index, elite] : archive.cells()) elites.push_back(&elite);

    std::vector<double> medians(elites.size());
    parallel_for(elites.size(), [&](std::size_t i) {
        std::vector<double> fits(static_cast<std::size_t>(repeats));
        for (int r = 0; r < repeats; ++r)
            fits[static_cast<std::size_t>(r)] =
                task.evaluate(elites[i]->genome, modifiers).fitness;
        std::sort(fits.begin(), fits.end());
        const std::size_t n = fits.size();
        medians[i] = (n % 2 == 1) ? fits[n / 2] : 0.5 * (fits[n / 2 - 1] + fits[n / 2]);
    });
    return *std::max_element(medians.begin(), medians.end());
}

}  // namespace maqd
