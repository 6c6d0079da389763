#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "maqd/archive.hpp"
#include "maqd/arm_env.hpp"
#include "maqd/env.hpp"
#include "maqd/gait_env.hpp"
#include "maqd/genome.hpp"
#include "maqd/rng.hpp"
#include "maqd/variation.hpp"

namespace maqd {

struct EvalResult {
    double fitness = 0.0;
    std::vector<double> descriptor;
    int steps_executed = 0;
    // Operator that produced the genome; empty for initial solutions.
    // Filled by the harness, not by evaluation.
    std::optional<OperatorKind> operator_tag;
    ContactHistory contacts;
};

// A task binds an environment to a genome representation: how teams are
// initialised, what their parameter bounds are, and how a team maps to a
// (fitness, descriptor) pair. Evaluation is pure, so any number of
// evaluations may run concurrently.
class Task {
public:
    virtual ~Task() = default;

    virtual const EnvSpec& env_spec() const = 0;
    virtual std::vector<std::size_t> agent_param_sizes() const = 0;
    virtual Bounds genome_bounds() const = 0;
    virtual TeamGenome init_team(RngStream& rng) const = 0;
    virtual EvalResult evaluate(const TeamGenome& team, const EnvModifiers& modifiers) const = 0;
    virtual bool deterministic() const { return true; }

    int descriptor_dim() const { return env_spec().n_feet; }
};

// Gait environment driven by per-agent tanh MLP policies.
class GaitTask : public Task {
public:
    GaitTask(GaitParams params, std::vector<int> hidden_dims, bool single_agent,
             double param_lower = -5.0, double param_upper = 5.0);

    const EnvSpec& env_spec() const override { return env_.spec(); }
    std::vector<std::size_t> agent_param_sizes() const override;
    Bounds genome_bounds() const override;
    TeamGenome init_team(RngStream& rng) const override;
    EvalResult evaluate(const TeamGenome& team, const EnvModifiers& modifiers) const override;

    const GaitEnv& env() const { return env_; }
    const std::vector<MlpSpec>& policy_specs() const { return specs_; }

private:
    GaitEnv env_;
    std::vector<MlpSpec> specs_;
};

// Arm task: the genome is the joint angles themselves.
class ArmTask : public Task {
public:
    explicit ArmTask(ArmParams params);

    const EnvSpec& env_spec() const override { return arm_.spec(); }
    std::vector<std::size_t> agent_param_sizes() const override { return arm_.agent_sizes(); }
    Bounds genome_bounds() const override;
    TeamGenome init_team(RngStream& rng) const override;
    EvalResult evaluate(const TeamGenome& team, const EnvModifiers& modifiers) const override;

    const FactoredArm& arm() const { return arm_; }

private:
    FactoredArm arm_;
};

// Full episode: every agent maps its observation through its policy each
// step, rewards are summed undiscounted, contacts are logged and the
// descriptor is their per-foot average over executed steps.
EvalResult rollout(const GaitEnv& env, std::span<const MlpSpec> specs, const TeamGenome& team,
                   const EnvModifiers& modifiers);

// Results in input order, element i identical to task.evaluate(teams[i], ...)
// no matter how the work is scheduled.
std::vector<EvalResult> evaluate_batch(const Task& task, std::span<const TeamGenome> teams,
                                       const EnvModifiers& modifiers);

// For every elite: n_evals evaluations under the modifiers, median fitness;
// returns the maximum of these medians. Deterministic tasks collapse to a
// single evaluation per elite since all repeats would be identical.
double adapted_best_fitness(const Archive& archive, const Task& task,
                            const EnvModifiers& modifiers, int n_evals = 100);

}  // namespace maqd
