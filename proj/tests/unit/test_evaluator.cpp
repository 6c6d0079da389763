#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "maqd/evaluate.hpp"

using namespace maqd;

namespace {

GaitTask small_task(bool single_agent = false) {
    GaitParams params;
    params.n_legs = 3;
    params.episode_length = 60;
    return GaitTask(params, {8, 8}, single_agent);
}

bool results_equal(const EvalResult& a, const EvalResult& b) {
    return a.fitness == b.fitness && a.descriptor == b.descriptor &&
           a.steps_executed == b.steps_executed && a.contacts.flags == b.contacts.flags;
}

}  // namespace

TEST_SUITE("evaluator") {

TEST_CASE("all-zero team holds equilibrium for the survive reward") {
    GaitParams params;  // 4 legs, 300 steps, defaults
    const GaitTask task(params, {16, 16}, false);
    TeamGenome zero;
    for (std::size_t n : task.agent_param_sizes())
        zero.agents.push_back(std::vector<double>(n, 0.0));

    const EvalResult result = task.evaluate(zero, {});
    CHECK(result.steps_executed == 300);
    CHECK(result.fitness == doctest::Approx(150.0).epsilon(1e-12));  // T * w_survive
    for (double b : result.descriptor) CHECK(b == 1.0);
}

TEST_CASE("rollout is deterministic and modifier-neutral") {
    const GaitTask task = small_task();
    RngStream rng(5);
    const TeamGenome team = task.init_team(rng);

    const EvalResult a = task.evaluate(team, {});
    const EvalResult b = task.evaluate(team, {});
    CHECK(results_equal(a, b));

    EnvModifiers neutral;
    neutral.gravity_multiplier = 1.0;
    neutral.dysfunction_coefficient = 1.0;
    CHECK(results_equal(a, task.evaluate(team, neutral)));
}

TEST_CASE("rollout fitness equals the instrumented per-step reward sum") {
    const GaitTask task = small_task();
    RngStream rng(6);
    const TeamGenome team = task.init_team(rng);
    const EvalResult result = task.evaluate(team, {});

    const GaitEnv& env = task.env();
    GaitState state = env.initial_state();
    auto obs = env.observe(state);
    MlpWorkspace ws;
    double total = 0.0;
    int steps = 0;
    for (int t = 0; t < env.spec().episode_length; ++t) {
        std::vector<std::vector<double>> actions(team.agents.size());
        for (std::size_t a = 0; a < team.agents.size(); ++a)
            forward_into(task.policy_specs()[a], team.agents[a], obs[a], ws, actions[a]);
        const StepResult step = env.step(state, actions, {});
        total += step.reward;
        ++steps;
        state = step.next_state;
        obs = step.observations;
        if (step.done) break;
    }
    CHECK(result.fitness == total);
    CHECK(result.steps_executed == steps);
}

TEST_CASE("descriptor re-derives exactly from the logged contacts") {
    const GaitTask task = small_task();
    RngStream rng(7);
    for (int i = 0; i < 20; ++i) {
        RngStream child = rng.fork(i);
        const EvalResult result = task.evaluate(task.init_team(child), {});
        CHECK(result.descriptor == behaviour_descriptor(result.contacts));
        for (double b : result.descriptor) {
            CHECK(b >= 0.0);
            CHECK(b <= 1.0);
        }
    }
}

TEST_CASE("evaluate_batch equals sequential rollouts, in order") {
    const GaitTask task = small_task();
    RngStream rng(8);
    std::vector<TeamGenome> teams;
    for (int i = 0; i < 6; ++i) {
        RngStream child = rng.fork(i);
        teams.push_back(task.init_team(child));
    }
    teams.push_back(teams[0]);  // duplicate must evaluate identically

    const auto batch = evaluate_batch(task, teams, {});
    REQUIRE(batch.size() == teams.size());
    for (std::size_t i = 0; i < teams.size(); ++i)
        CHECK(results_equal(batch[i], task.evaluate(teams[i], {})));
    CHECK(results_equal(batch.front(), batch.back()));

    std::vector<TeamGenome> reversed(teams.rbegin(), teams.rend());
    const auto batch_rev = evaluate_batch(task, reversed, {});
    for (std::size_t i = 0; i < teams.size(); ++i)
        CHECK(results_equal(batch_rev[i], batch[teams.size() - 1 - i]));
}

TEST_CASE("single-agent task sees the concatenated view") {
    const GaitTask task = small_task(true);
    CHECK(task.env_spec().n_agents == 1);
    CHECK(task.agent_param_sizes().size() == 1);
    RngStream rng(9);
    const TeamGenome team = task.init_team(rng);
    const EvalResult result = task.evaluate(team, {});
    CHECK(result.descriptor.size() == 3);  // still one descriptor per foot
}

TEST_CASE("adapted_best_fitness reports the max of per-elite medians") {
    const ArmTask task(ArmParams{2, 2});
    Archive archive(GridConfig::uniform(2, 5));

    RngStream rng(10);
    for (int i = 0; i < 40; ++i) {
        RngStream child = rng.fork(i);
        const TeamGenome team = task.init_team(child);
        const EvalResult r = task.evaluate(team, {});
        archive.try_insert(team, r.fitness, r.descriptor);
    }
    REQUIRE_FALSE(archive.empty());

    const ArchiveMetrics metrics = archive.compute_metrics();
    // deterministic env: median of repeats collapses to the stored fitness
    CHECK(adapted_best_fitness(archive, task, {}, 100) == *metrics.max_fitness);
    CHECK(adapted_best_fitness(archive, task, {}, 1) == *metrics.max_fitness);

    Archive single(GridConfig::uniform(2, 5));
    const TeamGenome team{{{0.3}, {0.4}}};
    const EvalResult r = task.evaluate(team, {});
    single.try_insert(team, r.fitness, r.descriptor);
    CHECK(adapted_best_fitness(single, task, {}) == r.fitness);

    Archive empty(GridConfig::uniform(2, 5));
    CHECK_THROWS_AS(adapted_best_fitness(empty, task, {}), std::invalid_argument);
}

TEST_CASE("rollout rejects mismatched teams") {
    const GaitTask task = small_task();
    TeamGenome wrong;
    wrong.agents = {{0.0}, {0.0}, {0.0}};
    CHECK_THROWS_AS(task.evaluate(wrong, {}), std::invalid_argument);
}

}  // TEST_SUITE
