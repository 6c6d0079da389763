#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maqd/grid_search.hpp"
#include "maqd/io.hpp"
#include "maqd/run.hpp"

using namespace maqd;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "maqd_harness_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path path = tmp_dir() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig tiny_gait_config() {
    RunConfig config;
    config.env_name = "gait";
    config.gait.n_legs = 2;
    config.gait.episode_length = 25;
    config.hidden_dims = {4};
    config.batch_size = 8;
    config.n_iterations = 6;
    config.cells_per_dim = 4;
    config.seed = 42;
    return config;
}

bool archives_equal(const Archive& a, const Archive& b) {
    if (a.occupied_count() != b.occupied_count()) return false;
    auto it = b.cells().begin();
    for (const auto& [index, elite] : a.cells()) {
        if (it->first != index || it->second.fitness != elite.fitness ||
            !(it->second.genome == elite.genome) || it->second.descriptor != elite.descriptor)
            return false;
        ++it;
    }
    return true;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config file round trip") {
    const fs::path path = write_file("good.cfg", R"(
# comment
[run]
variant = naive
seed = 9
n_iterations = 12
batch_size = 32
metrics_every = 3

[env]
name = gait
n_legs = 3
episode_length = 50
w_ctrl = 0.1

[policy]
hidden_dims = 8, 8

[grid]
cells_per_dim = 6

[variation]
eta = 32
sigma_iso = 0.001
sigma_line = 0.5
)");
    const RunConfig config = load_run_config(path.string());
    CHECK(config.variant == Variant::NaiveMA);
    CHECK(config.seed == 9);
    CHECK(config.n_iterations == 12);
    CHECK(config.batch_size == 32);
    CHECK(config.metrics_every == 3);
    CHECK(config.gait.n_legs == 3);
    CHECK(config.gait.episode_length == 50);
    CHECK(config.gait.w_ctrl == 0.1);
    CHECK((config.hidden_dims == std::vector<int>{8, 8}));
    CHECK(config.cells_per_dim == 6);
    CHECK(config.variation.eta == 32.0);
    CHECK(config.variation.sigma_line == 0.5);
    CHECK(config.initial_solutions() == 32);  // defaults to batch_size
}

TEST_CASE("config rejects unknown keys, bad types and duplicates") {
    const fs::path unknown = write_file("unknown.cfg", "[run]\nseed = 1\nbogus_key = 2\n");
    CHECK_THROWS_WITH_AS(load_run_config(unknown.string()),
                         doctest::Contains("unknown keys"), std::runtime_error);

    const fs::path bad = write_file("bad.cfg", "[run]\nseed = notanumber\n");
    CHECK_THROWS_AS(load_run_config(bad.string()), std::runtime_error);

    const fs::path dup = write_file("dup.cfg", "[run]\nseed = 1\nseed = 2\n");
    CHECK_THROWS_AS(load_run_config(dup.string()), std::runtime_error);

    const fs::path wrong_env =
        write_file("wrongenv.cfg", "[env]\nname = arm\nn_legs = 4\n");
    CHECK_THROWS_AS(load_run_config(wrong_env.string()), std::runtime_error);

    CHECK_THROWS_AS(load_run_config((tmp_dir() / "missing.cfg").string()), std::runtime_error);
}

TEST_CASE("zero iterations leave only the post-initialisation row") {
    RunConfig config = tiny_gait_config();
    config.n_iterations = 0;
    const RunArtifacts artifacts = run_map_elites(config);
    REQUIRE(artifacts.metrics.size() == 1);
    CHECK(artifacts.metrics[0].iteration == 0);
    CHECK(artifacts.metrics[0].env_interactions == config.initial_solutions());
    CHECK(artifacts.archive.occupied_count() > 0);
}

TEST_CASE("runs are reproducible from the seed") {
    const RunConfig config = tiny_gait_config();
    const RunArtifacts a = run_map_elites(config);
    const RunArtifacts b = run_map_elites(config);
    REQUIRE(a.metrics.size() == b.metrics.size());
    for (std::size_t i = 0; i < a.metrics.size(); ++i) {
        CHECK(a.metrics[i].coverage == b.metrics[i].coverage);
        CHECK(a.metrics[i].qd_score == b.metrics[i].qd_score);
        CHECK(a.metrics[i].max_fitness == b.metrics[i].max_fitness);
    }
    CHECK(archives_equal(a.archive, b.archive));

    RunConfig other = config;
    other.seed = 43;
    const RunArtifacts c = run_map_elites(other);
    CHECK_FALSE(archives_equal(a.archive, c.archive));
}

TEST_CASE("metrics accounting and monotonic series") {
    RunConfig config = tiny_gait_config();
    config.n_iterations = 10;
    const RunArtifacts artifacts = run_map_elites(config);
    REQUIRE(artifacts.metrics.size() == 11);
    for (std::size_t i = 0; i < artifacts.metrics.size(); ++i) {
        const MetricsRow& row = artifacts.metrics[i];
        CHECK(row.iteration == static_cast<int>(i));
        CHECK(row.env_interactions ==
              config.initial_solutions() + row.iteration * config.batch_size);
        if (i > 0) {
            CHECK(row.coverage >= artifacts.metrics[i - 1].coverage);
            CHECK(*row.max_fitness >= *artifacts.metrics[i - 1].max_fitness);
        }
    }
    CHECK(artifacts.total_env_steps > 0);

    RunConfig sparse = config;
    sparse.metrics_every = 4;
    const RunArtifacts thin = run_map_elites(sparse);
    CHECK(thin.metrics.size() == static_cast<std::size_t>(10 / 4 + 1));
}

TEST_CASE("variants use exactly their operators") {
    RunConfig config = tiny_gait_config();
    config.variant = Variant::NaiveMA;
    const RunArtifacts naive = run_map_elites(config);
    for (const auto& emitted : naive.per_iteration_emitted) {
        CHECK(emitted[2] == 0);  // never crossover
        CHECK(emitted[0] + emitted[1] == config.batch_size);
    }
    CHECK(naive.operator_stats.emitted[2] == 0);

    config.variant = Variant::MixME;
    const RunArtifacts mixme = run_map_elites(config);
    for (const auto& emitted : mixme.per_iteration_emitted) {
        CHECK(emitted[0] > 0);
        CHECK(emitted[1] > 0);
        CHECK(emitted[2] > 0);
        CHECK(emitted[0] + emitted[1] + emitted[2] == config.batch_size);
    }

    config.variant = Variant::SingleAgent;
    const RunArtifacts sa = run_map_elites(config);
    CHECK(sa.operator_stats.emitted[2] == 0);
}

TEST_CASE("make_task collapses the arm to one agent under the sa variant") {
    RunConfig config;
    config.env_name = "arm";
    config.arm = {6, 3};
    config.variant = Variant::SingleAgent;
    const auto task = make_task(config);
    CHECK(task->env_spec().n_agents == 1);
    CHECK(task->agent_param_sizes() == std::vector<std::size_t>{6});

    config.variant = Variant::MixME;
    CHECK(make_task(config)->env_spec().n_agents == 3);
}

TEST_CASE("arm runs work end to end") {
    RunConfig config;
    config.env_name = "arm";
    config.arm = {4, 2};
    config.batch_size = 16;
    config.n_iterations = 20;
    config.cells_per_dim = 6;
    config.seed = 7;
    const RunArtifacts artifacts = run_map_elites(config);
    CHECK(artifacts.metrics.back().coverage > 0.2);
    CHECK(artifacts.archive.occupied_count() ==
          static_cast<std::size_t>(artifacts.metrics.back().coverage * 36.0 + 0.5));
}

TEST_CASE("grid_search: synthetic argmax, report shape, tie-breaking") {
    RunConfig base = tiny_gait_config();
    base.seed = 100;
    GridSearchSpace space;
    space.sigma_iso = {0.1, 0.2};
    space.sigma_line = {0.3, 0.4};
    space.eta = {1.0, 2.0, 3.0};

    // deterministic objective, independent of seed, maximised at (0.2, 0.3, 2)
    const auto score = [](const RunConfig& config) {
        const double s = config.variation.sigma_iso == 0.2 ? 2.0 : 1.0;
        const double l = config.variation.sigma_line == 0.3 ? 2.0 : 1.0;
        const double e = config.variation.eta == 2.0 ? 2.0 : 1.0;
        return s * l * e;
    };
    const GridSearchResult result = grid_search(base, space, 3, score);
    CHECK(result.rows.size() == 2 * 2 * 3 * 3);
    CHECK(result.means.size() == 12);
    CHECK(result.best.sigma_iso == 0.2);
    CHECK(result.best.sigma_line == 0.3);
    CHECK(result.best.eta == 2.0);
    for (const auto& row : result.rows) {
        CHECK(row.seed >= base.seed);
        CHECK(row.seed < base.seed + 3);
    }

    // all-tied scores: the lexicographically first combination wins
    const GridSearchResult tied =
        grid_search(base, space, 2, [](const RunConfig&) { return 5.0; });
    CHECK(tied.best.sigma_iso == 0.1);
    CHECK(tied.best.sigma_line == 0.3);
    CHECK(tied.best.eta == 1.0);

    GridSearchSpace empty;
    empty.sigma_iso.clear();
    CHECK_THROWS_AS(grid_search(base, empty, 3, score), std::invalid_argument);

    GridSearchSpace single;
    single.sigma_iso = {0.5};
    single.sigma_line = {0.6};
    single.eta = {7.0};
    const GridSearchResult one = grid_search(base, single, 2, score);
    CHECK(one.best.sigma_iso == 0.5);
    CHECK(one.best.sigma_line == 0.6);
    CHECK(one.best.eta == 7.0);
    CHECK(one.rows.size() == 2);
}

TEST_CASE("generalisation sweep rows follow the requested values") {
    const ArmTask task(ArmParams{3, 3});
    Archive archive(GridConfig::uniform(2, 5));
    RngStream rng(12);
    for (int i = 0; i < 30; ++i) {
        RngStream child = rng.fork(i);
        const TeamGenome team = task.init_team(child);
        const EvalResult r = task.evaluate(team, {});
        archive.try_insert(team, r.fitness, r.descriptor);
    }

    const std::vector<double> values{0.5, 1.0, 2.0};
    const auto table =
        generalisation_sweep(task, archive, Scenario::GravityUpdate, values, 0, 100);
    REQUIRE(table.size() == 3);
    const double neutral = adapted_best_fitness(archive, task, {}, 100);
    CHECK(table[1].value == 1.0);
    CHECK(table[1].adapted_fitness == neutral);

    const auto dys = generalisation_sweep(task, archive, Scenario::LegDysfunction,
                                          std::vector<double>{1.0}, 0, 100);
    CHECK(dys[0].adapted_fitness == neutral);

    CHECK(default_sweep_values(Scenario::GravityUpdate).size() == 7);
    CHECK(default_sweep_values(Scenario::LegDysfunction).size() == 6);
}

TEST_CASE("metrics csv format") {
    std::vector<MetricsRow> rows;
    rows.push_back({0, 8, std::nullopt, 0.0, 0.0});
    rows.push_back({1, 16, 1.5, 0.25, 2.75});
    const fs::path path = tmp_dir() / "metrics.csv";
    write_metrics_csv(rows, path.string());
    CHECK(slurp(path) ==
          "iteration,env_interactions,max_fitness,coverage,qd_score\n"
          "0,8,,0,0\n"
          "1,16,1.5,0.25,2.75\n");
}

TEST_CASE("archive json round trip is byte identical") {
    const RunConfig config = tiny_gait_config();
    const RunArtifacts artifacts = run_map_elites(config);

    const auto task = make_task(config);
    const auto* gait = dynamic_cast<const GaitTask*>(task.get());
    REQUIRE(gait != nullptr);

    const fs::path first = tmp_dir() / "archive1.json";
    const fs::path second = tmp_dir() / "archive2.json";
    save_archive_json(artifacts.archive, gait->policy_specs(), first.string());

    const LoadedArchive loaded = load_archive_json(first.string());
    CHECK(archives_equal(loaded.archive, artifacts.archive));
    REQUIRE(loaded.agent_specs.size() == gait->policy_specs().size());

    save_archive_json(loaded.archive, loaded.agent_specs, second.string());
    CHECK(slurp(first) == slurp(second));

    const fs::path garbage = write_file("broken.json", "{\"grid_dims\": [2,2]}");
    CHECK_THROWS_AS(load_archive_json(garbage.string()), std::runtime_error);
}

TEST_CASE("heatmap csv lists occupied cells") {
    Archive archive(GridConfig::uniform(2, 4));
    archive.try_insert(TeamGenome{{{1.0}}}, 2.5, std::vector<double>{0.1, 0.9});
    const fs::path path = tmp_dir() / "heatmap.csv";
    write_heatmap_csv(archive, path.string());
    CHECK(slurp(path) ==
          "index_0,index_1,descriptor_0,descriptor_1,fitness\n"
          "0,3,0.1,0.9,2.5\n");

    Archive empty(GridConfig::uniform(2, 4));
    write_heatmap_csv(empty, path.string());
    CHECK(slurp(path) == "index_0,index_1,descriptor_0,descriptor_1,fitness\n");
}

}  // TEST_SUITE
