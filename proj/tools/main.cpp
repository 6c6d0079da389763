#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maqd/config.hpp"
#include "maqd/grid_search.hpp"
#include "maqd/io.hpp"
#include "maqd/run.hpp"

namespace fs = std::filesystem;

namespace {

struct RunCli {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::int64_t> seed;
    std::optional<std::string> variant;
};

int cmd_run(const RunCli& cli) {
    maqd::RunConfig config = maqd::load_run_config(cli.config_path);
    if (cli.seed) config.seed = static_cast<std::uint64_t>(*cli.seed);
    if (cli.variant) config.variant = maqd::parse_variant(*cli.variant);
    config.validate();

    fs::create_directories(cli.out_dir);
    const maqd::RunArtifacts artifacts = maqd::run_map_elites(config);

    const auto task = maqd::make_task(config);
    std::vector<maqd::MlpSpec> specs;
    if (const auto* gait = dynamic_cast<const maqd::GaitTask*>(task.get()))
        specs = gait->policy_specs();

    maqd::write_metrics_csv(artifacts.metrics, (fs::path(cli.out_dir) / "metrics.csv").string());
    maqd::save_archive_json(artifacts.archive, specs,
                            (fs::path(cli.out_dir) / "archive.json").string());
    maqd::write_run_summary_json(config, artifacts,
                                 (fs::path(cli.out_dir) / "run_summary.json").string());

    const maqd::MetricsRow& last = artifacts.metrics.back();
    std::cout << "run complete: iterations=" << last.iteration
              << " coverage=" << maqd::format_double(last.coverage)
              << " qd_score=" << maqd::format_double(last.qd_score) << '\n';
    return 0;
}

struct GridSearchCli {
    std::string config_path;
    std::string out_dir = "out";
    int n_seeds = 3;
    std::vector<double> sigma_iso;
    std::vector<double> sigma_line;
    std::vector<double> eta;
};

int cmd_grid_search(const GridSearchCli& cli) {
    const maqd::RunConfig base = maqd::load_run_config(cli.config_path);
    maqd::GridSearchSpace space;
    if (!cli.sigma_iso.empty()) space.sigma_iso = cli.sigma_iso;
    if (!cli.sigma_line.empty()) space.sigma_line = cli.sigma_line;
    if (!cli.eta.empty()) space.eta = cli.eta;

    const maqd::GridSearchResult result = maqd::grid_search(base, space, cli.n_seeds);

    fs::create_directories(cli.out_dir);
    maqd::write_grid_search_csv(result, (fs::path(cli.out_dir) / "grid_search.csv").string(),
                                (fs::path(cli.out_dir) / "grid_search_mean.csv").string());
    std::cout << "best: sigma_iso=" << maqd::format_double(result.best.sigma_iso)
              << " sigma_line=" << maqd::format_double(result.best.sigma_line)
              << " eta=" << maqd::format_double(result.best.eta) << '\n';
    return 0;
}

struct EvalAdaptCli {
    std::string config_path;
    std::string archive_path;
    std::optional<std::string> out_file;
    std::vector<double> gravity_mult;
    std::optional<int> dysfunction_leg;
    std::vector<double> dysfunction_coef;
    int n_evals = 100;
};

int cmd_eval_adapt(const EvalAdaptCli& cli) {
    const maqd::RunConfig config = maqd::load_run_config(cli.config_path);
    const auto task = maqd::make_task(config);
    const maqd::LoadedArchive loaded = maqd::load_archive_json(cli.archive_path);
    if (loaded.archive.config().dimensions() != task->descriptor_dim())
        throw std::runtime_error("archive grid dimension does not match the configured task");

    std::vector<std::pair<std::string, std::vector<maqd::SweepRow>>> tables;
    const bool want_gravity = !cli.gravity_mult.empty();
    const bool want_dysfunction = !cli.dysfunction_coef.empty() || cli.dysfunction_leg;
    const int leg = cli.dysfunction_leg.value_or(0);

    if (want_gravity || !want_dysfunction) {
        const std::vector<double> values = want_gravity
                                               ? cli.gravity_mult
                                               : maqd::default_sweep_values(
                                                     maqd::Scenario::GravityUpdate);
        tables.emplace_back("gravity_update",
                            maqd::generalisation_sweep(*task, loaded.archive,
                                                       maqd::Scenario::GravityUpdate, values, leg,
                                                       cli.n_evals));
    }
    if (want_dysfunction || !want_gravity) {
        const std::vector<double> values = !cli.dysfunction_coef.empty()
                                               ? cli.dysfunction_coef
                                               : maqd::default_sweep_values(
                                                     maqd::Scenario::LegDysfunction);
        tables.emplace_back("leg_dysfunction",
                            maqd::generalisation_sweep(*task, loaded.archive,
                                                       maqd::Scenario::LegDysfunction, values, leg,
                                                       cli.n_evals));
    }

    if (cli.out_file) {
        maqd::write_sweep_csv(tables, *cli.out_file);
    } else {
        std::cout << "scenario,value,adapted_best_fitness\n";
        for (const auto& [scenario, rows] : tables)
            for (const auto& row : rows)
                std::cout << scenario << ',' << maqd::format_double(row.value) << ','
                          << maqd::format_double(row.adapted_fitness) << '\n';
    }
    return 0;
}

int cmd_export_heatmap(const std::string& archive_path, const std::string& out_file) {
    const maqd::LoadedArchive loaded = maqd::load_archive_json(archive_path);
    maqd::write_heatmap_csv(loaded.archive, out_file);
    return 0;
}

// Enumerates every joint-angle combination, inserts them all, and checks the
// archive holds exactly the per-cell best found by a direct max pass.
int cmd_oracle_check(int n_joints, int values_per_joint, int cells_per_dim) {
    if (values_per_joint < 2) throw std::runtime_error("oracle-check: need >= 2 values per joint");
    maqd::ArmTask task({n_joints, n_joints});
    maqd::GridConfig grid = maqd::GridConfig::uniform(2, cells_per_dim);
    maqd::Archive archive(grid);

    constexpr double pi = 3.14159265358979323846;
    std::vector<int> digits(static_cast<std::size_t>(n_joints), 0);
    std::map<maqd::CellIndex, double> best;
    long genomes = 0;
    for (;;) {
        maqd::TeamGenome team;
        for (int j = 0; j < n_joints; ++j) {
            const double angle = -pi + 2.0 * pi * digits[static_cast<std::size_t>(j)] /
                                           (values_per_joint - 1);
            team.agents.push_back({angle});
        }
        const maqd::EvalResult result = task.evaluate(team, {});
        archive.try_insert(team, result.fitness, result.descriptor);
        const maqd::CellIndex cell = maqd::descriptor_to_cell(result.descriptor, grid);
        auto it = best.find(cell);
        if (it == best.end() || result.fitness > it->second) best[cell] = result.fitness;
        ++genomes;

        int j = 0;
        for (; j < n_joints; ++j) {
            if (++digits[static_cast<std::size_t>(j)] < values_per_joint) break;
            digits[static_cast<std::size_t>(j)] = 0;
        }
        if (j == n_joints) break;
    }

    long mismatches = 0;
    if (archive.occupied_count() != best.size()) ++mismatches;
    for (const auto& [cell, fitness] : best) {
        const maqd::Elite* elite = archive.cell(cell);
        if (!elite || elite->fitness != fitness) ++mismatches;
    }
    std::cout << "oracle-check: " << genomes << " genomes, " << best.size()
              << " occupied cells, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality-diversity optimization over neural-network team policies"};
    app.require_subcommand(1);

    RunCli run_cli;
    auto* run = app.add_subcommand("run", "Run the archive-building main loop from a config file");
    run->add_option("--config", run_cli.config_path, "Run configuration file")->required();
    run->add_option("--seed", run_cli.seed, "Override the config seed");
    run->add_option("--variant", run_cli.variant, "Override the variant: sa, naive or mixme");
    run->add_option("--out", run_cli.out_dir, "Output directory");

    GridSearchCli gs_cli;
    auto* gs = app.add_subcommand("grid-search", "Hyperparameter grid search");
    gs->add_option("--config", gs_cli.config_path, "Base run configuration file")->required();
    gs->add_option("--out", gs_cli.out_dir, "Output directory");
    gs->add_option("--seeds", gs_cli.n_seeds, "Seeds per combination");
    gs->add_option("--sigma-iso", gs_cli.sigma_iso, "sigma_iso candidates");
    gs->add_option("--sigma-line", gs_cli.sigma_line, "sigma_line candidates");
    gs->add_option("--eta", gs_cli.eta, "eta candidates");

    EvalAdaptCli ea_cli;
    auto* ea = app.add_subcommand("eval-adapt", "Adaptation evaluation of a saved archive");
    ea->add_option("--config", ea_cli.config_path, "Run configuration file")->required();
    ea->add_option("--archive", ea_cli.archive_path, "Saved archive JSON")->required();
    ea->add_option("--out", ea_cli.out_file, "Output CSV (default: stdout)");
    ea->add_option("--gravity-mult", ea_cli.gravity_mult, "Gravity multipliers to evaluate");
    ea->add_option("--dysfunction-leg", ea_cli.dysfunction_leg, "Leg index to weaken");
    ea->add_option("--dysfunction-coef", ea_cli.dysfunction_coef,
                   "Input-to-torque coefficients to evaluate");
    ea->add_option("--n-evals", ea_cli.n_evals, "Evaluations per solution");

    std::string eh_archive, eh_out = "heatmap.csv";
    auto* eh = app.add_subcommand("export-heatmap", "Write occupied cells as CSV");
    eh->add_option("--archive", eh_archive, "Saved archive JSON")->required();
    eh->add_option("--out", eh_out, "Output CSV path");

    int oc_joints = 2, oc_values = 11, oc_cells = 5;
    auto* oc = app.add_subcommand("oracle-check",
                                  "Brute-force arm enumeration against archive insertion");
    oc->add_option("--joints", oc_joints, "Number of arm joints");
    oc->add_option("--values", oc_values, "Enumerated values per joint");
    oc->add_option("--cells", oc_cells, "Grid cells per descriptor axis");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_cli);
        if (gs->parsed()) return cmd_grid_search(gs_cli);
        if (ea->parsed()) return cmd_eval_adapt(ea_cli);
        if (eh->parsed()) return cmd_export_heatmap(eh_archive, eh_out);
        if (oc->parsed()) return cmd_oracle_check(oc_joints, oc_values, oc_cells);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
