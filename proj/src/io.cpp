#include "maqd/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace maqd {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

ordered_json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    return doc;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "iteration,env_interactions,max_fitness,coverage,qd_score\n";
    for (const auto& row : rows) {
        out << row.iteration << ',' << row.env_interactions << ','
            << (row.max_fitness ? format_double(*row.max_fitness) : std::string()) << ','
            << format_double(row.coverage) << ',' << format_double(row.qd_score) << '\n';
    }
}

void write_heatmap_csv(const Archive& archive, const std::string& path) {
    auto out = open_out(path);
    const int dim = archive.config().dimensions();
    for (int k = 0; k < dim; ++k) out << "index_" << k << ',';
    for (int k = 0; k < dim; ++k) out << "descriptor_" << k << ',';
    out << "fitness\n";
    for (const auto& [index, elite] : archive.cells()) {
        for (int i : index) out << i << ',';
        for (double b : elite.descriptor) out << format_double(b) << ',';
        out << format_double(elite.fitness) << '\n';
    }
}

void save_archive_json(const Archive& archive, const std::vector<MlpSpec>& agent_specs,
                       const std::string& path) {
    const GridConfig& grid = archive.config();
    ordered_json doc;
    doc["grid_dims"] = grid.dims;
    doc["lower_bounds"] = grid.lower_bounds;
    doc["upper_bounds"] = grid.upper_bounds;

    ordered_json cells = ordered_json::array();
    ordered_json genomes = ordered_json::array();
    int genome_ref = 0;
    for (const auto& [index, elite] : archive.cells()) {
        ordered_json cell;
        cell["index"] = index;
        cell["fitness"] = elite.fitness;
        cell["descriptor"] = elite.descriptor;
        cell["genome_ref"] = genome_ref++;
        cells.push_back(std::move(cell));
        genomes.push_back(elite.genome.agents);
    }
    doc["cells"] = std::move(cells);
    doc["genomes"] = std::move(genomes);

    if (!agent_specs.empty()) {
        ordered_json specs = ordered_json::array();
        for (std::size_t a = 0; a < agent_specs.size(); ++a) {
            ordered_json spec;
            spec["agent_index"] = a;
            spec["input_dim"] = agent_specs[a].input_dim;
            spec["hidden_dims"] = agent_specs[a].hidden_dims;
            spec["output_dim"] = agent_specs[a].output_dim;
            specs.push_back(std::move(spec));
        }
        doc["agent_specs"] = std::move(specs);
    }

    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

LoadedArchive load_archive_json(const std::string& path) {
    const ordered_json doc = read_json(path);
    try {
        GridConfig grid;
        grid.dims = doc.at("grid_dims").get<std::vector<int>>();
        grid.lower_bounds = doc.at("lower_bounds").get<std::vector<double>>();
        grid.upper_bounds = doc.at("upper_bounds").get<std::vector<double>>();
        LoadedArchive loaded{Archive(grid), {}};

        const auto& genomes = doc.at("genomes");
        for (const auto& cell : doc.at("cells")) {
            const auto index = cell.at("index").get<CellIndex>();
            const double fitness = cell.at("fitness").get<double>();
            const auto descriptor = cell.at("descriptor").get<std::vector<double>>();
            const std::size_t ref = cell.at("genome_ref").get<std::size_t>();
            if (ref >= genomes.size())
                throw std::runtime_error(path + ": genome_ref out of range");
            TeamGenome genome{genomes.at(ref).get<std::vector<std::vector<double>>>()};
            if (descriptor_to_cell(descriptor, grid) != index)
                throw std::runtime_error(path + ": cell index does not match its descriptor");
            if (loaded.archive.try_insert(std::move(genome), fitness, descriptor) !=
                InsertOutcome::InsertedEmpty)
                throw std::runtime_error(path + ": duplicate cell entry");
        }
        if (doc.contains("agent_specs")) {
            for (const auto& spec : doc.at("agent_specs")) {
                MlpSpec mlp;
                mlp.input_dim = spec.at("input_dim").get<int>();
                mlp.hidden_dims = spec.at("hidden_dims").get<std::vector<int>>();
                mlp.output_dim = spec.at("output_dim").get<int>();
                loaded.agent_specs.push_back(std::move(mlp));
            }
        }
        return loaded;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": archive schema mismatch: " + e.what());
    }
}

void write_grid_search_csv(const GridSearchResult& result, const std::string& rows_path,
                           const std::string& means_path) {
    {
        auto out = open_out(rows_path);
        out << "sigma_iso,sigma_line,eta,seed,qd_score\n";
        for (const auto& row : result.rows)
            out << format_double(row.sigma_iso) << ',' << format_double(row.sigma_line) << ','
                << format_double(row.eta) << ',' << row.seed << ','
                << format_double(row.qd_score) << '\n';
    }
    {
        auto out = open_out(means_path);
        out << "sigma_iso,sigma_line,eta,mean_qd_score\n";
        for (const auto& mean : result.means)
            out << format_double(mean.sigma_iso) << ',' << format_double(mean.sigma_line) << ','
                << format_double(mean.eta) << ',' << format_double(mean.mean_qd_score) << '\n';
    }
}

void write_sweep_csv(const std::vector<std::pair<std::string, std::vector<SweepRow>>>& tables,
                     const std::string& path) {
    auto out = open_out(path);
    out << "scenario,value,adapted_best_fitness\n";
    for (const auto& [scenario, rows] : tables)
        for (const auto& row : rows)
            out << scenario << ',' << format_double(row.value) << ','
                << format_double(row.adapted_fitness) << '\n';
}

void write_run_summary_json(const RunConfig& config, const RunArtifacts& artifacts,
                            const std::string& path) {
    static const char* kOpNames[4] = {"polynomial_mutation", "isoline_variation",
                                      "team_crossover", "initial"};
    ordered_json doc;
    doc["config"] = {{"env", config.env_name},
                     {"variant", variant_name(config.variant)},
                     {"seed", config.seed},
                     {"n_iterations", config.n_iterations},
                     {"batch_size", config.batch_size},
                     {"n_initial_solutions", config.initial_solutions()}};
    ordered_json ops;
    for (std::size_t k = 0; k < 4; ++k) {
        ops[kOpNames[k]] = {{"emitted", artifacts.operator_stats.emitted[k]},
                            {"inserted_empty", artifacts.operator_stats.inserted_empty[k]},
                            {"replaced", artifacts.operator_stats.replaced[k]},
                            {"rejected", artifacts.operator_stats.rejected[k]}};
    }
    doc["operator_stats"] = std::move(ops);
    doc["total_env_steps"] = artifacts.total_env_steps;
    if (!artifacts.metrics.empty()) {
        const MetricsRow& last = artifacts.metrics.back();
        doc["final"] = {{"iteration", last.iteration},
                        {"env_interactions", last.env_interactions},
                        {"coverage", last.coverage},
                        {"qd_score", last.qd_score}};
        if (last.max_fitness) doc["final"]["max_fitness"] = *last.max_fitness;
    }
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

}  // namespace maqd
