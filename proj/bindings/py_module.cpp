#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "maqd/config.hpp"
#include "maqd/evaluate.hpp"
#include "maqd/grid_search.hpp"
#include "maqd/io.hpp"
#include "maqd/run.hpp"

namespace py = pybind11;
using namespace maqd;

namespace {

TeamGenome team_from_lists(const std::vector<std::vector<double>>& agents) {
    return TeamGenome{agents};
}

}  // namespace

PYBIND11_MODULE(_maqd, m) {
    m.doc() = "Quality-diversity optimization over neural-network team policies";

    py::enum_<Variant>(m, "Variant")
        .value("SingleAgent", Variant::SingleAgent)
        .value("NaiveMA", Variant::NaiveMA)
        .value("MixME", Variant::MixME);

    py::enum_<OperatorKind>(m, "OperatorKind")
        .value("PolynomialMutation", OperatorKind::PolynomialMutation)
        .value("IsoLineVariation", OperatorKind::IsoLineVariation)
        .value("TeamCrossover", OperatorKind::TeamCrossover);

    py::enum_<InsertOutcome>(m, "InsertOutcome")
        .value("InsertedEmpty", InsertOutcome::InsertedEmpty)
        .value("Replaced", InsertOutcome::Replaced)
        .value("Rejected", InsertOutcome::Rejected);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>())
        .def("uniform01", &RngStream::uniform01)
        .def("normal", &RngStream::normal)
        .def("fork", &RngStream::fork);

    py::class_<TeamGenome>(m, "TeamGenome")
        .def(py::init(&team_from_lists))
        .def_readonly("agents", &TeamGenome::agents)
        .def("__eq__", [](const TeamGenome& a, const TeamGenome& b) { return a == b; });

    py::class_<GridConfig>(m, "GridConfig")
        .def(py::init([](std::vector<int> dims, std::vector<double> lower,
                         std::vector<double> upper) {
                 return GridConfig{std::move(dims), std::move(lower), std::move(upper)};
             }),
             py::arg("dims"), py::arg("lower_bounds"), py::arg("upper_bounds"))
        .def_static("uniform", &GridConfig::uniform)
        .def_readonly("dims", &GridConfig::dims)
        .def("total_cells", &GridConfig::total_cells);

    py::class_<ArchiveMetrics>(m, "ArchiveMetrics")
        .def_readonly("max_fitness", &ArchiveMetrics::max_fitness)
        .def_readonly("coverage", &ArchiveMetrics::coverage)
        .def_readonly("qd_score", &ArchiveMetrics::qd_score);

    py::class_<Archive>(m, "Archive")
        .def(py::init<GridConfig>())
        .def("try_insert",
             [](Archive& archive, const TeamGenome& genome, double fitness,
                const std::vector<double>& descriptor) {
                 return archive.try_insert(genome, fitness, descriptor);
             })
        .def("sample_elites", &Archive::sample_elites)
        .def("compute_metrics", &Archive::compute_metrics)
        .def("occupied_count", &Archive::occupied_count)
        .def("cells", [](const Archive& archive) {
            py::dict cells;
            for (const auto& [index, elite] : archive.cells())
                cells[py::tuple(py::cast(index))] =
                    py::make_tuple(elite.genome, elite.fitness, elite.descriptor);
            return cells;
        });

    m.def("descriptor_to_cell", [](const std::vector<double>& descriptor,
                                   const GridConfig& config) {
        return descriptor_to_cell(descriptor, config);
    });

    py::class_<MlpSpec>(m, "MlpSpec")
        .def(py::init([](int input_dim, std::vector<int> hidden_dims, int output_dim) {
                 MlpSpec spec;
                 spec.input_dim = input_dim;
                 spec.hidden_dims = std::move(hidden_dims);
                 spec.output_dim = output_dim;
                 return spec;
             }),
             py::arg("input_dim"), py::arg("hidden_dims"), py::arg("output_dim"))
        .def("param_count", &MlpSpec::param_count);

    m.def("init_random",
          [](const MlpSpec& spec, RngStream& rng) { return init_random(spec, rng).theta; });
    m.def("forward", [](const MlpSpec& spec, const std::vector<double>& theta,
                        const std::vector<double>& obs) {
        return forward(AgentParams{spec, theta}, obs);
    });
    m.def("flatten", &flatten);
    m.def("unflatten", [](const std::vector<double>& flat, const std::vector<std::size_t>& sizes) {
        return unflatten(flat, sizes);
    });

    py::class_<Bounds>(m, "Bounds")
        .def(py::init<double, double>(), py::arg("lower") = -5.0, py::arg("upper") = 5.0)
        .def_readwrite("lower", &Bounds::lower)
        .def_readwrite("upper", &Bounds::upper);

    py::class_<VariationConfig>(m, "VariationConfig")
        .def(py::init([](double eta, std::optional<double> p_mut, double sigma_iso,
                         double sigma_line) {
                 VariationConfig cfg;
                 cfg.eta = eta;
                 cfg.p_mut = p_mut;
                 cfg.sigma_iso = sigma_iso;
                 cfg.sigma_line = sigma_line;
                 return cfg;
             }),
             py::arg("eta") = 16.0, py::arg("p_mut") = std::nullopt,
             py::arg("sigma_iso") = 0.01, py::arg("sigma_line") = 0.1);

    m.def("polynomial_mutation_gene", &polynomial_mutation_gene);
    m.def("polynomial_mutation", [](const std::vector<double>& x, const VariationConfig& cfg,
                                    Bounds bounds, RngStream& rng) {
        return polynomial_mutation(x, cfg, bounds, rng);
    });
    m.def("isoline_variation", [](const std::vector<double>& x1, const std::vector<double>& x2,
                                  const VariationConfig& cfg, Bounds bounds, RngStream& rng) {
        return isoline_variation(x1, x2, cfg, bounds, rng);
    });
    m.def("naive_team_variation", &naive_team_variation);
    m.def("team_isoline_variation", &team_isoline_variation);
    m.def("team_crossover", &team_crossover);

    py::class_<EnvModifiers>(m, "EnvModifiers")
        .def(py::init([](double gravity_multiplier, std::optional<int> dysfunctional_leg,
                         double dysfunction_coefficient) {
                 EnvModifiers mods;
                 mods.gravity_multiplier = gravity_multiplier;
                 mods.dysfunctional_leg = dysfunctional_leg;
                 mods.dysfunction_coefficient = dysfunction_coefficient;
                 return mods;
             }),
             py::arg("gravity_multiplier") = 1.0, py::arg("dysfunctional_leg") = std::nullopt,
             py::arg("dysfunction_coefficient") = 1.0);

    py::class_<EvalResult>(m, "EvalResult")
        .def_readonly("fitness", &EvalResult::fitness)
        .def_readonly("descriptor", &EvalResult::descriptor)
        .def_readonly("steps_executed", &EvalResult::steps_executed);

    py::class_<GaitParams>(m, "GaitParams")
        .def(py::init<>())
        .def_readwrite("n_legs", &GaitParams::n_legs)
        .def_readwrite("episode_length", &GaitParams::episode_length);

    py::class_<Task>(m, "Task")
        .def("agent_param_sizes", &Task::agent_param_sizes)
        .def("descriptor_dim", &Task::descriptor_dim)
        .def("init_team", &Task::init_team)
        .def("evaluate", &Task::evaluate, py::arg("team"), py::arg("modifiers") = EnvModifiers{});

    py::class_<GaitTask, Task>(m, "GaitTask")
        .def(py::init<GaitParams, std::vector<int>, bool, double, double>(), py::arg("params"),
             py::arg("hidden_dims"), py::arg("single_agent") = false,
             py::arg("param_lower") = -5.0, py::arg("param_upper") = 5.0);

    py::class_<ArmParams>(m, "ArmParams")
        .def(py::init([](int n_joints, int n_agents) { return ArmParams{n_joints, n_agents}; }),
             py::arg("n_joints"), py::arg("n_agents"));

    py::class_<ArmTask, Task>(m, "ArmTask").def(py::init<ArmParams>());

    m.def(
        "evaluate_batch",
        [](const Task& task, const std::vector<TeamGenome>& teams, const EnvModifiers& mods) {
            return evaluate_batch(task, teams, mods);
        },
        py::arg("task"), py::arg("teams"), py::arg("modifiers") = EnvModifiers{},
        py::call_guard<py::gil_scoped_release>());
    m.def("adapted_best_fitness", &adapted_best_fitness, py::arg("archive"), py::arg("task"),
          py::arg("modifiers"), py::arg("n_evals") = 100,
          py::call_guard<py::gil_scoped_release>());

    py::class_<MetricsRow>(m, "MetricsRow")
        .def_readonly("iteration", &MetricsRow::iteration)
        .def_readonly("env_interactions", &MetricsRow::env_interactions)
        .def_readonly("max_fitness", &MetricsRow::max_fitness)
        .def_readonly("coverage", &MetricsRow::coverage)
        .def_readonly("qd_score", &MetricsRow::qd_score);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("variant", &RunConfig::variant)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("n_iterations", &RunConfig::n_iterations)
        .def_readwrite("batch_size", &RunConfig::batch_size)
        .def_readwrite("n_initial_solutions", &RunConfig::n_initial_solutions)
        .def_readwrite("metrics_every", &RunConfig::metrics_every)
        .def_readwrite("env_name", &RunConfig::env_name)
        .def_readwrite("gait", &RunConfig::gait)
        .def_readwrite("arm", &RunConfig::arm)
        .def_readwrite("hidden_dims", &RunConfig::hidden_dims)
        .def_readwrite("cells_per_dim", &RunConfig::cells_per_dim)
        .def_readwrite("variation", &RunConfig::variation);

    py::class_<RunArtifacts>(m, "RunArtifacts")
        .def_readonly("metrics", &RunArtifacts::metrics)
        .def_readonly("archive", &RunArtifacts::archive)
        .def_readonly("total_env_steps", &RunArtifacts::total_env_steps);

    m.def(
        "run_map_elites",
        [](const RunConfig& config) { return run_map_elites(config); },
        py::call_guard<py::gil_scoped_release>());
    m.def("load_run_config", &load_run_config);

    m.def("save_archive_json",
          [](const Archive& archive, const std::string& path) {
              save_archive_json(archive, {}, path);
          });
    m.def("load_archive_json",
          [](const std::string& path) { return load_archive_json(path).archive; });
    m.def("write_metrics_csv", &write_metrics_csv);
    m.def("write_heatmap_csv", &write_heatmap_csv);
}
