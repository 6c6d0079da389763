#include "maqd/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace maqd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Sectioned key-value file: [section] headers, key = value lines,
// '#' comments. Keys are consumed by the typed getters below; anything
// left unconsumed is an unknown key and an error.
class ConfigFile {
public:
    explicit ConfigFile(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) fail(line_no, "empty section name");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(line_no, "expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            if (section.empty()) fail(line_no, "key outside any [section]");
            if (!entries_.emplace(section + "." + key, value).second)
                fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
        }
    }

    std::optional<std::string> take(const std::string& section, const std::string& key) {
        auto it = entries_.find(section + "." + key);
        if (it == entries_.end()) return std::nullopt;
        std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    std::optional<std::int64_t> take_int(const std::string& section, const std::string& key) {
        auto raw = take(section, key);
        if (!raw) return std::nullopt;
        std::int64_t v = 0;
        const char* first = raw->data();
        const char* last = raw->data() + raw->size();
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || p != last)
            throw std::runtime_error(path_ + ": " + section + "." + key +
                                     " is not an integer: '" + *raw + "'");
        return v;
    }

    std::optional<double> take_double(const std::string& section, const std::string& key) {
        auto raw = take(section, key);
        if (!raw) return std::nullopt;
        try {
            std::size_t used = 0;
            const double v = std::stod(*raw, &used);
            if (used != raw->size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error(path_ + ": " + section + "." + key +
                                     " is not a number: '" + *raw + "'");
        }
    }

    std::optional<std::vector<int>> take_int_list(const std::string& section,
                                                  const std::string& key) {
        auto raw = take(section, key);
        if (!raw) return std::nullopt;
        std::vector<int> values;
        std::string token;
        std::stringstream ss(*raw);
        while (std::getline(ss, token, ',')) {
            token = trim(token);
            if (token.empty()) continue;
            int v = 0;
            auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc{} || p != token.data() + token.size())
                throw std::runtime_error(path_ + ": " + section + "." + key +
                                         " has a non-integer entry: '" + token + "'");
            values.push_back(v);
        }
        return values;
    }

    void require_empty() const {
        if (entries_.empty()) return;
        std::string names;
        for (const auto& [key, value] : entries_) {
            if (!names.empty()) names += ", ";
            names += key;
        }
        throw std::runtime_error(path_ + ": unknown keys: " + names);
    }

private:
    [[noreturn]] void fail(int line_no, const std::string& what) const {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no) + ": " + what);
    }

    std::string path_;
    std::map<std::string, std::string> entries_;
};

}  // namespace

Variant parse_variant(const std::string& name) {
    if (name == "sa") return Variant::SingleAgent;
    if (name == "naive") return Variant::NaiveMA;
    if (name == "mixme") return Variant::MixME;
    throw std::runtime_error("unknown variant '" + name + "' (expected sa, naive or mixme)");
}

std::string variant_name(Variant variant) {
    switch (variant) {
        case Variant::SingleAgent: return "sa";
        case Variant::NaiveMA: return "naive";
        case Variant::MixME: return "mixme";
    }
    throw std::logic_error("variant_name: bad enum");
}

void RunConfig::validate() const {
    if (env_name != "gait" && env_name != "arm")
        throw std::runtime_error("RunConfig: env name must be 'gait' or 'arm'");
    if (n_iterations < 0) throw std::runtime_error("RunConfig: n_iterations must be >= 0");
    if (batch_size < 1) throw std::runtime_error("RunConfig: batch_size must be >= 1");
    if (initial_solutions() < 1)
        throw std::runtime_error("RunConfig: n_initial_solutions must be >= 1");
    if (metrics_every < 1) throw std::runtime_error("RunConfig: metrics_every must be >= 1");
    if (!(param_lower < param_upper))
        throw std::runtime_error("RunConfig: param_lower must be < param_upper");
    if (cells_per_dim < 1) throw std::runtime_error("RunConfig: cells_per_dim must be >= 1");
    if (!(grid_lower < grid_upper))
        throw std::runtime_error("RunConfig: grid lower must be < upper");
    if (env_name == "gait") gait.validate();
    if (env_name == "arm") arm.validate();
    variation.validate();
    for (int h : hidden_dims)
        if (h < 1) throw std::runtime_error("RunConfig: hidden dims must be >= 1");
}

RunConfig load_run_config(const std::string& path) {
    ConfigFile file(path);
    RunConfig config;

    if (auto v = file.take("run", "variant")) config.variant = parse_variant(*v);
    if (auto v = file.take_int("run", "seed")) config.seed = static_cast<std::uint64_t>(*v);
    if (auto v = file.take_int("run", "n_iterations")) config.n_iterations = static_cast<int>(*v);
    if (auto v = file.take_int("run", "batch_size")) config.batch_size = static_cast<int>(*v);
    if (auto v = file.take_int("run", "n_initial_solutions"))
        config.n_initial_solutions = static_cast<int>(*v);
    if (auto v = file.take_int("run", "metrics_every")) config.metrics_every = static_cast<int>(*v);

    if (auto v = file.take("env", "name")) config.env_name = *v;
    if (config.env_name == "gait") {
        GaitParams& g = config.gait;
        if (auto v = file.take_int("env", "n_legs")) g.n_legs = static_cast<int>(*v);
        if (auto v = file.take_int("env", "episode_length"))
            g.episode_length = static_cast<int>(*v);
        if (auto v = file.take_double("env", "dt")) g.dt = *v;
        if (auto v = file.take_double("env", "torque_gain")) g.torque_gain = *v;
        if (auto v = file.take_double("env", "damping")) g.damping = *v;
        if (auto v = file.take_double("env", "gravity")) g.gravity = *v;
        if (auto v = file.take_double("env", "contact_angle")) g.contact_angle = *v;
        if (auto v = file.take_double("env", "leg_radius")) g.leg_radius = *v;
        if (auto v = file.take_double("env", "w_survive")) g.w_survive = *v;
        if (auto v = file.take_double("env", "w_forward")) g.w_forward = *v;
        if (auto v = file.take_double("env", "w_ctrl")) g.w_ctrl = *v;
        if (auto v = file.take_int("env", "max_steps_without_contact"))
            g.max_steps_without_contact = static_cast<int>(*v);
    } else if (config.env_name == "arm") {
        if (auto v = file.take_int("env", "n_joints")) config.arm.n_joints = static_cast<int>(*v);
        if (auto v = file.take_int("env", "n_agents")) config.arm.n_agents = static_cast<int>(*v);
    }

    if (auto v = file.take_int_list("policy", "hidden_dims")) config.hidden_dims = *v;
    if (auto v = file.take_double("policy", "param_lower")) config.param_lower = *v;
    if (auto v = file.take_double("policy", "param_upper")) config.param_upper = *v;

    if (auto v = file.take_int("grid", "cells_per_dim")) config.cells_per_dim = static_cast<int>(*v);
    if (auto v = file.take_int_list("grid", "dims")) config.grid_dims = *v;
    if (auto v = file.take_double("grid", "lower")) config.grid_lower = *v;
    if (auto v = file.take_double("grid", "upper")) config.grid_upper = *v;

    if (auto v = file.take_double("variation", "eta")) config.variation.eta = *v;
    if (auto v = file.take_double("variation", "p_mut")) config.variation.p_mut = *v;
    if (auto v = file.take_double("variation", "sigma_iso")) config.variation.sigma_iso = *v;
    if (auto v = file.take_double("variation", "sigma_line")) config.variation.sigma_line = *v;

    file.require_empty();
    config.validate();
    return config;
}

std::unique_ptr<Task> make_task(const RunConfig& config) {
    config.validate();
    if (config.env_name == "arm") {
        ArmParams params = config.arm;
        if (config.variant == Variant::SingleAgent) params.n_agents = 1;
        return std::make_unique<ArmTask>(params);
    }
    return std::make_unique<GaitTask>(config.gait, config.hidden_dims,
                                      config.variant == Variant::SingleAgent,
                                      config.param_lower, config.param_upper);
}

GridConfig make_grid(const RunConfig& config, int descriptor_dim) {
    GridConfig grid;
    if (config.grid_dims) {
        if (static_cast<int>(config.grid_dims->size()) != descriptor_dim)
            throw std::runtime_error("RunConfig: grid dims length must equal descriptor dimension");
        grid.dims = *config.grid_dims;
    } else {
        grid.dims.assign(static_cast<std::size_t>(descriptor_dim), config.cells_per_dim);
    }
    grid.lower_bounds.assign(static_cast<std::size_t>(descriptor_dim), config.grid_lower);
    grid.upper_bounds.assign(static_cast<std::size_t>(descriptor_dim), config.grid_upper);
    grid.validate();
    return grid;
}

}  // namespace maqd
