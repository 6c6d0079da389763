#include "maqd/genome.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maqd {

std::vector<int> MlpSpec::layer_dims() const {
    std::vector<int> dims;
    dims.reserve(hidden_dims.size() + 2);
    dims.push_back(input_dim);
    dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
    dims.push_back(output_dim);
    return dims;
}

std::size_t MlpSpec::param_count() const {
    const auto dims = layer_dims();
    std::size_t count = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l)
        count += static_cast<std::size_t>(dims[l] + 1) * static_cast<std::size_t>(dims[l + 1]);
    return count;
}

void MlpSpec::validate() const {
    if (input_dim < 1 || output_dim < 1)
        throw std::invalid_argument("MlpSpec: input_dim and output_dim must be >= 1");
    for (int h : hidden_dims)
        if (h < 1) throw std::invalid_argument("MlpSpec: hidden dims must be >= 1");
    if (!(param_lower < param_upper))
        throw std::invalid_argument("MlpSpec: param_lower must be < param_upper");
}

void AgentParams::validate() const {
    spec.validate();
    if (theta.size() != spec.param_count())
        throw std::invalid_argument("AgentParams: theta length " + std::to_string(theta.size()) +
                                    " does not match spec param count " +
                                    std::to_string(spec.param_count()));
    for (double v : theta) {
        if (!std::isfinite(v) || v < spec.param_lower || v > spec.param_upper)
            throw std::invalid_argument("AgentParams: parameter outside bounds or non-finite");
    }
}

AgentParams init_random(const MlpSpec& spec, RngStream& rng) {
    spec.validate();
    AgentParams params{spec, {}};
    params.theta.reserve(spec.param_count());
    const auto dims = spec.layer_dims();
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const int fan_in = dims[l];
        const int fan_out = dims[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int i = 0; i < fan_in * fan_out; ++i)
            params.theta.push_back(rng.uniform(-scale, scale));
        for (int i = 0; i < fan_out; ++i)
            params.theta.push_back(0.0);
    }
    return params;
}

void forward_into(const MlpSpec& spec, std::span<const double> theta,
                  std::span<const double> obs, MlpWorkspace& ws,
                  std::vector<double>& action) {
    if (obs.size() != static_cast<std::size_t>(spec.input_dim))
        throw std::invalid_argument("forward: observation length does not match input_dim");
    if (theta.size() != spec.param_count())
        throw std::invalid_argument("forward: theta length does not match spec");

    const auto dims = spec.layer_dims();
    ws.a.assign(obs.begin(), obs.end());
    const double* p = theta.data();
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const int in = dims[l];
        const int out = dims[l + 1];
        ws.b.resize(static_cast<std::size_t>(out));
        const double* biases = p + static_cast<std::size_t>(in) * out;
        for (int j = 0; j < out; ++j) {
            const double* row = p + static_cast<std::size_t>(j) * in;
            double acc = biases[j];
            for (int i = 0; i < in; ++i) acc += row[i] * ws.a[static_cast<std::size_t>(i)];
            ws.b[static_cast<std::size_t>(j)] = std::tanh(acc);
        }
        p += static_cast<std::size_t>(in + 1) * out;
        std::swap(ws.a, ws.b);
    }
    action = ws.a;
}

std::vector<double> forward(const AgentParams& params, std::span<const double> obs) {
    MlpWorkspace ws;
    std::vector<double> action;
    forward_into(params.spec, params.theta, obs, ws, action);
    return action;
}

std::vector<double> flatten(const TeamGenome& team) {
    std::vector<double> flat;
    std::size_t total = 0;
    for (const auto& agent : team.agents) total += agent.size();
    flat.reserve(total);
    for (const auto& agent : team.agents) flat.insert(flat.end(), agent.begin(), agent.end());
    return flat;
}

TeamGenome unflatten(std::span<const double> flat, std::span<const std::size_t> agent_sizes) {
    std::size_t total = 0;
    for (std::size_t n : agent_sizes) total += n;
    if (total != flat.size())
        throw std::invalid_argument("unflatten: flat length does not match agent sizes");
    TeamGenome team;
    team.agents.reserve(agent_sizes.size());
    std::size_t offset = 0;
    for (std::size_t n : agent_sizes) {
        team.agents.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(offset),
                                 flat.begin() + static_cast<std::ptrdiff_t>(offset + n));
        offset += n;
    }
    return team;
}

}  // namespace maqd
