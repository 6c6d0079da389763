#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maqd/rng.hpp"

namespace maqd {

// Fully connected tanh network: input -> hidden... -> output, all layers
// tanh-activated so every action component stays inside (-1, 1).
//
// Flat parameter layout, per layer in order: the out*in weight matrix
// row-major (one row per output unit), then the out biases.
struct MlpSpec {
    int input_dim = 0;
    std::vector<int> hidden_dims{64, 64};
    int output_dim = 0;
    double param_lower = -5.0;
    double param_upper = 5.0;

    // Layer sizes including input and output: {in, h..., out}.
    std::vector<int> layer_dims() const;
    // Sum over layers of (in + 1) * out.
    std::size_t param_count() const;
    void validate() const;
};

// One agent's policy parameters paired with the shape they decode under.
struct AgentParams {
    MlpSpec spec;
    std::vector<double> theta;

    void validate() const;
};

// The unit stored in the archive: one flat parameter vector per agent.
// Shape metadata lives with the task, not the genome, so the same type
// also serves genomes that are raw joint angles.
struct TeamGenome {
    std::vector<std::vector<double>> agents;

    bool operator==(const TeamGenome&) const = default;
};

// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer, biases zero.
AgentParams init_random(const MlpSpec& spec, RngStream& rng);

// Scratch buffers so repeated forward passes allocate nothing.
struct MlpWorkspace {
    std::vector<double> a;
    std::vector<double> b;
};

void forward_into(const MlpSpec& spec, std::span<const double> theta,
                  std::span<const double> obs, MlpWorkspace& ws,
                  std::vector<double>& action);

std::vector<double> forward(const AgentParams& params, std::span<const double> obs);

std::vector<double> flatten(const TeamGenome& team);
TeamGenome unflatten(std::span<const double> flat, std::span<const std::size_t> agent_sizes);

}  // namespace maqd
