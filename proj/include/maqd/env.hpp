#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace maqd {

// Shapes of a decentralised cooperative task: per-agent observation and
// action sizes, descriptor dimensionality (one component per foot), episode
// cap and discount. Fitness is the undiscounted return, so discount defaults
// to 1 and is carried for completeness only.
struct EnvSpec {
    int n_agents = 0;
    std::vector<int> obs_dims;
    std::vector<int> action_dims;
    int n_feet = 0;
    int episode_length = 300;
    double discount = 1.0;

    void validate() const;
};

// Test-time environment perturbations; the defaults reproduce the unmodified
// environment bit for bit.
struct EnvModifiers {
    double gravity_multiplier = 1.0;
    std::optional<int> dysfunctional_leg;
    double dysfunction_coefficient = 1.0;

    void validate() const;
};

// Row-major T_exec x n_feet contact flags recorded during a rollout.
struct ContactHistory {
    int n_feet = 0;
    std::vector<std::uint8_t> flags;

    int steps() const {
        return n_feet == 0 ? 0 : static_cast<int>(flags.size()) / n_feet;
    }
    void append(std::span<const std::uint8_t> row);
};

// Per-foot fraction of executed steps spent in ground contact; every
// component is in [0, 1]. Errors on an empty history.
std::vector<double> behaviour_descriptor(const ContactHistory& history);

// Collapses a multi-agent spec to one agent that sees the full state (all
// legs' angle, angular velocity and contact flag, plus body velocity) and
// emits the concatenated joint action. Idempotent.
EnvSpec single_agent_wrapper(const EnvSpec& spec);

}  // namespace maqd
