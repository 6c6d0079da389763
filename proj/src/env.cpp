#include "maqd/env.hpp"

#include <numeric>
#include <stdexcept>

namespace maqd {

void EnvSpec::validate() const {
    if (n_agents < 1) throw std::invalid_argument("EnvSpec: n_agents must be >= 1");
    if (obs_dims.size() != static_cast<std::size_t>(n_agents) ||
        action_dims.size() != static_cast<std::size_t>(n_agents))
        throw std::invalid_argument("EnvSpec: per-agent dim lists must have n_agents entries");
    if (n_feet < 1) throw std::invalid_argument("EnvSpec: n_feet must be >= 1");
    if (episode_length < 1) throw std::invalid_argument("EnvSpec: episode_length must be >= 1");
    if (discount < 0.0 || discount > 1.0)
        throw std::invalid_argument("EnvSpec: discount must be in [0, 1]");
}

void EnvModifiers::validate() const {
    if (!(gravity_multiplier > 0.0))
        throw std::invalid_argument("EnvModifiers: gravity_multiplier must be > 0");
    if (dysfunction_coefficient < 0.0 || dysfunction_coefficient > 1.0)
        throw std::invalid_argument("EnvModifiers: dysfunction_coefficient must be in [0, 1]");
    if (dysfunctional_leg && *dysfunctional_leg < 0)
        throw std::invalid_argument("EnvModifiers: dysfunctional_leg must be >= 0");
}

void ContactHistory::append(std::span<const std::uint8_t> row) {
    if (n_feet == 0) n_feet = static_cast<int>(row.size());
    if (row.size() != static_cast<std::size_t>(n_feet))
        throw std::invalid_argument("ContactHistory: row width mismatch");
    flags.insert(flags.end(), row.begin(), row.end());
}

std::vector<double> behaviour_descriptor(const ContactHistory& history) {
    const int t_exec = history.steps();
    if (t_exec < 1)
        throw std::invalid_argument("behaviour_descriptor: empty contact history");
    std::vector<double> descriptor(static_cast<std::size_t>(history.n_feet), 0.0);
    for (int t = 0; t < t_exec; ++t)
        for (int f = 0; f < history.n_feet; ++f)
            descriptor[static_cast<std::size_t>(f)] +=
                history.flags[static_cast<std::size_t>(t) * history.n_feet + f];
    for (double& b : descriptor) b /= t_exec;
    return descriptor;
}

EnvSpec single_agent_wrapper(const EnvSpec& spec) {
    spec.validate();
    EnvSpec wrapped = spec;
    wrapped.n_agents = 1;
    wrapped.obs_dims = {3 * spec.n_feet + 1};
    wrapped.action_dims = {std::accumulate(spec.action_dims.begin(), spec.action_dims.end(), 0)};
    return wrapped;
}

}  // namespace maqd
