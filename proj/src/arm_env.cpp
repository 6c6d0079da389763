#include "maqd/arm_env.hpp"

#include <cmath>
#include <stdexcept>

namespace maqd {

namespace {
constexpr double pi = 3.14159265358979323846;
}

void ArmParams::validate() const {
    if (n_joints < 1) throw std::invalid_argument("ArmParams: n_joints must be >= 1");
    if (n_agents < 1 || n_agents > n_joints)
        throw std::invalid_argument("ArmParams: n_agents must be in [1, n_joints]");
}

FactoredArm::FactoredArm(ArmParams params) : params_(params) {
    params_.validate();
    const int base = params_.n_joints / params_.n_agents;
    const int rem = params_.n_joints % params_.n_agents;
    agent_sizes_.reserve(static_cast<std::size_t>(params_.n_agents));
    for (int a = 0; a < params_.n_agents; ++a)
        agent_sizes_.push_back(static_cast<std::size_t>(base + (a < rem ? 1 : 0)));

    spec_.n_agents = params_.n_agents;
    spec_.obs_dims.assign(static_cast<std::size_t>(params_.n_agents), 0);
    for (int a = 0; a < params_.n_agents; ++a)
        spec_.action_dims.push_back(static_cast<int>(agent_sizes_[static_cast<std::size_t>(a)]));
    spec_.n_feet = 2;
    spec_.episode_length = 1;
}

std::pair<double, double> FactoredArm::end_effector(std::span<const double> angles) {
    const double link = 1.0 / static_cast<double>(angles.size());
    double cumulative = 0.0;
    double x = 0.0, y = 0.0;
    for (double angle : angles) {
        cumulative += angle;
        x += link * std::cos(cumulative);
        y += link * std::sin(cumulative);
    }
    return {x, y};
}

std::pair<double, std::vector<double>> FactoredArm::evaluate(const TeamGenome& team,
                                                             const EnvModifiers& modifiers) const {
    modifiers.validate();
    if (team.agents.size() != agent_sizes_.size())
        throw std::invalid_argument("FactoredArm: wrong agent count");
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(params_.n_joints));
    for (std::size_t a = 0; a < team.agents.size(); ++a) {
        if (team.agents[a].size() != agent_sizes_[a])
            throw std::invalid_argument("FactoredArm: wrong joint count for agent");
        for (double angle : team.agents[a]) {
            if (!(angle >= -pi && angle <= pi))
                throw std::invalid_argument("FactoredArm: joint angle outside [-pi, pi]");
            angles.push_back(angle);
        }
    }

    double mean = 0.0;
    for (double angle : angles) mean += angle;
    mean /= static_cast<double>(angles.size());
    double var = 0.0;
    for (double angle : angles) var += (angle - mean) * (angle - mean);
    var /= static_cast<double>(angles.size());
    const double fitness = -std::sqrt(var);

    const auto [x, y] = end_effector(angles);
    return {fitness, {(x + 1.0) / 2.0, (y + 1.0) / 2.0}};
}

}  // namespace maqd
