#pragma once

#include <utility>
#include <vector>

#include "maqd/env.hpp"
#include "maqd/genome.hpp"

namespace maqd {

// Planar redundant arm with L equal links of length 1/L, the joint angles
// partitioned contiguously across N agents. Closed form, no rollout:
// fitness is minus the standard deviation of the joint angles (smooth arms
// score best) and the descriptor is the end-effector position mapped from
// [-1, 1]^2 to [0, 1]^2. Cheap enough that archives over it can be checked
// against brute-force enumeration.
struct ArmParams {
    int n_joints = 8;
    int n_agents = 4;

    void validate() const;
};

class FactoredArm {
public:
    explicit FactoredArm(ArmParams params);

    const EnvSpec& spec() const { return spec_; }
    const ArmParams& params() const { return params_; }

    // Joint counts per agent; near-even contiguous partition.
    const std::vector<std::size_t>& agent_sizes() const { return agent_sizes_; }

    // End-effector position for cumulative-angle forward kinematics.
    static std::pair<double, double> end_effector(std::span<const double> angles);

    // Modifiers are accepted for interface parity and have no effect here.
    std::pair<double, std::vector<double>> evaluate(const TeamGenome& team,
                                                    const EnvModifiers& modifiers) const;

private:
    ArmParams params_;
    std::vector<std::size_t> agent_sizes_;
    EnvSpec spec_;
};

}  // namespace maqd
