#pragma once

#include <cstdint>
#include <vector>

#include "maqd/env.hpp"

namespace maqd {

// Planar multi-leg paddling task, one agent per leg. Each leg is a damped
// driven pendulum; the body advances while feet brace against the ground.
//
// Per leg f with state (theta_f, omega_f) and action a_f in [-1, 1]:
//   torque   tau = torque_gain * dysfunction(f) * a_f
//   omega'       = omega + dt * (tau - damping * omega
//                                - gravity * gravity_multiplier * sin(theta))
//   theta'       = wrap(theta + dt * omega')
//   contact_f    = |theta'| <= contact_angle
//   body velocity v = sum_f contact_f * max(0, -omega'_f) * leg_radius
//   reward       = w_survive + w_forward * v - w_ctrl * sum_f a_f^2
// The episode ends early once no foot has touched the ground for
// max_steps_without_contact consecutive steps.
struct GaitParams {
    int n_legs = 4;
    double dt = 0.05;
    double torque_gain = 2.0;
    double damping = 0.3;
    double gravity = 1.0;
    double contact_angle = 0.78539816339744830962;  // pi/4
    double leg_radius = 1.0;
    double w_survive = 0.5;
    double w_forward = 1.0;
    double w_ctrl = 0.05;
    int max_steps_without_contact = 20;
    int episode_length = 300;

    void validate() const;
};

struct GaitState {
    std::vector<double> theta;
    std::vector<double> omega;
    double velocity = 0.0;
    int steps_without_contact = 0;
};

struct StepResult {
    GaitState next_state;
    std::vector<std::vector<double>> observations;
    double reward = 0.0;
    bool done = false;
    std::vector<std::uint8_t> foot_contacts;
};

class GaitEnv {
public:
    // single_agent: one agent observes the full state and drives all legs;
    // otherwise each leg's agent sees only its own state, its two
    // neighbours' angles and velocities, and the body velocity.
    explicit GaitEnv(GaitParams params, bool single_agent = false);

    const EnvSpec& spec() const { return spec_; }
    const GaitParams& params() const { return params_; }
    bool single_agent() const { return single_agent_; }

    // All legs hanging at rest: theta = omega = 0, every foot in contact.
    GaitState initial_state() const;

    std::vector<std::vector<double>> observe(const GaitState& state) const;

    StepResult step(const GaitState& state, const std::vector<std::vector<double>>& actions,
                    const EnvModifiers& modifiers) const;

private:
    GaitParams params_;
    bool single_agent_;
    EnvSpec spec_;
};

}  // namespace maqd
