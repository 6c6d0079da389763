#include "maqd/gait_env.hpp"

#include <cmath>
#include <stdexcept>

namespace maqd {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

// Wrap into [-pi, pi].
double wrap_angle(double theta) { return std::remainder(theta, two_pi); }

}  // namespace

void GaitParams::validate() const {
    if (n_legs < 1) throw std::invalid_argument("GaitParams: n_legs must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("GaitParams: dt must be > 0");
    if (contact_angle <= 0.0) throw std::invalid_argument("GaitParams: contact_angle must be > 0");
    if (max_steps_without_contact < 1)
        throw std::invalid_argument("GaitParams: max_steps_without_contact must be >= 1");
    if (episode_length < 1) throw std::invalid_argument("GaitParams: episode_length must be >= 1");
}

GaitEnv::GaitEnv(GaitParams params, bool single_agent)
    : params_(params), single_agent_(single_agent) {
    params_.validate();
    EnvSpec multi;
    multi.n_agents = params_.n_legs;
    multi.obs_dims.assign(static_cast<std::size_t>(params_.n_legs), 8);
    multi.action_dims.assign(static_cast<std::size_t>(params_.n_legs), 1);
    multi.n_feet = params_.n_legs;
    multi.episode_length = params_.episode_length;
    spec_ = single_agent_ ? single_agent_wrapper(multi) : multi;
    spec_.validate();
}

GaitState GaitEnv::initial_state() const {
    GaitState state;
    state.theta.assign(static_cast<std::size_t>(params_.n_legs), 0.0);
    state.omega.assign(static_cast<std::size_t>(params_.n_legs), 0.0);
    return state;
}

std::vector<std::vector<double>> GaitEnv::observe(const GaitState& state) const {
    const int legs = params_.n_legs;
    std::vector<std::vector<double>> observations;
    if (single_agent_) {
        std::vector<double> obs;
        obs.reserve(static_cast<std::size_t>(3 * legs + 1));
        for (int f = 0; f < legs; ++f) obs.push_back(state.theta[static_cast<std::size_t>(f)]);
        for (int f = 0; f < legs; ++f) obs.push_back(state.omega[static_cast<std::size_t>(f)]);
        for (int f = 0; f < legs; ++f)
            obs.push_back(std::fabs(state.theta[static_cast<std::size_t>(f)]) <=
                                  params_.contact_angle
                              ? 1.0
                              : 0.0);
        obs.push_back(state.velocity);
        observations.push_back(std::move(obs));
        return observations;
    }
    observations.reserve(static_cast<std::size_t>(legs));
    for (int f = 0; f < legs; ++f) {
        const std::size_t prev = static_cast<std::size_t>((f + legs - 1) % legs);
        const std::size_t next = static_cast<std::size_t>((f + 1) % legs);
        const std::size_t self = static_cast<std::size_t>(f);
        const double contact =
            std::fabs(state.theta[self]) <= params_.contact_angle ? 1.0 : 0.0;
        observations.push_back({state.theta[self], state.omega[self], contact,
                                state.theta[prev], state.theta[next], state.omega[prev],
                                state.omega[next], state.velocity});
    }
    return observations;
}

StepResult GaitEnv::step(const GaitState& state, const std::vector<std::vector<double>>& actions,
                         const EnvModifiers& modifiers) const {
    modifiers.validate();
    const int legs = params_.n_legs;
    if (actions.size() != static_cast<std::size_t>(spec_.n_agents))
        throw std::invalid_argument("GaitEnv::step: wrong agent count");
    for (std::size_t a = 0; a < actions.size(); ++a) {
        if (actions[a].size() != static_cast<std::size_t>(spec_.action_dims[a]))
            throw std::invalid_argument("GaitEnv::step: wrong action dimension");
        for (double v : actions[a])
            if (!(v >= -1.0 && v <= 1.0))
                throw std::invalid_argument("GaitEnv::step: action out of [-1, 1]");
    }

    // Flatten to one command per leg regardless of the agent view.
    std::vector<double> command;
    command.reserve(static_cast<std::size_t>(legs));
    for (const auto& a : actions) command.insert(command.end(), a.begin(), a.end());

    StepResult result;
    result.next_state.theta.resize(static_cast<std::size_t>(legs));
    result.next_state.omega.resize(static_cast<std::size_t>(legs));
    result.foot_contacts.resize(static_cast<std::size_t>(legs));

    double velocity = 0.0;
    double control_cost = 0.0;
    bool any_contact = false;
    for (int f = 0; f < legs; ++f) {
        const std::size_t i = static_cast<std::size_t>(f);
        const double scale =
            (modifiers.dysfunctional_leg && *modifiers.dysfunctional_leg == f)
                ? modifiers.dysfunction_coefficient
                : 1.0;
        const double torque = params_.torque_gain * scale * command[i];
        const double omega_next =
            state.omega[i] + params_.dt * (torque - params_.damping * state.omega[i] -
                                           params_.gravity * modifiers.gravity_multiplier *
                                               std::sin(state.theta[i]));
        const double theta_next = wrap_angle(state.theta[i] + params_.dt * omega_next);
        const bool contact = std::fabs(theta_next) <= params_.contact_angle;

        result.next_state.theta[i] = theta_next;
        result.next_state.omega[i] = omega_next;
        result.foot_contacts[i] = contact ? 1 : 0;
        if (contact) {
            any_contact = true;
            velocity += std::max(0.0, -omega_next) * params_.leg_radius;
        }
        control_cost += command[i] * command[i];
    }

    result.next_state.velocity = velocity;
    result.next_state.steps_without_contact = any_contact ? 0 : state.steps_without_contact + 1;
    result.reward = params_.w_survive + params_.w_forward * velocity - params_.w_ctrl * control_cost;
    result.done = result.next_state.steps_without_contact >= params_.max_steps_without_contact;
    result.observations = observe(result.next_state);
    return result;
}

}  // namespace maqd
