#pragma once

#include <functional>

#include "lep/env.hpp"

namespace lep::envs {

// A policy maps (state, step index) to an action. Scripted experts and
// loaded actor networks both fit this shape.
using Policy = std::function<std::vector<double>(const std::vector<double>&, int)>;

// Hand-written near-optimal controller for the task (task-space PD with
// force regulation for the contact tasks). Stateless in t except through
// the environment state.
Policy scripted_expert(const TaskSpec& spec);

Policy zero_policy();
Policy random_policy(std::vector<double> bounds, uint64_t seed);

// One exploration-free episode; returns the cumulative reward.
double rollout_return(Env& env, const Policy& policy, Rng& reset_rng);

// Success-threshold protocol: run the scripted expert and known-bad
// policies over several instances and episodes, then place the threshold
// at the midpoint of the separating gap. Throws if the returns overlap.
double calibrate_threshold(EnvKind env, TaskKind kind, int instances, int episodes_per_instance, uint64_t seed);

}  // namespace lep::envs
