#pragma once

#include <string>
#include <vector>

#include "lep/array2.hpp"
#include "lep/experts.hpp"

namespace lep::explore {

using math::Array2;

// Time-aligned state/action record of one exploration-free episode.
struct Trajectory {
  std::string task_id;
  int instance_id = 0;
  std::string source;  // scripted | ddpg | ddpg+lep
  Array2 states;       // T x state_dim
  Array2 actions;      // T x action_dim

  int length() const { return states.rows(); }
  int state_dim() const { return states.cols(); }
  int action_dim() const { return actions.cols(); }
};

// Line-delimited dataset file: a header record {version, state_dim,
// action_dim} followed by one trajectory per line.
void save_trajectories(const std::string& path, const std::vector<Trajectory>& trajectories);
std::vector<Trajectory> load_trajectories(const std::string& path);

// Builds a policy per spec and rolls it out noise-free n times,
// recording (s_t, a_t) pairs. Deterministic in seed.
using PolicySource = std::function<envs::Policy(const envs::TaskSpec&)>;
std::vector<Trajectory> collect_trajectories(const PolicySource& source, const std::string& source_tag,
                                             const std::vector<envs::TaskSpec>& specs, int n_per_spec,
                                             uint64_t seed);

}  // namespace lep::explore
