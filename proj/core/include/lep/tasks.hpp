#pragma once

#include <string>

#include "lep/arm_model.hpp"

namespace lep::envs {

enum class EnvKind { kPointMass, kArm };
enum class TaskKind { kReach, kForceAt, kCircle, kSlideForce };

const char* env_kind_name(EnvKind k);
const char* task_kind_name(TaskKind k);
bool parse_task_name(const std::string& name, EnvKind& env, TaskKind& kind);
// "pm_reach", "reach", "force_at", "circle", "slide_force"
std::string task_name(EnvKind env, TaskKind kind);
std::string valid_task_names();

// Everything that defines one task instance: the goal geometry, the
// reward weights, the episode horizon and the calibrated success
// threshold on cumulative reward.
struct TaskSpec {
  EnvKind env = EnvKind::kArm;
  TaskKind kind = TaskKind::kReach;
  int instance_id = 0;
  int horizon = 200;
  double success_threshold = 0.0;

  // goal geometry
  double goal_x = 1.2;
  double goal_y = 0.8;
  double goal_phi = -1.5707963267948966;  // end-effector points down
  double force_target = 10.0;             // N
  double circle_cx = 0.0;
  double circle_cy = 1.0;
  double circle_r = 0.35;
  double seg_x0 = 0.7;
  double seg_x1 = 1.4;
  double speed_target = 0.5;  // m/s

  // reward weights
  double w_pos = 1.0;
  double w_orient = 0.5;
  double w_force = 0.05;
  double contact_bonus = 2.0;
  double w_circle = 1.0;
  double w_vel = 0.2;
};

// Deterministic goal sampling for instance ids; thresholds filled with
// the calibrated per-kind defaults.
TaskSpec make_task(EnvKind env, TaskKind kind, int instance_id, uint64_t seed = 0);
double default_threshold(EnvKind env, TaskKind kind);

double wrap_angle(double a);  // into [-pi, pi]

struct RewardBreakdown {
  double position = 0.0;
  double orientation = 0.0;
  double velocity = 0.0;
  double force = 0.0;
  double bonus = 0.0;
  double total() const { return position + orientation + velocity + force + bonus; }
};

// Per-step arm task reward from the end-effector pose/velocity and the
// contact force. Reach and Circle are <= 0; contact tasks are <= bonus.
RewardBreakdown task_reward(const TaskSpec& spec, const FkResult& ee, const Vec2& ee_vel, const Vec2& f);

// Inclusive threshold test on an episode's cumulative reward.
bool is_success(const TaskSpec& spec, double cumulative_reward);

}  // namespace lep::envs
