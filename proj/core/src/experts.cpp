#include "lep/experts.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lep/errors.hpp"

namespace lep::envs {

namespace {

struct ArmView {
  Vec3 q;
  Vec3 qd;
  Vec2 f;
  FkResult fk;
  Vec2 v;
  double omega;
};

ArmView arm_view(const std::vector<double>& state) {
  ArmView out;
  out.q = {state[0], state[1], state[2]};
  out.qd = {state[3], state[4], state[5]};
  out.f = {state[6], state[7]};
  out.fk = forward_kinematics(out.q);
  out.v = ee_velocity(out.q, out.qd);
  out.omega = out.qd[0] + out.qd[1] + out.qd[2];
  return out;
}

std::vector<double> task_space_torque(const ArmView& s, const Vec2& force, double orient_torque,
                                      double joint_damping) {
  double jac[2][3];
  ee_jacobian(s.q, jac);
  std::vector<double> tau(3);
  for (int j = 0; j < 3; ++j) {
    tau[j] = jac[0][j] * force[0] + jac[1][j] * force[1] + orient_torque - joint_damping * s.qd[j];
    tau[j] = std::clamp(tau[j], -ArmModel::kTorqueMax[j], ArmModel::kTorqueMax[j]);
  }
  return tau;
}

double orient_pd(const ArmView& s, double goal_phi) {
  return 6.0 * wrap_angle(goal_phi - s.fk.orientation) - 1.5 * s.omega;
}

Policy arm_reach_expert(const TaskSpec& spec) {
  return [spec](const std::vector<double>& state, int) {
    const ArmView s = arm_view(state);
    const Vec2 force = {40.0 * (spec.goal_x - s.fk.position[0]) - 12.0 * s.v[0],
                        40.0 * (spec.goal_y - s.fk.position[1]) - 12.0 * s.v[1]};
    return task_space_torque(s, force, orient_pd(s, spec.goal_phi), 0.8);
  };
}

// Shared press-down force regulation for the contact tasks.
double press_force_y(const ArmView& s, double f_target) {
  const double fn = s.f[1];
  double fy = -(f_target + 1.5 * (f_target - fn)) - 4.0 * s.v[1];
  return std::clamp(fy, -45.0, 10.0);
}

Policy arm_force_at_expert(const TaskSpec& spec) {
  return [spec](const std::vector<double>& state, int) {
    const ArmView s = arm_view(state);
    const bool near = std::hypot(s.fk.position[0] - spec.goal_x, s.fk.position[1]) < 0.25;
    Vec2 force;
    if (!near && s.f[1] <= 0.0) {
      // approach a staging point just above the goal
      force = {40.0 * (spec.goal_x - s.fk.position[0]) - 12.0 * s.v[0],
               40.0 * (0.12 - s.fk.position[1]) - 12.0 * s.v[1]};
    } else {
      force = {40.0 * (spec.goal_x - s.fk.position[0]) - 12.0 * s.v[0], press_force_y(s, spec.force_target)};
    }
    return task_space_torque(s, force, orient_pd(s, spec.goal_phi), 0.8);
  };
}

Policy arm_circle_expert(const TaskSpec& spec) {
  return [spec](const std::vector<double>& state, int) {
    const ArmView s = arm_view(state);
    const double dx = s.fk.position[0] - spec.circle_cx;
    const double dy = s.fk.position[1] - spec.circle_cy;
    const double rad = std::hypot(dx, dy);
    Vec2 radial = rad > 1e-9 ? Vec2{dx / rad, dy / rad} : Vec2{1.0, 0.0};
    // aim a little ahead along the circle
    const double ahead = 0.35;
    const Vec2 radial_ahead = {radial[0] * std::cos(ahead) - radial[1] * std::sin(ahead),
                               radial[0] * std::sin(ahead) + radial[1] * std::cos(ahead)};
    const Vec2 p_des = {spec.circle_cx + spec.circle_r * radial_ahead[0],
                        spec.circle_cy + spec.circle_r * radial_ahead[1]};
    const Vec2 tangent = {-radial[1], radial[0]};
    const Vec2 v_des = {spec.speed_target * tangent[0], spec.speed_target * tangent[1]};
    const Vec2 force = {35.0 * (p_des[0] - s.fk.position[0]) + 10.0 * (v_des[0] - s.v[0]),
                        35.0 * (p_des[1] - s.fk.position[1]) + 10.0 * (v_des[1] - s.v[1])};
    return task_space_torque(s, force, orient_pd(s, spec.goal_phi), 0.4);
  };
}

Policy arm_slide_force_expert(const TaskSpec& spec) {
  return [spec](const std::vector<double>& state, int) {
    const ArmView s = arm_view(state);
    const double x = s.fk.position[0];
    const double mid = 0.5 * (spec.seg_x0 + spec.seg_x1);
    const bool above = s.f[1] <= 0.0 && s.fk.position[1] > 0.1;
    if (above) {
      // come down onto the middle of the segment first
      const Vec2 force = {40.0 * (mid - x) - 12.0 * s.v[0], 40.0 * (0.1 - s.fk.position[1]) - 12.0 * s.v[1]};
      return task_space_torque(s, force, orient_pd(s, spec.goal_phi), 0.8);
    }
    double dir;
    if (x >= spec.seg_x1 - 0.06) dir = -1.0;
    else if (x <= spec.seg_x0 + 0.06) dir = 1.0;
    else if (std::abs(s.v[0]) > 0.02) dir = s.v[0] > 0 ? 1.0 : -1.0;
    else dir = 1.0;
    const double x_des = std::clamp(x + dir * 0.2, spec.seg_x0, spec.seg_x1);
    const Vec2 force = {25.0 * (x_des - x) + 12.0 * (dir * spec.speed_target - s.v[0]),
                        press_force_y(s, spec.force_target)};
    return task_space_torque(s, force, orient_pd(s, spec.goal_phi), 0.3);
  };
}

}  // namespace

Policy scripted_expert(const TaskSpec& spec) {
  if (spec.env == EnvKind::kPointMass) {
    return [spec](const std::vector<double>& state, int) -> std::vector<double> {
      const double dx = spec.goal_x - state[0];
      const double dy = spec.goal_y - state[1];
      const double d = std::hypot(dx, dy);
      if (d <= 0.05) return {0.0, 0.0};
      return {dx / d, dy / d};
    };
  }
  switch (spec.kind) {
    case TaskKind::kReach: return arm_reach_expert(spec);
    case TaskKind::kForceAt: return arm_force_at_expert(spec);
    case TaskKind::kCircle: return arm_circle_expert(spec);
    case TaskKind::kSlideForce: return arm_slide_force_expert(spec);
  }
  throw ContractError("scripted_expert: unknown task kind");
}

Policy zero_policy() {
  return [](const std::vector<double>&, int) { return std::vector<double>{}; };
}

Policy random_policy(std::vector<double> bounds, uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [bounds = std::move(bounds), rng](const std::vector<double>&, int) {
    std::vector<double> a(bounds.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = rng->uniform(-bounds[i], bounds[i]);
    return a;
  };
}

double rollout_return(Env& env, const Policy& policy, Rng& reset_rng) {
  std::vector<double> state = env.reset(reset_rng);
  double total = 0.0;
  for (int t = 0;; ++t) {
    std::vector<double> a = policy(state, t);
    if (a.empty()) a.assign(env.action_dim(), 0.0);
    StepResult r = env.step(a);
    total += r.reward;
    state = std::move(r.state);
    if (r.done) break;
  }
  return total;
}

double calibrate_threshold(EnvKind env_kind, TaskKind kind, int instances, int episodes_per_instance,
                           uint64_t seed) {
  double min_expert = std::numeric_limits<double>::infinity();
  double max_bad = -std::numeric_limits<double>::infinity();
  for (int inst = 0; inst < instances; ++inst) {
    TaskSpec spec = make_task(env_kind, kind, inst, seed);
    auto env = make_env(spec);
    const Policy expert = scripted_expert(spec);
    const Policy zero = zero_policy();
    const Policy random = random_policy(env->action_bound(), Rng::derive(seed, 0xbad, inst));
    for (int ep = 0; ep < episodes_per_instance; ++ep) {
      Rng r1(Rng::derive(seed, 1, inst, ep)), r2(Rng::derive(seed, 2, inst, ep)), r3(Rng::derive(seed, 3, inst, ep));
      min_expert = std::min(min_expert, rollout_return(*env, expert, r1));
      max_bad = std::max(max_bad, rollout_return(*env, zero, r2));
      max_bad = std::max(max_bad, rollout_return(*env, random, r3));
    }
  }
  if (!(min_expert > max_bad)) {
    throw ContractError("calibrate_threshold: expert and bad-policy returns overlap");
  }
  return 0.5 * (min_expert + max_bad);
}

}  // namespace lep::envs
