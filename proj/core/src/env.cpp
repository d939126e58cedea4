#include "lep/env.hpp"

#include <cmath>

#include "lep/errors.hpp"

namespace lep::envs {

PointMassState point_mass_step(const PointMassState& s, const Vec2& a) {
  const double norm = std::hypot(a[0], a[1]);
  PointMassState next = s;
  if (norm > 0.0) {
    const double step = kPointMassSpeed * kPointMassDt;
    next.p[0] += step * a[0] / norm;
    next.p[1] += step * a[1] / norm;
  }
  next.p[0] = std::clamp(next.p[0], -kPointMassBound, kPointMassBound);
  next.p[1] = std::clamp(next.p[1], -kPointMassBound, kPointMassBound);
  return next;
}

std::vector<double> ArmState::flatten() const {
  return {q[0], q[1], q[2], qd[0], qd[1], qd[2], f[0], f[1]};
}

PointMassEnv::PointMassEnv(TaskSpec spec) : spec_(std::move(spec)) {
  if (spec_.horizon < 1) throw ContractError("PointMassEnv: horizon must be >= 1");
}

std::vector<double> PointMassEnv::reset(Rng& rng) {
  s_.p[0] = rng.uniform(-kPointMassStartBox, kPointMassStartBox);
  s_.p[1] = rng.uniform(-kPointMassStartBox, kPointMassStartBox);
  t_ = 0;
  return {s_.p[0], s_.p[1]};
}

StepResult PointMassEnv::step(const std::vector<double>& action) {
  if (action.size() != 2 || !std::isfinite(action[0]) || !std::isfinite(action[1])) {
    throw ContractError("PointMassEnv::step: bad action");
  }
  s_ = point_mass_step(s_, {action[0], action[1]});
  ++t_;
  StepResult out;
  out.state = {s_.p[0], s_.p[1]};
  out.info.reward_terms.position = -std::hypot(s_.p[0] - spec_.goal_x, s_.p[1] - spec_.goal_y);
  out.reward = out.info.reward_terms.total();
  out.done = t_ >= spec_.horizon;
  return out;
}

ArmEnv::ArmEnv(TaskSpec spec) : spec_(std::move(spec)) {
  if (spec_.horizon < 1) throw ContractError("ArmEnv: horizon must be >= 1");
}

std::vector<double> ArmEnv::action_bound() const {
  return {ArmModel::kTorqueMax[0], ArmModel::kTorqueMax[1], ArmModel::kTorqueMax[2]};
}

ArmState ArmEnv::sample_initial_state(Rng& rng) {
  ArmState s;
  for (int tries = 0; tries < 1000; ++tries) {
    s.q[0] = rng.uniform(0.4, 3.14159265358979 - 0.4);
    s.q[1] = rng.uniform(-2.0, 2.0);
    s.q[2] = rng.uniform(-2.0, 2.0);
    const FkResult fk = forward_kinematics(s.q);
    if (fk.position[1] >= 0.05) {
      s.qd = {0.0, 0.0, 0.0};
      s.f = {0.0, 0.0};
      return s;
    }
  }
  // the acceptance region is large; practically unreachable
  s.q = {1.5707963267948966, 0.0, 0.0};
  s.qd = {0.0, 0.0, 0.0};
  s.f = {0.0, 0.0};
  return s;
}

std::vector<double> ArmEnv::reset(Rng& rng) {
  s_ = sample_initial_state(rng);
  t_ = 0;
  return s_.flatten();
}

StepResult ArmEnv::step(const std::vector<double>& action) {
  if (action.size() != 3) throw ContractError("ArmEnv::step: action must be 3 torques");
  Vec3 tau;
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(action[i])) throw ContractError("ArmEnv::step: non-finite torque");
    tau[i] = std::clamp(action[i], -ArmModel::kTorqueMax[i], ArmModel::kTorqueMax[i]);
  }
  ArmSimState sim{s_.q, s_.qd};
  Vec2 f{0.0, 0.0};
  for (int sub = 0; sub < ArmModel::kSubsteps; ++sub) {
    f = arm_substep(sim, tau, ArmModel::kDt, /*gravity_comp=*/true, /*with_contact=*/true);
  }
  s_.q = sim.q;
  s_.qd = sim.qd;
  const FkResult fk = forward_kinematics(s_.q);
  const Vec2 v = ee_velocity(s_.q, s_.qd);
  s_.f = contact_force(fk.position, v);
  ++t_;

  StepResult out;
  out.state = s_.flatten();
  out.info.reward_terms = task_reward(spec_, fk, v, s_.f);
  out.info.contact = s_.f[1] > 0.0;
  out.reward = out.info.reward_terms.total();
  out.done = t_ >= spec_.horizon;
  return out;
}

std::unique_ptr<Env> make_env(const TaskSpec& spec) {
  if (spec.env == EnvKind::kPointMass) return std::make_unique<PointMassEnv>(spec);
  return std::make_unique<ArmEnv>(spec);
}

}  // namespace lep::envs
