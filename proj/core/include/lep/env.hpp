#pragma once

#include <memory>
#include <vector>

#include "lep/rng.hpp"
#include "lep/tasks.hpp"

namespace lep::envs {

struct PointMassState {
  Vec2 p{};
};

// Fixed-speed kinematics: p' = p + v dt * a/|a|, clamped to the
// workspace box; zero action holds position.
PointMassState point_mass_step(const PointMassState& s, const Vec2& a);

constexpr double kPointMassSpeed = 1.0;     // m/s
constexpr double kPointMassDt = 0.1;        // s
constexpr double kPointMassBound = 5.0;     // workspace [-5,5]^2
constexpr double kPointMassStartBox = 4.0;  // reset box

struct ArmState {
  Vec3 q{};
  Vec3 qd{};
  Vec2 f{};

  std::vector<double> flatten() const;
};

struct StepInfo {
  bool contact = false;
  RewardBreakdown reward_terms;
};

struct StepResult {
  std::vector<double> state;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Episodic environment behind a value-style interface; one instance per
// worker, never shared.
class Env {
 public:
  virtual ~Env() = default;
  virtual const TaskSpec& spec() const = 0;
  virtual int state_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual std::vector<double> action_bound() const = 0;
  virtual std::vector<double> reset(Rng& rng) = 0;
  virtual StepResult step(const std::vector<double>& action) = 0;
  virtual int t() const = 0;
};

class PointMassEnv final : public Env {
 public:
  explicit PointMassEnv(TaskSpec spec);
  const TaskSpec& spec() const override { return spec_; }
  int state_dim() const override { return 2; }
  int action_dim() const override { return 2; }
  std::vector<double> action_bound() const override { return {1.0, 1.0}; }
  std::vector<double> reset(Rng& rng) override;
  StepResult step(const std::vector<double>& action) override;
  int t() const override { return t_; }

 private:
  TaskSpec spec_;
  PointMassState s_;
  int t_ = 0;
};

class ArmEnv final : public Env {
 public:
  explicit ArmEnv(TaskSpec spec);
  const TaskSpec& spec() const override { return spec_; }
  int state_dim() const override { return 8; }
  int action_dim() const override { return 3; }
  std::vector<double> action_bound() const override;
  std::vector<double> reset(Rng& rng) override;
  StepResult step(const std::vector<double>& action) override;
  int t() const override { return t_; }

  const ArmState& arm_state() const { return s_; }
  // Uniform joint-box sample rejected until the end-effector clears the
  // table; qd = 0.
  static ArmState sample_initial_state(Rng& rng);

 private:
  TaskSpec spec_;
  ArmState s_;
  int t_ = 0;
};

std::unique_ptr<Env> make_env(const TaskSpec& spec);

}  // namespace lep::envs
