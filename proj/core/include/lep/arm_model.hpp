#pragma once

#include <array>

namespace lep::envs {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// 3-link planar torque-controlled arm, base pinned at the origin, table
// along y = 0. Uniform thin rods, revolute joints about z, gravity -y.
struct ArmModel {
  static constexpr Vec3 kLinkLength = {1.0, 0.8, 0.4};
  static constexpr Vec3 kLinkMass = {1.5, 1.0, 0.5};
  static constexpr Vec3 kTorqueMax = {30.0, 20.0, 10.0};
  static constexpr double kGravity = 9.81;
  static constexpr double kVelocityMax = 20.0;  // rad/s clamp
  static constexpr double kDt = 0.01;           // integrator substep
  static constexpr int kSubsteps = 5;           // control period 0.05 s

  // penalty contact at the end-effector
  static constexpr double kTableY = 0.0;
  static constexpr double kContactKp = 5000.0;  // N/m
  static constexpr double kContactKd = 50.0;    // N s/m
  static constexpr double kFriction = 0.5;
  static constexpr double kFrictionVelScale = 0.01;  // m/s tanh knee

  static constexpr double link_inertia(int i) {
    return kLinkMass[i] * kLinkLength[i] * kLinkLength[i] / 12.0;
  }
};

struct FkResult {
  Vec2 position;
  double orientation;  // q1+q2+q3
};

FkResult forward_kinematics(const Vec3& q);

// End-effector position Jacobian (2x3): column j = z x (p_ee - p_joint_j).
void ee_jacobian(const Vec3& q, double jac[2][3]);

Vec2 ee_velocity(const Vec3& q, const Vec3& qd);

// Inverse dynamics tau = M(q) qdd + C(q,qd) qd + g(q) - J^T f_ext via a
// planar recursive Newton-Euler pass. f_ext is the contact force acting
// on the end-effector.
Vec3 inverse_dynamics(const Vec3& q, const Vec3& qd, const Vec3& qdd, bool with_gravity, const Vec2& f_ext);

Vec3 gravity_torque(const Vec3& q);
Mat3 mass_matrix(const Vec3& q);

Vec3 solve3(const Mat3& m, const Vec3& rhs);

// Spring-damper normal force with smooth tanh friction; identically zero
// without penetration.
Vec2 contact_force(const Vec2& ee_pos, const Vec2& ee_vel);

struct ArmSimState {
  Vec3 q{};
  Vec3 qd{};
};

// One semi-implicit Euler substep. tau_cmd is the commanded joint torque
// (already clamped by the caller); gravity compensation adds g(q) when
// enabled. Returns the contact force used during the substep.
Vec2 arm_substep(ArmSimState& s, const Vec3& tau_cmd, double dt, bool gravity_comp, bool with_contact);

double mechanical_energy(const ArmSimState& s);

}  // namespace lep::envs
