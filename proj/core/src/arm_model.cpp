#include "lep/arm_model.hpp"

#include <cmath>

#include "lep/errors.hpp"

namespace lep::envs {

namespace {

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double k, const Vec2& a) { return {k * a[0], k * a[1]}; }
inline Vec2 perp(const Vec2& a) { return {-a[1], a[0]}; }  // z x a
inline double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

struct Chain {
  Vec3 phi;       // absolute link angles
  Vec2 joint[4];  // joint positions, joint[3] = end-effector
  Vec2 unit[3];   // link direction cosines
};

Chain chain_of(const Vec3& q) {
  Chain ch;
  double acc = 0.0;
  ch.joint[0] = {0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    acc += q[i];
    ch.phi[i] = acc;
    ch.unit[i] = {std::cos(acc), std::sin(acc)};
    ch.joint[i + 1] = ch.joint[i] + ArmModel::kLinkLength[i] * ch.unit[i];
  }
  return ch;
}

}  // namespace

FkResult forward_kinematics(const Vec3& q) {
  const Chain ch = chain_of(q);
  return {ch.joint[3], ch.phi[2]};
}

void ee_jacobian(const Vec3& q, double jac[2][3]) {
  const Chain ch = chain_of(q);
  for (int j = 0; j < 3; ++j) {
    const Vec2 r = ch.joint[3] - ch.joint[j];
    jac[0][j] = -r[1];
    jac[1][j] = r[0];
  }
}

Vec2 ee_velocity(const Vec3& q, const Vec3& qd) {
  double jac[2][3];
  ee_jacobian(q, jac);
  Vec2 v{0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    v[0] += jac[0][j] * qd[j];
    v[1] += jac[1][j] * qd[j];
  }
  return v;
}

Vec3 inverse_dynamics(const Vec3& q, const Vec3& qd, const Vec3& qdd, bool with_gravity, const Vec2& f_ext) {
  const Chain ch = chain_of(q);
  const Vec2 g_acc = {0.0, with_gravity ? -ArmModel::kGravity : 0.0};

  // forward pass: angular rates/accelerations and linear accelerations
  Vec3 w{}, alpha{};
  double wa = 0.0, aa = 0.0;
  for (int i = 0; i < 3; ++i) {
    wa += qd[i];
    aa += qdd[i];
    w[i] = wa;
    alpha[i] = aa;
  }
  Vec2 a_joint = {0.0, 0.0};
  Vec2 a_com[3];
  for (int i = 0; i < 3; ++i) {
    const Vec2 r_vec = (ArmModel::kLinkLength[i] * 0.5) * ch.unit[i];
    const Vec2 l_vec = ArmModel::kLinkLength[i] * ch.unit[i];
    a_com[i] = a_joint + alpha[i] * perp(r_vec) - (w[i] * w[i]) * r_vec;
    a_joint = a_joint + alpha[i] * perp(l_vec) - (w[i] * w[i]) * l_vec;
  }

  // backward pass: joint forces and torques
  Vec3 tau{};
  Vec2 f_next = {0.0, 0.0};  // force on link i+1 from link i
  double n_next = 0.0;
  for (int i = 2; i >= 0; --i) {
    const Vec2 com = ch.joint[i] + (ArmModel::kLinkLength[i] * 0.5) * ch.unit[i];
    Vec2 f_tip = {0.0, 0.0};
    if (i == 2) f_tip = f_ext;
    const Vec2 f_inertial = ArmModel::kLinkMass[i] * (a_com[i] - g_acc);
    const Vec2 f_i = f_inertial + f_next - f_tip;
    double n_i = ArmModel::link_inertia(i) * alpha[i] + n_next;
    n_i -= cross(ch.joint[i] - com, f_i);
    n_i += cross(ch.joint[i + 1] - com, f_next);
    if (i == 2) n_i -= cross(ch.joint[3] - com, f_tip);
    tau[i] = n_i;
    f_next = f_i;
    n_next = n_i;
  }
  return tau;
}

Vec3 gravity_torque(const Vec3& q) { return inverse_dynamics(q, {}, {}, true, {0.0, 0.0}); }

Mat3 mass_matrix(const Vec3& q) {
  Mat3 m{};
  for (int j = 0; j < 3; ++j) {
    Vec3 e{};
    e[j] = 1.0;
    const Vec3 col = inverse_dynamics(q, {}, e, false, {0.0, 0.0});
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
  }
  return m;
}

Vec3 solve3(const Mat3& m, const Vec3& rhs) {
  double a[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
    a[i][3] = rhs[i];
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) throw ContractError("solve3: singular mass matrix");
    if (pivot != col) {
      for (int j = col; j < 4; ++j) std::swap(a[pivot][j], a[col][j]);
    }
    for (int r = col + 1; r < 3; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[r][j] -= factor * a[col][j];
    }
  }
  Vec3 x{};
  for (int i = 2; i >= 0; --i) {
    double acc = a[i][3];
    for (int j = i + 1; j < 3; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

Vec2 contact_force(const Vec2& ee_pos, const Vec2& ee_vel) {
  const double d = std::max(0.0, ArmModel::kTableY - ee_pos[1]);
  if (d <= 0.0) return {0.0, 0.0};
  const double fn = std::max(0.0, ArmModel::kContactKp * d - ArmModel::kContactKd * ee_vel[1]);
  const double ft = -ArmModel::kFriction * fn * std::tanh(ee_vel[0] / ArmModel::kFrictionVelScale);
  return {ft, fn};
}

Vec2 arm_substep(ArmSimState& s, const Vec3& tau_cmd, double dt, bool gravity_comp, bool with_contact) {
  Vec2 f = {0.0, 0.0};
  if (with_contact) {
    const FkResult fk = forward_kinematics(s.q);
    f = contact_force(fk.position, ee_velocity(s.q, s.qd));
  }
  Vec3 tau_applied = tau_cmd;
  if (gravity_comp) {
    const Vec3 g = gravity_torque(s.q);
    for (int i = 0; i < 3; ++i) tau_applied[i] += g[i];
  }
  const Vec3 bias = inverse_dynamics(s.q, s.qd, {}, true, f);
  Vec3 residual;
  for (int i = 0; i < 3; ++i) residual[i] = tau_applied[i] - bias[i];
  const Vec3 qdd = solve3(mass_matrix(s.q), residual);
  for (int i = 0; i < 3; ++i) {
    s.qd[i] += dt * qdd[i];
    s.qd[i] = std::clamp(s.qd[i], -ArmModel::kVelocityMax, ArmModel::kVelocityMax);
    s.q[i] += dt * s.qd[i];
  }
  return f;
}

double mechanical_energy(const ArmSimState& s) {
  const Chain ch = chain_of(s.q);
  double w = 0.0;
  Vec2 v_joint = {0.0, 0.0};
  double e = 0.0;
  for (int i = 0; i < 3; ++i) {
    w += s.qd[i];
    const Vec2 r_vec = (ArmModel::kLinkLength[i] * 0.5) * ch.unit[i];
    const Vec2 l_vec = ArmModel::kLinkLength[i] * ch.unit[i];
    const Vec2 v_com = v_joint + w * perp(r_vec);
    const Vec2 com = ch.joint[i] + r_vec;
    e += 0.5 * ArmModel::kLinkMass[i] * (v_com[0] * v_com[0] + v_com[1] * v_com[1]);
    e += 0.5 * ArmModel::link_inertia(i) * w * w;
    e += ArmModel::kLinkMass[i] * ArmModel::kGravity * com[1];
    v_joint = v_joint + w * perp(l_vec);
  }
  return e;
}

}  // namespace lep::envs
