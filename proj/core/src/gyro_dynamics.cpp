#include "cmgvccm/gyro_dynamics.hpp"

#include <cmath>

#include "cmgvccm/errors.hpp"

namespace vccm {

namespace {

// Mirrors the strict upper triangle onto the lower one.
inline Eigen::Matrix4d mirror(Eigen::Matrix4d m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  }
  return m;
}

}  // namespace

Eigen::Matrix4d inertia_matrix(const CmgParams& p, const Eigen::Vector4d& q) {
  const double s2 = std::sin(q[1]), c2 = std::cos(q[1]);
  const double s3 = std::sin(q[2]), c3 = std::cos(q[2]);

  Eigen::Matrix4d ha = Eigen::Matrix4d::Zero();
  ha(3, 3) = p.K_A;

  Eigen::Matrix4d hb = Eigen::Matrix4d::Zero();
  hb(2, 2) = p.J_B;
  hb(3, 3) = p.I_B * s3 * s3 + p.K_B * c3 * c3;

  Eigen::Matrix4d hc = Eigen::Matrix4d::Zero();
  hc(1, 1) = p.I_C;
  hc(1, 3) = -p.I_C * s3;
  hc(2, 2) = p.J_C * c2 * c2 + p.K_C * s2 * s2;
  hc(2, 3) = p.alpha1() * s2 * c2 * c3;
  hc(3, 3) = p.I_C * s3 * s3 + (p.J_C * s2 * s2 + p.K_C * c2 * c2) * c3 * c3;

  Eigen::Matrix4d hd = Eigen::Matrix4d::Zero();
  hd(0, 0) = p.J_D;
  hd(0, 2) = p.J_D * c2;
  hd(0, 3) = p.J_D * s2 * c3;
  hd(1, 1) = p.I_D;
  hd(1, 3) = -p.I_D * s3;
  hd(2, 2) = p.I_D * s2 * s2 + p.J_D * c2 * c2;
  hd(2, 3) = p.alpha2() * s2 * c2 * c3;
  hd(3, 3) = p.I_D * s3 * s3 + (p.I_D * c2 * c2 + p.J_D * s2 * s2) * c3 * c3;

  return ha + mirror(hb) + mirror(hc) + mirror(hd);
}

std::array<Eigen::Matrix4d, 4> coriolis_kernels(const CmgParams& p,
                                                const Eigen::Vector4d& q) {
  const double s2 = std::sin(q[1]), c2 = std::cos(q[1]);
  const double s3 = std::sin(q[2]), c3 = std::cos(q[2]);
  const double jd = p.J_D;
  const double a3 = p.alpha3(), a4 = p.alpha4(), a5 = p.alpha5();

  // Christoffel kernels of H(q): Gamma^i[k][j] =
  //   1/2 (dH_ij/dq_k + dH_ik/dq_j - dH_jk/dq_i).
  Eigen::Matrix4d g1 = Eigen::Matrix4d::Zero();
  g1(1, 2) = -jd * s2;
  g1(1, 3) = jd * c2 * c3;
  g1(2, 3) = -jd * s2 * s3;

  Eigen::Matrix4d g2 = Eigen::Matrix4d::Zero();
  g2(0, 2) = jd * s2;
  g2(0, 3) = -jd * c2 * c3;
  g2(2, 2) = -2.0 * a3 * s2 * c2;
  g2(2, 3) = a3 * (c2 * c2 - s2 * s2) * c3 - a4 * c3;
  g2(3, 3) = 2.0 * a3 * s2 * c2 * c3 * c3;

  Eigen::Matrix4d g3 = Eigen::Matrix4d::Zero();
  g3(0, 1) = -jd * s2;
  g3(0, 3) = jd * s2 * s3;
  g3(1, 2) = 2.0 * a3 * s2 * c2;
  g3(1, 3) = a4 * c3 + a3 * (s2 * s2 - c2 * c2) * c3;
  g3(3, 3) = -2.0 * (a5 + a3 * s2 * s2) * c3 * s3;

  Eigen::Matrix4d g4 = Eigen::Matrix4d::Zero();
  g4(0, 1) = jd * c2 * c3;
  g4(0, 2) = -jd * s2 * s3;
  g4(1, 2) = a3 * (s2 * s2 - c2 * c2) * c3 - a4 * c3;
  g4(1, 3) = -2.0 * a3 * s2 * c2 * c3 * c3;
  g4(2, 2) = 2.0 * a3 * s2 * c2 * s3;
  g4(2, 3) = 2.0 * (a5 + a3 * s2 * s2) * c3 * s3;

  return {0.5 * mirror(g1), 0.5 * mirror(g2), 0.5 * mirror(g3),
          0.5 * mirror(g4)};
}

Eigen::Matrix4d coriolis_matrix(const CmgParams& p, const Eigen::Vector4d& q,
                                const Eigen::Vector4d& qdot) {
  const auto kernels = coriolis_kernels(p, q);
  Eigen::Matrix4d c;
  for (int i = 0; i < 4; ++i) c.row(i) = qdot.transpose() * kernels[i];
  return c;
}

Eigen::Vector4d full_dynamics(const CmgParams& p, const GyroState& state,
                              const Eigen::Vector4d& currents) {
  const Eigen::Matrix4d h = inertia_matrix(p, state.q);
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(h, Eigen::ComputeFullU |
                                                     Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(3) > 0.0) || sv(0) / sv(3) > kInertiaConditionLimit) {
    throw SingularInertiaError("inertia matrix ill-conditioned at q2=" +
                               std::to_string(state.q[1]) +
                               ", q3=" + std::to_string(state.q[2]));
  }
  const Eigen::Matrix4d c = coriolis_matrix(p, state.q, state.qdot);
  const Eigen::Vector4d rhs =
      p.k_m.cwiseProduct(currents) -
      (c * state.qdot + p.f_v.cwiseProduct(state.qdot));
  return svd.solve(rhs);
}

}  // namespace vccm
