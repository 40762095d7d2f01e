#pragma once

#include <array>

#include <Eigen/Dense>

#include "cmgvccm/cmg_params.hpp"

namespace vccm {

/// Generalized angles q = (q1..q4) and rates of the full 4-DOF model.
struct GyroState {
  Eigen::Vector4d q;
  Eigen::Vector4d qdot;
};

/// Inertia matrix H(q) = H_A + H_B + H_C + H_D. Symmetric by construction;
/// depends on q only through q2 and q3.
Eigen::Matrix4d inertia_matrix(const CmgParams& p, const Eigen::Vector4d& q);

/// The four symmetric Coriolis kernels; row i of C(q, qdot) is
/// qdot^T Gamma^i(q).
std::array<Eigen::Matrix4d, 4> coriolis_kernels(const CmgParams& p,
                                                const Eigen::Vector4d& q);

Eigen::Matrix4d coriolis_matrix(const CmgParams& p, const Eigen::Vector4d& q,
                                const Eigen::Vector4d& qdot);

/// Accelerations from H(q) qddot + (C(q,qdot) + F_v) qdot = K_m i.
/// Throws SingularInertiaError when cond(H) exceeds the conditioning guard.
Eigen::Vector4d full_dynamics(const CmgParams& p, const GyroState& state,
                              const Eigen::Vector4d& currents);

/// Conditioning guard applied before every inertia solve.
inline constexpr double kInertiaConditionLimit = 1e8;

}  // namespace vccm
