#pragma once

#include <Eigen/Dense>

#include "cmgvccm/cmg_params.hpp"

namespace vccm {

enum class OperatingMode { kOm1, kOm2 };

const char* to_string(OperatingMode mode);
OperatingMode operating_mode_from_string(const std::string& s);

/// Reduction of the 4-DOF gyroscope to one operating mode.
///
///  OM-1: frame A locked (q4 = qd4 = 0, i4 = 0). Fully actuated;
///        x = (q2, q3, qd1, qd2, qd3), u = (i1, i2, i3).
///  OM-2: gimbal B locked (q3 = qd3 = 0, i3 = 0) and motor A off.
///        Under-actuated; x = (q4, qd1, qd2, qd4), u = (i1, i2). The angle
///        q2 is not part of x and enters as an external scheduling signal.
///
/// The reduced matrices are obtained from the full H, C, F_v, K_m by
/// deleting the locked joint's row/column (OM-1: joint 4; OM-2: joint 3,
/// and additionally columns 3-4 of K_m).
class ReducedModel {
 public:
  ReducedModel(const CmgParams& params, OperatingMode mode);

  OperatingMode mode() const { return mode_; }
  int state_dim() const { return mode_ == OperatingMode::kOm1 ? 5 : 4; }
  int input_dim() const { return mode_ == OperatingMode::kOm1 ? 3 : 2; }
  /// Configuration coordinates kept in x: (q2,q3) for OM-1, (q4) for OM-2.
  int pos_dim() const { return mode_ == OperatingMode::kOm1 ? 2 : 1; }
  /// Angles the reduced matrices depend on: (q2,q3) for OM-1, (q2) for OM-2.
  int angle_dim() const { return mode_ == OperatingMode::kOm1 ? 2 : 1; }
  /// Extra measured signals the evaluators need beyond x (OM-2: q2).
  int extras_dim() const { return mode_ == OperatingMode::kOm1 ? 0 : 1; }
  static constexpr int kVelDim = 3;

  Eigen::Matrix3d inertia(const Eigen::VectorXd& angles) const;
  Eigen::Matrix3d coriolis(const Eigen::VectorXd& angles,
                           const Eigen::Vector3d& vel) const;
  const Eigen::Matrix3d& friction() const { return friction_; }
  const Eigen::MatrixXd& motor_map() const { return motor_map_; }
  /// Selector E with xdot1 = E x2.
  const Eigen::MatrixXd& selector() const { return selector_; }

  /// Guarded solve of inertia(angles) * a = rhs.
  Eigen::Vector3d inertia_solve(const Eigen::VectorXd& angles,
                                const Eigen::Vector3d& rhs) const;

  Eigen::VectorXd scheduling_angles(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& extras) const;
  /// Scheduling point sigma = (angles, x2).
  Eigen::VectorXd scheduling_point(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& extras) const;

  /// xdot = (E x2, H^{-1} [K_m u - (C + F_v) x2]).
  Eigen::VectorXd vector_field(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& u,
                               const Eigen::VectorXd& extras) const;

  const CmgParams& params() const { return params_; }

 private:
  CmgParams params_;
  OperatingMode mode_;
  Eigen::Matrix3d friction_;
  Eigen::MatrixXd motor_map_;
  Eigen::MatrixXd selector_;
};

inline ReducedModel reduce(const CmgParams& params, OperatingMode mode) {
  return ReducedModel(params, mode);
}

}  // namespace vccm
