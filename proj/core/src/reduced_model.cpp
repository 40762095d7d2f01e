#include "cmgvccm/reduced_model.hpp"

#include <string>

#include "cmgvccm/errors.hpp"
#include "cmgvccm/gyro_dynamics.hpp"

namespace vccm {

const char* to_string(OperatingMode mode) {
  return mode == OperatingMode::kOm1 ? "OM1" : "OM2";
}

OperatingMode operating_mode_from_string(const std::string& s) {
  if (s == "OM1" || s == "om1") return OperatingMode::kOm1;
  if (s == "OM2" || s == "om2") return OperatingMode::kOm2;
  throw ConfigError("unknown operating mode: " + s);
}

namespace {

// Kept joint indices of the full model, in reduced order.
constexpr int kKeptOm1[3] = {0, 1, 2};
constexpr int kKeptOm2[3] = {0, 1, 3};

const int* kept_joints(OperatingMode mode) {
  return mode == OperatingMode::kOm1 ? kKeptOm1 : kKeptOm2;
}

Eigen::Vector4d full_angles(OperatingMode mode, const Eigen::VectorXd& angles) {
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  if (mode == OperatingMode::kOm1) {
    q[1] = angles[0];
    q[2] = angles[1];
  } else {
    q[1] = angles[0];
  }
  return q;
}

Eigen::Vector4d full_rates(OperatingMode mode, const Eigen::Vector3d& vel) {
  Eigen::Vector4d qd = Eigen::Vector4d::Zero();
  const int* kept = kept_joints(mode);
  for (int i = 0; i < 3; ++i) qd[kept[i]] = vel[i];
  return qd;
}

}  // namespace

ReducedModel::ReducedModel(const CmgParams& params, OperatingMode mode)
    : params_(params), mode_(mode) {
  const int* kept = kept_joints(mode);
  friction_.setZero();
  for (int i = 0; i < 3; ++i) friction_(i, i) = params_.f_v[kept[i]];
  if (mode == OperatingMode::kOm1) {
    motor_map_ = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) motor_map_(i, i) = params_.k_m[i];
    selector_ = Eigen::MatrixXd::Zero(2, 3);
    selector_(0, 1) = 1.0;
    selector_(1, 2) = 1.0;
  } else {
    motor_map_ = Eigen::MatrixXd::Zero(3, 2);
    motor_map_(0, 0) = params_.k_m[0];
    motor_map_(1, 1) = params_.k_m[1];
    selector_ = Eigen::MatrixXd::Zero(1, 3);
    selector_(0, 2) = 1.0;
  }
}

Eigen::Matrix3d ReducedModel::inertia(const Eigen::VectorXd& angles) const {
  const Eigen::Matrix4d h = inertia_matrix(params_, full_angles(mode_, angles));
  const int* kept = kept_joints(mode_);
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = h(kept[i], kept[j]);
  }
  return out;
}

Eigen::Matrix3d ReducedModel::coriolis(const Eigen::VectorXd& angles,
                                       const Eigen::Vector3d& vel) const {
  const Eigen::Matrix4d c = coriolis_matrix(params_, full_angles(mode_, angles),
                                            full_rates(mode_, vel));
  const int* kept = kept_joints(mode_);
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = c(kept[i], kept[j]);
  }
  return out;
}

Eigen::Vector3d ReducedModel::inertia_solve(const Eigen::VectorXd& angles,
                                            const Eigen::Vector3d& rhs) const {
  const Eigen::Matrix3d h = inertia(angles);
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU |
                                                     Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > kInertiaConditionLimit) {
    throw SingularInertiaError("reduced inertia ill-conditioned");
  }
  return svd.solve(rhs);
}

Eigen::VectorXd ReducedModel::scheduling_angles(
    const Eigen::VectorXd& x, const Eigen::VectorXd& extras) const {
  if (mode_ == OperatingMode::kOm1) return x.head(2);
  if (extras.size() < 1) {
    throw Error("OM-2 evaluation requires the measured q2 as an extra signal");
  }
  return extras.head(1);
}

Eigen::VectorXd ReducedModel::scheduling_point(
    const Eigen::VectorXd& x, const Eigen::VectorXd& extras) const {
  Eigen::VectorXd sigma(angle_dim() + kVelDim);
  sigma.head(angle_dim()) = scheduling_angles(x, extras);
  sigma.tail(kVelDim) = x.tail(kVelDim);
  return sigma;
}

Eigen::VectorXd ReducedModel::vector_field(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& extras) const {
  const Eigen::VectorXd angles = scheduling_angles(x, extras);
  const Eigen::Vector3d x2 = x.tail(3);
  const Eigen::Vector3d torque =
      motor_map_ * u - (coriolis(angles, x2) + friction_) * x2;
  Eigen::VectorXd xdot(state_dim());
  xdot.head(pos_dim()) = selector_ * x2;
  xdot.tail(3) = inertia_solve(angles, torque);
  return xdot;
}

}  // namespace vccm
