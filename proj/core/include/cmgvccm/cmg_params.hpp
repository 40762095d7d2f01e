#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vccm {

/// Physical parameters of the 3-DOF control moment gyroscope.
///
/// The device has three gimbal frames A (outer), B, C and a symmetric
/// fly-wheel D. I, J, K are the principal moments of inertia (kg m^2)
/// about the body x, y, z axes. Joints are ordered (1,2,3,4) =
/// (fly-wheel D, gimbal C, gimbal B, frame A); f_v holds the viscous
/// friction coefficients (N m s/rad) and k_m the motor constants (N m/A)
/// in that joint order.
struct CmgParams {
  double I_A, J_A, K_A;
  double I_B, J_B, K_B;
  double I_C, J_C, K_C;
  double I_D, J_D, K_D;
  Eigen::Vector4d f_v;
  Eigen::Vector4d k_m;

  // Grouped inertia constants appearing in the Coriolis matrix. Derived on
  // the fly so they can never drift from the stored moments.
  double alpha1() const { return J_C - K_C; }
  double alpha2() const { return J_D - I_D; }
  double alpha3() const { return I_D - J_C - J_D + K_C; }
  double alpha4() const { return I_C + I_D; }
  double alpha5() const { return I_B + I_C - K_B - K_C; }

  /// Nominal parameter set of the lab device.
  static CmgParams nominal();

  /// Reads parameters from a JSON file. Shape errors throw ConfigError;
  /// physical plausibility is checked separately by validate().
  static CmgParams load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Returns a list of physical-plausibility violations (empty when sound):
  /// all twelve moments strictly positive, motor constants positive,
  /// friction nonnegative.
  std::vector<std::string> validate() const;
};

}  // namespace vccm
