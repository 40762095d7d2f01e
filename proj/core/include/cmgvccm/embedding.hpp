#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cmgvccm/reduced_model.hpp"

namespace vccm {

/// Which virtual system generates the differential dynamics.
///  kLpv: chi_dot = A(sigma(x)) chi + B mu, linear in (chi, mu);
///  kNpv: chi_dot = A(angles(x), chi2) chi + B mu, quadratic velocity
///        nonlinearity kept in the virtual state.
enum class EmbeddingKind { kLpv, kNpv };

const char* to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(const std::string& s);

struct SchedulingAxis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::string unit;
};

struct SchedulingRange {
  std::vector<SchedulingAxis> axes;
  int dim() const { return static_cast<int>(axes.size()); }
};

/// Operating ranges used for the gyroscope designs: gimbal angles within
/// +-pi/3 rad, fly-wheel rate in [30, 60] rad/s, gimbal rates in [-1, 1]
/// rad/s.
SchedulingRange default_scheduling_range(OperatingMode mode);

/// Uniform rectangular grid over a scheduling range, endpoints included,
/// points enumerated in lexicographic order (last axis fastest).
class Grid {
 public:
  Grid() = default;
  Grid(SchedulingRange range, int points_per_axis);

  int dim() const { return range_.dim(); }
  int points_per_axis() const { return points_per_axis_; }
  int size() const { return size_; }
  const SchedulingRange& range() const { return range_; }

  double axis_value(int axis, int idx) const;
  Eigen::VectorXd point(int k) const;

  /// Clamps sigma axis-wise into the range; true if anything moved.
  bool clamp(Eigen::VectorXd& sigma) const;

  /// Multilinear interpolation stencil for in-range sigma: flat vertex
  /// indices of the containing cell with their weights (sum to 1).
  void interpolation_stencil(const Eigen::VectorXd& sigma,
                             std::vector<std::pair<int, double>>* out) const;

 private:
  SchedulingRange range_;
  int points_per_axis_ = 0;
  int size_ = 0;
  std::vector<int> strides_;
};

Grid build_grid(const SchedulingRange& range, int points_per_axis);

/// Differential dynamics of an (augmented) virtual system at one scheduling
/// point. Plain stabilization problems carry only (A, B); performance
/// problems add the disturbance channel and weighted outputs.
struct DifferentialMatrices {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd B_d;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
  Eigen::MatrixXd D_d;
  bool augmented() const { return B_d.size() > 0; }
};

/// Matrices of the LPV virtual system at sigma = (angles, vel):
/// A = [0 E; 0 -H^{-1}(C + F_v)], B = [0; H^{-1} K_m].
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> lpv_matrices(
    const ReducedModel& model, const Eigen::VectorXd& sigma);

/// Differential dynamics of the NPV virtual system. The Coriolis term is
/// quadratic in the virtual velocity with symmetric kernels, so the
/// velocity block carries 2C: A = [0 E; 0 -H^{-1}(2C + F_v)]; B as LPV.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> npv_differential(
    const ReducedModel& model, const Eigen::VectorXd& sigma);

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> differential_matrices(
    EmbeddingKind kind, const ReducedModel& model, const Eigen::VectorXd& sigma);

/// Disturbance input map of the performance-augmented plant:
/// OM-1 d enters all three velocity channels, OM-2 the fly-wheel rate only.
Eigen::MatrixXd disturbance_map(const ReducedModel& model);

/// Performance augmentation with static weights: z = (W1 dchi, W2 dmu),
/// C = [W1; 0], D = [0; W2], D_d = 0.
DifferentialMatrices augment(std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ab,
                             const ReducedModel& model,
                             const Eigen::MatrixXd& W1,
                             const Eigen::MatrixXd& W2);

/// Vector field F(chi, x, mu) of the virtual system; satisfies
/// F(x, x, u) = f(x, u).
Eigen::VectorXd virtual_field(EmbeddingKind kind, const ReducedModel& model,
                              const Eigen::VectorXd& chi,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& extras,
                              const Eigen::VectorXd& mu);

/// Default static performance weights of the two designs.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> default_weights(OperatingMode mode);

}  // namespace vccm
