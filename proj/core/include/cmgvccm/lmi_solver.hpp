#pragma once

#include <vector>

#include <Eigen/Dense>

namespace vccm {

/// One affine matrix inequality F(x) = F0 + sum_i x_{vid[i]} Fi <= 0.
/// All coefficient matrices are symmetric and share the block dimension.
struct LmiBlock {
  Eigen::MatrixXd constant;
  std::vector<int> var_ids;
  std::vector<Eigen::MatrixXd> coeffs;
  int dim() const { return static_cast<int>(constant.rows()); }
};

/// Semidefinite feasibility system with two-level variable structure:
/// variables [0, num_shared) may appear in every block; the remaining
/// variables are grouped into equally sized clusters, and any block may
/// touch at most one cluster. Grid synthesis maps vech(W) to the shared
/// part and each grid point's vec(Y^k) to one cluster; the Newton systems
/// then decompose per cluster.
struct LmiSystem {
  int num_vars = 0;
  int num_shared = 0;
  int cluster_size = 0;  // 0: no clustered variables
  std::vector<LmiBlock> blocks;

  int num_clusters() const {
    return cluster_size == 0 ? 0 : (num_vars - num_shared) / cluster_size;
  }
  /// Throws Error if a block mixes clusters or an index is out of range.
  void check_structure() const;
};

struct FeasibilityOptions {
  /// Required strict margin: accepted iff max_j eigmax(F_j(x)) <= -margin.
  double margin = 1e-6;
  /// Comfort level at which the search stops early; must be <= -margin.
  double t_stop = -1e-3;
  double eta0 = 1.0;
  double eta_scale = 20.0;
  double eta_max = 1e13;
  int max_newton = 4000;
  /// Newton-decrement^2 / 2 threshold that ends a centering stage.
  double center_tol = 1e-4;
  bool verbose = false;
};

enum class FeasibilityStatus { kFeasible, kInfeasible, kNoConvergence };

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kNoConvergence;
  Eigen::VectorXd x;
  /// Achieved level: max_j eigmax(F_j(x)) <= t at the returned point.
  double t = 0.0;
  /// Certified lower bound on the optimal level (duality gap at the last
  /// centered iterate).
  double lower_bound = 0.0;
  int newton_steps = 0;
};

/// Phase-I barrier method for the min-max-eigenvalue problem
///   minimize t  s.t.  F_j(x) <= t I  for every block j,
/// following the central path of
///   eta * t - sum_j log det(t I - F_j(x)).
/// Deterministic: identical inputs produce identical iterates.
FeasibilityOutcome solve_lmi_feasibility(const LmiSystem& sys,
                                         const FeasibilityOptions& opts,
                                         const Eigen::VectorXd* warm_start =
                                             nullptr);

}  // namespace vccm
