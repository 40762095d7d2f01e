#include "cmgvccm/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "cmgvccm/errors.hpp"

namespace vccm {

const char* to_string(EmbeddingKind kind) {
  return kind == EmbeddingKind::kLpv ? "LPV" : "NPV";
}

EmbeddingKind embedding_kind_from_string(const std::string& s) {
  if (s == "LPV" || s == "lpv") return EmbeddingKind::kLpv;
  if (s == "NPV" || s == "npv") return EmbeddingKind::kNpv;
  throw ConfigError("unknown embedding kind: " + s);
}

SchedulingRange default_scheduling_range(OperatingMode mode) {
  const double third_pi = M_PI / 3.0;
  SchedulingRange r;
  if (mode == OperatingMode::kOm1) {
    r.axes = {{"q2", -third_pi, third_pi, "rad"},
              {"q3", -third_pi, third_pi, "rad"},
              {"qd1", 30.0, 60.0, "rad/s"},
              {"qd2", -1.0, 1.0, "rad/s"},
              {"qd3", -1.0, 1.0, "rad/s"}};
  } else {
    r.axes = {{"q2", -third_pi, third_pi, "rad"},
              {"qd1", 30.0, 60.0, "rad/s"},
              {"qd2", -1.0, 1.0, "rad/s"},
              {"qd4", -1.0, 1.0, "rad/s"}};
  }
  return r;
}

Grid::Grid(SchedulingRange range, int points_per_axis)
    : range_(std::move(range)), points_per_axis_(points_per_axis) {
  if (points_per_axis_ < 2) {
    throw ConfigError("grid needs at least 2 points per axis");
  }
  for (const auto& axis : range_.axes) {
    if (!(axis.lo < axis.hi)) {
      throw ConfigError("scheduling axis '" + axis.name +
                        "' has empty range");
    }
  }
  size_ = 1;
  strides_.assign(range_.dim(), 0);
  for (int a = range_.dim() - 1; a >= 0; --a) {
    strides_[a] = size_;
    size_ *= points_per_axis_;
  }
}

double Grid::axis_value(int axis, int idx) const {
  const auto& ax = range_.axes[axis];
  return ax.lo + (ax.hi - ax.lo) * idx / (points_per_axis_ - 1);
}

Eigen::VectorXd Grid::point(int k) const {
  Eigen::VectorXd p(dim());
  for (int a = 0; a < dim(); ++a) {
    const int idx = (k / strides_[a]) % points_per_axis_;
    p[a] = axis_value(a, idx);
  }
  return p;
}

bool Grid::clamp(Eigen::VectorXd& sigma) const {
  bool clamped = false;
  for (int a = 0; a < dim(); ++a) {
    const auto& ax = range_.axes[a];
    const double v = std::clamp(sigma[a], ax.lo, ax.hi);
    if (v != sigma[a]) {
      sigma[a] = v;
      clamped = true;
    }
  }
  return clamped;
}

void Grid::interpolation_stencil(
    const Eigen::VectorXd& sigma,
    std::vector<std::pair<int, double>>* out) const {
  const int p = dim();
  // Per axis: lower node index and fractional position within the cell.
  std::vector<int> lo(p);
  std::vector<double> frac(p);
  for (int a = 0; a < p; ++a) {
    const auto& ax = range_.axes[a];
    const double step = (ax.hi - ax.lo) / (points_per_axis_ - 1);
    double rel = (sigma[a] - ax.lo) / step;
    int i = static_cast<int>(std::floor(rel));
    i = std::clamp(i, 0, points_per_axis_ - 2);
    lo[a] = i;
    frac[a] = std::clamp(rel - i, 0.0, 1.0);
  }
  out->clear();
  out->reserve(std::size_t{1} << p);
  for (int corner = 0; corner < (1 << p); ++corner) {
    int flat = 0;
    double w = 1.0;
    for (int a = 0; a < p; ++a) {
      const int bit = (corner >> a) & 1;
      flat += (lo[a] + bit) * strides_[a];
      w *= bit ? frac[a] : (1.0 - frac[a]);
    }
    if (w != 0.0) out->emplace_back(flat, w);
  }
}

Grid build_grid(const SchedulingRange& range, int points_per_axis) {
  return Grid(range, points_per_axis);
}

namespace {

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> embedding_matrices(
    const ReducedModel& model, const Eigen::VectorXd& sigma,
    double coriolis_factor) {
  const int n = model.state_dim();
  const int m = model.input_dim();
  const int np = model.pos_dim();
  const Eigen::VectorXd angles = sigma.head(model.angle_dim());
  const Eigen::Vector3d vel = sigma.tail(ReducedModel::kVelDim);

  const Eigen::Matrix3d h = model.inertia(angles);
  const Eigen::PartialPivLU<Eigen::Matrix3d> lu(h);
  const Eigen::Matrix3d damping =
      coriolis_factor * model.coriolis(angles, vel) + model.friction();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.topRightCorner(np, 3) = model.selector();
  a.bottomRightCorner(3, 3) = -lu.solve(damping);

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, m);
  b.bottomRows(3) = lu.solve(model.motor_map());
  return {std::move(a), std::move(b)};
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> lpv_matrices(
    const ReducedModel& model, const Eigen::VectorXd& sigma) {
  return embedding_matrices(model, sigma, 1.0);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> npv_differential(
    const ReducedModel& model, const Eigen::VectorXd& sigma) {
  return embedding_matrices(model, sigma, 2.0);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> differential_matrices(
    EmbeddingKind kind, const ReducedModel& model,
    const Eigen::VectorXd& sigma) {
  return kind == EmbeddingKind::kLpv ? lpv_matrices(model, sigma)
                                     : npv_differential(model, sigma);
}

Eigen::MatrixXd disturbance_map(const ReducedModel& model) {
  const int n = model.state_dim();
  if (model.mode() == OperatingMode::kOm1) {
    Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(n, 3);
    bd.bottomRows(3).setIdentity();
    return bd;
  }
  Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(n, 1);
  bd(1, 0) = 1.0;
  return bd;
}

DifferentialMatrices augment(std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ab,
                             const ReducedModel& model,
                             const Eigen::MatrixXd& W1,
                             const Eigen::MatrixXd& W2) {
  const int n = model.state_dim();
  const int m = model.input_dim();
  if (W1.rows() != n || W1.cols() != n || W2.rows() != m || W2.cols() != m) {
    throw Error("weight shapes do not match state/input dimensions");
  }
  DifferentialMatrices dm;
  dm.A = std::move(ab.first);
  dm.B = std::move(ab.second);
  dm.B_d = disturbance_map(model);
  const int nd = static_cast<int>(dm.B_d.cols());
  const int nz = n + m;
  dm.C = Eigen::MatrixXd::Zero(nz, n);
  dm.C.topRows(n) = W1;
  dm.D = Eigen::MatrixXd::Zero(nz, m);
  dm.D.bottomRows(m) = W2;
  dm.D_d = Eigen::MatrixXd::Zero(nz, nd);
  return dm;
}

Eigen::VectorXd virtual_field(EmbeddingKind kind, const ReducedModel& model,
                              const Eigen::VectorXd& chi,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& extras,
                              const Eigen::VectorXd& mu) {
  Eigen::VectorXd sigma(model.angle_dim() + ReducedModel::kVelDim);
  sigma.head(model.angle_dim()) = model.scheduling_angles(x, extras);
  // LPV schedules on the real velocities, NPV on the virtual ones.
  sigma.tail(3) =
      kind == EmbeddingKind::kLpv ? x.tail(3).eval() : chi.tail(3).eval();
  const auto [a, b] = lpv_matrices(model, sigma);
  return a * chi + b * mu;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> default_weights(
    OperatingMode mode) {
  if (mode == OperatingMode::kOm1) {
    return {Eigen::MatrixXd::Identity(5, 5),
            0.2 * Eigen::MatrixXd::Identity(3, 3)};
  }
  Eigen::VectorXd w1(4);
  w1 << 5.0, 0.1, 1.0, 4.0;
  Eigen::VectorXd w2(2);
  w2 << 20.0, 10.0;
  return {w1.asDiagonal().toDenseMatrix(), w2.asDiagonal().toDenseMatrix()};
}

}  // namespace vccm
