#include "cmgvccm/lmi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "cmgvccm/errors.hpp"

namespace vccm {

void LmiSystem::check_structure() const {
  for (const auto& b : blocks) {
    if (b.var_ids.size() != b.coeffs.size()) {
      throw Error("LMI block: var/coefficient count mismatch");
    }
    int cluster = -1;
    for (std::size_t i = 0; i < b.var_ids.size(); ++i) {
      const int v = b.var_ids[i];
      if (v < 0 || v >= num_vars) throw Error("LMI block: variable id out of range");
      if (b.coeffs[i].rows() != b.dim() || b.coeffs[i].cols() != b.dim()) {
        throw Error("LMI block: coefficient dimension mismatch");
      }
      if (v >= num_shared) {
        if (cluster_size <= 0) throw Error("clustered variable without cluster layout");
        const int c = (v - num_shared) / cluster_size;
        if (cluster == -1) cluster = c;
        if (c != cluster) throw Error("LMI block touches more than one cluster");
      }
    }
  }
}

namespace {

struct BlockPlan {
  int cluster = -1;           // -1: shared-only block
  // For every coefficient: whether it is shared, its row index in the
  // global (Hgg) system or its offset inside the cluster system.
  std::vector<bool> is_shared;
  std::vector<int> pos;       // Hgg row (shared) or cluster offset
};

struct Workspace {
  std::vector<BlockPlan> plans;
  // Per-block scratch reused across iterations.
  std::vector<Eigen::MatrixXd> f_work;   // assembled F, then S
  std::vector<Eigen::LLT<Eigen::MatrixXd>> llts;
  std::vector<Eigen::MatrixXd> t_work;   // stacked T_i (nb+1 matrices)
  int total_dim = 0;
};

Workspace make_workspace(const LmiSystem& sys) {
  Workspace w;
  w.plans.reserve(sys.blocks.size());
  w.f_work.resize(sys.blocks.size());
  w.llts.resize(sys.blocks.size());
  w.t_work.resize(sys.blocks.size());
  for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
    const auto& b = sys.blocks[j];
    BlockPlan plan;
    const int nb = static_cast<int>(b.var_ids.size());
    plan.is_shared.resize(nb);
    plan.pos.resize(nb);
    for (int i = 0; i < nb; ++i) {
      const int v = b.var_ids[i];
      if (v < sys.num_shared) {
        plan.is_shared[i] = true;
        plan.pos[i] = v;
      } else {
        plan.is_shared[i] = false;
        plan.cluster = (v - sys.num_shared) / sys.cluster_size;
        plan.pos[i] = (v - sys.num_shared) % sys.cluster_size;
      }
    }
    w.plans.push_back(std::move(plan));
    w.f_work[j].resize(b.dim(), b.dim());
    w.t_work[j].resize(b.dim() * (nb + 1), b.dim());
    w.total_dim += b.dim();
  }
  return w;
}

void assemble(const LmiBlock& b, const Eigen::VectorXd& x, double t,
              Eigen::MatrixXd* s) {
  *s = -b.constant;
  for (std::size_t i = 0; i < b.var_ids.size(); ++i) {
    s->noalias() -= x[b.var_ids[i]] * b.coeffs[i];
  }
  s->diagonal().array() += t;
}

// Barrier value eta*t - sum log det S, or +inf outside the domain.
double barrier_value(const LmiSystem& sys, Workspace& w,
                     const Eigen::VectorXd& x, double t, double eta) {
  double f = eta * t;
  for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
    assemble(sys.blocks[j], x, t, &w.f_work[j]);
    w.llts[j].compute(w.f_work[j]);
    if (w.llts[j].info() != Eigen::Success) {
      return std::numeric_limits<double>::infinity();
    }
    f -= 2.0 * w.llts[j].matrixLLT().diagonal().array().log().sum();
  }
  return f;
}

}  // namespace

FeasibilityOutcome solve_lmi_feasibility(const LmiSystem& sys,
                                         const FeasibilityOptions& opts,
                                         const Eigen::VectorXd* warm_start) {
  sys.check_structure();
  Workspace w = make_workspace(sys);

  const int nv = sys.num_vars;
  const int ns = sys.num_shared;
  const int csz = sys.cluster_size;
  const int nclus = sys.num_clusters();
  const double margin = opts.margin;
  const double t_stop = std::min(opts.t_stop, -margin);

  Eigen::VectorXd x = warm_start ? *warm_start : Eigen::VectorXd::Zero(nv);
  if (x.size() != nv) throw Error("warm start has wrong dimension");

  // Start strictly above every block's largest eigenvalue.
  double t = -std::numeric_limits<double>::infinity();
  for (const auto& b : sys.blocks) {
    Eigen::MatrixXd f = b.constant;
    for (std::size_t i = 0; i < b.var_ids.size(); ++i) {
      f.noalias() += x[b.var_ids[i]] * b.coeffs[i];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        f, Eigen::EigenvaluesOnly);
    t = std::max(t, es.eigenvalues().maxCoeff());
  }
  t += std::max(1.0, 0.1 * std::abs(t));

  FeasibilityOutcome out;
  out.lower_bound = -std::numeric_limits<double>::infinity();

  double eta = opts.eta0;
  int newton = 0;

  Eigen::VectorXd grad(nv + 1);
  Eigen::MatrixXd hgg(ns + 1, ns + 1);
  std::vector<Eigen::MatrixXd> hcc(nclus);
  std::vector<Eigen::MatrixXd> hcg(nclus);
  std::vector<Eigen::LDLT<Eigen::MatrixXd>> hcc_fact(nclus);
  for (int c = 0; c < nclus; ++c) {
    hcc[c].resize(csz, csz);
    hcg[c].resize(csz, ns + 1);
  }
  Eigen::VectorXd dx(nv);
  Eigen::MatrixXd xsolve;  // scratch for triangular solves

  const auto finish = [&](FeasibilityStatus st) {
    out.status = st;
    out.x = x;
    out.t = t;
    out.newton_steps = newton;
    return out;
  };

  while (newton < opts.max_newton) {
    // ---- centering stage at the current eta ----
    bool centered = false;
    while (newton < opts.max_newton) {
      ++newton;
      grad.setZero();
      hgg.setZero();
      for (int c = 0; c < nclus; ++c) {
        hcc[c].setZero();
        hcg[c].setZero();
      }
      double fval = eta * t;
      for (std::size_t j = 0; j < sys.blocks.size(); ++j) {
        const auto& b = sys.blocks[j];
        const auto& plan = w.plans[j];
        const int d = b.dim();
        const int nb = static_cast<int>(b.var_ids.size());
        assemble(b, x, t, &w.f_work[j]);
        w.llts[j].compute(w.f_work[j]);
        if (w.llts[j].info() != Eigen::Success) {
          throw Error("barrier iterate left the cone");  // line search keeps domain
        }
        fval -= 2.0 * w.llts[j].matrixLLT().diagonal().array().log().sum();
        const auto L = w.llts[j].matrixLLT().triangularView<Eigen::Lower>();
        // T_i = L^{-1} F_i L^{-T}; last slot holds T_t = -L^{-1} L^{-T}.
        for (int i = 0; i < nb; ++i) {
          auto ti = w.t_work[j].middleRows(i * d, d);
          xsolve = b.coeffs[i];
          L.solveInPlace(xsolve);
          xsolve.transposeInPlace();
          L.solveInPlace(xsolve);
          ti = xsolve;
        }
        {
          auto tt = w.t_work[j].middleRows(nb * d, d);
          xsolve = Eigen::MatrixXd::Identity(d, d) * -1.0;
          L.solveInPlace(xsolve);
          xsolve.transposeInPlace();
          L.solveInPlace(xsolve);
          tt = xsolve;
        }
        // Gradient and Hessian scatter.
        for (int i = 0; i <= nb; ++i) {
          const auto ti = w.t_work[j].middleRows(i * d, d);
          const double tri = ti.trace();
          if (i < nb) {
            grad[b.var_ids[i]] += tri;
          } else {
            grad[nv] += tri;
          }
          for (int k = i; k <= nb; ++k) {
            const auto tk = w.t_work[j].middleRows(k * d, d);
            const double h = (ti.array() * tk.array()).sum();
            const bool i_sh = i == nb || plan.is_shared[i];
            const bool k_sh = k == nb || plan.is_shared[k];
            const int pi = i == nb ? ns : plan.pos[i];
            const int pk = k == nb ? ns : plan.pos[k];
            if (i_sh && k_sh) {
              hgg(pi, pk) += h;
              if (pi != pk) hgg(pk, pi) += h;
            } else if (!i_sh && !k_sh) {
              hcc[plan.cluster](pi, pk) += h;
              if (pi != pk) hcc[plan.cluster](pk, pi) += h;
            } else if (!i_sh && k_sh) {
              hcg[plan.cluster](pi, pk) += h;
            } else {
              hcg[plan.cluster](pk, pi) += h;
            }
          }
        }
      }

      // Schur elimination of the cluster blocks.
      Eigen::VectorXd gg(ns + 1);
      gg.head(ns) = grad.head(ns);
      gg[ns] = eta + grad[nv];
      Eigen::MatrixXd hs = hgg;
      Eigen::VectorXd gs = gg;
      for (int c = 0; c < nclus; ++c) {
        const double ridge =
            1e-10 * std::max(1e-8, hcc[c].diagonal().cwiseAbs().maxCoeff());
        hcc[c].diagonal().array() += ridge;
        hcc_fact[c].compute(hcc[c]);
        const Eigen::MatrixXd hinv_hcg = hcc_fact[c].solve(hcg[c]);
        hs.noalias() -= hcg[c].transpose() * hinv_hcg;
        gs.noalias() -=
            hinv_hcg.transpose() * grad.segment(ns + c * csz, csz);
      }
      Eigen::LDLT<Eigen::MatrixXd> hs_fact(hs);
      Eigen::VectorXd dg = -hs_fact.solve(gs);
      if (!dg.allFinite()) {
        hs.diagonal().array() += 1e-12 * hs.diagonal().cwiseAbs().maxCoeff();
        hs_fact.compute(hs);
        dg = -hs_fact.solve(gs);
      }
      const double dt = dg[ns];
      dx.head(ns) = dg.head(ns);
      for (int c = 0; c < nclus; ++c) {
        dx.segment(ns + c * csz, csz) = -hcc_fact[c].solve(
            grad.segment(ns + c * csz, csz) + hcg[c] * dg);
      }
      double gtd = gg.dot(dg);
      for (int c = 0; c < nclus; ++c) {
        gtd += grad.segment(ns + c * csz, csz)
                   .dot(dx.segment(ns + c * csz, csz));
      }
      const double decrement2 = -gtd;

      // Backtracking line search with domain check.
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const double fn =
            barrier_value(sys, w, x + step * dx, t + step * dt, eta);
        if (std::isfinite(fn) && fn <= fval + 0.25 * step * gtd) {
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (moved) {
        x += step * dx;
        t += step * dt;
      }
      if (opts.verbose) {
        std::printf("newton %4d eta %.1e t %+.6e dec2 %.2e step %.2e\n",
                    newton, eta, t, decrement2, step);
      }
      if (t <= t_stop) return finish(FeasibilityStatus::kFeasible);
      if (decrement2 / 2.0 < opts.center_tol || !moved) {
        centered = true;
        break;
      }
    }
    if (!centered) break;  // Newton budget exhausted mid-stage

    const double gap = static_cast<double>(w.total_dim) / eta;
    out.lower_bound = std::max(out.lower_bound, t - gap);
    if (out.lower_bound > -margin) return finish(FeasibilityStatus::kInfeasible);
    if (t <= -margin && t <= t_stop) return finish(FeasibilityStatus::kFeasible);
    if (eta >= opts.eta_max) {
      return finish(t <= -margin ? FeasibilityStatus::kFeasible
                                 : FeasibilityStatus::kInfeasible);
    }
    eta *= opts.eta_scale;
  }
  return finish(t <= -margin ? FeasibilityStatus::kFeasible
                             : FeasibilityStatus::kNoConvergence);
}

}  // namespace vccm
