#include "nnrank/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#include <Eigen/Eigenvalues>

#include "nnrank/errors.hpp"

namespace nnrank {

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw InputError("solver: tol must be positive");
  if (max_iters < 1) throw InputError("solver: max_iters must be at least 1");
  if (!(penalty > 0.0)) throw InputError("solver: penalty must be positive");
  if (check_every < 1) throw InputError("solver: check_every must be at least 1");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxIters:
      return "max_iters";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

double Residuals::max() const {
  return std::max({primal_psd, primal_nn, affine, dual, rel_gap});
}

namespace {

double frob_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b).sum();
}

// Projection onto the tangent space {class-constant, <Gbar, .> = 0}.
Eigen::MatrixXd project_tangent(const Eigen::MatrixXd& m, const DnnProblem& prob) {
  Eigen::MatrixXd avg = class_average(m, *prob.basis).averaged;
  const double gg = frob_dot(prob.normalization, prob.normalization);
  avg -= (frob_dot(prob.normalization, avg) / gg) * prob.normalization;
  return avg;
}

}  // namespace

Eigen::MatrixXd project_affine(const Eigen::MatrixXd& x, const DnnProblem& prob) {
  const Eigen::Index d = static_cast<Eigen::Index>(prob.dim());
  if (x.rows() != d || x.cols() != d) {
    throw InputError("project_affine: matrix dimension does not match the problem");
  }
  const double gg = frob_dot(prob.normalization, prob.normalization);
  if (!(gg > 0.0)) throw InputError("project_affine: normalization matrix is zero");
  Eigen::MatrixXd avg = class_average(x, *prob.basis).averaged;
  const double shift = (1.0 - frob_dot(prob.normalization, avg)) / gg;
  avg += shift * prob.normalization;
  return avg;
}

bool project_psd(const Eigen::MatrixXd& m, Eigen::MatrixXd* out) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) return false;
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::Index d = ev.size();
  Eigen::Index neg = 0;
  while (neg < d && ev[neg] < 0.0) ++neg;
  if (neg == 0) {
    *out = m;
  } else if (neg == d) {
    out->setZero(d, d);
  } else if (neg <= d - neg) {
    // Subtract the negative part: cheaper when few eigenvalues are negative.
    const auto vn = v.leftCols(neg);
    *out = m - vn * ev.head(neg).asDiagonal() * vn.transpose();
  } else {
    const auto vp = v.rightCols(d - neg);
    *out = vp * ev.tail(d - neg).asDiagonal() * vp.transpose();
  }
  *out = 0.5 * (*out + out->transpose());
  return true;
}

Residuals kkt_residuals(const DnnProblem& prob, const SplittingState& s,
                        const SplittingState* previous) {
  Residuals r;
  const double xn = 1.0 + s.x.norm();
  r.primal_psd = (s.x - s.z_psd).norm() / xn;
  r.primal_nn = (s.x - s.z_nn).norm() / xn;
  r.affine = (s.x - project_affine(s.x, prob)).norm() / xn;
  if (previous != nullptr) {
    const Eigen::MatrixXd dz = (s.z_psd - previous->z_psd) + (s.z_nn - previous->z_nn);
    r.dual = s.penalty * project_tangent(dz, prob).norm() / (1.0 + prob.objective.norm());
    const double obj = frob_dot(prob.objective, s.x);
    const double obj_prev = frob_dot(prob.objective, previous->x);
    r.rel_gap = std::abs(obj - obj_prev) / (1.0 + std::abs(obj));
  }
  return r;
}

namespace {

class IterationLog {
 public:
  explicit IterationLog(const std::string& path) {
    if (path.empty()) return;
    out_ = std::make_unique<std::ofstream>(path);
    if (!*out_) throw InputError("cannot open solver log " + path);
    *out_ << "iteration,objective,primal_psd,primal_nn,affine,dual,rel_gap,penalty\n";
    out_->precision(10);
  }

  void write(int iter, double obj, const Residuals& r, double penalty) {
    if (!out_) return;
    *out_ << iter << ',' << obj << ',' << r.primal_psd << ',' << r.primal_nn << ','
          << r.affine << ',' << r.dual << ',' << r.rel_gap << ',' << penalty << '\n';
  }

 private:
  std::unique_ptr<std::ofstream> out_;
};

}  // namespace

DnnSolution solve(const DnnProblem& prob, const SolverOptions& opts) {
  opts.validate();
  const Eigen::Index d = static_cast<Eigen::Index>(prob.dim());

  // Iterate on a copy with a unit-norm objective; the reported value uses the
  // original one.
  DnnProblem scaled = prob;
  const double c_norm = prob.objective.norm();
  if (c_norm > 0.0) scaled.objective /= c_norm;
  const Eigen::MatrixXd& c = scaled.objective;
  const double gg = frob_dot(prob.normalization, prob.normalization);
  if (!(gg > 0.0)) throw InputError("solve: normalization matrix is zero");

  SplittingState s;
  s.x = prob.normalization / gg;
  s.z_psd = s.x;
  s.z_nn = s.x;
  s.u_psd = Eigen::MatrixXd::Zero(d, d);
  s.u_nn = Eigen::MatrixXd::Zero(d, d);
  s.penalty = opts.penalty;

  IterationLog log(opts.log_path);
  SplittingState checkpoint = s;
  Eigen::MatrixXd best_x = s.x;
  Residuals best_res;
  best_res.primal_psd = std::numeric_limits<double>::infinity();
  double best_score = std::numeric_limits<double>::infinity();

  DnnSolution sol;
  sol.status = SolveStatus::kMaxIters;
  Eigen::MatrixXd psd_target(d, d);

  double last_check_obj = std::numeric_limits<double>::quiet_NaN();
  int iter = 0;
  for (iter = 1; iter <= opts.max_iters; ++iter) {
    SplittingState* prev = (iter % opts.check_every == 0) ? &checkpoint : nullptr;
    if (prev != nullptr) {
      // Residuals compare against the previous iterate, not the last check.
      checkpoint.z_psd = s.z_psd;
      checkpoint.z_nn = s.z_nn;
      checkpoint.x = s.x;
    }

    const Eigen::MatrixXd v = 0.5 * ((s.z_psd - s.u_psd) + (s.z_nn - s.u_nn)) -
                              c / (2.0 * s.penalty);
    s.x = project_affine(v, scaled);

    psd_target = s.x + s.u_psd;
    if (!project_psd(psd_target, &s.z_psd)) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }
    s.z_nn = (s.x + s.u_nn).cwiseMax(0.0);
    s.u_psd += s.x - s.z_psd;
    s.u_nn += s.x - s.z_nn;

    if (prev == nullptr) continue;

    Residuals r = kkt_residuals(scaled, s, prev);
    const double obj = frob_dot(c, s.x);
    r.rel_gap = std::isnan(last_check_obj)
                    ? std::numeric_limits<double>::infinity()
                    : std::abs(obj - last_check_obj) / (1.0 + std::abs(obj));
    last_check_obj = obj;
    const double primal = std::max(r.primal_psd, r.primal_nn);
    const double score = std::max({primal, r.dual, r.affine});
    if (!std::isfinite(score) || score > opts.divergence) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }
    log.write(iter, frob_dot(prob.objective, s.x), r, s.penalty);

    if (score <= best_score) {
      best_score = score;
      best_x = s.x;
      best_res = r;
    }
    if (r.max() <= opts.tol) {
      sol.status = SolveStatus::kConverged;
      best_x = s.x;
      best_res = r;
      break;
    }

    if (opts.penalty_adapt) {
      double factor = 1.0;
      if (primal > opts.adapt_ratio * r.dual) {
        factor = opts.adapt_factor;
      } else if (r.dual > opts.adapt_ratio * primal) {
        factor = 1.0 / opts.adapt_factor;
      }
      const double next = std::clamp(s.penalty * factor, opts.penalty_min, opts.penalty_max);
      if (next != s.penalty) {
        // Scaled multipliers carry 1/penalty.
        s.u_psd *= s.penalty / next;
        s.u_nn *= s.penalty / next;
        s.penalty = next;
      }
    }
  }

  sol.iters = std::min(iter, opts.max_iters);
  sol.penalty = s.penalty;
  sol.residuals = best_res;
  sol.x = project_affine(best_x, prob);
  sol.y = class_average(sol.x, *prob.basis).y;
  sol.f_dnn = frob_dot(prob.objective, sol.x);
  return sol;
}

}  // namespace nnrank
