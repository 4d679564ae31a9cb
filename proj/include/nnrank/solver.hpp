#pragma once

#include <string>

#include <Eigen/Dense>

#include "nnrank/model.hpp"

namespace nnrank {

struct SolverOptions {
  double tol = 1e-6;
  int max_iters = 20'000;
  // Initial ADMM penalty.
  double penalty = 1.0;
  bool penalty_adapt = true;
  // Residual balancing: rescale the penalty by adapt_factor when the primal
  // and dual residuals differ by more than adapt_ratio.
  double adapt_ratio = 10.0;
  double adapt_factor = 2.0;
  double penalty_min = 1e-4;
  double penalty_max = 1e4;
  int check_every = 20;
  // Residual level treated as divergence.
  double divergence = 1e6;
  // CSV iteration log, written when non-empty.
  std::string log_path;

  void validate() const;
};

enum class SolveStatus { kConverged, kMaxIters, kNumericalFailure };

const char* to_string(SolveStatus s);

struct Residuals {
  double primal_psd = 0.0;  // ||X - Z_psd|| / (1 + ||X||)
  double primal_nn = 0.0;   // ||X - Z_nn|| / (1 + ||X||)
  double affine = 0.0;      // distance of X from the affine set, relative
  double dual = 0.0;        // penalty * ||P_T(dZ_psd + dZ_nn)|| / (1 + ||C||)
  double rel_gap = 0.0;     // objective change since the previous check

  double max() const;
};

// Iterate of the consensus splitting: X lives on the affine set, Z_psd on the
// psd cone, Z_nn on the nonnegative orthant; U_* are scaled multipliers.
struct SplittingState {
  Eigen::MatrixXd x;
  Eigen::MatrixXd z_psd;
  Eigen::MatrixXd z_nn;
  Eigen::MatrixXd u_psd;
  Eigen::MatrixXd u_nn;
  double penalty = 1.0;
};

struct DnnSolution {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  double f_dnn = 0.0;
  Residuals residuals;
  int iters = 0;
  SolveStatus status = SolveStatus::kMaxIters;
  double penalty = 1.0;
};

// Exact Euclidean projection onto {X in span{A_alpha} : <Gbar, X> = 1}.
Eigen::MatrixXd project_affine(const Eigen::MatrixXd& x, const DnnProblem& prob);

// Projection onto the psd cone by clipping negative eigenvalues.  Returns
// false when the eigensolver fails.
bool project_psd(const Eigen::MatrixXd& m, Eigen::MatrixXd* out);

Residuals kkt_residuals(const DnnProblem& prob, const SplittingState& state,
                        const SplittingState* previous = nullptr);

DnnSolution solve(const DnnProblem& prob, const SolverOptions& opts = {});

}  // namespace nnrank
