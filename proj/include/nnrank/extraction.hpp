#pragma once

#include <Eigen/Dense>

#include "nnrank/basis.hpp"
#include "nnrank/model.hpp"
#include "nnrank/tensor.hpp"

namespace nnrank {

// Second singular value below this counts as a rank-one moment matrix.
inline constexpr double kTightThreshold = 1e-6;
// t_i above this after normalization means the x-part vanished.
inline constexpr double kZeroTensorT = 1.0 - 1e-8;

struct ExtractionResult {
  GroupedVector x_star;  // in the original (unlifted) shape
  double lambda = 0.0;
  double f_app = 0.0;
  double f_dnn = 0.0;
  double sigma2 = 0.0;
  bool tight = false;
  double apperr = 0.0;
  double apperrnm = 0.0;
  bool zero_tensor = false;
};

// Reads x^(i) off the moment entries adjacent to the largest diagonal moment.
GroupedVector extract_even(const Eigen::VectorXd& y, const MomentBasis& basis);

struct OddExtraction {
  GroupedVector x;  // unlifted blocks; empty when zero_tensor
  bool zero_tensor = false;
};

// Same idea for lifted problems: the anchor moment must carry t_i exactly
// once in every lifted group, and t_i is stripped from the recovered blocks.
OddExtraction extract_odd(const Eigen::VectorXd& y, const MomentBasis& basis,
                          const LiftInfo& lift);

// Fallback for lifted problems whose optimum puts all mass on t: anchors at
// the largest moment with some x-mass in every lifted group and strips t.
// Always returns unit nonnegative blocks (uniform when the x-part vanishes).
GroupedVector extract_lifted_any(const Eigen::VectorXd& y, const MomentBasis& basis,
                                 const LiftInfo& lift);

struct Certificate {
  double sigma2 = 0.0;
  bool tight = false;
};

Certificate certify(const Eigen::VectorXd& y, const MomentBasis& basis);

struct ErrorMetrics {
  double apperr = 0.0;
  double apperrnm = 0.0;
};

// |f_dnn - f_app| / max(1, |f_dnn|) and |f_dnn - f_app| / max(1, ||A||).
ErrorMetrics metrics(double f_dnn, double f_app, const Tensor& a);
ErrorMetrics metrics(double f_dnn, double f_app, double tensor_norm);

}  // namespace nnrank
