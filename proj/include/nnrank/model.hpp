#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nnrank/basis.hpp"
#include "nnrank/monomial.hpp"

namespace nnrank {

// Bookkeeping for odd-degree groups that received an auxiliary variable t_i,
// appended as the last coordinate of the group.
struct LiftInfo {
  std::vector<bool> lifted;
  // sqrt((d+1)^{d+1} / d^d) for lifted groups, 1 elsewhere.
  std::vector<double> scale_factors;
  std::vector<int> original_n;
  std::vector<int> original_degree;

  bool any() const;
  // Product of the per-group factors: f_min = total_scale() * lifted f_min
  // whenever f_min <= 0.
  double total_scale() const;
};

// min <C, X>  s.t.  X constant on classes, <Gbar, X> = 1, X psd, X >= 0.
struct DnnProblem {
  std::shared_ptr<const MomentBasis> basis;
  MultiForm f;
  MultiForm g;
  Eigen::MatrixXd objective;      // C = sum f_alpha / w_alpha A_alpha
  Eigen::MatrixXd normalization;  // Gbar = sum g_alpha / w_alpha A_alpha
  std::optional<LiftInfo> lift;

  std::size_t dim() const { return basis->dim(); }
};

// Coefficients of prod_i (x^(i)^T x^(i))^{tau_i} over Lambda(2 tau).
MultiForm g_coefficients(const std::vector<int>& n, const std::vector<int>& tau);

// Requires every group degree to be even.
DnnProblem assemble(const MultiForm& f, BasisOptions opts = {});

double lift_scale_factor(int degree);

struct LiftedForm {
  MultiForm form;
  LiftInfo lift;
};

// Multiplies f by t_i for every odd-degree group i.
LiftedForm lift_odd(const MultiForm& f);

// f(z^(1) o z^(1), ...) for the selected groups: doubles their degree and
// preserves the sign of f on the nonnegative orthant.
MultiForm square_substitute(const MultiForm& f, const std::vector<bool>& groups);

struct RecoveredBlock {
  bool applicable = false;
  std::string reason;
  std::vector<double> block;
  std::vector<double> u;
};

// Squared-sum reduction of a group in which f is linear:
// g(x_rest) = sum_j f(e_j, x_rest)^2.
class LinearReduction {
 public:
  LinearReduction(const MultiForm& f, int group);

  const MultiForm& reduced() const { return reduced_; }
  int group() const { return group_; }
  // u_j(x_rest) = f(e_j, x_rest) as multi-forms in the remaining groups.
  const std::vector<MultiForm>& components() const { return components_; }

  // x^(group) = -u_- / ||u_-||, valid only when every u_j <= 0 and u != 0.
  RecoveredBlock recover(const GroupedVector& rest, double sign_tol = 1e-9) const;

 private:
  int group_;
  MultiForm reduced_;
  std::vector<MultiForm> components_;
};

LinearReduction reduce_linear(const MultiForm& f, int group);

}  // namespace nnrank
