#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nnrank/monomial.hpp"
#include "nnrank/tensor.hpp"

namespace nnrank {

struct BasisOptions {
  // Largest moment matrix dimension accepted.
  std::size_t max_dim = 20'000;
  // Build the (row, col) -> class table.  Size accounting does not need it.
  bool materialize_classes = true;
};

// Rows of the moment matrix are the monomials x^[tau] (one degree tau_i per
// group); entry (r, c) carries the moment of x^{mu_r + mu_c}.  Positions
// sharing the same exponent sum form a class, i.e. the support of one A_alpha.
class MomentBasis {
 public:
  MomentBasis(std::vector<int> n, std::vector<int> tau, BasisOptions opts = {});

  const std::vector<int>& tau() const { return rows_.degrees(); }
  const std::vector<int>& dims() const { return rows_.dims(); }
  const MonomialSpace& rows() const { return rows_; }
  // Lambda(2 tau): the index space of moment vectors y and of coefficients f.
  const MonomialSpace& moments() const { return moments_; }

  std::size_t dim() const { return rows_.size(); }
  std::size_t class_count() const { return moments_.size(); }
  bool has_classes() const { return !class_of_.empty(); }

  std::int32_t class_of(std::size_t row, std::size_t col) const {
    return class_of_[row * dim() + col];
  }
  // w_alpha: number of ordered positions in the class.
  double weight(std::size_t alpha) const { return static_cast<double>(weights_[alpha]); }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  // Flat positions row * dim + col of class alpha.
  std::span<const std::int64_t> positions(std::size_t alpha) const {
    return {positions_.data() + class_start_[alpha],
            static_cast<std::size_t>(class_start_[alpha + 1] - class_start_[alpha])};
  }

  // M(y) = sum_alpha y_alpha A_alpha.
  Eigen::MatrixXd moment_matrix(const Eigen::VectorXd& y) const;
  // Class sums of X: <A_alpha, X> for each alpha.
  Eigen::VectorXd class_sums(const Eigen::MatrixXd& x) const;
  // Moment vector y(x) with y_alpha = x^alpha.
  Eigen::VectorXd moment_vector(const GroupedVector& x) const;

 private:
  void require_classes() const;

  MonomialSpace rows_;
  MonomialSpace moments_;
  std::vector<std::int32_t> class_of_;
  std::vector<std::int64_t> weights_;
  std::vector<std::int64_t> class_start_;
  std::vector<std::int64_t> positions_;
};

MomentBasis build_basis(const Shape& shape, const std::vector<int>& tau,
                        BasisOptions opts = {});

// Equality constraints of the conic program: the nu(tau)(nu(tau)+1)/2 - nu(2 tau)
// complement directions plus the single normalization row.
std::uint64_t count_constraints(const MomentBasis& basis);

struct ClassAverage {
  Eigen::VectorXd y;
  Eigen::MatrixXd averaged;
};

// Orthogonal projection of X onto span{A_alpha}; the input is symmetrized
// first.
ClassAverage class_average(const Eigen::MatrixXd& x, const MomentBasis& basis);

}  // namespace nnrank
