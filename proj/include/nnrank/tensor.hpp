#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nnrank {

// Tensor space Sym(R^{n_1}^{alpha_1}) x ... x Sym(R^{n_p}^{alpha_p}).
struct Shape {
  std::vector<int> alpha;
  std::vector<int> n;

  Shape() = default;
  Shape(std::vector<int> alpha_, std::vector<int> n_);

  // p copies of order-1 factors: the plain (non-symmetric) tensor space.
  static Shape multilinear(std::vector<int> dims);
  static Shape symmetric(int order, int dim);

  int groups() const { return static_cast<int>(alpha.size()); }
  int order() const;
  std::size_t entry_count() const;
  // Dimension of each of the order() index slots, grouped by factor.
  std::vector<int> slot_dims() const;
  // Group owning each index slot.
  std::vector<int> slot_groups() const;

  void validate() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

// One vector per factor group.
using GroupedVector = std::vector<std::vector<double>>;

// Dense partially symmetric tensor, row-major over (i_1, ..., i_r).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<double> entries);

  const Shape& shape() const { return shape_; }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Zero-based multi-index.
  double& at(std::span<const int> index);
  double at(std::span<const int> index) const;
  std::size_t offset(std::span<const int> index) const;
  // Inverse of offset().
  std::vector<int> index_of(std::size_t offset) const;

  Tensor& operator*=(double c);
  Tensor operator-() const;

  // True when entries are invariant under slot permutations inside each group.
  bool is_partially_symmetric(double tol = 1e-12) const;

 private:
  Shape shape_;
  std::vector<int> dims_;
  std::vector<double> entries_;
};

Tensor operator*(double c, const Tensor& a);
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);

double inner(const Tensor& a, const Tensor& b);
double hs_norm(const Tensor& a);

// (x^(1))^{alpha_1} x ... x (x^(p))^{alpha_p}.
Tensor rank_one(const GroupedVector& x, const Shape& shape);

// <A, x^alpha>, evaluated without materializing the rank-one tensor.
double eval_multiform(const Tensor& a, const GroupedVector& x);

// Group-wise average over within-group slot permutations.
Tensor symmetrize(const Tensor& a);

struct LambdaFit {
  double lambda = 0.0;
  double residual_sq = 0.0;
};

// Optimal weight for a fixed nonnegative unit-block direction x and the
// resulting squared residual ||A - lambda x^alpha||^2.
LambdaFit best_lambda(const Tensor& a, const GroupedVector& x,
                      double unit_tol = 1e-8);

// Sorts the slot indices nondecreasingly within each group.
std::vector<int> canonical_index(const Shape& shape, std::span<const int> index);

// Writes v at every index obtained by permuting slots within each group.
void assign_orbit(Tensor& a, std::span<const int> index, double v);

double block_norm(std::span<const double> v);

}  // namespace nnrank
