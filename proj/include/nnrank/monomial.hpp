#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nnrank/tensor.hpp"

namespace nnrank {

// nu(s, n) = C(n + s - 1, s): number of degree-s monomials in n variables.
std::uint64_t nu(int s, int n);
std::uint64_t binomial(int n, int k);

// Flat exponent vector: group blocks concatenated, block i has n_i entries.
using MultiIndex = std::vector<int>;

// The multi-degree monomial set Lambda(s_1, ..., s_p), ordered
// lexicographically with z_1 > z_2 > ... inside a group and with group 1
// most significant.  Index k of this space is the k-th monomial in that
// order; every coefficient and moment vector in the library uses it.
class MonomialSpace {
 public:
  MonomialSpace() = default;
  MonomialSpace(std::vector<int> n, std::vector<int> degree);

  int groups() const { return static_cast<int>(n_.size()); }
  int n(int group) const { return n_[group]; }
  int degree(int group) const { return degree_[group]; }
  const std::vector<int>& dims() const { return n_; }
  const std::vector<int>& degrees() const { return degree_; }
  int variables() const { return offsets_.back(); }
  int group_offset(int group) const { return offsets_[group]; }

  std::size_t size() const { return size_; }
  std::size_t group_size(int group) const { return group_monomials_[group].size(); }
  const std::vector<std::vector<int>>& group_monomials(int group) const {
    return group_monomials_[group];
  }

  // Position of an exponent vector inside its group's ordered list.
  std::size_t group_rank(int group, std::span<const int> exps) const;
  std::size_t rank(std::span<const int> exps) const;
  // Mixed-radix composition of per-group positions.
  std::size_t compose(std::span<const std::size_t> group_index) const;
  std::vector<std::size_t> split(std::size_t index) const;
  MultiIndex exponents(std::size_t index) const;
  bool contains(std::span<const int> exps) const;

  // x^alpha for every alpha, in space order.
  std::vector<double> evaluate_all(const GroupedVector& x) const;

  friend bool operator==(const MonomialSpace& a, const MonomialSpace& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_;
  }

 private:
  std::vector<int> n_;
  std::vector<int> degree_;
  std::vector<int> offsets_{0};
  std::vector<std::size_t> strides_;
  std::vector<std::vector<std::vector<int>>> group_monomials_;
  std::size_t size_ = 0;
};

// Exponent vectors of length n summing to s, in descending lex order.
std::vector<std::vector<int>> enumerate_exponents(int n, int s);
// Rank of one such vector without enumerating.
std::uint64_t exponent_rank(std::span<const int> exps);

// Multi-homogeneous polynomial sum_alpha coeffs[alpha] x^alpha.
struct MultiForm {
  MonomialSpace space;
  std::vector<double> coeffs;

  MultiForm() = default;
  explicit MultiForm(MonomialSpace s)
      : space(std::move(s)), coeffs(space.size(), 0.0) {}

  double evaluate(const GroupedVector& x) const;
  bool has_odd_degree() const;
  MultiForm operator-() const;
};

MultiForm multiply(const MultiForm& a, const MultiForm& b);

// Coefficient of x^alpha is the sum of all entries whose per-group exponent
// profile is alpha.
MultiForm to_multiform(const Tensor& a);
// Symmetric tensor whose multi-form is f (coefficients spread evenly over
// each orbit).
Tensor from_multiform(const MultiForm& f);

// Number of index tuples within one group sharing the exponent profile.
double multinomial(std::span<const int> exps);

}  // namespace nnrank
