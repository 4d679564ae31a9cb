#include "nnrank/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nnrank/errors.hpp"
#include "nnrank/monomial.hpp"

namespace nnrank {

Shape::Shape(std::vector<int> alpha_, std::vector<int> n_)
    : alpha(std::move(alpha_)), n(std::move(n_)) {
  validate();
}

Shape Shape::multilinear(std::vector<int> dims) {
  std::vector<int> ones(dims.size(), 1);
  return Shape(std::move(ones), std::move(dims));
}

Shape Shape::symmetric(int order, int dim) { return Shape({order}, {dim}); }

int Shape::order() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::size_t Shape::entry_count() const {
  std::size_t count = 1;
  for (int i = 0; i < groups(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) count *= static_cast<std::size_t>(n[i]);
  }
  return count;
}

std::vector<int> Shape::slot_dims() const {
  std::vector<int> dims;
  for (int i = 0; i < groups(); ++i) dims.insert(dims.end(), alpha[i], n[i]);
  return dims;
}

std::vector<int> Shape::slot_groups() const {
  std::vector<int> g;
  for (int i = 0; i < groups(); ++i) g.insert(g.end(), alpha[i], i);
  return g;
}

void Shape::validate() const {
  if (alpha.empty()) throw InputError("shape needs at least one group");
  if (alpha.size() != n.size()) {
    throw InputError("shape: alpha and n have different lengths");
  }
  for (int i = 0; i < groups(); ++i) {
    if (alpha[i] < 1 || n[i] < 1) {
      throw InputError("shape: group " + std::to_string(i + 1) +
                       " needs alpha >= 1 and n >= 1");
    }
  }
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
  shape_.validate();
  dims_ = shape_.slot_dims();
  entries_.assign(shape_.entry_count(), 0.0);
}

Tensor::Tensor(Shape shape, std::vector<double> entries) : Tensor(std::move(shape)) {
  if (entries.size() != entries_.size()) {
    throw InputError("tensor: expected " + std::to_string(entries_.size()) +
                     " entries, got " + std::to_string(entries.size()));
  }
  entries_ = std::move(entries);
}

std::size_t Tensor::offset(std::span<const int> index) const {
  if (index.size() != dims_.size()) throw InputError("tensor: index has wrong order");
  std::size_t off = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] < 0 || index[k] >= dims_[k]) {
      throw InputError("tensor: index out of range in slot " + std::to_string(k + 1));
    }
    off = off * dims_[k] + static_cast<std::size_t>(index[k]);
  }
  return off;
}

std::vector<int> Tensor::index_of(std::size_t off) const {
  std::vector<int> index(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    index[k] = static_cast<int>(off % dims_[k]);
    off /= dims_[k];
  }
  return index;
}

double& Tensor::at(std::span<const int> index) { return entries_[offset(index)]; }
double Tensor::at(std::span<const int> index) const { return entries_[offset(index)]; }

Tensor& Tensor::operator*=(double c) {
  for (double& v : entries_) v *= c;
  return *this;
}

Tensor Tensor::operator-() const {
  Tensor out = *this;
  out *= -1.0;
  return out;
}

Tensor operator*(double c, const Tensor& a) {
  Tensor out = a;
  out *= c;
  return out;
}

namespace {

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (!(a.shape() == b.shape())) throw InputError("tensor shapes differ");
}

}  // namespace

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) { return a + (-b); }

double inner(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  auto x = a.entries();
  auto y = b.entries();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double hs_norm(const Tensor& a) { return std::sqrt(inner(a, a)); }

double block_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

namespace {

void require_blocks(const GroupedVector& x, const Shape& shape) {
  if (static_cast<int>(x.size()) != shape.groups()) {
    throw InputError("grouped vector has " + std::to_string(x.size()) +
                     " blocks, shape has " + std::to_string(shape.groups()));
  }
  for (int i = 0; i < shape.groups(); ++i) {
    if (static_cast<int>(x[i].size()) != shape.n[i]) {
      throw InputError("block " + std::to_string(i + 1) + " has dimension " +
                       std::to_string(x[i].size()) + ", expected " +
                       std::to_string(shape.n[i]));
    }
  }
}

}  // namespace

Tensor rank_one(const GroupedVector& x, const Shape& shape) {
  require_blocks(x, shape);
  Tensor out(shape);
  const auto groups = shape.slot_groups();
  const auto dims = shape.slot_dims();
  std::vector<int> index(dims.size(), 0);
  auto entries = out.entries();
  for (std::size_t off = 0; off < entries.size(); ++off) {
    double v = 1.0;
    for (std::size_t k = 0; k < dims.size(); ++k) v *= x[groups[k]][index[k]];
    entries[off] = v;
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++index[k] < dims[k]) break;
      index[k] = 0;
    }
  }
  return out;
}

double eval_multiform(const Tensor& a, const GroupedVector& x) {
  require_blocks(x, a.shape());
  // Contract the last slot first: a Horner-style sweep over the row-major
  // layout keeps the cost at O(entries).
  const auto groups = a.shape().slot_groups();
  const auto dims = a.shape().slot_dims();
  std::vector<double> work(a.entries().begin(), a.entries().end());
  for (std::size_t k = dims.size(); k-- > 0;) {
    const auto& v = x[groups[k]];
    const std::size_t d = static_cast<std::size_t>(dims[k]);
    const std::size_t outer = work.size() / d;
    std::vector<double> next(outer, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += work[o * d + j] * v[j];
      next[o] = s;
    }
    work.swap(next);
  }
  return work.front();
}

Tensor symmetrize(const Tensor& a) {
  // The symmetric part has entry f_alpha / multinomial(alpha) on the orbit
  // of alpha, so it is read straight off the multi-form.
  return from_multiform(to_multiform(a));
}

bool Tensor::is_partially_symmetric(double tol) const {
  const Tensor s = symmetrize(*this);
  auto x = entries();
  auto y = s.entries();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k] - y[k]) > tol * (1.0 + std::abs(x[k]))) return false;
  }
  return true;
}

LambdaFit best_lambda(const Tensor& a, const GroupedVector& x, double unit_tol) {
  require_blocks(x, a.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(block_norm(x[i]) - 1.0) > unit_tol) {
      throw InputError("best_lambda: block " + std::to_string(i + 1) +
                       " is not unit norm");
    }
    for (double c : x[i]) {
      if (c < -unit_tol) {
        throw InputError("best_lambda: block " + std::to_string(i + 1) +
                         " has a negative component");
      }
    }
  }
  LambdaFit fit;
  fit.lambda = std::max(0.0, eval_multiform(a, x));
  fit.residual_sq = inner(a, a) - fit.lambda * fit.lambda;
  return fit;
}

std::vector<int> canonical_index(const Shape& shape, std::span<const int> index) {
  if (static_cast<int>(index.size()) != shape.order()) {
    throw InputError("canonical_index: index has the wrong number of slots");
  }
  std::vector<int> out(index.begin(), index.end());
  auto it = out.begin();
  for (int a : shape.alpha) {
    std::sort(it, it + a);
    it += a;
  }
  return out;
}

namespace {

void assign_orbit_from(Tensor& a, std::vector<int>& idx, int group,
                       const std::vector<int>& starts, double v) {
  const Shape& shape = a.shape();
  if (group == shape.groups()) {
    a.at(idx) = v;
    return;
  }
  const auto first = idx.begin() + starts[group];
  const auto last = first + shape.alpha[group];
  std::sort(first, last);
  do {
    assign_orbit_from(a, idx, group + 1, starts, v);
  } while (std::next_permutation(first, last));
}

}  // namespace

void assign_orbit(Tensor& a, std::span<const int> index, double v) {
  std::vector<int> idx = canonical_index(a.shape(), index);
  a.offset(idx);  // bounds check before touching any entry
  std::vector<int> starts(a.shape().groups(), 0);
  for (int i = 1; i < a.shape().groups(); ++i) starts[i] = starts[i - 1] + a.shape().alpha[i - 1];
  assign_orbit_from(a, idx, 0, starts, v);
}

}  // namespace nnrank
