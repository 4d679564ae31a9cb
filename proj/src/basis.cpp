#include "nnrank/basis.hpp"

#include <limits>
#include <string>

#include "nnrank/errors.hpp"

namespace nnrank {

namespace {

std::vector<int> doubled(std::vector<int> tau) {
  for (int& t : tau) t *= 2;
  return tau;
}

}  // namespace

MomentBasis::MomentBasis(std::vector<int> n, std::vector<int> tau, BasisOptions opts) {
  if (n.size() != tau.size() || n.empty()) {
    throw InputError("moment basis: need one half-degree per group");
  }
  bool any = false;
  for (int t : tau) {
    if (t < 0) throw InputError("moment basis: negative half-degree");
    any = any || t > 0;
  }
  if (!any) throw InputError("moment basis: all half-degrees are zero");

  std::uint64_t dim = 1;
  for (std::size_t i = 0; i < n.size(); ++i) dim *= nu(tau[i], n[i]);
  if (dim > opts.max_dim) {
    throw SizeLimitError("moment basis dimension " + std::to_string(dim) +
                         " exceeds the cap of " + std::to_string(opts.max_dim));
  }

  rows_ = MonomialSpace(n, tau);
  moments_ = MonomialSpace(n, doubled(tau));
  if (!opts.materialize_classes) return;
  if (moments_.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw SizeLimitError("moment basis: too many classes to tabulate");
  }

  // Per group, the rank of mu_a + mu_b inside that group's degree-2 tau_i list.
  const int p = rows_.groups();
  std::vector<std::vector<std::size_t>> pair_rank(p);
  for (int i = 0; i < p; ++i) {
    const auto& mono = rows_.group_monomials(i);
    const std::size_t g = mono.size();
    pair_rank[i].resize(g * g);
    std::vector<int> e(n[i]);
    for (std::size_t a = 0; a < g; ++a) {
      for (std::size_t b = 0; b < g; ++b) {
        for (int k = 0; k < n[i]; ++k) e[k] = mono[a][k] + mono[b][k];
        pair_rank[i][a * g + b] = moments_.group_rank(i, e);
      }
    }
  }

  const std::size_t d = rows_.size();
  std::vector<std::vector<std::size_t>> row_parts(d);
  for (std::size_t r = 0; r < d; ++r) row_parts[r] = rows_.split(r);

  class_of_.resize(d * d);
  weights_.assign(moments_.size(), 0);
  std::vector<std::size_t> parts(p);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      for (int i = 0; i < p; ++i) {
        const std::size_t g = rows_.group_size(i);
        parts[i] = pair_rank[i][row_parts[r][i] * g + row_parts[c][i]];
      }
      const auto alpha = static_cast<std::int32_t>(moments_.compose(parts));
      class_of_[r * d + c] = alpha;
      ++weights_[alpha];
    }
  }

  class_start_.assign(moments_.size() + 1, 0);
  for (std::size_t a = 0; a < moments_.size(); ++a) {
    class_start_[a + 1] = class_start_[a] + weights_[a];
  }
  positions_.resize(d * d);
  std::vector<std::int64_t> fill(class_start_.begin(), class_start_.end() - 1);
  for (std::size_t k = 0; k < d * d; ++k) positions_[fill[class_of_[k]]++] = static_cast<std::int64_t>(k);
}

void MomentBasis::require_classes() const {
  if (class_of_.empty()) throw InputError("moment basis was built without class tables");
}

Eigen::MatrixXd MomentBasis::moment_matrix(const Eigen::VectorXd& y) const {
  require_classes();
  if (static_cast<std::size_t>(y.size()) != class_count()) {
    throw InputError("moment matrix: y has length " + std::to_string(y.size()) +
                     ", expected " + std::to_string(class_count()));
  }
  const std::size_t d = dim();
  Eigen::MatrixXd m(d, d);
  double* out = m.data();
  // Column-major storage; class_of_ is symmetric so the layout does not matter.
  for (std::size_t k = 0; k < d * d; ++k) out[k] = y[class_of_[k]];
  return m;
}

Eigen::VectorXd MomentBasis::class_sums(const Eigen::MatrixXd& x) const {
  require_classes();
  const std::size_t d = dim();
  if (static_cast<std::size_t>(x.rows()) != d || static_cast<std::size_t>(x.cols()) != d) {
    throw InputError("class sums: matrix dimension does not match the basis");
  }
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(class_count()));
  const double* in = x.data();
  for (std::size_t k = 0; k < d * d; ++k) s[class_of_[k]] += in[k];
  return s;
}

Eigen::VectorXd MomentBasis::moment_vector(const GroupedVector& x) const {
  const auto v = moments_.evaluate_all(x);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

MomentBasis build_basis(const Shape& shape, const std::vector<int>& tau, BasisOptions opts) {
  return MomentBasis(shape.n, tau, opts);
}

std::uint64_t count_constraints(const MomentBasis& basis) {
  const std::uint64_t d = basis.dim();
  return d * (d + 1) / 2 - basis.class_count() + 1;
}

ClassAverage class_average(const Eigen::MatrixXd& x, const MomentBasis& basis) {
  ClassAverage out;
  // Class patterns are symmetric, so averaging over a class already averages
  // X with its transpose.
  out.y = basis.class_sums(x);
  for (Eigen::Index a = 0; a < out.y.size(); ++a) out.y[a] /= basis.weight(a);
  out.averaged = basis.moment_matrix(out.y);
  return out;
}

}  // namespace nnrank
