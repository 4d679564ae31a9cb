#include "nnrank/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nnrank/errors.hpp"

namespace nnrank {

namespace {

void require_moments(const Eigen::VectorXd& y, const MomentBasis& basis) {
  if (static_cast<std::size_t>(y.size()) != basis.class_count()) {
    throw InputError("extraction: moment vector has length " + std::to_string(y.size()) +
                     ", expected " + std::to_string(basis.class_count()));
  }
}

void require_lift(const MomentBasis& basis, const LiftInfo& lift) {
  const MonomialSpace& moments = basis.moments();
  const int p = moments.groups();
  if (static_cast<int>(lift.lifted.size()) != p ||
      static_cast<int>(lift.original_n.size()) != p) {
    throw InputError("extract_odd: lift record does not match the basis groups");
  }
  for (int i = 0; i < p; ++i) {
    const int expect = lift.original_n[i] + (lift.lifted[i] ? 1 : 0);
    if (moments.n(i) != expect) {
      throw InputError("extract_odd: lift record does not match group " +
                       std::to_string(i + 1));
    }
  }
}

// First index of the largest entry in [begin, end).
int first_argmax(const int* begin, const int* end) {
  return static_cast<int>(std::max_element(begin, end) - begin);
}

std::vector<double> abs_normalized(std::vector<double> z) {
  double s = 0.0;
  for (double& v : z) {
    v = std::abs(v);
    s += v * v;
  }
  s = std::sqrt(s);
  if (s > 0.0) {
    for (double& v : z) v /= s;
  }
  return z;
}

// z_j = y at anchor - e_k + e_j for j over the first `count` coordinates of
// group i, with k the largest exponent among the first `search` coordinates.
std::vector<double> neighbor_moments(const Eigen::VectorXd& y, const MonomialSpace& space,
                                     MultiIndex anchor, int group, int search, int count) {
  const int off = space.group_offset(group);
  const int k = first_argmax(anchor.data() + off, anchor.data() + off + search);
  --anchor[off + k];
  std::vector<double> z(count);
  for (int j = 0; j < count; ++j) {
    ++anchor[off + j];
    z[j] = y[static_cast<Eigen::Index>(space.rank(anchor))];
    --anchor[off + j];
  }
  return z;
}

}  // namespace

GroupedVector extract_even(const Eigen::VectorXd& y, const MomentBasis& basis) {
  require_moments(y, basis);
  const std::size_t d = basis.dim();
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < d; ++r) {
    const double v = y[basis.class_of(r, r)];
    if (v > best_val) {
      best_val = v;
      best = r;
    }
  }
  if (!(best_val > 0.0)) {
    throw SolverError("extraction: all diagonal moments are nonpositive");
  }
  const MonomialSpace& moments = basis.moments();
  // The diagonal class of row gamma is 2 gamma.
  MultiIndex anchor = basis.rows().exponents(best);
  for (int& e : anchor) e *= 2;
  GroupedVector x(moments.groups());
  for (int i = 0; i < moments.groups(); ++i) {
    const int n = moments.n(i);
    x[i] = abs_normalized(neighbor_moments(y, moments, anchor, i, n, n));
  }
  return x;
}

OddExtraction extract_odd(const Eigen::VectorXd& y, const MomentBasis& basis,
                          const LiftInfo& lift) {
  require_moments(y, basis);
  require_lift(basis, lift);
  const MonomialSpace& moments = basis.moments();
  const int p = moments.groups();

  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const MultiIndex e = moments.exponents(k);
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      if (lift.lifted[i]) ok = e[moments.group_offset(i) + lift.original_n[i]] == 1;
    }
    if (ok && y[static_cast<Eigen::Index>(k)] > best_val) {
      best_val = y[static_cast<Eigen::Index>(k)];
      best = k;
    }
  }

  OddExtraction out;
  if (!(best_val > 0.0)) {
    out.zero_tensor = true;
    return out;
  }
  const MultiIndex anchor = moments.exponents(best);
  out.x.resize(p);
  for (int i = 0; i < p; ++i) {
    const int n = lift.original_n[i];
    const int count = moments.n(i);
    std::vector<double> block = abs_normalized(neighbor_moments(y, moments, anchor, i, n, count));
    if (lift.lifted[i]) {
      if (block.back() > kZeroTensorT) {
        out.zero_tensor = true;
        out.x.clear();
        return out;
      }
      block.pop_back();
      block = abs_normalized(std::move(block));
    }
    out.x[i] = std::move(block);
  }
  return out;
}

GroupedVector extract_lifted_any(const Eigen::VectorXd& y, const MomentBasis& basis,
                                 const LiftInfo& lift) {
  require_moments(y, basis);
  require_lift(basis, lift);
  const MonomialSpace& moments = basis.moments();
  const int p = moments.groups();
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const MultiIndex e = moments.exponents(k);
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      if (lift.lifted[i]) {
        ok = e[moments.group_offset(i) + lift.original_n[i]] < moments.degree(i);
      }
    }
    if (ok && y[static_cast<Eigen::Index>(k)] > best_val) {
      best_val = y[static_cast<Eigen::Index>(k)];
      best = k;
    }
  }
  const MultiIndex anchor = moments.exponents(best);
  GroupedVector x(p);
  for (int i = 0; i < p; ++i) {
    const int n = lift.original_n[i];
    std::vector<double> block = neighbor_moments(y, moments, anchor, i, n, n);
    block = abs_normalized(std::move(block));
    if (std::all_of(block.begin(), block.end(), [](double v) { return v == 0.0; })) {
      block.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    }
    x[i] = std::move(block);
  }
  return x;
}

Certificate certify(const Eigen::VectorXd& y, const MomentBasis& basis) {
  require_moments(y, basis);
  const Eigen::MatrixXd m = basis.moment_matrix(y);
  Certificate c;
  if (m.rows() < 2) {
    c.sigma2 = 0.0;
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    c.sigma2 = svd.singularValues()[1];
  }
  c.tight = c.sigma2 < kTightThreshold;
  return c;
}

ErrorMetrics metrics(double f_dnn, double f_app, double tensor_norm) {
  const double diff = std::abs(f_dnn - f_app);
  return {diff / std::max(1.0, std::abs(f_dnn)), diff / std::max(1.0, tensor_norm)};
}

ErrorMetrics metrics(double f_dnn, double f_app, const Tensor& a) {
  return metrics(f_dnn, f_app, hs_norm(a));
}

}  // namespace nnrank
