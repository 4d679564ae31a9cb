#include "nnrank/model.hpp"

#include <cmath>
#include <string>

#include "nnrank/errors.hpp"

namespace nnrank {

bool LiftInfo::any() const {
  for (bool b : lifted) {
    if (b) return true;
  }
  return false;
}

double LiftInfo::total_scale() const {
  double s = 1.0;
  for (double c : scale_factors) s *= c;
  return s;
}

MultiForm g_coefficients(const std::vector<int>& n, const std::vector<int>& tau) {
  if (n.size() != tau.size()) throw InputError("g coefficients: n and tau differ in length");
  std::vector<int> deg(tau);
  for (int& d : deg) d *= 2;
  MultiForm g(MonomialSpace(n, deg));
  // (sum_j x_j^2)^t = sum_{|b| = t} multinomial(b) x^{2b}, independently per group.
  const MonomialSpace halves(n, tau);
  for (std::size_t k = 0; k < halves.size(); ++k) {
    MultiIndex e = halves.exponents(k);
    double c = 1.0;
    for (int i = 0; i < halves.groups(); ++i) {
      c *= multinomial(std::span<const int>(e).subspan(halves.group_offset(i), n[i]));
    }
    for (int& v : e) v *= 2;
    g.coeffs[g.space.rank(e)] = c;
  }
  return g;
}

DnnProblem assemble(const MultiForm& f, BasisOptions opts) {
  std::vector<int> tau(f.space.degrees());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] % 2 != 0) {
      throw InputError("assemble: group " + std::to_string(i + 1) +
                       " has odd degree; lift the form first");
    }
    tau[i] /= 2;
  }
  opts.materialize_classes = true;
  DnnProblem prob;
  prob.basis = std::make_shared<const MomentBasis>(f.space.dims(), tau, opts);
  prob.f = f;
  prob.g = g_coefficients(f.space.dims(), tau);
  const auto& basis = *prob.basis;
  Eigen::VectorXd fc(static_cast<Eigen::Index>(basis.class_count()));
  Eigen::VectorXd gc(fc.size());
  for (Eigen::Index a = 0; a < fc.size(); ++a) {
    fc[a] = prob.f.coeffs[a] / basis.weight(a);
    gc[a] = prob.g.coeffs[a] / basis.weight(a);
  }
  prob.objective = basis.moment_matrix(fc);
  prob.normalization = basis.moment_matrix(gc);
  return prob;
}

double lift_scale_factor(int degree) {
  const double d = degree;
  // sqrt((d+1)^{d+1} / d^d), evaluated in logs to stay finite for large d.
  return std::exp(0.5 * ((d + 1.0) * std::log(d + 1.0) - d * std::log(d)));
}

LiftedForm lift_odd(const MultiForm& f) {
  if (!f.has_odd_degree()) throw InputError("lift_odd: no group has odd degree");
  const int p = f.space.groups();
  LiftInfo lift;
  lift.original_n = f.space.dims();
  lift.original_degree = f.space.degrees();
  lift.lifted.assign(p, false);
  lift.scale_factors.assign(p, 1.0);
  std::vector<int> n(lift.original_n);
  std::vector<int> deg(lift.original_degree);
  for (int i = 0; i < p; ++i) {
    if (deg[i] % 2 == 0) continue;
    lift.lifted[i] = true;
    lift.scale_factors[i] = lift_scale_factor(deg[i]);
    ++n[i];
    ++deg[i];
  }
  MultiForm out(MonomialSpace(n, deg));
  MultiIndex e(out.space.variables(), 0);
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] == 0.0) continue;
    const MultiIndex src = f.space.exponents(k);
    for (int i = 0; i < p; ++i) {
      const int from = f.space.group_offset(i);
      const int to = out.space.group_offset(i);
      for (int j = 0; j < f.space.n(i); ++j) e[to + j] = src[from + j];
      if (lift.lifted[i]) e[to + f.space.n(i)] = 1;
    }
    out.coeffs[out.space.rank(e)] = f.coeffs[k];
  }
  return {std::move(out), std::move(lift)};
}

MultiForm square_substitute(const MultiForm& f, const std::vector<bool>& groups) {
  const int p = f.space.groups();
  if (static_cast<int>(groups.size()) != p) {
    throw InputError("square_substitute: group mask has the wrong length");
  }
  std::vector<int> deg(f.space.degrees());
  for (int i = 0; i < p; ++i) {
    if (groups[i]) deg[i] *= 2;
  }
  MultiForm out(MonomialSpace(f.space.dims(), deg));
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] == 0.0) continue;
    MultiIndex e = f.space.exponents(k);
    for (int i = 0; i < p; ++i) {
      if (!groups[i]) continue;
      const int off = f.space.group_offset(i);
      for (int j = 0; j < f.space.n(i); ++j) e[off + j] *= 2;
    }
    out.coeffs[out.space.rank(e)] = f.coeffs[k];
  }
  return out;
}

LinearReduction::LinearReduction(const MultiForm& f, int group) : group_(group) {
  const int p = f.space.groups();
  if (group < 0 || group >= p) throw InputError("reduce_linear: group out of range");
  if (f.space.degree(group) != 1) {
    throw InputError("reduce_linear: degree in group " + std::to_string(group + 1) +
                     " is " + std::to_string(f.space.degree(group)) + ", expected 1");
  }
  if (p < 2) throw InputError("reduce_linear: no groups left after the reduction");

  std::vector<int> n_rest, deg_rest;
  for (int i = 0; i < p; ++i) {
    if (i == group) continue;
    n_rest.push_back(f.space.n(i));
    deg_rest.push_back(f.space.degree(i));
  }
  const MonomialSpace rest(n_rest, deg_rest);
  const int nj = f.space.n(group);
  components_.assign(nj, MultiForm(rest));
  MultiIndex e(rest.variables(), 0);
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] == 0.0) continue;
    const MultiIndex src = f.space.exponents(k);
    int j = 0;
    const int off = f.space.group_offset(group);
    while (src[off + j] == 0) ++j;
    int pos = 0;
    for (int i = 0; i < p; ++i) {
      if (i == group) continue;
      const int from = f.space.group_offset(i);
      for (int v = 0; v < f.space.n(i); ++v) e[pos++] = src[from + v];
    }
    components_[j].coeffs[rest.rank(e)] += f.coeffs[k];
  }
  reduced_ = multiply(components_[0], components_[0]);
  for (int j = 1; j < nj; ++j) {
    const MultiForm sq = multiply(components_[j], components_[j]);
    for (std::size_t k = 0; k < sq.coeffs.size(); ++k) reduced_.coeffs[k] += sq.coeffs[k];
  }
}

RecoveredBlock LinearReduction::recover(const GroupedVector& rest, double sign_tol) const {
  RecoveredBlock out;
  out.u.reserve(components_.size());
  double neg_sq = 0.0;
  bool all_nonpositive = true;
  for (const MultiForm& c : components_) {
    const double u = c.evaluate(rest);
    out.u.push_back(u);
    if (u > sign_tol) all_nonpositive = false;
    if (u < 0.0) neg_sq += u * u;
  }
  if (neg_sq == 0.0) {
    out.reason = "u_- is zero";
    return out;
  }
  if (!all_nonpositive) {
    out.reason = "some f(e_j, x_rest) is positive";
    return out;
  }
  const double norm = std::sqrt(neg_sq);
  out.block.reserve(out.u.size());
  for (double u : out.u) out.block.push_back(u < 0.0 ? -u / norm : 0.0);
  out.applicable = true;
  return out;
}

LinearReduction reduce_linear(const MultiForm& f, int group) { return LinearReduction(f, group); }

}  // namespace nnrank
