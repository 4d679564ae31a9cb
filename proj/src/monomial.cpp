#include "nnrank/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nnrank/errors.hpp"

namespace nnrank {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t nu(int s, int n) {
  if (n < 1 || s < 0) return s == 0 ? 1 : 0;
  return binomial(n + s - 1, s);
}

namespace {

// Counting beyond this many monomials per group is fine, listing them is not.
constexpr std::size_t kMaxListedGroupMonomials = 2'000'000;

void fill_exponents(int n, int s, int pos, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = s;
    out.push_back(cur);
    return;
  }
  for (int v = s; v >= 0; --v) {
    cur[pos] = v;
    fill_exponents(n, s - v, pos + 1, cur, out);
  }
}

std::vector<int> unrank_exponents(int n, int s, std::uint64_t r) {
  std::vector<int> e(n, 0);
  for (int j = 0; j + 1 < n; ++j) {
    for (int v = s; v >= 0; --v) {
      const std::uint64_t c = nu(s - v, n - j - 1);
      if (r < c) {
        e[j] = v;
        s -= v;
        break;
      }
      r -= c;
    }
  }
  e[n - 1] = s;
  return e;
}

}  // namespace

std::vector<std::vector<int>> enumerate_exponents(int n, int s) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  out.reserve(nu(s, n));
  std::vector<int> cur(n, 0);
  fill_exponents(n, s, 0, cur, out);
  return out;
}

std::uint64_t exponent_rank(std::span<const int> exps) {
  const int n = static_cast<int>(exps.size());
  int rest = std::accumulate(exps.begin(), exps.end(), 0);
  std::uint64_t r = 0;
  for (int j = 0; j + 1 < n; ++j) {
    // Vectors with a larger j-th exponent come first; there are
    // sum_{u < rest - e_j} nu(u, n - j - 1) = nu(rest - e_j - 1, n - j) of them.
    if (rest > exps[j]) r += nu(rest - exps[j] - 1, n - j);
    rest -= exps[j];
  }
  return r;
}

MonomialSpace::MonomialSpace(std::vector<int> n, std::vector<int> degree)
    : n_(std::move(n)), degree_(std::move(degree)) {
  if (n_.size() != degree_.size() || n_.empty()) {
    throw InputError("monomial space: need one degree per group");
  }
  const int p = groups();
  offsets_.assign(p + 1, 0);
  for (int i = 0; i < p; ++i) {
    if (n_[i] < 1 || degree_[i] < 0) {
      throw InputError("monomial space: invalid group " + std::to_string(i + 1));
    }
    offsets_[i + 1] = offsets_[i] + n_[i];
  }
  strides_.assign(p, 1);
  size_ = 1;
  for (int i = p; i-- > 0;) {
    strides_[i] = size_;
    size_ *= nu(degree_[i], n_[i]);
  }
  group_monomials_.resize(p);
  for (int i = 0; i < p; ++i) {
    if (nu(degree_[i], n_[i]) <= kMaxListedGroupMonomials) {
      group_monomials_[i] = enumerate_exponents(n_[i], degree_[i]);
    }
  }
}

std::size_t MonomialSpace::group_rank(int /*group*/, std::span<const int> exps) const {
  return exponent_rank(exps);
}

std::size_t MonomialSpace::rank(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != variables()) {
    throw InputError("monomial: exponent vector has wrong length");
  }
  std::size_t r = 0;
  for (int i = 0; i < groups(); ++i) {
    r += strides_[i] * group_rank(i, exps.subspan(offsets_[i], n_[i]));
  }
  return r;
}

std::size_t MonomialSpace::compose(std::span<const std::size_t> group_index) const {
  std::size_t r = 0;
  for (int i = 0; i < groups(); ++i) r += strides_[i] * group_index[i];
  return r;
}

std::vector<std::size_t> MonomialSpace::split(std::size_t index) const {
  std::vector<std::size_t> parts(groups());
  for (int i = 0; i < groups(); ++i) {
    parts[i] = index / strides_[i];
    index %= strides_[i];
  }
  return parts;
}

MultiIndex MonomialSpace::exponents(std::size_t index) const {
  MultiIndex e(variables(), 0);
  const auto parts = split(index);
  for (int i = 0; i < groups(); ++i) {
    const auto& listed = group_monomials_[i];
    const std::vector<int> g = listed.empty()
                                   ? unrank_exponents(n_[i], degree_[i], parts[i])
                                   : listed[parts[i]];
    std::copy(g.begin(), g.end(), e.begin() + offsets_[i]);
  }
  return e;
}

bool MonomialSpace::contains(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != variables()) return false;
  for (int i = 0; i < groups(); ++i) {
    int s = 0;
    for (int k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (exps[k] < 0) return false;
      s += exps[k];
    }
    if (s != degree_[i]) return false;
  }
  return true;
}

std::vector<double> MonomialSpace::evaluate_all(const GroupedVector& x) const {
  if (static_cast<int>(x.size()) != groups()) {
    throw InputError("monomial evaluation: wrong number of blocks");
  }
  std::vector<double> out{1.0};
  for (int i = 0; i < groups(); ++i) {
    if (static_cast<int>(x[i].size()) != n_[i]) {
      throw InputError("monomial evaluation: block " + std::to_string(i + 1) +
                       " has wrong dimension");
    }
    std::vector<double> vals;
    vals.reserve(group_monomials_[i].size());
    for (const auto& e : group_monomials_[i]) {
      double v = 1.0;
      for (int k = 0; k < n_[i]; ++k) {
        for (int m = 0; m < e[k]; ++m) v *= x[i][k];
      }
      vals.push_back(v);
    }
    std::vector<double> next;
    next.reserve(out.size() * vals.size());
    for (double a : out) {
      for (double b : vals) next.push_back(a * b);
    }
    out.swap(next);
  }
  return out;
}

double multinomial(std::span<const int> exps) {
  const int total = std::accumulate(exps.begin(), exps.end(), 0);
  double r = std::lgamma(total + 1.0);
  for (int e : exps) r -= std::lgamma(e + 1.0);
  return std::round(std::exp(r));
}

double MultiForm::evaluate(const GroupedVector& x) const {
  const auto mono = space.evaluate_all(x);
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * mono[k];
  return s;
}

bool MultiForm::has_odd_degree() const {
  for (int d : space.degrees()) {
    if (d % 2 != 0) return true;
  }
  return false;
}

MultiForm MultiForm::operator-() const {
  MultiForm out = *this;
  for (double& c : out.coeffs) c = -c;
  return out;
}

MultiForm multiply(const MultiForm& a, const MultiForm& b) {
  if (a.space.dims() != b.space.dims()) {
    throw InputError("multiply: multi-forms live in different variable groups");
  }
  std::vector<int> deg(a.space.degrees());
  for (int i = 0; i < a.space.groups(); ++i) deg[i] += b.space.degree(i);
  MultiForm out(MonomialSpace(a.space.dims(), deg));
  for (std::size_t ka = 0; ka < a.coeffs.size(); ++ka) {
    if (a.coeffs[ka] == 0.0) continue;
    const auto ea = a.space.exponents(ka);
    for (std::size_t kb = 0; kb < b.coeffs.size(); ++kb) {
      if (b.coeffs[kb] == 0.0) continue;
      auto e = b.space.exponents(kb);
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += ea[v];
      out.coeffs[out.space.rank(e)] += a.coeffs[ka] * b.coeffs[kb];
    }
  }
  return out;
}

MultiForm to_multiform(const Tensor& a) {
  const Shape& shape = a.shape();
  MultiForm f(MonomialSpace(shape.n, shape.alpha));
  const auto groups = shape.slot_groups();
  std::vector<int> offsets(shape.groups(), 0);
  for (int i = 1; i < shape.groups(); ++i) offsets[i] = offsets[i - 1] + shape.n[i - 1];
  const int vars = f.space.variables();
  auto entries = a.entries();
  MultiIndex e(vars, 0);
  for (std::size_t off = 0; off < entries.size(); ++off) {
    if (entries[off] == 0.0) continue;
    const auto index = a.index_of(off);
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t k = 0; k < index.size(); ++k) ++e[offsets[groups[k]] + index[k]];
    f.coeffs[f.space.rank(e)] += entries[off];
  }
  return f;
}

Tensor from_multiform(const MultiForm& f) {
  Shape shape(f.space.degrees(), f.space.dims());
  Tensor out(shape);
  const auto groups = shape.slot_groups();
  std::vector<int> offsets(shape.groups(), 0);
  for (int i = 1; i < shape.groups(); ++i) offsets[i] = offsets[i - 1] + shape.n[i - 1];
  auto entries = out.entries();
  MultiIndex e(f.space.variables(), 0);
  for (std::size_t off = 0; off < entries.size(); ++off) {
    const auto index = out.index_of(off);
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t k = 0; k < index.size(); ++k) ++e[offsets[groups[k]] + index[k]];
    const double c = f.coeffs[f.space.rank(e)];
    if (c == 0.0) continue;
    double orbit = 1.0;
    for (int i = 0; i < shape.groups(); ++i) {
      orbit *= multinomial(std::span<const int>(e).subspan(offsets[i], shape.n[i]));
    }
    entries[off] = c / orbit;
  }
  return out;
}

}  // namespace nnrank
