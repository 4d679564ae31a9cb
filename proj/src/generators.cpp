#include "nnrank/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <utility>

#include "nnrank/errors.hpp"
#include "nnrank/random.hpp"

namespace nnrank {

namespace {

using Entry = std::pair<std::vector<int>, double>;  // 1-based index, value

Tensor symmetric_from(int order, int dim, std::initializer_list<Entry> entries) {
  Tensor a(Shape::symmetric(order, dim));
  for (const auto& [idx, v] : entries) {
    std::vector<int> z(idx);
    for (int& i : z) --i;
    assign_orbit(a, z, v);
  }
  return a;
}

void require_positive(int v, const char* what) {
  if (v < 1) throw InputError(std::string("generator: ") + what + " must be positive");
}

// Fills every entry of a tensor from its 1-based slot indices.
Tensor from_formula(Shape shape, const std::function<double(const std::vector<int>&)>& f) {
  Tensor a(std::move(shape));
  auto entries = a.entries();
  for (std::size_t off = 0; off < entries.size(); ++off) {
    std::vector<int> idx = a.index_of(off);
    for (int& i : idx) ++i;
    entries[off] = f(idx);
  }
  return a;
}

Tensor symmetric_formula(int m, int n, const std::function<double(const std::vector<int>&)>& f) {
  require_positive(m, "order");
  require_positive(n, "dimension");
  return from_formula(Shape::symmetric(m, n), f);
}

Tensor plain_formula(int m, int n, const std::function<double(const std::vector<int>&)>& f) {
  require_positive(m, "order");
  require_positive(n, "dimension");
  return from_formula(Shape::multilinear(std::vector<int>(m, n)), f);
}

double sign_of(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Iterates over canonical (nondecreasing) index tuples of a symmetric tensor.
template <typename F>
void for_each_orbit(int m, int n, F&& f) {
  std::vector<int> idx(m, 0);
  while (true) {
    f(idx);
    int k = m - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) return;
    ++idx[k];
    for (int j = k + 1; j < m; ++j) idx[j] = idx[k];
  }
}

}  // namespace

Tensor example1() {
  return symmetric_from(3, 2, {{{1, 1, 1}, 1.5578},
                               {{2, 2, 2}, 1.1226},
                               {{1, 1, 2}, -2.4443},
                               {{2, 2, 1}, -1.0982}});
}

Tensor example2(bool variant_b) {
  Tensor a(Shape::multilinear({2, 2, 2, 2}));
  auto set = [&a](std::vector<int> idx, double v) {
    for (int& i : idx) --i;
    a.at(idx) = v;
  };
  set({1, 1, 1, 1}, 25.1);
  set({1, 2, 1, 2}, 25.6);
  set({2, 1, 2, 1}, 24.8);
  set({2, 2, 2, 2}, 23.0);
  if (variant_b) {
    set({1, 1, 2, 1}, 0.3);
    set({2, 1, 1, 1}, 0.3);
  }
  return a;
}

Tensor example3() {
  return symmetric_from(3, 3, {{{1, 1, 1}, 0.0517}, {{1, 1, 2}, 0.3579}, {{1, 1, 3}, 0.5298},
                               {{1, 2, 2}, 0.7544}, {{1, 2, 3}, 0.2156}, {{1, 3, 3}, 0.3612},
                               {{2, 2, 2}, 0.3943}, {{2, 2, 3}, 0.0146}, {{2, 3, 3}, 0.6718},
                               {{3, 3, 3}, 0.9723}});
}

Tensor example4() {
  return symmetric_from(4, 3, {{{1, 1, 1, 1}, 0.2883},  {{1, 1, 1, 2}, -0.0031},
                               {{1, 1, 1, 3}, 0.1973},  {{1, 1, 2, 2}, -0.2485},
                               {{1, 1, 2, 3}, -0.2939}, {{1, 1, 3, 3}, 0.3847},
                               {{1, 2, 2, 2}, 0.2972},  {{1, 2, 2, 3}, 0.1862},
                               {{1, 2, 3, 3}, 0.0919},  {{1, 3, 3, 3}, -0.3619},
                               {{2, 2, 2, 2}, 0.1241},  {{2, 2, 2, 3}, -0.3420},
                               {{2, 2, 3, 3}, 0.2127},  {{2, 3, 3, 3}, 0.2727},
                               {{3, 3, 3, 3}, -0.3054}});
}

Tensor example5() {
  return symmetric_from(3, 3, {{{1, 1, 1}, -0.1281}, {{1, 1, 2}, 0.0516}, {{1, 1, 3}, -0.0954},
                               {{1, 2, 2}, -0.1958}, {{1, 2, 3}, -0.1790}, {{1, 3, 3}, -0.2676},
                               {{2, 2, 2}, 0.3251},  {{2, 2, 3}, 0.2513},  {{2, 3, 3}, 0.1773},
                               {{3, 3, 3}, 0.0338}});
}

Tensor example6() {
  return symmetric_from(6, 3, {{{1, 1, 1, 1, 1, 1}, 2.0},
                               {{1, 1, 1, 1, 2, 2}, 1.0 / 3.0},
                               {{1, 1, 1, 1, 3, 3}, 2.0 / 5.0},
                               {{1, 1, 2, 2, 2, 2}, 1.0 / 3.0},
                               {{1, 1, 2, 2, 3, 3}, 1.0 / 6.0},
                               {{1, 1, 3, 3, 3, 3}, 2.0 / 5.0},
                               {{2, 2, 2, 2, 2, 2}, 2.0},
                               {{2, 2, 2, 2, 3, 3}, 2.0 / 5.0},
                               {{2, 2, 3, 3, 3, 3}, 2.0 / 5.0},
                               {{3, 3, 3, 3, 3, 3}, 1.0}});
}

Tensor example18() {
  return symmetric_from(3, 3, {{{1, 1, 3}, 2.0}, {{2, 2, 3}, 2.0}, {{1, 2, 3}, -1.0}});
}

Tensor example7(int m, int n) {
  return symmetric_formula(m, n, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) s += sign_of(i) / i;
    return s;
  });
}

Tensor example8(int m, int n) {
  return symmetric_formula(m, n, [n](const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) s += std::atan(sign_of(i) * i / static_cast<double>(n));
    return s;
  });
}

Tensor example9(int m, int n) {
  return symmetric_formula(m, n, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) s += sign_of(i) * std::log(static_cast<double>(i));
    return s;
  });
}

Tensor example10(int m, int n) {
  return symmetric_formula(m, n, [](const std::vector<int>& idx) {
    return std::sin(static_cast<double>(std::accumulate(idx.begin(), idx.end(), 0)));
  });
}

Tensor example11(int m, int n) {
  return plain_formula(m, n, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) s += static_cast<double>(j + 1) * idx[j];
    return std::cos(s);
  });
}

Tensor example12(int m, int n) {
  return plain_formula(m, n, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const int jj = static_cast<int>(j) + 1;
      s += sign_of(jj + 1) * jj * std::exp(-static_cast<double>(idx[j]));
    }
    return s;
  });
}

Tensor example13(int m, int n) {
  return plain_formula(m, n, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const int jj = static_cast<int>(j) + 1;
      s += sign_of(jj + 1) * idx[j] / static_cast<double>(jj);
    }
    return std::tan(s);
  });
}

namespace {

// Sum over permutations sigma of weight(sigma) at index (sigma(1), ..., sigma(n)).
Tensor permutation_tensor(int n, bool signed_entries) {
  require_positive(n, "dimension");
  Tensor a(Shape::multilinear(std::vector<int>(n, n)));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double v = 1.0;
    if (signed_entries) {
      int inversions = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
      }
      v = sign_of(inversions);
    }
    a.at(perm) = v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a;
}

}  // namespace

Tensor levi_civita(int n) { return permutation_tensor(n, true); }

Tensor permanent(int n) { return permutation_tensor(n, false); }

Tensor matmul(int m, int n, int q) {
  require_positive(m, "m");
  require_positive(n, "n");
  require_positive(q, "q");
  Tensor a(Shape::multilinear({m * q, m * n, n * q}));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < q; ++k) {
        const int idx[3] = {i * q + k, i * n + j, j * q + k};
        a.at(idx) = 1.0;
      }
    }
  }
  return a;
}

Tensor random_sym(int m, int n, std::mt19937_64& rng) {
  require_positive(m, "order");
  require_positive(n, "dimension");
  Tensor a(Shape::symmetric(m, n));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for_each_orbit(m, n, [&](const std::vector<int>& idx) { assign_orbit(a, idx, unif(rng)); });
  return a;
}

Tensor diag_dominant(int m, int n, std::mt19937_64& rng) {
  Tensor a = random_sym(m, n, rng);
  auto entries = a.entries();
  std::vector<double> negative(n, 0.0);
  for (std::size_t off = 0; off < entries.size(); ++off) {
    const std::vector<int> idx = a.index_of(off);
    const bool diagonal = std::all_of(idx.begin(), idx.end(), [&](int i) { return i == idx[0]; });
    if (!diagonal && entries[off] < 0.0) negative[idx[0]] += entries[off];
  }
  for (int i = 0; i < n; ++i) {
    const std::vector<int> idx(m, i);
    a.at(idx) = 1e-6 - negative[i];
  }
  return a;
}

GeneratorSpec parse_generator(std::string_view text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.family = std::string(text.substr(0, colon));
  if (spec.family.empty()) throw InputError("generator: empty family name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view tok = rest.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InputError("generator: bad parameter '" + std::string(tok) + "'");
    }
    spec.params.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

namespace {

struct Family {
  std::size_t arity;
  bool random;
  std::function<Tensor(const std::vector<int>&, std::mt19937_64&)> make;
};

const std::map<std::string, Family>& families() {
  using P = const std::vector<int>&;
  using R = std::mt19937_64&;
  static const std::map<std::string, Family> table = {
      {"example1", {0, false, [](P, R) { return example1(); }}},
      {"example2", {0, false, [](P, R) { return example2(false); }}},
      {"example2b", {0, false, [](P, R) { return example2(true); }}},
      {"example3", {0, false, [](P, R) { return example3(); }}},
      {"example4", {0, false, [](P, R) { return example4(); }}},
      {"example5", {0, false, [](P, R) { return example5(); }}},
      {"example6", {0, false, [](P, R) { return example6(); }}},
      {"example18", {0, false, [](P, R) { return example18(); }}},
      {"example7", {2, false, [](P p, R) { return example7(p[0], p[1]); }}},
      {"example8", {2, false, [](P p, R) { return example8(p[0], p[1]); }}},
      {"example9", {2, false, [](P p, R) { return example9(p[0], p[1]); }}},
      {"example10", {2, false, [](P p, R) { return example10(p[0], p[1]); }}},
      {"example11", {2, false, [](P p, R) { return example11(p[0], p[1]); }}},
      {"example12", {2, false, [](P p, R) { return example12(p[0], p[1]); }}},
      {"example13", {2, false, [](P p, R) { return example13(p[0], p[1]); }}},
      {"levi_civita", {1, false, [](P p, R) { return levi_civita(p[0]); }}},
      {"permanent", {1, false, [](P p, R) { return permanent(p[0]); }}},
      {"matmul", {3, false, [](P p, R) { return matmul(p[0], p[1], p[2]); }}},
      {"example19", {2, true, [](P p, R r) { return diag_dominant(p[0], p[1], r); }}},
      {"diag_dominant", {2, true, [](P p, R r) { return diag_dominant(p[0], p[1], r); }}},
      {"example20", {2, true, [](P p, R r) { return random_sym(p[0], p[1], r); }}},
      {"random_sym", {2, true, [](P p, R r) { return random_sym(p[0], p[1], r); }}},
  };
  return table;
}

const Family& find_family(const std::string& name) {
  const auto& table = families();
  const auto it = table.find(name);
  if (it == table.end()) throw InputError("generator: unknown family '" + name + "'");
  return it->second;
}

}  // namespace

bool is_random_family(const std::string& family) { return find_family(family).random; }

Tensor generate(const GeneratorSpec& spec, std::uint64_t seed, std::uint64_t index) {
  const Family& fam = find_family(spec.family);
  if (spec.params.size() != fam.arity) {
    throw InputError("generator: family '" + spec.family + "' takes " +
                     std::to_string(fam.arity) + " parameter(s), got " +
                     std::to_string(spec.params.size()));
  }
  std::mt19937_64 rng = make_rng(seed, index);
  return fam.make(spec.params, rng);
}

std::vector<std::string> generator_families() {
  std::vector<std::string> out;
  for (const auto& [name, fam] : families()) out.push_back(name);
  return out;
}

}  // namespace nnrank
