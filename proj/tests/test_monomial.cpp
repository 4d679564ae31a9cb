#include <doctest.h>

#include <algorithm>
#include <random>

#include "nnrank/errors.hpp"
#include "nnrank/monomial.hpp"
#include "test_util.hpp"

namespace nnrank {
namespace {

// Brute-force enumeration of exponent vectors of length n and degree s via
// counting in base (s + 1); independent of the library's recursion.
std::vector<std::vector<int>> brute_exponents(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  while (true) {
    int sum = 0;
    for (int v : e) sum += v;
    if (sum == s) out.push_back(e);
    int k = n - 1;
    while (k >= 0 && e[k] == s) e[k--] = 0;
    if (k < 0) break;
    ++e[k];
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

TEST_SUITE("monomial") {

TEST_CASE("binomial and nu") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(100, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(nu(2, 100) == 5050);
  CHECK(nu(4, 100) == 4421275);
  CHECK(nu(0, 7) == 1);
}

TEST_CASE("enumeration is descending lexicographic and complete") {
  for (int n = 1; n <= 4; ++n) {
    for (int s = 0; s <= 5; ++s) {
      const auto lib = enumerate_exponents(n, s);
      CHECK(lib == brute_exponents(n, s));
      CHECK(lib.size() == nu(s, n));
      for (std::size_t k = 0; k < lib.size(); ++k) CHECK(exponent_rank(lib[k]) == k);
    }
  }
}

TEST_CASE("z1^2 > z1 z2 > z2^2 ordering") {
  const auto e = enumerate_exponents(2, 2);
  CHECK(e[0] == std::vector<int>{2, 0});
  CHECK(e[1] == std::vector<int>{1, 1});
  CHECK(e[2] == std::vector<int>{0, 2});
}

TEST_CASE("monomial space: rank, exponents and compose/split round trip") {
  const MonomialSpace sp({2, 3}, {1, 2});
  CHECK(sp.size() == 2 * 6);
  CHECK(sp.variables() == 5);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const MultiIndex e = sp.exponents(k);
    CHECK(sp.rank(e) == k);
    CHECK(sp.compose(sp.split(k)) == k);
    CHECK(sp.contains(e));
  }
  // Group 1 is most significant.
  CHECK(sp.exponents(0) == MultiIndex{1, 0, 2, 0, 0});
  CHECK(sp.exponents(6) == MultiIndex{0, 1, 2, 0, 0});
  CHECK_FALSE(sp.contains(MultiIndex{2, 0, 1, 0, 0}));
}

TEST_CASE("evaluate_all agrees with direct powers") {
  std::mt19937_64 rng(5);
  const MonomialSpace sp({3, 2}, {2, 3});
  const GroupedVector x = testing::random_real({3, 2}, rng);
  const std::vector<double> v = sp.evaluate_all(x);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const MultiIndex e = sp.exponents(k);
    double p = 1.0;
    for (int j = 0; j < 3; ++j) p *= std::pow(x[0][j], e[j]);
    for (int j = 0; j < 2; ++j) p *= std::pow(x[1][j], e[3 + j]);
    CHECK(v[k] == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("multinomial counts orderings") {
  CHECK(multinomial(std::vector<int>{2, 1}) == 3.0);
  CHECK(multinomial(std::vector<int>{1, 1, 1}) == 6.0);
  CHECK(multinomial(std::vector<int>{4, 0}) == 1.0);
  CHECK(multinomial(std::vector<int>{2, 2}) == 6.0);
}

TEST_CASE("to_multiform preserves values and from_multiform symmetrizes") {
  std::mt19937_64 rng(6);
  for (const Shape& s : {Shape({3}, {3}), Shape({2, 1}, {2, 3}), Shape::multilinear({2, 2, 2})}) {
    const Tensor a = testing::random_tensor(s, rng);
    const MultiForm f = to_multiform(a);
    for (int t = 0; t < 5; ++t) {
      const GroupedVector x = testing::random_real(s.n, rng);
      CHECK(f.evaluate(x) == doctest::Approx(testing::naive_eval(a, x)).epsilon(1e-12));
    }
    CHECK(hs_norm(from_multiform(f) - a) < 1e-12);
  }
  // A non-symmetric tensor maps to the multi-form of its symmetrization.
  Tensor b(Shape({2}, {2}), {0, 1, 0, 0});
  const MultiForm fb = to_multiform(b);
  CHECK(fb.coeffs == std::vector<double>{0, 1, 0});
  CHECK(hs_norm(from_multiform(fb) - symmetrize(b)) < 1e-15);
}

TEST_CASE("multiply is polynomial multiplication") {
  std::mt19937_64 rng(7);
  MultiForm a(MonomialSpace({2, 2}, {1, 2}));
  MultiForm b(MonomialSpace({2, 2}, {2, 1}));
  std::uniform_real_distribution<double> u(-1, 1);
  for (double& c : a.coeffs) c = u(rng);
  for (double& c : b.coeffs) c = u(rng);
  const MultiForm ab = multiply(a, b);
  CHECK(ab.space.degrees() == std::vector<int>{3, 3});
  for (int t = 0; t < 5; ++t) {
    const GroupedVector x = testing::random_real({2, 2}, rng);
    CHECK(ab.evaluate(x) == doctest::Approx(a.evaluate(x) * b.evaluate(x)).epsilon(1e-12));
  }
  CHECK(ab.has_odd_degree());
  CHECK_FALSE(multiply(ab, ab).has_odd_degree());
}

}  // TEST_SUITE

}  // namespace
}  // namespace nnrank
