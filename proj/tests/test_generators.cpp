#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nnrank/errors.hpp"
#include "nnrank/generators.hpp"

namespace nnrank {
namespace {

// 1-based lookup, as the formulas are written.
double entry(const Tensor& a, std::vector<int> idx) {
  for (int& i : idx) --i;
  return a.at(idx);
}

TEST_SUITE("generators") {

TEST_CASE("fixed instances have the stated shapes and entries") {
  CHECK(example1().shape() == Shape({3}, {2}));
  CHECK(entry(example1(), {2, 1, 1}) == -2.4443);
  CHECK(example2().shape() == Shape::multilinear({2, 2, 2, 2}));
  CHECK(entry(example2(), {1, 2, 1, 2}) == 25.6);
  CHECK(entry(example2(), {1, 1, 2, 1}) == 0.0);
  CHECK(entry(example2(true), {1, 1, 2, 1}) == 0.3);
  CHECK(entry(example3(), {3, 2, 1}) == 0.2156);
  CHECK(entry(example4(), {3, 1, 3, 1}) == 0.3847);
  CHECK(entry(example5(), {2, 3, 2}) == 0.2513);
  CHECK(example6().shape() == Shape({6}, {3}));
  CHECK(entry(example6(), {3, 1, 2, 3, 1, 2}) == doctest::Approx(1.0 / 6.0));
  CHECK(entry(example18(), {3, 1, 2}) == -1.0);
  CHECK(entry(example18(), {1, 1, 1}) == 0.0);
  for (const Tensor& t : {example1(), example3(), example4(), example5(), example6(), example18()})
    CHECK(t.is_partially_symmetric());
}

TEST_CASE("formula families at hand-computed entries") {
  CHECK(entry(example7(3, 2), {1, 1, 2}) == doctest::Approx(-1.5));
  CHECK(entry(example8(2, 3), {1, 2}) == doctest::Approx(std::atan(-1.0 / 3) + std::atan(2.0 / 3)));
  CHECK(entry(example9(2, 3), {2, 3}) == doctest::Approx(std::log(2.0) - std::log(3.0)));
  CHECK(entry(example10(3, 2), {1, 2, 2}) == doctest::Approx(std::sin(5.0)));
  CHECK(entry(example11(2, 3), {2, 3}) == doctest::Approx(std::cos(8.0)));
  CHECK(entry(example11(2, 3), {3, 2}) == doctest::Approx(std::cos(7.0)));
  CHECK(entry(example12(3, 2), {1, 2, 1}) ==
        doctest::Approx(std::exp(-1.0) - 2 * std::exp(-2.0) + 3 * std::exp(-1.0)));
  CHECK(entry(example13(2, 3), {3, 2}) == doctest::Approx(std::tan(3.0 - 1.0)));
  CHECK(example7(4, 3).is_partially_symmetric());
  CHECK(example11(3, 2).shape() == Shape::multilinear({2, 2, 2}));
  CHECK_THROWS_AS(example7(0, 3), InputError);
}

TEST_CASE("determinant and permanent tensors") {
  const Tensor lc = levi_civita(3);
  CHECK(entry(lc, {1, 2, 3}) == 1.0);
  CHECK(entry(lc, {2, 3, 1}) == 1.0);
  CHECK(entry(lc, {3, 1, 2}) == 1.0);
  CHECK(entry(lc, {1, 3, 2}) == -1.0);
  CHECK(entry(lc, {2, 1, 3}) == -1.0);
  CHECK(entry(lc, {3, 2, 1}) == -1.0);
  CHECK(entry(lc, {1, 1, 2}) == 0.0);
  CHECK(hs_norm(lc) == doctest::Approx(std::sqrt(6.0)));
  const Tensor pm = permanent(4);
  CHECK(std::count(pm.entries().begin(), pm.entries().end(), 1.0) == 24);
  CHECK(*std::min_element(pm.entries().begin(), pm.entries().end()) == 0.0);
}

TEST_CASE("matrix multiplication tensor contracts to the product") {
  const int m = 2, n = 3, q = 2;
  const Tensor t = matmul(m, n, q);
  CHECK(t.shape() == Shape::multilinear({m * q, m * n, n * q}));
  // <T, e_c (x) vec(A) (x) vec(B)> over the last two slots gives C = AB.
  std::vector<double> a(m * n), b(n * q);
  for (int k = 0; k < m * n; ++k) a[k] = k + 1.0;
  for (int k = 0; k < n * q; ++k) b[k] = 2.0 * k - 3.0;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < q; ++k) {
      std::vector<double> e(m * q, 0.0);
      e[i * q + k] = 1.0;
      double c = 0.0;
      for (int j = 0; j < n; ++j) c += a[i * n + j] * b[j * q + k];
      CHECK(eval_multiform(t, {e, a, b}) == doctest::Approx(c));
    }
  }
}

TEST_CASE("random families are seeded and satisfy their construction") {
  const Tensor a = generate({"random_sym", {3, 3}}, 5, 2);
  CHECK(a.is_partially_symmetric());
  CHECK(hs_norm(a - generate({"random_sym", {3, 3}}, 5, 2)) == 0.0);
  CHECK(hs_norm(a - generate({"random_sym", {3, 3}}, 5, 3)) > 0.0);
  for (double v : a.entries()) CHECK(std::abs(v) <= 1.0);

  const Tensor d = generate({"example19", {3, 3}}, 8, 0);
  CHECK(d.is_partially_symmetric());
  for (int i = 0; i < 3; ++i) {
    double neg = 0.0;
    for (std::size_t off = 0; off < d.size(); ++off) {
      const auto idx = d.index_of(off);
      if (idx[0] != i) continue;
      if (idx[1] == i && idx[2] == i) continue;
      neg += std::min(0.0, d.entries()[off]);
    }
    CHECK(d.at(std::vector<int>{i, i, i}) == doctest::Approx(1e-6 - neg).epsilon(1e-14));
  }
}

TEST_CASE("spec parsing and dispatch") {
  const GeneratorSpec s = parse_generator("matmul:2,2,3");
  CHECK(s.family == "matmul");
  CHECK(s.params == std::vector<int>{2, 2, 3});
  CHECK(parse_generator("example3").params.empty());
  CHECK_THROWS_AS(parse_generator("example7:3,x"), InputError);
  CHECK_THROWS_AS(parse_generator(":3"), InputError);
  CHECK_THROWS_AS(generate({"nope", {}}), InputError);
  CHECK_THROWS_AS(generate({"example7", {3}}), InputError);
  CHECK(is_random_family("random_sym"));
  CHECK_FALSE(is_random_family("example3"));
  CHECK(hs_norm(generate(parse_generator("levi_civita:3")) - levi_civita(3)) == 0.0);
  const auto fams = generator_families();
  CHECK(std::find(fams.begin(), fams.end(), "permanent") != fams.end());
}

}  // TEST_SUITE

}  // namespace
}  // namespace nnrank
