#include <doctest.h>

#include <cmath>
#include <random>

#include "nnrank/errors.hpp"
#include "nnrank/tensor.hpp"
#include "test_util.hpp"

namespace nnrank {
namespace {

TEST_SUITE("tensor") {

TEST_CASE("shape sizes and slot layout") {
  const Shape s({2, 1}, {3, 4});
  CHECK(s.order() == 3);
  CHECK(s.entry_count() == 36);
  CHECK(s.slot_dims() == std::vector<int>{3, 3, 4});
  CHECK(s.slot_groups() == std::vector<int>{0, 0, 1});
  const Shape m = Shape::multilinear({2, 3});
  CHECK(m.alpha == std::vector<int>{1, 1});
  CHECK(m.n == std::vector<int>{2, 3});
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(Shape({}, {}), InputError);
  CHECK_THROWS_AS(Shape({1, 2}, {3}), InputError);
  CHECK_THROWS_AS(Shape({0}, {3}), InputError);
  CHECK_THROWS_AS(Shape({2}, {0}), InputError);
}

TEST_CASE("offset and index_of are inverse") {
  const Tensor a(Shape({2, 1}, {3, 2}));
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.offset(a.index_of(k)) == k);
  // Row-major: the last slot varies fastest.
  CHECK(a.offset(std::vector<int>{0, 0, 1}) == 1);
  CHECK(a.offset(std::vector<int>{1, 0, 0}) == 6);
}

TEST_CASE("rank_one entries are products of components") {
  std::mt19937_64 rng(1);
  const Shape s({2, 1}, {3, 2});
  const GroupedVector x = testing::random_real(s.n, rng);
  const Tensor r = rank_one(x, s);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const auto i = r.index_of(k);
    CHECK(r.entries()[k] == doctest::Approx(x[0][i[0]] * x[0][i[1]] * x[1][i[2]]));
  }
  CHECK(r.is_partially_symmetric());
}

TEST_CASE("eval_multiform matches the naive contraction and the inner product") {
  std::mt19937_64 rng(2);
  for (const Shape& s : {Shape({3}, {3}), Shape({2, 2}, {2, 3}), Shape::multilinear({2, 3, 2})}) {
    const Tensor a = testing::random_tensor(s, rng);
    const GroupedVector x = testing::random_real(s.n, rng);
    CHECK(eval_multiform(a, x) == doctest::Approx(testing::naive_eval(a, x)).epsilon(1e-12));
    CHECK(eval_multiform(a, x) == doctest::Approx(inner(a, rank_one(x, s))).epsilon(1e-12));
  }
}

TEST_CASE("symmetrize is an idempotent projection onto symmetric tensors") {
  std::mt19937_64 rng(3);
  const Shape s({3}, {3});
  Tensor a(s);
  std::uniform_real_distribution<double> u(-1, 1);
  for (double& v : a.entries()) v = u(rng);
  CHECK_FALSE(a.is_partially_symmetric());
  const Tensor b = symmetrize(a);
  CHECK(b.is_partially_symmetric());
  CHECK(hs_norm(symmetrize(b) - b) < 1e-14);
  // Orthogonal projection: the residual is orthogonal to symmetric tensors.
  const Tensor c = testing::random_tensor(s, rng);
  CHECK(std::abs(inner(a - b, c)) < 1e-12);
}

TEST_CASE("assign_orbit and canonical_index") {
  const Shape s({3, 1}, {3, 2});
  Tensor a(s);
  const std::vector<int> idx{2, 0, 1, 1};
  assign_orbit(a, idx, 4.0);
  int nonzero = 0;
  for (double v : a.entries()) nonzero += v != 0.0;
  CHECK(nonzero == 6);  // 3! orderings of distinct slots in group 1
  CHECK(a.at(std::vector<int>{1, 2, 0, 1}) == 4.0);
  CHECK(canonical_index(s, idx) == std::vector<int>{0, 1, 2, 1});
  CHECK(a.is_partially_symmetric());
}

TEST_CASE("norms and arithmetic") {
  const Shape s({2}, {2});
  const Tensor a(s, {1, 2, 2, 4});
  CHECK(hs_norm(a) == doctest::Approx(5.0));
  CHECK(hs_norm(2.0 * a - a - a) == 0.0);
  CHECK(inner(a, -a) == doctest::Approx(-25.0));
  CHECK_THROWS_AS(Tensor(s, {1, 2, 3}), InputError);
}

TEST_CASE("best_lambda residual identity") {
  std::mt19937_64 rng(4);
  const Shape s({2, 1}, {3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor a = testing::random_tensor(s, rng);
    const GroupedVector x = testing::random_point(s.n, rng);
    const LambdaFit fit = best_lambda(a, x);
    const double direct = std::pow(hs_norm(a - fit.lambda * rank_one(x, s)), 2);
    CHECK(fit.residual_sq == doctest::Approx(direct).epsilon(1e-10));
    CHECK(fit.lambda >= 0.0);
  }
  CHECK_THROWS_AS(best_lambda(Tensor(s), {{1, 1, 0}, {1, 0}}), InputError);
  CHECK_THROWS_AS(best_lambda(Tensor(s), {{-1, 0, 0}, {1, 0}}), InputError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace nnrank
