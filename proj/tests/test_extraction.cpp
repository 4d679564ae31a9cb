#include <doctest.h>

#include <cmath>
#include <random>

#include "nnrank/errors.hpp"
#include "nnrank/extraction.hpp"
#include "test_util.hpp"

namespace nnrank {
namespace {

void check_blocks_close(const GroupedVector& a, const GroupedVector& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].size() == b[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(std::abs(a[i][j] - b[i][j]) <= tol);
  }
}

LiftInfo lift_for(const std::vector<int>& n, const std::vector<int>& deg) {
  return lift_odd(MultiForm(MonomialSpace(n, deg))).lift;
}

TEST_SUITE("extraction") {

TEST_CASE("even extraction reproduces simple generators") {
  const MomentBasis b({2}, {1});
  const Eigen::VectorXd y = b.moment_vector({{0.6, 0.8}});
  CHECK(y[1] == doctest::Approx(0.48));
  CHECK(y[2] == doctest::Approx(0.64));
  check_blocks_close(extract_even(y, b), {{0.6, 0.8}}, 1e-15);
  check_blocks_close(extract_even(b.moment_vector({{1.0, 0.0}}), b), {{1.0, 0.0}}, 0.0);
}

TEST_CASE("even extraction round trip on random generators") {
  std::mt19937_64 rng(30);
  for (const auto& [n, tau] : {std::pair{std::vector<int>{3}, std::vector<int>{2}},
                               std::pair{std::vector<int>{2, 3}, std::vector<int>{1, 1}},
                               std::pair{std::vector<int>{2, 2, 2}, std::vector<int>{1, 2, 1}}}) {
    const MomentBasis b(n, tau);
    for (int trial = 0; trial < 10; ++trial) {
      const GroupedVector x = testing::random_point(n, rng, trial % 2 == 1);
      check_blocks_close(extract_even(b.moment_vector(x), b), x, 1e-12);
    }
  }
}

TEST_CASE("even extraction breaks ties toward the first index") {
  const MomentBasis b({2}, {1});
  // Two equal diagonal moments and zero coupling: the first row wins.
  const Eigen::VectorXd y = Eigen::Vector3d(0.5, 0.0, 0.5);
  check_blocks_close(extract_even(y, b), {{1.0, 0.0}}, 0.0);
  CHECK_THROWS_AS(extract_even(Eigen::Vector3d(0, 0, 0), b), SolverError);
  CHECK_THROWS_AS(extract_even(Eigen::Vector2d(1, 0), b), InputError);
}

TEST_CASE("odd extraction of lifted rank-one points") {
  std::mt19937_64 rng(31);
  const LiftInfo lift = lift_for({2, 3}, {3, 2});
  const MomentBasis b({3, 3}, {2, 1});
  for (int trial = 0; trial < 10; ++trial) {
    const GroupedVector x = testing::random_point({2, 3}, rng);
    const double r = std::sqrt(3.0 / 4.0), t = 0.5;
    const GroupedVector lifted{{r * x[0][0], r * x[0][1], t}, x[1]};
    const OddExtraction out = extract_odd(b.moment_vector(lifted), b, lift);
    CHECK_FALSE(out.zero_tensor);
    check_blocks_close(out.x, x, 1e-12);
  }
}

TEST_CASE("odd extraction zero-tensor branches") {
  const LiftInfo lift = lift_for({2}, {1});
  const MomentBasis b({3}, {1});
  // All mass on t: t = 1.
  const OddExtraction at_t = extract_odd(b.moment_vector({{0.0, 0.0, 1.0}}), b, lift);
  CHECK(at_t.zero_tensor);
  // No moment with t-exponent one is positive.
  const OddExtraction none = extract_odd(b.moment_vector({{1.0, 0.0, 0.0}}), b, lift);
  CHECK(none.zero_tensor);
  // Fallback still returns unit nonnegative blocks.
  const GroupedVector any = extract_lifted_any(b.moment_vector({{0.0, 0.0, 1.0}}), b, lift);
  CHECK(block_norm(any[0]) == doctest::Approx(1.0));
  // Lift record that does not match the basis.
  CHECK_THROWS_AS(extract_odd(b.moment_vector({{1.0, 0.0, 0.0}}), b, lift_for({3}, {1})),
                  InputError);
}

TEST_CASE("certificate") {
  const MomentBasis b({3}, {1});
  const Certificate one = certify(b.moment_vector({{0.6, 0.0, 0.8}}), b);
  CHECK(one.sigma2 < 1e-15);
  CHECK(one.tight);
  // y with diagonal classes 1/dim: M(y) = I / dim.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(b.class_count());
  for (int i = 0; i < 3; ++i) {
    MultiIndex e(3, 0);
    e[i] = 2;
    y[b.moments().rank(e)] = 1.0 / 3.0;
  }
  const Certificate bary = certify(y, b);
  CHECK(bary.sigma2 == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(bary.tight);
}

TEST_CASE("error metrics") {
  const ErrorMetrics same = metrics(3.0, 3.0, 5.0);
  CHECK(same.apperr == 0.0);
  CHECK(same.apperrnm == 0.0);
  const ErrorMetrics m = metrics(2.0, 1.0, 10.0);
  CHECK(m.apperr == doctest::Approx(0.5));
  CHECK(m.apperrnm == doctest::Approx(0.1));
  // Denominators are at least one and use |f_dnn|.
  const ErrorMetrics neg = metrics(-4.0, -3.0, 0.5);
  CHECK(neg.apperr == doctest::Approx(0.25));
  CHECK(neg.apperrnm == doctest::Approx(1.0));
  const Tensor a(Shape({2}, {2}), {3, 0, 0, 4});
  CHECK(metrics(2.0, 1.0, a).apperrnm == doctest::Approx(0.2));
}

}  // TEST_SUITE

}  // namespace
}  // namespace nnrank
