#include <doctest.h>

#include <random>

#include "nnrank/basis.hpp"
#include "nnrank/errors.hpp"
#include "test_util.hpp"

namespace nnrank {
namespace {

// Dense least-squares oracle: columns are vec(A_alpha) built from exponent
// arithmetic, solved with a rank-revealing QR.
Eigen::VectorXd lsq_oracle(const Eigen::MatrixXd& x, const MomentBasis& b) {
  const Eigen::Index d = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(d * d, b.class_count());
  for (Eigen::Index r = 0; r < d; ++r) {
    const MultiIndex er = b.rows().exponents(r);
    for (Eigen::Index c = 0; c < d; ++c) {
      MultiIndex e = b.rows().exponents(c);
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += er[j];
      cols(r * d + c, b.moments().rank(e)) = 1.0;
    }
  }
  Eigen::VectorXd v(d * d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) v(r * d + c) = x(r, c);
  return cols.colPivHouseholderQr().solve(v);
}

TEST_SUITE("basis") {

TEST_CASE("dimensions follow the monomial counts") {
  const MomentBasis b({3, 2}, {2, 1});
  CHECK(b.dim() == nu(2, 3) * nu(1, 2));
  CHECK(b.class_count() == nu(4, 3) * nu(2, 2));
  CHECK(b.moments().degrees() == std::vector<int>{4, 2});
}

TEST_CASE("class of a position is the rank of the exponent sum") {
  const MomentBasis b({3, 2}, {2, 1});
  std::vector<std::int64_t> count(b.class_count(), 0);
  for (std::size_t r = 0; r < b.dim(); ++r) {
    for (std::size_t c = 0; c < b.dim(); ++c) {
      MultiIndex e = b.rows().exponents(r);
      const MultiIndex ec = b.rows().exponents(c);
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += ec[j];
      CHECK(b.class_of(r, c) == static_cast<std::int32_t>(b.moments().rank(e)));
      ++count[b.class_of(r, c)];
    }
  }
  for (std::size_t a = 0; a < b.class_count(); ++a) {
    CHECK(b.weight(a) == count[a]);
    CHECK(b.positions(a).size() == static_cast<std::size_t>(count[a]));
  }
}

TEST_CASE("class indicators sum to the all-ones matrix") {
  const MomentBasis b({2, 3}, {1, 2});
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(b.dim(), b.dim());
  for (std::size_t a = 0; a < b.class_count(); ++a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(b.class_count());
    e[a] = 1.0;
    sum += b.moment_matrix(e);
  }
  CHECK((sum - Eigen::MatrixXd::Ones(b.dim(), b.dim())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("moment matrix of a point is the outer product of its monomials") {
  std::mt19937_64 rng(8);
  const MomentBasis b({3}, {2});
  const GroupedVector x = testing::random_real({3}, rng);
  const std::vector<double> v = b.rows().evaluate_all(x);
  const Eigen::Map<const Eigen::VectorXd> vv(v.data(), v.size());
  const Eigen::MatrixXd m = b.moment_matrix(b.moment_vector(x));
  CHECK((m - vv * vv.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("class_sums are adjoint to moment_matrix") {
  std::mt19937_64 rng(9);
  const MomentBasis b({2, 2}, {1, 1});
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(b.dim(), b.dim());
  const Eigen::VectorXd y = Eigen::VectorXd::Random(b.class_count());
  CHECK((b.moment_matrix(y).cwiseProduct(x)).sum() ==
        doctest::Approx(y.dot(b.class_sums(x))).epsilon(1e-12));
}

TEST_CASE("class_average equals the dense least-squares projection") {
  for (const auto& [n, tau] : {std::pair{std::vector<int>{3}, std::vector<int>{2}},
                               std::pair{std::vector<int>{2, 3}, std::vector<int>{1, 1}}}) {
    const MomentBasis b(n, tau);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(b.dim(), b.dim());
    const ClassAverage avg = class_average(x, b);
    CHECK((avg.y - lsq_oracle(x, b)).cwiseAbs().maxCoeff() < 1e-10);
    // Idempotent.
    CHECK((class_average(avg.averaged, b).averaged - avg.averaged).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("class_average small cases") {
  const MomentBasis b({2}, {1});
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 4, 3;
  const ClassAverage avg = class_average(x, b);
  CHECK(avg.y[1] == doctest::Approx(3.0));
  CHECK(avg.y[0] == 1.0);
  CHECK(avg.y[2] == 3.0);
  const ClassAverage id = class_average(Eigen::MatrixXd::Identity(2, 2), b);
  CHECK(id.y == Eigen::Vector3d(1, 0, 1));
  const Eigen::VectorXd y = Eigen::Vector3d(0.5, -2, 7);
  CHECK((class_average(b.moment_matrix(y), b).y - y).norm() == 0.0);
  CHECK_THROWS_AS(class_average(Eigen::MatrixXd::Zero(3, 3), b), InputError);
}

TEST_CASE("class_average is self-adjoint") {
  const MomentBasis b({3}, {2});
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(b.dim(), b.dim());
  const Eigen::MatrixXd z = Eigen::MatrixXd::Random(b.dim(), b.dim());
  CHECK(class_average(x, b).averaged.cwiseProduct(z).sum() ==
        doctest::Approx(x.cwiseProduct(class_average(z, b).averaged).sum()).epsilon(1e-12));
}

TEST_CASE("monomial rows of the two-group basis") {
  const MomentBasis b({2, 2}, {1, 1});
  CHECK(b.dim() == 4);
  CHECK(b.rows().exponents(0) == MultiIndex{1, 0, 1, 0});
  CHECK(b.rows().exponents(1) == MultiIndex{1, 0, 0, 1});
  CHECK(b.rows().exponents(2) == MultiIndex{0, 1, 1, 0});
  CHECK(b.rows().exponents(3) == MultiIndex{0, 1, 0, 1});
}

TEST_CASE("constraint counts of the large table rows") {
  BasisOptions opts;
  opts.materialize_classes = false;
  const MomentBasis quartic({100}, {2}, opts);
  CHECK(quartic.dim() == 5050);
  CHECK(quartic.class_count() == 4'421'275);
  CHECK(count_constraints(quartic) == 8'332'501);
  CHECK(count_constraints(MomentBasis({100, 100}, {1, 1}, opts)) == 24'502'501);
  // Small case by hand: rows {x1, x2}, moments {x1^2, x1x2, x2^2}.
  CHECK(count_constraints(MomentBasis({2}, {1})) == 3 - 3 + 1);
}

TEST_CASE("size cap") {
  BasisOptions opts;
  opts.max_dim = 10;
  CHECK_THROWS_AS(MomentBasis({5}, {2}, opts), SizeLimitError);
  CHECK_NOTHROW(MomentBasis({4}, {1}, opts));
}

TEST_CASE("build_basis checks the shape") {
  CHECK(build_basis(Shape({4}, {3}), {2}).dim() == 6);
  CHECK_THROWS_AS(build_basis(Shape({4}, {3}), {2, 1}), InputError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace nnrank
