#pragma once

// Randomized property checks shared by the unit suite (small counts) and the
// acceptance binary (full counts).  Every check compares against an oracle
// that does not go through the code path under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nnrank/applications.hpp"
#include "nnrank/basis.hpp"
#include "nnrank/extraction.hpp"
#include "nnrank/model.hpp"
#include "test_util.hpp"

namespace nnrank::testing {

struct Layout {
  std::vector<int> n;
  std::vector<int> tau;
};

inline const std::vector<Layout>& small_layouts() {
  static const std::vector<Layout> layouts = {
      {{2}, {1}}, {{3}, {2}}, {{4}, {1}}, {{2, 3}, {1, 1}}, {{3, 2}, {2, 1}}, {{2, 2, 2}, {1, 1, 1}},
  };
  return layouts;
}

// Largest deviation between a random generator and the point extracted from
// its exact moment vector; half of the draws go through the lifted path.
inline double extraction_roundtrip_error(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const Layout& l = small_layouts()[k % small_layouts().size()];
    const GroupedVector x = random_point(l.n, rng, k % 3 == 0);
    GroupedVector got;
    if (k % 2 == 0) {
      const MomentBasis b(l.n, l.tau);
      got = extract_even(b.moment_vector(x), b);
    } else {
      // Odd degree 2 tau - 1 in the first group, lifted with t.
      std::vector<int> deg(l.tau);
      for (int& d : deg) d *= 2;
      deg[0] -= 1;
      const LiftInfo lift = lift_odd(MultiForm(MonomialSpace(l.n, deg))).lift;
      std::vector<int> ln(l.n);
      ++ln[0];
      const MomentBasis b(ln, l.tau);
      const double d = deg[0];
      std::uniform_real_distribution<double> u(0.1, 0.9);
      const double t = k % 4 == 1 ? std::sqrt(1.0 / (d + 1.0)) : u(rng);
      GroupedVector lifted = x;
      for (double& c : lifted[0]) c *= std::sqrt(1.0 - t * t);
      lifted[0].push_back(t);
      const OddExtraction out = extract_odd(b.moment_vector(lifted), b, lift);
      if (out.zero_tensor) return std::numeric_limits<double>::infinity();
      got = out.x;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x[i].size(); ++j)
        worst = std::max(worst, std::abs(got[i][j] - x[i][j]));
  }
  return worst;
}

// Number of random y for which "M(y) >= 0 elementwise" and "y >= 0" disagree.
// Half of the draws are nonnegative, half carry at least one negative entry.
inline int nonnegativity_mismatches(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int k = 0; k < count; ++k) {
    const Layout& l = small_layouts()[k % small_layouts().size()];
    const MomentBasis b(l.n, l.tau);
    Eigen::VectorXd y(b.class_count());
    for (Eigen::Index a = 0; a < y.size(); ++a) y[a] = u(rng);
    if (k % 2 == 1) {
      const Eigen::Index flips = 1 + static_cast<Eigen::Index>(u(rng) * 3);
      for (Eigen::Index f = 0; f < flips; ++f) {
        const Eigen::Index at = static_cast<Eigen::Index>(u(rng) * y.size()) % y.size();
        y[at] = -std::abs(y[at]) - 1e-3;
      }
    }
    const bool y_nonneg = (y.array() >= 0.0).all();
    const bool m_nonneg = (b.moment_matrix(y).array() >= 0.0).all();
    bad += y_nonneg != m_nonneg;
    if (k % 2 == 1 && y_nonneg) ++bad;  // the draw must exercise the negative side
  }
  return bad;
}

// Dense least-squares projection onto span{A_alpha}: the columns vec(A_alpha)
// are rebuilt from exponent arithmetic and solved with a QR factorization.
inline Eigen::VectorXd dense_class_projection(const Eigen::MatrixXd& x, const MomentBasis& b) {
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

inline double class_average_oracle_error(int count, std::uint64_t seed) {
  std::srand(static_cast<unsigned>(seed));
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const Layout& l = small_layouts()[k % small_layouts().size()];
    const MomentBasis b(l.n, l.tau);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(b.dim(), b.dim());
    const ClassAverage avg = class_average(x, b);
    worst = std::max(worst, (avg.y - dense_class_projection(x, b)).cwiseAbs().maxCoeff());
  }
  return worst;
}

// Random instance shapes with n <= 3 and order <= 4.
inline Shape sandwich_shape(int k) {
  static const std::vector<Shape> shapes = {
      Shape({3}, {2}),       Shape({3}, {3}),       Shape({4}, {2}),
      Shape({4}, {3}),       Shape({2}, {3}),       Shape({2, 1}, {2, 3}),
      Shape({1, 1}, {3, 3}), Shape({2, 2}, {2, 2}), Shape::multilinear({2, 2, 2}),
      Shape({1, 2}, {3, 2}),
  };
  return shapes[k % shapes.size()];
}

// Grid resolution per angle keeping the total grid near the budget.
inline int oracle_grid(const Shape& s, double budget = 4e5) {
  int angles = 0;
  for (int ni : s.n) angles += ni - 1;
  if (angles == 0) return 2;
  return std::clamp(static_cast<int>(std::pow(budget, 1.0 / angles)), 2, 400);
}

struct SandwichStats {
  int instances = 0;
  int violations = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
};

// The relaxation value of min <-A, x^alpha> must not exceed the oracle's
// minimum (an upper bound on the true minimum) by more than slack.
inline SandwichStats sandwich(int count, std::uint64_t seed, const PipelineOptions& opts,
                              double slack) {
  std::mt19937_64 rng(seed);
  SandwichStats st;
  for (int k = 0; k < count; ++k) {
    const Shape s = sandwich_shape(k);
    const Tensor a = random_tensor(s, rng);
    const ApproxReport r = best_nonneg_rank_one(a, opts);
    const double relaxed_min = -r.extraction.f_dnn;
    const double oracle = brute_force_min(-a, oracle_grid(s)).value;
    const double excess = relaxed_min - oracle;
    st.worst_excess = std::max(st.worst_excess, excess);
    st.violations += excess > slack;
    ++st.instances;
  }
  return st;
}

}  // namespace nnrank::testing
