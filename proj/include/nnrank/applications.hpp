#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "nnrank/basis.hpp"
#include "nnrank/extraction.hpp"
#include "nnrank/solver.hpp"
#include "nnrank/tensor.hpp"

namespace nnrank {

// Even-degree reformulation used by the copositivity test for odd groups.
enum class OddCopositivity {
  // x = z o z: sign-equivalent on the nonnegative orthant.
  kSquare,
  // t * f with an auxiliary coordinate, as in the approximation pipeline.
  kLift,
};

struct PipelineOptions {
  SolverOptions solver = default_solver();
  BasisOptions basis;
  OddCopositivity odd_copositivity = OddCopositivity::kSquare;
  // Relative gap under which the moment vector of the extracted point is
  // accepted as an optimal rank-one solution of the relaxation.
  double rank_one_gap = 1e-6;
  // Replace a degree-1 group by the squared-sum reduction before solving;
  // falls back to lifting when the recovered block is infeasible.
  bool reduce_linear = false;

  static SolverOptions default_solver() {
    SolverOptions s;
    s.tol = 1e-8;
    return s;
  }
};

struct SolverSummary {
  SolveStatus status = SolveStatus::kMaxIters;
  int iters = 0;
  std::size_t dim = 0;
  Residuals residuals;
  double penalty = 1.0;
  // Raw optimal value of the relaxation that was solved (lifted / reduced
  // scale, before composing back).
  double relaxed_value = 0.0;
  bool lifted = false;
  bool reduced = false;
  bool squared = false;
  // sigma2 was taken from the moment vector of the extracted point, which
  // attains the relaxation value.
  bool rank_one_certificate = false;
};

struct ApproxReport {
  ExtractionResult extraction;
  double lambda = 0.0;
  double best_tensor_norm_sq = 0.0;  // ||A||^2 - lambda^2
  std::chrono::duration<double> wall_time{0.0};
  SolverSummary solver;
};

// Best nonnegative rank-one approximation lambda * x^alpha of A.
ApproxReport best_nonneg_rank_one(const Tensor& a, const PipelineOptions& opts = {});

enum class Verdict { kCopositive, kNotCopositive, kInconclusive };

const char* to_string(Verdict v);

struct CopositivityVerdict {
  Verdict verdict = Verdict::kInconclusive;
  double f_dnn = 0.0;
  double f_app = 0.0;
  GroupedVector x_star;
  ExtractionResult extraction;
  std::chrono::duration<double> wall_time{0.0};
  SolverSummary solver;
  std::string diagnostics;
};

CopositivityVerdict test_copositivity(const Tensor& a, const PipelineOptions& opts = {});

// Monte Carlo estimate of E[x^[s] (x^[s])^T] for x uniform on the nonnegative
// part of the unit sphere in R^n, monomials in lexicographic order.
Eigen::MatrixXd theta_matrix(int n, int s, std::int64_t samples, std::uint64_t seed);

struct BoundInfo {
  double delta = 1.0;      // prod_i sqrt(lambda_min(Theta_{d_i}))
  double constant = 1.0;   // 1 / delta
  double bound = 1.0;      // constant * sqrt(prod_i C(n_i, d_i))
  std::vector<double> sqrt_lambda_min;  // per group
};

inline constexpr std::int64_t kThetaSamples = 1'000'000;
inline constexpr std::uint64_t kThetaSeed = 20240601;

// Worst-case ratio (f_max - f_dnn) / (f_max - f_min) bound for the shape.
// Theta estimates are cached per (degree, samples, seed).
BoundInfo bound_info(const Shape& shape, std::int64_t samples = kThetaSamples,
                     std::uint64_t seed = kThetaSeed);
double bound_ratio(const Shape& shape, std::int64_t samples = kThetaSamples,
                   std::uint64_t seed = kThetaSeed);

struct OracleResult {
  double value = 0.0;
  GroupedVector x;
  std::uint64_t grid_points = 0;
};

inline constexpr std::uint64_t kMaxOracleGrid = 10'000'000;

// Minimum of <A, x^alpha> over nonnegative unit blocks: spherical-angle grid
// with grid_per_dim points per angle, then a pattern-search refinement.
OracleResult brute_force_min(const Tensor& a, int grid_per_dim);

}  // namespace nnrank
