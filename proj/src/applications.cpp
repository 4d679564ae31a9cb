#include "nnrank/applications.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "nnrank/errors.hpp"
#include "nnrank/model.hpp"
#include "nnrank/monomial.hpp"
#include "nnrank/random.hpp"

namespace nnrank {

namespace {

using Clock = std::chrono::steady_clock;

enum class Reformulation { kNone, kLift, kSquare };

struct Solved {
  DnnProblem prob;
  DnnSolution sol;
  Reformulation kind = Reformulation::kNone;
  std::vector<bool> squared;  // groups substituted by z o z
};

std::vector<bool> odd_groups(const MultiForm& f) {
  std::vector<bool> out;
  for (int d : f.space.degrees()) out.push_back(d % 2 != 0);
  return out;
}

// Brings f to even degree (when needed), assembles and solves min f over the
// nonnegative multi-sphere.
Solved solve_form(const MultiForm& f, Reformulation odd, const PipelineOptions& opts) {
  Solved out;
  if (!f.has_odd_degree()) {
    out.prob = assemble(f, opts.basis);
  } else if (odd == Reformulation::kSquare) {
    out.kind = Reformulation::kSquare;
    out.squared = odd_groups(f);
    out.prob = assemble(square_substitute(f, out.squared), opts.basis);
  } else {
    out.kind = Reformulation::kLift;
    LiftedForm lifted = lift_odd(f);
    out.prob = assemble(lifted.form, opts.basis);
    out.prob.lift = std::move(lifted.lift);
  }
  out.sol = solve(out.prob, opts.solver);
  return out;
}

SolverSummary summarize(const Solved& s) {
  SolverSummary out;
  out.status = s.sol.status;
  out.iters = s.sol.iters;
  out.dim = s.prob.dim();
  out.residuals = s.sol.residuals;
  out.penalty = s.sol.penalty;
  out.relaxed_value = s.sol.f_dnn;
  out.lifted = s.kind == Reformulation::kLift;
  out.squared = s.kind == Reformulation::kSquare;
  return out;
}

// Relaxation bound on min f over the original feasible set; for the lifted
// form the composition is exact whenever that minimum is nonpositive.  The
// squared form bounds the same sign-equivalent problem on the simplex scale.
double composed_min(const Solved& s) {
  return (s.prob.lift ? s.prob.lift->total_scale() : 1.0) * s.sol.f_dnn;
}

struct Extracted {
  OddExtraction original;   // blocks in the original variables
  GroupedVector relaxed;    // the same point in the variables that were solved
};

std::vector<double> unit(std::vector<double> v) {
  const double n = block_norm(v);
  if (n > 0.0) {
    for (double& c : v) c /= n;
  }
  return v;
}

Extracted extract(const Solved& s) {
  Extracted out;
  const MomentBasis& basis = *s.prob.basis;
  if (s.kind == Reformulation::kLift) {
    const LiftInfo& lift = *s.prob.lift;
    out.original = extract_odd(s.sol.y, basis, lift);
    if (out.original.zero_tensor) return out;
    // Optimal t for t * r^d on the circle r^2 + t^2 = 1: t^2 = 1 / (d + 1).
    for (std::size_t i = 0; i < out.original.x.size(); ++i) {
      std::vector<double> b = out.original.x[i];
      if (lift.lifted[i]) {
        const double d = lift.original_degree[i];
        for (double& c : b) c *= std::sqrt(d / (d + 1.0));
        b.push_back(std::sqrt(1.0 / (d + 1.0)));
      }
      out.relaxed.push_back(std::move(b));
    }
    return out;
  }
  out.relaxed = extract_even(s.sol.y, basis);
  out.original.x = out.relaxed;
  if (s.kind == Reformulation::kSquare) {
    for (std::size_t i = 0; i < s.squared.size(); ++i) {
      if (!s.squared[i]) continue;
      for (double& c : out.original.x[i]) c *= c;
      out.original.x[i] = unit(std::move(out.original.x[i]));
    }
  }
  return out;
}

// Tightness certificate.  When the rank-one moment vector of the extracted
// point attains the relaxation value it is an optimal solution in its own
// right, so the relaxation is exact even if the solver returned a mixture of
// several optimal rank-one points.
void fill_certificate(const Solved& s, const GroupedVector* relaxed, const PipelineOptions& opts,
                      ExtractionResult* r, SolverSummary* summary) {
  const Certificate c = certify(s.sol.y, *s.prob.basis);
  r->sigma2 = c.sigma2;
  r->tight = c.tight;
  if (c.tight || relaxed == nullptr || relaxed->empty()) return;
  const double value = s.prob.f.evaluate(*relaxed);
  const double gap = opts.rank_one_gap * std::max(1.0, std::abs(s.sol.f_dnn));
  if (value > s.sol.f_dnn + gap) return;
  const Certificate point = certify(s.prob.basis->moment_vector(*relaxed), *s.prob.basis);
  r->sigma2 = point.sigma2;
  r->tight = point.tight;
  summary->rank_one_certificate = point.tight;
}

void finish_approx(const Tensor& a, const OddExtraction& ex, double f_dnn, ApproxReport* rep) {
  ExtractionResult& r = rep->extraction;
  r.f_dnn = f_dnn;
  r.zero_tensor = ex.zero_tensor;
  r.x_star = ex.x;
  double value = 0.0;
  if (!ex.zero_tensor) value = eval_multiform(a, ex.x);
  // A nonpositive best value means the zero tensor is the best approximation.
  if (!(value > 0.0)) r.zero_tensor = true;
  rep->lambda = std::max(0.0, value);
  r.lambda = rep->lambda;
  r.f_app = rep->lambda;
  const double norm = hs_norm(a);
  rep->best_tensor_norm_sq = std::max(0.0, norm * norm - rep->lambda * rep->lambda);
  const ErrorMetrics m = metrics(r.f_dnn, r.f_app, norm);
  r.apperr = m.apperr;
  r.apperrnm = m.apperrnm;
}

int first_linear_group(const MultiForm& f) {
  if (f.space.groups() < 2) return -1;
  for (int i = 0; i < f.space.groups(); ++i) {
    if (f.space.degree(i) == 1) return i;
  }
  return -1;
}

// Squared-sum route: max ||u(x_rest)||^2 over the remaining groups bounds the
// best value from above, and the block of the linear group is recovered from
// the signs of u at the extracted point.
bool try_reduced(const Tensor& a, const MultiForm& neg, const PipelineOptions& opts,
                 ApproxReport* rep) {
  const int group = first_linear_group(neg);
  if (group < 0) return false;
  const LinearReduction red(neg, group);
  Solved s;
  s.prob = assemble(-red.reduced(), opts.basis);
  s.sol = solve(s.prob, opts.solver);
  rep->solver = summarize(s);
  rep->solver.reduced = true;
  if (s.sol.status == SolveStatus::kNumericalFailure) return false;
  const GroupedVector rest = extract_even(s.sol.y, *s.prob.basis);
  const RecoveredBlock block = red.recover(rest);
  if (!block.applicable) return false;
  OddExtraction ex;
  for (int i = 0, r = 0; i < neg.space.groups(); ++i) {
    ex.x.push_back(i == group ? block.block : rest[r++]);
  }
  fill_certificate(s, &rest, opts, &rep->extraction, &rep->solver);
  finish_approx(a, ex, std::sqrt(std::max(0.0, -s.sol.f_dnn)), rep);
  return true;
}

}  // namespace

ApproxReport best_nonneg_rank_one(const Tensor& a, const PipelineOptions& opts) {
  const auto start = Clock::now();
  ApproxReport rep;
  const MultiForm neg = -to_multiform(a);
  if (opts.reduce_linear && try_reduced(a, neg, opts, &rep)) {
    rep.wall_time = Clock::now() - start;
    return rep;
  }
  rep = ApproxReport{};
  const Solved s = solve_form(neg, Reformulation::kLift, opts);
  rep.solver = summarize(s);
  Extracted ex;
  if (s.sol.status == SolveStatus::kNumericalFailure) {
    ex.original.zero_tensor = true;
  } else {
    ex = extract(s);
  }
  fill_certificate(s, &ex.relaxed, opts, &rep.extraction, &rep.solver);
  finish_approx(a, ex.original, -composed_min(s), &rep);
  rep.wall_time = Clock::now() - start;
  return rep;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCopositive:
      return "copositive";
    case Verdict::kNotCopositive:
      return "not_copositive";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

CopositivityVerdict test_copositivity(const Tensor& a, const PipelineOptions& opts) {
  const auto start = Clock::now();
  CopositivityVerdict out;
  const Reformulation odd = opts.odd_copositivity == OddCopositivity::kSquare
                                ? Reformulation::kSquare
                                : Reformulation::kLift;
  const Solved s = solve_form(to_multiform(a), odd, opts);
  out.solver = summarize(s);
  out.f_dnn = composed_min(s);
  ExtractionResult& r = out.extraction;
  r.f_dnn = out.f_dnn;
  if (s.sol.status == SolveStatus::kNumericalFailure) {
    fill_certificate(s, nullptr, opts, &r, &out.solver);
    out.verdict = Verdict::kInconclusive;
    out.diagnostics = "solver reported numerical failure";
    out.wall_time = Clock::now() - start;
    return out;
  }

  Extracted ex = extract(s);
  if (ex.original.zero_tensor) {
    // The lifted minimum sits at x = 0; any feasible point is still a valid
    // witness candidate, so read one off the x-moments.
    ex.original.x = extract_lifted_any(s.sol.y, *s.prob.basis, *s.prob.lift);
    ex.original.zero_tensor = false;
    ex.relaxed.clear();
  }
  fill_certificate(s, &ex.relaxed, opts, &r, &out.solver);
  out.x_star = ex.original.x;
  r.x_star = ex.original.x;
  out.f_app = eval_multiform(a, ex.original.x);
  r.f_app = out.f_app;
  r.lambda = out.f_app;
  const ErrorMetrics m = metrics(r.f_dnn, r.f_app, a);
  r.apperr = m.apperr;
  r.apperrnm = m.apperrnm;

  const double tol = opts.solver.tol;
  if (out.f_dnn >= -tol) {
    out.verdict = Verdict::kCopositive;
  } else if (out.f_app < -tol) {
    out.verdict = Verdict::kNotCopositive;
  } else {
    out.verdict = Verdict::kInconclusive;
    out.diagnostics = "relaxation bound below -tol but extracted point is nonnegative";
  }
  if (s.sol.status != SolveStatus::kConverged) {
    out.diagnostics += out.diagnostics.empty() ? "" : "; ";
    out.diagnostics += "solver stopped at the iteration limit";
  }
  out.wall_time = Clock::now() - start;
  return out;
}

Eigen::MatrixXd theta_matrix(int n, int s, std::int64_t samples, std::uint64_t seed) {
  if (n < 1) throw InputError("theta_matrix: n must be positive");
  if (s < 0) throw InputError("theta_matrix: degree must be nonnegative");
  if (samples < 1) throw InputError("theta_matrix: samples must be at least 1");
  const MonomialSpace space({n}, {s});
  const Eigen::Index m = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::normal_distribution<double> normal;

  constexpr std::int64_t kBatch = 4096;
  Eigen::MatrixXd rows(kBatch, m);
  GroupedVector x(1, std::vector<double>(n));
  for (std::int64_t done = 0; done < samples;) {
    const std::int64_t take = std::min(kBatch, samples - done);
    for (std::int64_t b = 0; b < take; ++b) {
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& v : x[0]) {
          v = std::abs(normal(rng));
          norm += v * v;
        }
      } while (norm == 0.0);
      norm = std::sqrt(norm);
      for (double& v : x[0]) v /= norm;
      const std::vector<double> mono = space.evaluate_all(x);
      for (Eigen::Index k = 0; k < m; ++k) rows(b, k) = mono[k];
    }
    acc.selfadjointView<Eigen::Lower>().rankUpdate(rows.topRows(take).transpose());
    done += take;
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  return acc / static_cast<double>(samples);
}

namespace {

double cached_sqrt_lambda_min(int degree, std::int64_t samples, std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::int64_t, std::uint64_t>, double> cache;
  const auto key = std::make_tuple(degree, samples, seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  // Theta is indexed by the degree: degree-d monomials in d variables.
  const Eigen::MatrixXd theta = theta_matrix(degree, degree, samples, seed);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(theta, Eigen::EigenvaluesOnly);
  const double v = std::sqrt(std::max(0.0, es.eigenvalues()[0]));
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = v;
  return v;
}

}  // namespace

BoundInfo bound_info(const Shape& shape, std::int64_t samples, std::uint64_t seed) {
  shape.validate();
  BoundInfo out;
  double binom = 1.0;
  for (int i = 0; i < shape.groups(); ++i) {
    const int d = shape.alpha[i];
    const int n = shape.n[i];
    if (n < d) {
      throw InputError("bound: group " + std::to_string(i + 1) + " has n = " +
                       std::to_string(n) + " < degree " + std::to_string(d));
    }
    const double r = cached_sqrt_lambda_min(d, samples, seed);
    out.sqrt_lambda_min.push_back(r);
    out.delta *= r;
    binom *= static_cast<double>(binomial(n, d));
  }
  if (!(out.delta > 0.0)) throw SolverError("bound: Theta estimate is singular");
  out.constant = 1.0 / out.delta;
  out.bound = out.constant * std::sqrt(binom);
  return out;
}

double bound_ratio(const Shape& shape, std::int64_t samples, std::uint64_t seed) {
  return bound_info(shape, samples, seed).bound;
}

namespace {

// x_1 = cos t_1, x_2 = sin t_1 cos t_2, ..., x_n = sin t_1 ... sin t_{n-1}.
void angles_to_block(const double* t, int n, std::vector<double>* x) {
  double s = 1.0;
  for (int j = 0; j < n - 1; ++j) {
    (*x)[j] = s * std::cos(t[j]);
    s *= std::sin(t[j]);
  }
  (*x)[n - 1] = s;
}

class AngleObjective {
 public:
  explicit AngleObjective(const Tensor& a) : f_(to_multiform(a)) {
    const int p = f_.space.groups();
    x_.resize(p);
    offsets_.push_back(0);
    for (int i = 0; i < p; ++i) {
      x_[i].resize(f_.space.n(i));
      offsets_.push_back(offsets_.back() + f_.space.n(i) - 1);
    }
  }

  int angles() const { return offsets_.back(); }

  double operator()(const std::vector<double>& t) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      angles_to_block(t.data() + offsets_[i], static_cast<int>(x_[i].size()), &x_[i]);
    }
    return f_.evaluate(x_);
  }

  const GroupedVector& point() const { return x_; }

 private:
  MultiForm f_;
  GroupedVector x_;
  std::vector<int> offsets_;
};

}  // namespace

OracleResult brute_force_min(const Tensor& a, int grid_per_dim) {
  if (grid_per_dim < 2) throw InputError("oracle: grid must have at least 2 points per angle");
  AngleObjective obj(a);
  const int k = obj.angles();
  std::uint64_t total = 1;
  for (int j = 0; j < k; ++j) {
    total *= static_cast<std::uint64_t>(grid_per_dim);
    if (total > kMaxOracleGrid) {
      throw SizeLimitError("oracle: grid exceeds " + std::to_string(kMaxOracleGrid) + " points");
    }
  }
  const double h = 0.5 * std::numbers::pi / (grid_per_dim - 1);
  std::vector<int> idx(k, 0);
  std::vector<double> t(k, 0.0), best_t(k, 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < total; ++c) {
    for (int j = 0; j < k; ++j) t[j] = h * idx[j];
    const double v = obj(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
    for (int j = 0; j < k && ++idx[j] == grid_per_dim; ++j) idx[j] = 0;
  }

  // Pattern search on the angles, clamped to the nonnegative orthant.
  const double hi = 0.5 * std::numbers::pi;
  for (double step = h; step > 1e-12; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int j = 0; j < k; ++j) {
        for (double dir : {1.0, -1.0}) {
          t = best_t;
          t[j] = std::clamp(t[j] + dir * step, 0.0, hi);
          const double v = obj(t);
          if (v < best) {
            best = v;
            best_t = t;
            improved = true;
          }
        }
      }
    }
  }
  OracleResult out;
  out.value = obj(best_t);
  out.x = obj.point();
  out.grid_points = total;
  return out;
}

}  // namespace nnrank
