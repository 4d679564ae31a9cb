// Command-line front end: approximation, copositivity, bounds, seeded
// ensembles and the brute-force oracle.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nnrank/applications.hpp"
#include "nnrank/batch.hpp"
#include "nnrank/errors.hpp"
#include "nnrank/generators.hpp"
#include "nnrank/io.hpp"

namespace {

using nnrank::Tensor;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitSolver = 3;

struct GlobalFlags {
  double tol = nnrank::PipelineOptions::default_solver().tol;
  int max_iters = nnrank::PipelineOptions::default_solver().max_iters;
  std::uint64_t seed = 0;
  std::string log;
  bool json = false;
};

struct TensorSource {
  std::string file;
  std::string generate;

  Tensor load(std::uint64_t seed) const {
    if (!file.empty() && !generate.empty()) {
      throw nnrank::InputError("give either a tensor file or --generate, not both");
    }
    if (!generate.empty()) return nnrank::generate(nnrank::parse_generator(generate), seed, 0);
    if (file.empty()) throw nnrank::InputError("no tensor given: pass a file or --generate");
    return nnrank::read_tensor_file(file);
  }
};

void add_source(CLI::App* cmd, TensorSource* src) {
  cmd->add_option("file", src->file, "Tensor file (.tns text or .json)");
  cmd->add_option("--generate,-g", src->generate,
                  "Generated instance, family[:p1,p2,...] (e.g. levi_civita:3)");
}

nnrank::PipelineOptions pipeline(const GlobalFlags& g) {
  nnrank::PipelineOptions o;
  o.solver.tol = g.tol;
  o.solver.max_iters = g.max_iters;
  o.solver.log_path = g.log;
  return o;
}

nnrank::Shape parse_shape(const std::string& text) {
  // Same fields as the tensor file header; p may be omitted.
  std::string header = text;
  for (char& c : header) {
    if (c == ';' || c == ':') c = ' ';
  }
  if (header.find("p=") == std::string::npos) {
    const auto pos = header.find("alpha=");
    if (pos == std::string::npos) throw nnrank::InputError("--shape needs alpha=<list> n=<list>");
    std::size_t end = header.find(' ', pos);
    const std::string list = header.substr(pos + 6, end == std::string::npos ? end : end - pos - 6);
    const int p = 1 + static_cast<int>(std::count(list.begin(), list.end(), ','));
    header = "p=" + std::to_string(p) + " " + header;
  }
  return nnrank::parse_tensor_text(header + "\n").shape();
}

int solver_exit(nnrank::SolveStatus s) {
  return s == nnrank::SolveStatus::kNumericalFailure ? kExitSolver : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best nonnegative rank-one approximation and copositivity via DNN relaxations"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--tol", g.tol, "Solver stopping tolerance (also the copositivity band)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iters", g.max_iters, "Solver iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random families and Monte Carlo");
  app.add_option("--log", g.log, "CSV iteration log path");
  app.add_flag("--json", g.json, "Emit JSON reports");

  TensorSource approx_src;
  bool reduce = false;
  CLI::App* approx = app.add_subcommand("approx", "Best nonnegative rank-one approximation");
  add_source(approx, &approx_src);
  approx->add_flag("--reduce-linear", reduce,
                   "Use the squared-sum reduction for a degree-one group when it applies");

  TensorSource copo_src;
  std::string odd_mode = "square";
  CLI::App* copo = app.add_subcommand("coposit", "Copositivity test");
  add_source(copo, &copo_src);
  copo->add_option("--odd-mode", odd_mode, "Even-degree reformulation for odd groups")
      ->check(CLI::IsMember({"square", "lift"}));

  std::string shape_text;
  std::int64_t samples = nnrank::kThetaSamples;
  CLI::App* bound = app.add_subcommand("bound", "Worst-case approximation bound for a shape");
  bound->add_option("--shape", shape_text, "alpha=<d1,..> n=<n1,..>")->required();
  bound->add_option("--samples", samples, "Monte Carlo samples per Theta estimate")
      ->check(CLI::PositiveNumber);

  std::string family;
  int m = 0, n = 0, rep = 1, workers = 0;
  std::string task = "coposit";
  bool rows = false;
  CLI::App* batch = app.add_subcommand("batch", "Seeded ensemble of generated instances");
  batch->add_option("--family", family, "Generator family (random_sym, example19, ...)")
      ->required();
  batch->add_option("--m", m, "Order")->required();
  batch->add_option("--n", n, "Dimension")->required();
  batch->add_option("--rep", rep, "Number of instances")->check(CLI::PositiveNumber);
  batch->add_option("--workers", workers, "Worker threads (0 = all cores)");
  batch->add_option("--task", task, "coposit or approx")->check(CLI::IsMember({"coposit", "approx"}));
  batch->add_flag("--rows", rows, "Print one row per instance");

  TensorSource oracle_src;
  int grid = 50;
  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force minimum of <A, x^alpha>");
  add_source(oracle, &oracle_src);
  oracle->add_option("--grid", grid, "Grid points per spherical angle")->check(CLI::PositiveNumber);

  TensorSource gen_src;
  std::string out_path;
  CLI::App* gen = app.add_subcommand("generate", "Write a generated tensor to a file");
  gen->add_option("spec", gen_src.generate, "family[:p1,p2,...]")->required();
  gen->add_option("-o,--output", out_path, "Output path (.tns or .json); stdout when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*approx) {
      const Tensor a = approx_src.load(g.seed);
      nnrank::PipelineOptions o = pipeline(g);
      o.reduce_linear = reduce;
      const nnrank::ApproxReport r = nnrank::best_nonneg_rank_one(a, o);
      std::cout << (g.json ? nnrank::report_json(r, a) + "\n" : nnrank::report_text(r));
      return solver_exit(r.solver.status);
    }
    if (*copo) {
      const Tensor a = copo_src.load(g.seed);
      nnrank::PipelineOptions o = pipeline(g);
      o.odd_copositivity =
          odd_mode == "lift" ? nnrank::OddCopositivity::kLift : nnrank::OddCopositivity::kSquare;
      const nnrank::CopositivityVerdict v = nnrank::test_copositivity(a, o);
      std::cout << (g.json ? nnrank::report_json(v) + "\n" : nnrank::report_text(v));
      return solver_exit(v.solver.status);
    }
    if (*bound) {
      const nnrank::Shape shape = parse_shape(shape_text);
      const nnrank::BoundInfo b = nnrank::bound_info(shape, samples, g.seed ? g.seed : nnrank::kThetaSeed);
      if (g.json) {
        const nlohmann::json j = {{"alpha", shape.alpha},     {"n", shape.n},
                                  {"delta", b.delta},         {"constant", b.constant},
                                  {"bound", b.bound},         {"sqrt_lambda_min", b.sqrt_lambda_min}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("delta     %.6f\nconstant  %.4f\nbound     %.4f\n", b.delta, b.constant, b.bound);
      }
      return kExitOk;
    }
    if (*batch) {
      nnrank::BatchOptions bo;
      bo.spec = {family, {m, n}};
      bo.rep = rep;
      bo.seed = g.seed;
      bo.workers = workers;
      bo.task = task == "approx" ? nnrank::BatchTask::kApprox : nnrank::BatchTask::kCopositivity;
      bo.pipeline = pipeline(g);
      bo.pipeline.solver.log_path.clear();
      const nnrank::BatchSummary s = nnrank::run_batch(bo);
      auto hms = [](double sec) { return nnrank::format_duration(std::chrono::duration<double>(sec)); };
      if (g.json) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : s.rows) {
          jr.push_back({{"index", r.index}, {"ms", r.seconds * 1e3}, {"f_dnn", r.f_dnn},
                        {"f_app", r.f_app}, {"outcome", r.outcome},
                        {"status", nnrank::to_string(r.status)}});
        }
        const nlohmann::json j = {
            {"family", family}, {"m", m}, {"n", n}, {"rep", rep}, {"seed", g.seed},
            {"time_ms", {{"min", s.seconds.min * 1e3}, {"mean", s.seconds.mean * 1e3}, {"max", s.seconds.max * 1e3}}},
            {"f_dnn", {{"min", s.f_dnn.min}, {"mean", s.f_dnn.mean}, {"max", s.f_dnn.max}}},
            {"prob", s.prob},
            {"rows", rows ? jr : nlohmann::json::array()}};
        std::cout << j.dump(2) << "\n";
      } else {
        if (rows) {
          std::printf("%6s %10s %12s %12s  %s\n", "index", "time", "f_dnn", "f_app", "outcome");
          for (const auto& r : s.rows) {
            std::printf("%6d %10s %12.4f %12.4f  %s\n", r.index, hms(r.seconds).c_str(), r.f_dnn,
                        r.f_app, r.outcome.c_str());
          }
        }
        std::printf("m | n | rep | Time (min;mean;max) | f_dnn (min;mean;max) | prob\n");
        std::printf("%d | %d | %d | %s ; %s ; %s | %.4f ; %.4f ; %.4f | %.4f\n", m, n, rep,
                    hms(s.seconds.min).c_str(), hms(s.seconds.mean).c_str(),
                    hms(s.seconds.max).c_str(), s.f_dnn.min, s.f_dnn.mean, s.f_dnn.max, s.prob);
      }
      return kExitOk;
    }
    if (*oracle) {
      const Tensor a = oracle_src.load(g.seed);
      const nnrank::OracleResult r = nnrank::brute_force_min(a, grid);
      if (g.json) {
        const nlohmann::json j = {{"min", r.value}, {"x", r.x}, {"grid_points", r.grid_points}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("min   %.10g\ngrid  %llu points\n", r.value,
                    static_cast<unsigned long long>(r.grid_points));
      }
      return kExitOk;
    }
    if (*gen) {
      const Tensor a = gen_src.load(g.seed);
      if (out_path.empty()) {
        std::cout << (g.json ? nnrank::tensor_to_json(a) + "\n" : nnrank::serialize_tensor(a));
      } else {
        nnrank::write_tensor_file(out_path, a);
      }
      return kExitOk;
    }
  } catch (const nnrank::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nnrank::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nnrank::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
