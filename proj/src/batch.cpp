#include "nnrank/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "nnrank/errors.hpp"

namespace nnrank {

Stats summarize_values(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

namespace {

BatchRow run_one(const BatchOptions& opts, int index) {
  const Tensor a = generate(opts.spec, opts.seed, static_cast<std::uint64_t>(index));
  BatchRow row;
  row.index = index;
  if (opts.task == BatchTask::kCopositivity) {
    const CopositivityVerdict v = test_copositivity(a, opts.pipeline);
    row.seconds = v.wall_time.count();
    row.f_dnn = v.f_dnn;
    row.f_app = v.f_app;
    row.outcome = to_string(v.verdict);
    row.status = v.solver.status;
    row.success = v.verdict == Verdict::kCopositive;
  } else {
    const ApproxReport r = best_nonneg_rank_one(a, opts.pipeline);
    row.seconds = r.wall_time.count();
    row.f_dnn = r.extraction.f_dnn;
    row.f_app = r.extraction.f_app;
    row.outcome = r.extraction.tight ? "tight" : "not_tight";
    row.status = r.solver.status;
    row.success = r.extraction.tight;
  }
  return row;
}

}  // namespace

BatchSummary run_batch(const BatchOptions& opts) {
  if (opts.rep < 1) throw InputError("batch: rep must be at least 1");
  int workers = opts.workers > 0 ? opts.workers
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, opts.rep);

  BatchSummary out;
  out.rows.resize(opts.rep);
  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto work = [&]() {
    for (int k = next++; k < opts.rep; k = next++) {
      try {
        out.rows[k] = run_one(opts, k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = opts.rep;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<double> secs, fd;
  int ok = 0;
  for (const BatchRow& r : out.rows) {
    secs.push_back(r.seconds);
    fd.push_back(r.f_dnn);
    ok += r.success ? 1 : 0;
  }
  out.seconds = summarize_values(secs);
  out.f_dnn = summarize_values(fd);
  out.prob = static_cast<double>(ok) / opts.rep;
  return out;
}

}  // namespace nnrank
