#pragma once

#include <ialm/bench/mpvc.hpp>
#include <ialm/outer_solver.hpp>
#include <ialm/types.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <string>
#include <thread>
#include <vector>

namespace ialm::bench {

enum class RunClass { Global, Local, Other };

inline const char* to_string(RunClass c) {
  switch (c) {
    case RunClass::Global: return "global";
    case RunClass::Local: return "local";
    case RunClass::Other: return "other";
  }
  return "?";
}

inline const char* to_string(OuterStatus s) {
  switch (s) {
    case OuterStatus::Solved: return "solved";
    case OuterStatus::InfeasibleStationary: return "infeasible_stationary";
    case OuterStatus::MaxOuterIterations: return "max_outer_iterations";
    case OuterStatus::InnerSolverFailure: return "inner_solver_failure";
  }
  return "?";
}

/// Classification in original coordinates: within 1e-6 of the global
/// minimizer (0,0) or the local minimizer (0,5).
inline RunClass classify_mpvc(const Vec& final_x) {
  const Vec xy = final_x.head(2);
  if ((xy - (Vec(2) << 0.0, 0.0).finished()).norm() <= 1e-6)
    return RunClass::Global;
  if ((xy - (Vec(2) << 0.0, 5.0).finished()).norm() <= 1e-6)
    return RunClass::Local;
  return RunClass::Other;
}

struct RunRecord {
  Vec start;   // 2-D start point in original coordinates
  Vec final_x; // full final iterate of the formulation
  RunClass cls = RunClass::Other;
  int outer_iters = 0;
  int inner_iters = 0;
  double runtime_s = 0.0;
  OuterStatus status = OuterStatus::MaxOuterIterations;
};

struct GridSpec {
  int count_per_axis = 51;
  Scalar lo = -5.0;
  Scalar hi = 20.0;
};

/// Runs the start-point grid for one formulation. Runs execute concurrently;
/// records are stored by grid index, so the output order is deterministic.
/// Individual run failures are recorded in place and never abort the grid.
inline std::vector<RunRecord> run_grid(Formulation formulation,
                                       const GridSpec& grid,
                                       const OuterSettings& outer,
                                       const InnerSettings& inner,
                                       unsigned n_threads = 0,
                                       bool keep_traces = false,
                                       std::vector<SolveReport>* traces = nullptr) {
  const ProblemSpec spec = build_mpvc(formulation);
  const int count = grid.count_per_axis;
  const int total = count * count;
  const Scalar step =
      count > 1 ? (grid.hi - grid.lo) / static_cast<Scalar>(count - 1) : 0.0;

  std::vector<RunRecord> records(static_cast<std::size_t>(total));
  if (traces) traces->resize(static_cast<std::size_t>(total));

  if (n_threads == 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int i = idx / count;
      const int j = idx % count;
      const Scalar x1 = grid.lo + static_cast<Scalar>(i) * step;
      const Scalar x2 = grid.lo + static_cast<Scalar>(j) * step;
      RunRecord& rec = records[static_cast<std::size_t>(idx)];
      rec.start = (Vec(2) << x1, x2).finished();
      const Vec x0 = mpvc_start(formulation, x1, x2);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        SolveReport report =
            solve(spec, x0, Vec::Zero(spec.m), outer, inner, {}, keep_traces);
        rec.final_x = report.x_star;
        rec.cls = classify_mpvc(report.x_star);
        rec.outer_iters = report.outer_iters;
        rec.inner_iters = report.total_inner_iters;
        rec.status = report.status;
        if (traces) (*traces)[static_cast<std::size_t>(idx)] = std::move(report);
      } catch (const std::exception&) {
        rec.final_x = x0;
        rec.cls = RunClass::Other;
        rec.status = OuterStatus::InnerSolverFailure;
      }
      rec.runtime_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

struct AggregateStats {
  std::string formulation;
  int runs = 0;
  int solved = 0;
  int global_count = 0;
  int local_count = 0;
  int other_count = 0;
  double global_fraction = 0.0;
  int median_outer = 0, max_outer = 0;
  int median_inner = 0, max_inner = 0;
  double median_runtime_s = 0.0, max_runtime_s = 0.0;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

namespace detail {
template <class T>
T lower_median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}
} // namespace detail

inline AggregateStats aggregate(const std::vector<RunRecord>& records,
                                Formulation formulation) {
  if (records.empty())
    throw std::invalid_argument("aggregate: no records");
  AggregateStats s;
  s.formulation = to_string(formulation);
  s.runs = static_cast<int>(records.size());
  std::vector<int> outer, inner;
  std::vector<double> runtime;
  for (const auto& r : records) {
    if (r.status == OuterStatus::Solved) ++s.solved;
    switch (r.cls) {
      case RunClass::Global: ++s.global_count; break;
      case RunClass::Local: ++s.local_count; break;
      case RunClass::Other: ++s.other_count; break;
    }
    outer.push_back(r.outer_iters);
    inner.push_back(r.inner_iters);
    runtime.push_back(r.runtime_s);
    s.max_outer = std::max(s.max_outer, r.outer_iters);
    s.max_inner = std::max(s.max_inner, r.inner_iters);
    s.max_runtime_s = std::max(s.max_runtime_s, r.runtime_s);
  }
  s.global_fraction = static_cast<double>(s.global_count) / s.runs;
  s.median_outer = detail::lower_median(outer);
  s.median_inner = detail::lower_median(inner);
  s.median_runtime_s = detail::lower_median(runtime);
  return s;
}

} // namespace ialm::bench
