// Benchmark harness: runs the vanishing-constraints grid study across the
// implicit / intermediate / explicit formulations and writes machine-readable
// reports.

#include <ialm/bench/grid.hpp>
#include <ialm/bench/report.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
  using namespace ialm;
  using namespace ialm::bench;

  CLI::App app{"grid benchmark for the matrix-free augmented Lagrangian solver"};

  std::string problem = "mpvca";
  std::string formulation_name = "implicit";
  int grid_n = 51;
  double lo = -5.0, hi = 20.0;
  std::string format_name = "csv";
  std::string direction_name = "bb";
  std::string out_path = "mpvca.csv";
  bool trace = false;
  unsigned threads = 0;

  OuterSettings outer;
  InnerSettings inner;
  inner.direction = DirectionRule::BarzilaiBorwein;
  inner.omega = 1e-8;

  app.add_option("--problem", problem, "benchmark problem")
      ->check(CLI::IsMember({"mpvca"}));
  app.add_option("--formulation", formulation_name, "problem formulation")
      ->check(CLI::IsMember({"implicit", "intermediate", "explicit"}));
  app.add_option("--grid-n", grid_n, "start points per axis")
      ->check(CLI::PositiveNumber);
  app.add_option("--lo", lo, "grid lower bound");
  app.add_option("--hi", hi, "grid upper bound");
  app.add_option("--eps-prim", outer.eps_prim, "primal tolerance");
  app.add_option("--eps-dual", outer.eps_dual, "dual tolerance");
  app.add_option("--mu0", outer.mu0, "initial penalty parameter");
  app.add_option("--theta", outer.theta, "sufficient-decrease factor");
  app.add_option("--kappa", outer.kappa, "penalty shrink factor");
  app.add_option("--nu", inner.nu, "inner nonmonotonicity mixing");
  app.add_option("--direction", direction_name, "inner search direction")
      ->check(CLI::IsMember({"sd", "bb"}));
  app.add_option("--format", format_name, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "report output path");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_flag("--trace", trace, "also write per-outer-iteration traces");

  CLI11_PARSE(app, argc, argv);

  Formulation formulation = Formulation::Implicit;
  if (formulation_name == "intermediate") formulation = Formulation::Intermediate;
  if (formulation_name == "explicit") formulation = Formulation::Explicit;
  inner.direction = direction_name == "sd" ? DirectionRule::SteepestDescent
                                           : DirectionRule::BarzilaiBorwein;
  const ReportFormat format =
      format_name == "json" ? ReportFormat::Json : ReportFormat::Csv;

  GridSpec grid{grid_n, lo, hi};
  try {
    std::vector<SolveReport> reports;
    const auto records =
        run_grid(formulation, grid, outer, inner, threads, trace,
                 trace ? &reports : nullptr);
    const AggregateStats stats = aggregate(records, formulation);
    emit_report(stats, records, format, out_path);

    if (trace) {
      std::string tr = "run,k,mu,eps_k,V,dual,inner_iters\n";
      for (std::size_t r = 0; r < reports.size(); ++r)
        for (const auto& rec : reports[r].trace)
          tr += std::to_string(r) + ',' + std::to_string(rec.k) + ',' +
                bench::detail::fmt(rec.mu) + ',' + bench::detail::fmt(rec.eps_k) + ',' +
                bench::detail::fmt(rec.V) + ',' + bench::detail::fmt(rec.dual_norm) + ',' +
                std::to_string(rec.inner_iters) + '\n';
      write_file(out_path + ".trace.csv", tr);
    }

    std::printf("%s: %d runs, %d solved, global %d (%.2f%%), "
                "median outer %d, median inner %d, median runtime %.3g ms\n",
                stats.formulation.c_str(), stats.runs, stats.solved,
                stats.global_count, 100.0 * stats.global_fraction,
                stats.median_outer, stats.median_inner,
                stats.median_runtime_s * 1e3);

    for (const auto& r : records)
      if (r.status != OuterStatus::Solved &&
          r.status != OuterStatus::InfeasibleStationary)
        return 1;
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
