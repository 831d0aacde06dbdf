// Acceptance suite for the solver and the vanishing-constraints grid study.
// Runs each criterion at its stated tolerance and prints one pass/fail line
// per criterion; exits nonzero if any criterion fails.

#include <ialm/bench/grid.hpp>
#include <ialm/bench/report.hpp>
#include <ialm/diagnostics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace ialm;
using namespace ialm::bench;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

InnerSettings bench_inner() {
  InnerSettings s;
  s.direction = DirectionRule::BarzilaiBorwein;
  s.omega = 1e-8;
  return s;
}

double brute_force_vc_distance(double u, double w) {
  const double extent = 4.0, step = 1e-3;
  double best_a = kInf, best_bq = kInf, best_ba = kInf;
  for (double t = 0.0; t <= extent; t += step) {
    best_a = std::min(best_a, (u - t) * (u - t));
    best_bq = std::min(best_bq, (w - t) * (w - t));
  }
  for (double t = -extent; t <= extent; t += step)
    best_ba = std::min(best_ba, (w - t) * (w - t));
  return std::min(std::sqrt(best_a + best_bq), std::sqrt(u * u + best_ba));
}

} // namespace

int main() {
  const OuterSettings outer; // eps_prim = eps_dual = 1e-8
  const InnerSettings inner = bench_inner();
  const GridSpec grid{51, -5.0, 20.0};
  const ProblemSpec implicit_spec = build_mpvc(Formulation::Implicit);

  // Full implicit grid with traces: shared by criteria 1-6.
  std::vector<SolveReport> implicit_traces;
  const auto implicit_records = run_grid(Formulation::Implicit, grid, outer,
                                         inner, 0, true, &implicit_traces);
  const auto implicit_stats = aggregate(implicit_records, Formulation::Implicit);

  // Criterion 2 compares basins of attraction, so its grids run at an
  // initial penalty of 1: at the default of 10 the first subproblem is
  // effectively unconstrained and has a single stationary point whose
  // multiplier update steers every start of every formulation to the
  // global minimizer, leaving nothing to compare.
  OuterSettings basin_outer = outer;
  basin_outer.mu0 = 1.0;
  const auto basin_implicit =
      aggregate(run_grid(Formulation::Implicit, grid, basin_outer, inner),
                Formulation::Implicit);
  const auto basin_explicit =
      aggregate(run_grid(Formulation::Explicit, grid, basin_outer, inner),
                Formulation::Explicit);

  // 1. Every implicit run solved, landing within 1e-6 of (0,0) or (0,5).
  {
    int solved = 0, classified = 0;
    for (const auto& r : implicit_records) {
      if (r.status == OuterStatus::Solved) ++solved;
      if (r.cls != RunClass::Other) ++classified;
    }
    report(1, "implicit grid reaches a minimizer on every run",
           solved == implicit_stats.runs && classified == implicit_stats.runs,
           "solved " + std::to_string(solved) + "/" +
               std::to_string(implicit_stats.runs) + ", classified " +
               std::to_string(classified));
  }

  // 2. Implicit global-minimizer fraction >= 0.60 and above the explicit one.
  {
    const double gi = basin_implicit.global_fraction;
    const double ge = basin_explicit.global_fraction;
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "at penalty 1: implicit %.4f vs explicit %.4f", gi, ge);
    report(2, "implicit-vs-explicit global-minimizer gap",
           gi >= 0.60 && gi > ge, buf);
  }

  // 3. Implicit median outer iterations <= 20 at 1e-8 tolerances.
  report(3, "implicit median outer iterations",
         implicit_stats.median_outer <= 20,
         "median " + std::to_string(implicit_stats.median_outer) + ", max " +
             std::to_string(implicit_stats.max_outer));

  // 4. Every inner solve returns a certified eps_k-stationary pair.
  {
    long checked = 0, failures = 0;
    for (const auto& rep : implicit_traces)
      for (const auto& it : rep.trace) {
        ++checked;
        const auto cert =
            upsilon_certificate(implicit_spec, it.x, it.z, it.y_hat, it.mu);
        if (!(cert.is_certificate && it.inner_status == InnerStatus::Converged &&
              cert.grad_norm <= it.eps_k))
          ++failures;
      }
    report(4, "stationarity certificates on all inner solves", failures == 0,
           std::to_string(checked) + " pairs, " + std::to_string(failures) +
               " failures");
  }

  // 5. Multiplier-update dual residual equals the inner gradient norm.
  {
    std::mt19937 rng(2024);
    std::vector<std::size_t> idx(implicit_traces.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(50);
    long checked = 0, failures = 0;
    double worst = 0.0;
    for (std::size_t i : idx)
      for (const auto& it : implicit_traces[i].trace) {
        ++checked;
        const double dual = (implicit_spec.f_gradient(it.x) +
                             implicit_spec.c_jtv(it.x, it.y))
                                .norm();
        const double gap = std::abs(dual - it.dual_norm);
        worst = std::max(worst, gap);
        if (gap > 1e-10) ++failures;
      }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%ld iterations, worst gap %.2e", checked,
                  worst);
    report(5, "dual residual identity on 50 sampled runs", failures == 0, buf);
  }

  // 6. Descent-lemma assertions on at least 10,000 inner iterations.
  {
    long recorded = 0, violations = 0;
    const double nu = inner.nu;
    InnerTraceFn probe = [&](const InnerIterationRecord& r) {
      ++recorded;
      if (!(r.delta < 0.0)) ++violations;
      if (!(r.p_next <= r.phi_prev + r.delta)) ++violations;
      if (!(r.p_next <= r.phi_next)) ++violations;
      if (!(r.phi_next <= r.phi_prev + nu * r.delta)) ++violations;
      if (!(r.p_next <= r.phi0)) ++violations;
    };
    for (int i = 0; recorded < 10000 && i < 2601; ++i) {
      const auto& rec = implicit_records[static_cast<std::size_t>(i)];
      const Vec x0 = mpvc_start(Formulation::Implicit, rec.start[0],
                                rec.start[1]);
      solve(implicit_spec, x0, Vec::Zero(4), outer, inner, probe, false);
    }
    report(6, "descent-lemma invariants on recorded inner iterations",
           recorded >= 10000 && violations == 0,
           std::to_string(recorded) + " iterations, " +
               std::to_string(violations) + " violations");
  }

  // 7. Projection brute-force equivalence and Moreau-envelope inequality.
  {
    long bad = 0;
    for (int i = 0; i <= 200 && bad == 0; ++i)
      for (int j = 0; j <= 200; ++j) {
        const double u = -3.0 + 6.0 * i / 200.0;
        const double w = -3.0 + 6.0 * j / 200.0;
        const auto [a, b] = project_vc(u, w);
        if (std::abs(std::hypot(a - u, b - w) - brute_force_vc_distance(u, w)) >
            1e-3)
          ++bad;
      }
    long env_bad = 0;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    struct AtomCase {
      SeparableG g;
      std::function<Vec()> feasible;
    };
    std::vector<AtomCase> cases;
    cases.push_back({make_separable({zero_atom({0, 1})}, 2),
                     [&] { return (Vec(2) << dist(rng), dist(rng)).finished(); }});
    cases.push_back({make_separable({indicator_zero_atom({0, 1})}, 2),
                     [&] { return Vec::Zero(2); }});
    cases.push_back(
        {make_separable({box_atom({0, 1}, (Vec(2) << -1.0, -1.0).finished(),
                                  (Vec(2) << 1.0, 1.0).finished())},
                        2),
         [&] {
           return (Vec(2) << dist(rng) / 3.0, dist(rng) / 3.0).finished();
         }});
    cases.push_back({make_separable({vc_atom(0, 1)}, 2), [&]() -> Vec {
                       if (dist(rng) > 0.0)
                         return (Vec(2) << 0.0, dist(rng)).finished();
                       return (Vec(2) << std::abs(dist(rng)),
                               std::abs(dist(rng)))
                           .finished();
                     }});
    for (const auto& c : cases) {
      const Vec v = (Vec(2) << dist(rng), dist(rng)).finished();
      const double gamma = 0.9;
      const double env = moreau_env(c.g, v, gamma);
      for (int t = 0; t < 100; ++t) {
        const Vec zp = c.feasible();
        if (env > g_value(c.g, zp) + (zp - v).squaredNorm() / (2.0 * gamma) +
                      1e-12)
          ++env_bad;
      }
    }
    report(7, "prox brute-force equivalence and envelope inequality",
           bad == 0 && env_bad == 0,
           std::to_string(bad) + " projection mismatches, " +
               std::to_string(env_bad) + " envelope violations");
  }

  // 8. Finite-difference agreement for gradients and surrogate gradients.
  {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    long failures = 0;
    for (Formulation f : {Formulation::Implicit, Formulation::Intermediate,
                          Formulation::Explicit}) {
      const ProblemSpec spec = build_mpvc(f);
      std::vector<Vec> points;
      for (int t = 0; t < 20; ++t) {
        Vec x(spec.n);
        for (Index i = 0; i < spec.n; ++i) x[i] = dist(rng);
        points.push_back(x);
      }
      const auto rep = validate_gradients(spec, points, 1e-4);
      if (!rep.all_pass) ++failures;
      // surrogate gradient of F with z held fixed
      const double mu = 0.7;
      for (const Vec& x : points) {
        const Vec z = slack_oracle(spec, x, Vec::Zero(spec.m), mu).z;
        const Vec grad = surrogate_gradient(spec, x, z, Vec::Zero(spec.m), mu);
        Vec fd(spec.n);
        for (Index i = 0; i < spec.n; ++i) {
          const double h = 1e-6 * (1.0 + std::abs(x[i]));
          Vec xp = x, xm = x;
          xp[i] += h;
          xm[i] -= h;
          fd[i] = (eval_F(spec, xp, z, Vec::Zero(spec.m), mu) -
                   eval_F(spec, xm, z, Vec::Zero(spec.m), mu)) /
                  (2.0 * h);
        }
        if ((grad - fd).norm() / std::max(1.0, fd.norm()) > 1e-4) ++failures;
      }
    }
    report(8, "finite-difference suite over shipped problems", failures == 0,
           std::to_string(failures) + " failures");
  }

  // 9. Infeasibility detection on the 1-D instance; dist^2 minimizer is 0.5.
  {
    ProblemSpec infeasible = make_problem(
        1, 2, [](const Vec&) { return 0.0; },
        [](const Vec&) { return Vec::Zero(1); },
        [](const Vec& x) { return (Vec(2) << x[0], x[0]).finished(); },
        [](const Vec&, const Vec& v) {
          return (Vec(1) << v[0] + v[1]).finished();
        },
        make_separable({indicator_zero_atom({0}),
                        box_atom({1}, (Vec(1) << 1.0).finished(),
                                 (Vec(1) << 2.0).finished())},
                       2));
    const auto rep = solve(infeasible, (Vec(1) << 3.0).finished(),
                           Vec::Zero(2), outer, inner);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "status %s, x = %.6f",
                  to_string(rep.status), rep.x_star[0]);
    report(9, "infeasibility detection at the distance minimizer",
           rep.status == OuterStatus::InfeasibleStationary &&
               std::abs(rep.x_star[0] - 0.5) <= 1e-4,
           buf);
  }

  std::printf("%s: %d criterion failure(s)\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
