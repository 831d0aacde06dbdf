#pragma once

#include <ialm/diagnostics.hpp>
#include <ialm/inner_solver.hpp>
#include <ialm/problem.hpp>
#include <ialm/types.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ialm {

struct OuterSettings {
  Scalar mu0 = 10.0;        // initial penalty
  Scalar theta = 0.8;       // sufficient-decrease factor, in (0,1)
  Scalar kappa = 0.5;       // penalty shrink factor, in (0,1)
  Scalar y_lo = -1e6;       // safeguard box, componentwise
  Scalar y_hi = 1e6;
  Scalar eps_prim = 1e-8;   // primal tolerance
  Scalar eps_dual = 1e-8;   // dual tolerance
  Scalar eps0 = 1e-1;       // initial inner tolerance
  Scalar zeta = 0.1;        // inner-tolerance shrink, in (0,1)
  Scalar mu_min = 1e-12;    // infeasibility-detection floor
  int max_outer = 100;
};

inline void validate(const OuterSettings& s) {
  const bool ok = s.mu0 > 0 && s.theta > 0 && s.theta < 1 && s.kappa > 0 &&
                  s.kappa < 1 && s.y_lo <= s.y_hi && std::isfinite(s.y_lo) &&
                  std::isfinite(s.y_hi) && s.eps_prim > 0 && s.eps_dual > 0 &&
                  s.eps0 > 0 && s.zeta > 0 && s.zeta < 1 && s.mu_min > 0 &&
                  s.max_outer > 0;
  if (!ok) throw std::invalid_argument("OuterSettings: parameter out of range");
}

/// Projection of the previous multiplier onto the bounded safeguard box Y:
/// matches the classical update as long as the multiplier stays within Y.
inline Vec safeguard(const Vec& y_prev, Scalar lo, Scalar hi) {
  return y_prev.cwiseMax(lo).cwiseMin(hi);
}

/// First-order multiplier estimate y = y_hat + (c(x) - z) / mu together with
/// the primal infeasibility measure V = ||c(x) - z||.
inline std::pair<Vec, Scalar> update_multiplier(const Vec& y_hat,
                                                const Vec& c_x, const Vec& z,
                                                Scalar mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("update_multiplier: mu must be positive");
  Vec y = y_hat + (c_x - z) / mu;
  const Scalar V = (c_x - z).norm();
  return {std::move(y), V};
}

/// Keeps mu on sufficient decrease of the infeasibility measure (or when it
/// is already below the primal tolerance), otherwise shrinks it by kappa.
inline Scalar update_penalty(Scalar V, Scalar V_prev, Scalar mu, int k,
                             Scalar theta, Scalar kappa, Scalar eps_prim) {
  if (k == 0 || V <= theta * V_prev || V <= eps_prim) return mu;
  return kappa * mu;
}

enum class OuterStatus {
  Solved,
  InfeasibleStationary,
  MaxOuterIterations,
  InnerSolverFailure,
};

struct OuterIterationRecord {
  int k;
  Scalar mu;
  Scalar eps_k;
  Scalar V;
  Scalar dual_norm; // inner solver's returned ||grad_x F(x^k, z^k)||
  int inner_iters;
  InnerStatus inner_status;
  Vec x, z, y_hat, y;
};

struct SolveReport {
  OuterStatus status = OuterStatus::MaxOuterIterations;
  Vec x_star, z_star, y_star;
  KKTResiduals residuals;
  int outer_iters = 0;
  int total_inner_iters = 0;
  Scalar final_mu = 0.0;
  std::vector<OuterIterationRecord> trace;
};

/// Safeguarded implicit augmented Lagrangian loop: safeguard the multiplier,
/// solve the implicit AL subproblem warm-started from the previous iterate,
/// update multiplier and penalty, and stop on the split criteria
/// eps_k <= eps_dual and V^k <= eps_prim. A penalty below mu_min with
/// persistent infeasibility is declared InfeasibleStationary (the iterate is
/// then a stationary point of the constraint-distance problem).
inline SolveReport solve(const ProblemSpec& spec, const Vec& x0, Vec y0,
                         const OuterSettings& outer,
                         InnerSettings inner_settings,
                         const InnerTraceFn& inner_trace = {},
                         bool keep_trace = true) {
  validate(outer);
  if (x0.size() != spec.n)
    throw std::invalid_argument("solve: x0 dimension != n");
  if (y0.size() == 0) y0 = Vec::Zero(spec.m);
  if (y0.size() != spec.m)
    throw std::invalid_argument("solve: y0 dimension != m");

  SolveReport report;
  Vec x = x0;
  Vec y = std::move(y0);
  Vec z;
  Scalar mu = outer.mu0;
  Scalar eps_prev = outer.eps0 / outer.zeta;
  Scalar V_prev = kInf;

  for (int k = 0; k < outer.max_outer; ++k) {
    const Vec y_hat = safeguard(y, outer.y_lo, outer.y_hi);
    const Scalar eps_k = std::max(outer.eps_dual, outer.zeta * eps_prev);
    eps_prev = eps_k;

    inner_settings.epsilon = eps_k;
    const InnerResult inner =
        solve_inner(spec, x, y_hat, mu, inner_settings, inner_trace);
    x = inner.x_star;
    z = inner.z_star;
    report.total_inner_iters += inner.iterations;
    report.outer_iters = k + 1;

    const Vec c_x = spec.c_value(x);
    auto [y_new, V] = update_multiplier(y_hat, c_x, z, mu);
    y = std::move(y_new);

    if (keep_trace)
      report.trace.push_back({k, mu, eps_k, V, inner.grad_norm,
                              inner.iterations, inner.status, x, z, y_hat, y});

    const auto finish = [&](OuterStatus status) {
      report.status = status;
      report.x_star = x;
      report.z_star = z;
      report.y_star = y;
      report.final_mu = mu;
      report.residuals = kkt_residuals(
          spec, x, y, z, std::min(mu, spec.prox_bound_gamma() / 2.0));
      return report;
    };

    // Neither exhaustion of the per-subproblem iteration budget nor a
    // stalled linesearch aborts the outer loop: both leave a valid
    // (iterate, slack) pair, and carrying on with it lets the multiplier
    // and penalty updates either recover convergence on later, easier
    // subproblems or drive infeasibility detection. A budget-truncated
    // solve simply spreads the subproblem work across outer iterations.

    if (inner.status == InnerStatus::Converged && eps_k <= outer.eps_dual &&
        V <= outer.eps_prim)
      return finish(OuterStatus::Solved);

    if (mu < outer.mu_min && V > outer.eps_prim)
      return finish(OuterStatus::InfeasibleStationary);

    mu = update_penalty(V, V_prev, mu, k, outer.theta, outer.kappa,
                        outer.eps_prim);
    V_prev = V;
  }

  report.status = OuterStatus::MaxOuterIterations;
  report.x_star = x;
  report.z_star = z;
  report.y_star = y;
  report.final_mu = mu;
  report.residuals =
      kkt_residuals(spec, x, y, z, std::min(mu, spec.prox_bound_gamma() / 2.0));
  return report;
}

/// Slack-lifted reformulation over (x, z) in R^{n+m}:
///   minimize f(x) + g(z)  subject to  c(x) - z = 0,
/// expressed in the same composite format with constraint map
/// (c(x) - z, z) in R^{2m} and nonsmooth term IndicatorZero (x) g.
inline ProblemSpec lift_explicit(const ProblemSpec& spec) {
  const Index n = spec.n;
  const Index m = spec.m;
  ProblemSpec lifted;
  lifted.n = n + m;
  lifted.m = 2 * m;
  lifted.f_value = [spec, n](const Vec& u) { return spec.f_value(u.head(n)); };
  lifted.f_gradient = [spec, n, m](const Vec& u) {
    Vec grad = Vec::Zero(n + m);
    grad.head(n) = spec.f_gradient(u.head(n));
    return grad;
  };
  lifted.c_value = [spec, n, m](const Vec& u) {
    Vec c(2 * m);
    c.head(m) = spec.c_value(u.head(n)) - u.tail(m);
    c.tail(m) = u.tail(m);
    return c;
  };
  lifted.c_jtv = [spec, n, m](const Vec& u, const Vec& v) {
    Vec out(n + m);
    out.head(n) = spec.c_jtv(u.head(n), v.head(m));
    out.tail(m) = v.tail(m) - v.head(m);
    return out;
  };
  const GOracle g = spec.g;
  lifted.g.prox_bound_gamma = g.prox_bound_gamma;
  lifted.g.prox = [g, m](const Vec& v, Scalar gamma) {
    ProxPoint tail = g.prox(v.tail(m), gamma);
    ProxPoint out;
    out.z = Vec::Zero(2 * m);
    out.z.tail(m) = tail.z;
    out.g_at_z = tail.g_at_z;
    return out;
  };
  lifted.g.value = [g, m](const Vec& v) -> Scalar {
    for (Index i = 0; i < m; ++i)
      if (v[i] != 0.0) return kInf;
    return g.value(v.tail(m));
  };
  return lifted;
}

} // namespace ialm
