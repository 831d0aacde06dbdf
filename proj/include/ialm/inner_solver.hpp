#pragma once

#include <ialm/problem.hpp>
#include <ialm/prox.hpp>
#include <ialm/types.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace ialm {

/// Slack oracle S_mu(x, y) = prox_{mu g}(c(x) + mu y): the z-minimizer of the
/// slack-lifted augmented Lagrangian, returned with the g-value at z.
inline ProxPoint slack_oracle(const ProblemSpec& spec, const Vec& x,
                              const Vec& y_hat, Scalar mu) {
  return prox_g(spec.g, spec.c_value(x) + mu * y_hat, mu);
}

/// Smooth part of the slack-lifted AL:
///   F(x, z) = f(x) + ||c(x) + mu y - z||^2 / (2 mu).
inline Scalar eval_F(const ProblemSpec& spec, const Vec& x, const Vec& z,
                     const Vec& y_hat, Scalar mu) {
  return spec.f_value(x) +
         (spec.c_value(x) + mu * y_hat - z).squaredNorm() / (2.0 * mu);
}

struct PValue {
  Scalar p;
  Vec z;        // slack-oracle certificate at x
  Scalar g_at_z;
  Scalar scale; // sum of term magnitudes; p carries roundoff ~ eps * scale
};

/// Implicit AL value p(x) = F(x, z) + g(z) - (mu/2) ||y||^2 with z from the
/// slack oracle; always finite. Evaluated in the expanded form
///   p = f(x) + g(z) + y^T (c(x) - z) + ||c(x) - z||^2 / (2 mu),
/// which avoids the cancellation of the two (mu/2) ||y||^2 terms and keeps
/// the roundoff floor of p proportional to the terms that actually vary.
inline PValue eval_p(const ProblemSpec& spec, const Vec& x, const Vec& y_hat,
                     Scalar mu) {
  ProxPoint zp = slack_oracle(spec, x, y_hat, mu);
  const Scalar f = spec.f_value(x);
  const Vec r = spec.c_value(x) - zp.z;
  const Scalar linear = y_hat.dot(r);
  const Scalar quad = r.squaredNorm() / (2.0 * mu);
  const Scalar p = f + zp.g_at_z + linear + quad;
  const Scalar scale =
      std::abs(f) + std::abs(zp.g_at_z) + std::abs(linear) + quad;
  return {p, std::move(zp.z), zp.g_at_z, scale};
}

/// Surrogate gradient of p at x given an oracle element z:
///   grad f(x) + (1/mu) grad c(x)^T [c(x) + mu y - z].
inline Vec surrogate_gradient(const ProblemSpec& spec, const Vec& x,
                              const Vec& z, const Vec& y_hat, Scalar mu) {
  const Vec residual = spec.c_value(x) + mu * y_hat - z;
  return spec.f_gradient(x) + spec.c_jtv(x, residual / mu);
}

enum class DirectionRule { SteepestDescent, BarzilaiBorwein };
enum class InnerStatus { Converged, MaxIterations, LinesearchStalled };

struct InnerSettings {
  Scalar alpha = 1e-4;       // Armijo parameter, in (0,1)
  Scalar beta = 0.5;         // backtracking factor, in (0,1)
  Scalar theta_angle = 0.1;  // direction angle bound, in (0,1)
  Scalar omega = 1.0;        // direction length bound, in (0,1]
  Scalar nu = 1.0;           // nonmonotonicity mixing, in (0,1]
  Scalar epsilon = 1e-8;     // stationarity tolerance
  int max_iter = 5000;
  int ls_max = 60;
  DirectionRule direction = DirectionRule::SteepestDescent;
};

inline void validate(const InnerSettings& s) {
  const bool ok = s.alpha > 0 && s.alpha < 1 && s.beta > 0 && s.beta < 1 &&
                  s.theta_angle > 0 && s.theta_angle < 1 && s.omega > 0 &&
                  s.omega <= 1 && s.nu > 0 && s.nu <= 1 && s.epsilon >= 0 &&
                  s.max_iter > 0 && s.ls_max > 0;
  if (!ok) throw std::invalid_argument("InnerSettings: parameter out of range");
}

struct InnerResult {
  Vec x_star;
  Vec z_star;
  Scalar grad_norm = 0.0; // ||grad_x F(x*, z*)||
  Scalar p_value = 0.0;
  int iterations = 0;
  InnerStatus status = InnerStatus::Converged;
};

struct InnerIterationRecord {
  int j;             // completed iteration index
  Scalar p_next;     // p(x^{j+1})
  Scalar phi_prev;   // Phi_j
  Scalar phi_next;   // Phi_{j+1}
  Scalar delta;      // alpha gamma_j <grad p^j, d^j>
  Scalar gamma;      // accepted stepsize
  Scalar grad_norm;  // ||grad p^j||
  Scalar phi0;       // Phi_0 = p(x^0)
};

using InnerTraceFn = std::function<void(const InnerIterationRecord&)>;

/// Previous (point, surrogate gradient) pair for spectral stepsizes.
struct DirectionHistory {
  std::optional<Vec> x_prev;
  std::optional<Vec> grad_prev;
};

/// Picks a descent direction satisfying
///   <grad, d> <= -theta ||grad|| ||d||  and  ||d|| >= omega ||grad||.
/// SteepestDescent returns -grad. BarzilaiBorwein scales it by the spectral
/// stepsize, clamped to [omega, 1e6], falling back to -grad when the history
/// is empty or the curvature is degenerate. Both choices are collinear with
/// -grad, so the angle bound holds for any theta in (0,1).
inline Vec choose_direction(const Vec& grad, const Vec& x,
                            const InnerSettings& settings,
                            const DirectionHistory& history) {
  if (settings.direction == DirectionRule::BarzilaiBorwein &&
      history.x_prev && history.grad_prev) {
    const Vec s = x - *history.x_prev;
    const Vec u = grad - *history.grad_prev;
    const Scalar su = s.dot(u);
    if (su > 0.0 && std::isfinite(su)) {
      Scalar tau = s.squaredNorm() / su;
      if (std::isfinite(tau) && tau > 0.0) {
        tau = std::min(std::max(tau, settings.omega), 1e6);
        return -tau * grad;
      }
    }
  }
  return -grad;
}

namespace detail {

/// Floating-point fallback for the regime where changes of p are smaller
/// than its roundoff floor and the merit-based linesearch is blind: take
/// plain gradient steps, backtracking on decrease of the gradient norm
/// itself, which near a minimizer is still measurable long after merit
/// decrease is not. In exact arithmetic this phase is never entered. The
/// gradient norm is exactly the quantity the stationarity certificate
/// needs, so success here yields a Converged result.
inline InnerResult polish_stationarity(const ProblemSpec& spec, Vec x,
                                       const Vec& y_hat, Scalar mu,
                                       const InnerSettings& settings,
                                       int iterations_used) {
  Vec z = slack_oracle(spec, x, y_hat, mu).z;
  Vec grad = surrogate_gradient(spec, x, z, y_hat, mu);
  Scalar grad_norm = grad.norm();
  constexpr int kPolishMax = 100;
  for (int t = 0; t < kPolishMax; ++t) {
    if (grad_norm <= settings.epsilon)
      return {x,         z, grad_norm, eval_p(spec, x, y_hat, mu).p,
              iterations_used, InnerStatus::Converged};
    Scalar gamma = 1.0;
    bool improved = false;
    for (int ell = 0; ell <= settings.ls_max; ++ell) {
      const Vec x_try = x - gamma * grad;
      const Vec z_try = slack_oracle(spec, x_try, y_hat, mu).z;
      const Vec grad_try = surrogate_gradient(spec, x_try, z_try, y_hat, mu);
      if (grad_try.norm() < grad_norm) {
        x = x_try;
        z = z_try;
        grad = grad_try;
        grad_norm = grad.norm();
        improved = true;
        break;
      }
      gamma *= settings.beta;
    }
    if (!improved) break;
  }
  return {x,         z, grad_norm, eval_p(spec, x, y_hat, mu).p,
          iterations_used, InnerStatus::LinesearchStalled};
}

} // namespace detail

/// Nonmonotone descent on the implicit AL p(x) = L_mu(x, y_hat), driven by
/// the slack oracle. Returns an eps-stationary pair (x*, z*) whose surrogate
/// gradient norm certifies stationarity.
inline InnerResult solve_inner(const ProblemSpec& spec, const Vec& x0,
                               const Vec& y_hat, Scalar mu,
                               const InnerSettings& settings,
                               const InnerTraceFn& trace = {}) {
  validate(settings);
  if (!(mu > 0.0) || mu >= spec.prox_bound_gamma())
    throw std::invalid_argument("solve_inner: mu outside (0, gamma_g)");

  Vec x = x0;
  PValue pv = eval_p(spec, x, y_hat, mu);
  const Scalar phi0 = pv.p;
  Scalar phi = phi0;
  DirectionHistory history;

  for (int j = 0; j < settings.max_iter; ++j) {
    const Vec grad = surrogate_gradient(spec, x, pv.z, y_hat, mu);
    const Scalar grad_norm = grad.norm();
    if (grad_norm <= settings.epsilon)
      return {x, pv.z, grad_norm, pv.p, j, InnerStatus::Converged};

    const Vec d = choose_direction(grad, x, settings, history);
    const Scalar slope = grad.dot(d);

    Scalar gamma = 1.0;
    bool accepted = false;
    Vec x_next;
    PValue pv_next{};
    for (int ell = 0; ell <= settings.ls_max; ++ell) {
      x_next = x + gamma * d;
      pv_next = eval_p(spec, x_next, y_hat, mu);
      if (pv_next.p <= phi + settings.alpha * gamma * slope) {
        accepted = true;
        break;
      }
      gamma *= settings.beta;
    }
    const Scalar delta = settings.alpha * gamma * slope;
    // Two floating-point exhaustion modes end the merit-driven phase: the
    // backtracked step leaves x bitwise unchanged, or the attainable
    // decrease gamma |<grad, d>| falls below the roundoff floor of the
    // merit value, where the acceptance test can no longer certify
    // progress. Hand over to the gradient-norm polish phase.
    const Scalar floor =
        16.0 * std::numeric_limits<Scalar>::epsilon() * pv.scale;
    if (!accepted || (x_next - x).norm() == 0.0 || -gamma * slope <= floor) {
      if (accepted && pv_next.p < pv.p) { // keep an accepted improvement
        x = std::move(x_next);
        pv = std::move(pv_next);
      }
      return detail::polish_stationarity(spec, std::move(x), y_hat, mu,
                                         settings, j);
    }
    const Scalar phi_next = (1.0 - settings.nu) * phi + settings.nu * pv_next.p;
    if (trace)
      trace({j, pv_next.p, phi, phi_next, delta, gamma, grad_norm, phi0});

    history.x_prev = x;
    history.grad_prev = grad;
    x = std::move(x_next);
    pv = std::move(pv_next);
    phi = phi_next;
  }

  const Vec grad = surrogate_gradient(spec, x, pv.z, y_hat, mu);
  return {x, pv.z, grad.norm(), pv.p, settings.max_iter,
          InnerStatus::MaxIterations};
}

} // namespace ialm
