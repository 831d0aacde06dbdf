#pragma once

#include <ialm/inner_solver.hpp>
#include <ialm/problem.hpp>
#include <ialm/types.hpp>

#include <stdexcept>

namespace ialm {

/// Approximate-KKT residual triple for a candidate (x, y, z).
struct KKTResiduals {
  Scalar dual = 0.0;            // ||grad f(x) + grad c(x)^T y||
  Scalar prox_membership = 0.0; // fixed-point surrogate for dist(y, dg(z))
  Scalar primal = 0.0;          // ||c(x) - z||
};

/// The membership component is ||z - prox_{mu g}(z + mu y)||: zero exactly
/// when the prox fixed-point inclusion certifying y in dg(z) holds. For
/// nonconvex g this is a sufficient certificate, not the distance to dg(z),
/// and it is exact on the solver's own iterates.
inline KKTResiduals kkt_residuals(const ProblemSpec& spec, const Vec& x,
                                  const Vec& y, const Vec& z,
                                  Scalar mu_check = 1.0) {
  if (!(mu_check > 0.0) || mu_check >= spec.prox_bound_gamma())
    throw std::invalid_argument("kkt_residuals: mu_check outside (0, gamma_g)");
  KKTResiduals r;
  r.dual = (spec.f_gradient(x) + spec.c_jtv(x, y)).norm();
  r.primal = (spec.c_value(x) - z).norm();
  const ProxPoint fp = prox_g(spec.g, z + mu_check * y, mu_check);
  r.prox_membership = (z - fp.z).norm();
  return r;
}

struct UpsilonCertificate {
  Scalar grad_norm = 0.0;
  bool is_certificate = false;
};

/// Checks that (x, z) is a valid stationarity pair for the implicit AL at
/// (y_hat, mu): grad_norm is ||grad_x F(x, z)|| and is_certificate holds iff
/// z attains the slack-oracle objective value to 1e-12, i.e. z is a genuine
/// minimizer of the prox subproblem (possibly differing from the tie-break
/// selection).
inline UpsilonCertificate upsilon_certificate(const ProblemSpec& spec,
                                              const Vec& x, const Vec& z,
                                              const Vec& y_hat, Scalar mu) {
  if (!(mu > 0.0) || mu >= spec.prox_bound_gamma())
    throw std::invalid_argument("upsilon_certificate: mu outside (0, gamma_g)");
  UpsilonCertificate cert;
  const Vec v = spec.c_value(x) + mu * y_hat;
  cert.grad_norm = (spec.f_gradient(x) + spec.c_jtv(x, (v - z) / mu)).norm();
  const ProxPoint best = prox_g(spec.g, v, mu);
  const Scalar q_best = best.g_at_z + (best.z - v).squaredNorm() / (2.0 * mu);
  const Scalar q_z = spec.g.value(z) + (z - v).squaredNorm() / (2.0 * mu);
  cert.is_certificate = q_z <= q_best + 1e-12;
  return cert;
}

} // namespace ialm
