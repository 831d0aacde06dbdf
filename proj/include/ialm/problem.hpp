#pragma once

#include <ialm/prox.hpp>
#include <ialm/types.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ialm {

/// Five-oracle description of a generalized program
///   minimize f(x) + g(c(x)),  x in R^n, c : R^n -> R^m,
/// matrix-free by construction: only gradient and Jacobian-transpose-vector
/// products are required, never assembled matrices. Oracles must be pure
/// functions; a ProblemSpec is immutable once built and may be shared across
/// concurrent solver runs.
struct ProblemSpec {
  Index n = 0;
  Index m = 0;
  std::function<Scalar(const Vec&)> f_value;
  std::function<Vec(const Vec&)> f_gradient;
  std::function<Vec(const Vec&)> c_value;
  std::function<Vec(const Vec&, const Vec&)> c_jtv; // (x, v) -> grad c(x)^T v
  GOracle g;

  Scalar prox_bound_gamma() const { return g.prox_bound_gamma; }
};

inline ProblemSpec make_problem(Index n, Index m,
                                std::function<Scalar(const Vec&)> f,
                                std::function<Vec(const Vec&)> fgrad,
                                std::function<Vec(const Vec&)> c,
                                std::function<Vec(const Vec&, const Vec&)> jtv,
                                SeparableG g) {
  return {n, m, std::move(f), std::move(fgrad), std::move(c), std::move(jtv),
          make_oracle(std::move(g))};
}

struct ValidationEntry {
  Vec point;
  Scalar grad_f_rel_err = 0.0;
  Scalar jac_rel_err = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool all_pass = true;
};

namespace detail {

inline void check_oracle_dims(const ProblemSpec& spec, const Vec& x) {
  if (x.size() != spec.n)
    throw std::invalid_argument("validate_gradients: point dimension != n");
  if (spec.f_gradient(x).size() != spec.n)
    throw std::invalid_argument("oracle contract violation: f_gradient returned wrong dimension");
  if (spec.c_value(x).size() != spec.m)
    throw std::invalid_argument("oracle contract violation: c_value returned wrong dimension");
  if (spec.c_jtv(x, Vec::Zero(spec.m)).size() != spec.n)
    throw std::invalid_argument("oracle contract violation: c_jtv returned wrong dimension");
}

} // namespace detail

/// Checks f_gradient and c_jtv against central finite differences of the
/// value oracles, with componentwise step h_i = 1e-6 (1 + |x_i|).
inline ValidationReport validate_gradients(const ProblemSpec& spec,
                                           const std::vector<Vec>& points,
                                           Scalar tol = 1e-4) {
  if (tol <= 0.0)
    throw std::invalid_argument("validate_gradients: tol must be positive");
  ValidationReport report;
  for (const Vec& x : points) {
    detail::check_oracle_dims(spec, x);
    ValidationEntry entry;
    entry.point = x;

    Vec fd_grad(spec.n);
    Eigen::MatrixXd fd_jt(spec.n, spec.m);
    for (Index i = 0; i < spec.n; ++i) {
      const Scalar h = 1e-6 * (1.0 + std::abs(x[i]));
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      fd_grad[i] = (spec.f_value(xp) - spec.f_value(xm)) / (2.0 * h);
      fd_jt.row(i) = ((spec.c_value(xp) - spec.c_value(xm)) / (2.0 * h)).transpose();
    }

    const Vec grad = spec.f_gradient(x);
    entry.grad_f_rel_err =
        (grad - fd_grad).norm() / std::max(1.0, fd_grad.norm());

    Eigen::MatrixXd jt(spec.n, spec.m);
    for (Index i = 0; i < spec.m; ++i)
      jt.col(i) = spec.c_jtv(x, Vec::Unit(spec.m, i));
    entry.jac_rel_err = (jt - fd_jt).norm() / std::max(1.0, fd_jt.norm());

    entry.pass = entry.grad_f_rel_err <= tol && entry.jac_rel_err <= tol;
    report.all_pass = report.all_pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

} // namespace ialm
