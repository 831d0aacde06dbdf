#pragma once

#include <ialm/outer_solver.hpp>
#include <ialm/problem.hpp>
#include <ialm/prox.hpp>
#include <ialm/types.hpp>

#include <cmath>
#include <stdexcept>

namespace ialm::bench {

enum class Formulation { Implicit, Intermediate, Explicit };

inline const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::Implicit: return "implicit";
    case Formulation::Intermediate: return "intermediate";
    case Formulation::Explicit: return "explicit";
  }
  return "?";
}

inline const Scalar kMpvcRoot2Gap = 5.0 * std::sqrt(2.0);

/// Truss-topology example with vanishing constraints:
///   minimize 4 x1 + 2 x2
///   s.t. x1 >= 0, x2 >= 0,
///        x1 > 0 => x1 + x2 >= 5 sqrt(2),
///        x2 > 0 => x1 + x2 >= 5.
/// Global minimizer (0,0), local minimizer (0,5). Implicit form has
/// (n,m) = (2,4), intermediate (4,6), explicit (6,8).
inline ProblemSpec build_mpvc(Formulation formulation) {
  switch (formulation) {
    case Formulation::Implicit: {
      SeparableG g = make_separable({vc_atom(0, 1), vc_atom(2, 3)}, 4);
      return make_problem(
          2, 4,
          [](const Vec& x) { return 4.0 * x[0] + 2.0 * x[1]; },
          [](const Vec&) { return (Vec(2) << 4.0, 2.0).finished(); },
          [](const Vec& x) {
            Vec c(4);
            c << x[0], x[0] + x[1] - kMpvcRoot2Gap, x[1], x[0] + x[1] - 5.0;
            return c;
          },
          [](const Vec&, const Vec& v) {
            Vec out(2);
            out << v[0] + v[1] + v[3], v[1] + v[2] + v[3];
            return out;
          },
          std::move(g));
    }
    case Formulation::Intermediate: {
      SeparableG g = make_separable({vc_atom(0, 4), vc_atom(2, 5),
                                     indicator_zero_atom({1}),
                                     indicator_zero_atom({3})},
                                    6);
      return make_problem(
          4, 6,
          [](const Vec& x) { return 4.0 * x[0] + 2.0 * x[1]; },
          [](const Vec&) { return (Vec(4) << 4.0, 2.0, 0.0, 0.0).finished(); },
          [](const Vec& x) {
            Vec c(6);
            c << x[0], x[0] + x[1] - kMpvcRoot2Gap - x[2], x[1],
                x[0] + x[1] - 5.0 - x[3], x[2], x[3];
            return c;
          },
          [](const Vec&, const Vec& v) {
            Vec out(4);
            out << v[0] + v[1] + v[3], v[1] + v[2] + v[3], v[4] - v[1],
                v[5] - v[3];
            return out;
          },
          std::move(g));
    }
    case Formulation::Explicit:
      return lift_explicit(build_mpvc(Formulation::Implicit));
  }
  throw std::invalid_argument("build_mpvc: unknown formulation");
}

/// Full start vector for a 2-D grid point: slack components of lifted
/// formulations are initialized to the linear expressions they mirror, so
/// the added equality constraints hold at the start.
inline Vec mpvc_start(Formulation formulation, Scalar x1, Scalar x2) {
  switch (formulation) {
    case Formulation::Implicit:
      return (Vec(2) << x1, x2).finished();
    case Formulation::Intermediate:
      return (Vec(4) << x1, x2, x1 + x2 - kMpvcRoot2Gap, x1 + x2 - 5.0)
          .finished();
    case Formulation::Explicit: {
      Vec u(6);
      u << x1, x2, x1, x1 + x2 - kMpvcRoot2Gap, x2, x1 + x2 - 5.0;
      return u;
    }
  }
  throw std::invalid_argument("mpvc_start: unknown formulation");
}

} // namespace ialm::bench
