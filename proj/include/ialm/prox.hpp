#pragma once

#include <ialm/types.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ialm {

/// Atomic pieces of a separable nonsmooth term. All shipped atoms are
/// indicators or the zero function, so their prox is an exact projection
/// and the prox-boundedness threshold is +infinity.
enum class AtomKind {
  ZeroFunction,
  IndicatorZero,
  IndicatorBox,
  IndicatorVC,
};

struct GAtom {
  AtomKind kind;
  std::vector<Index> indices; // positions within the range space of c
  Vec lo, hi;                 // IndicatorBox bounds, aligned with indices
};

inline GAtom zero_atom(std::vector<Index> idx) {
  return {AtomKind::ZeroFunction, std::move(idx), {}, {}};
}

inline GAtom indicator_zero_atom(std::vector<Index> idx) {
  return {AtomKind::IndicatorZero, std::move(idx), {}, {}};
}

inline GAtom box_atom(std::vector<Index> idx, Vec lo, Vec hi) {
  if (lo.size() != static_cast<Index>(idx.size()) || hi.size() != lo.size())
    throw std::invalid_argument("box_atom: bound sizes must match indices");
  for (Index i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i])
      throw std::invalid_argument("box_atom: lo > hi");
  return {AtomKind::IndicatorBox, std::move(idx), std::move(lo), std::move(hi)};
}

/// Vanishing-constraint atom over the pair (a, b), the indicator of
/// {(a,b) : a >= 0, a*b >= 0}.
inline GAtom vc_atom(Index a_index, Index b_index) {
  return {AtomKind::IndicatorVC, {a_index, b_index}, {}, {}};
}

/// Block-separable g built from atoms whose index sets partition 0..m-1.
struct SeparableG {
  std::vector<GAtom> atoms;
  Index dim = 0;
};

inline SeparableG make_separable(std::vector<GAtom> atoms, Index dim) {
  std::vector<char> seen(static_cast<std::size_t>(dim), 0);
  for (const auto& atom : atoms) {
    if (atom.kind == AtomKind::IndicatorVC && atom.indices.size() != 2)
      throw std::invalid_argument("SeparableG: VC atom must pair two components");
    for (Index i : atom.indices) {
      if (i < 0 || i >= dim || seen[static_cast<std::size_t>(i)])
        throw std::invalid_argument("SeparableG: indices must partition the range space");
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("SeparableG: atoms do not cover the range space");
  return {std::move(atoms), dim};
}

/// Nearest point of D_VC = ({0} x R) u (R+ x R+) to (u, w). The projection
/// is set-valued; ties are broken in favor of the quadrant candidate.
inline std::pair<Scalar, Scalar> project_vc(Scalar u, Scalar w) {
  const Scalar qa = std::max(u, 0.0);
  const Scalar qb = std::max(w, 0.0);
  const Scalar d_quad = (qa - u) * (qa - u) + (qb - w) * (qb - w);
  const Scalar d_axis = u * u;
  if (d_quad <= d_axis) return {qa, qb};
  return {0.0, w};
}

struct ProxPoint {
  Vec z;
  Scalar g_at_z;
};

/// g(v) for a separable indicator/zero structure: 0 on the domain,
/// +infinity outside. Membership is tested exactly.
inline Scalar g_value(const SeparableG& g, const Vec& v) {
  if (v.size() != g.dim)
    throw std::invalid_argument("g_value: dimension mismatch");
  for (const auto& atom : g.atoms) {
    switch (atom.kind) {
      case AtomKind::ZeroFunction:
        break;
      case AtomKind::IndicatorZero:
        for (Index i : atom.indices)
          if (v[i] != 0.0) return kInf;
        break;
      case AtomKind::IndicatorBox:
        for (std::size_t j = 0; j < atom.indices.size(); ++j) {
          const Scalar vi = v[atom.indices[j]];
          if (vi < atom.lo[static_cast<Index>(j)] || vi > atom.hi[static_cast<Index>(j)])
            return kInf;
        }
        break;
      case AtomKind::IndicatorVC: {
        const Scalar a = v[atom.indices[0]];
        const Scalar b = v[atom.indices[1]];
        if (a < 0.0 || a * b < 0.0) return kInf;
        break;
      }
    }
  }
  return 0.0;
}

/// Exact blockwise prox of a separable g. For the shipped atoms the prox is
/// a projection and gamma only enters through the legality check.
inline ProxPoint prox_g(const SeparableG& g, const Vec& v, Scalar gamma) {
  if (gamma <= 0.0)
    throw std::invalid_argument("prox_g: gamma must be positive");
  if (v.size() != g.dim)
    throw std::invalid_argument("prox_g: dimension mismatch");
  Vec z = v;
  for (const auto& atom : g.atoms) {
    switch (atom.kind) {
      case AtomKind::ZeroFunction:
        break;
      case AtomKind::IndicatorZero:
        for (Index i : atom.indices) z[i] = 0.0;
        break;
      case AtomKind::IndicatorBox:
        for (std::size_t j = 0; j < atom.indices.size(); ++j) {
          const Index i = atom.indices[j];
          z[i] = std::min(std::max(v[i], atom.lo[static_cast<Index>(j)]),
                          atom.hi[static_cast<Index>(j)]);
        }
        break;
      case AtomKind::IndicatorVC: {
        const auto [a, b] = project_vc(v[atom.indices[0]], v[atom.indices[1]]);
        z[atom.indices[0]] = a;
        z[atom.indices[1]] = b;
        break;
      }
    }
  }
  return {std::move(z), 0.0};
}

/// Moreau envelope value g^gamma(v) = g(z) + ||z - v||^2 / (2 gamma) at the
/// deterministic prox point z.
inline Scalar moreau_env(const SeparableG& g, const Vec& v, Scalar gamma) {
  const ProxPoint p = prox_g(g, v, gamma);
  return p.g_at_z + (p.z - v).squaredNorm() / (2.0 * gamma);
}

/// Type-erased prox oracle: the contract every g must satisfy. The value
/// function evaluates g at an arbitrary point (+infinity outside dom g) and
/// is used by diagnostics only.
struct GOracle {
  std::function<ProxPoint(const Vec&, Scalar)> prox;
  std::function<Scalar(const Vec&)> value;
  Scalar prox_bound_gamma = kInf;
};

inline GOracle make_oracle(SeparableG g) {
  GOracle o;
  o.prox = [g](const Vec& v, Scalar gamma) { return prox_g(g, v, gamma); };
  o.value = [g](const Vec& v) { return g_value(g, v); };
  o.prox_bound_gamma = kInf;
  return o;
}

inline ProxPoint prox_g(const GOracle& g, const Vec& v, Scalar gamma) {
  if (gamma <= 0.0)
    throw std::invalid_argument("prox_g: gamma must be positive");
  if (gamma >= g.prox_bound_gamma)
    throw std::invalid_argument("prox_g: gamma exceeds the prox-boundedness threshold");
  return g.prox(v, gamma);
}

} // namespace ialm
