#pragma once

#include <Eigen/Core>

#include <limits>

namespace ialm {

using Scalar = double;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

} // namespace ialm
