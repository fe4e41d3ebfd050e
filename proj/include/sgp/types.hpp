#pragma once

#include <Eigen/Core>

namespace sgp {

using Vector = Eigen::VectorXd;

}  // namespace sgp
