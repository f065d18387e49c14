#pragma once

#include <Eigen/Dense>

namespace dcm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace dcm
