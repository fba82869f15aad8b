#pragma once

#include <Eigen/Core>

namespace pvgait {

// One scalar type for every numeric path; Eigen is the math backbone.
using Scalar = double;

using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
using Matrix2X = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

}  // namespace pvgait
