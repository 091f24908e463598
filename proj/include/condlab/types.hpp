#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace condlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;

/// Position or wave vector of dimension 1..3 (no heap allocation).
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
/// Integer lattice offset per axis.
using IVec = Eigen::Matrix<Index, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace condlab
