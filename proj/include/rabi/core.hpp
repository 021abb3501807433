// core.hpp — shared scalar and dense-matrix aliases

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace rabi {

using cplx = std::complex<double>;

// Dense complex storage, row-major element order.
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1>;

constexpr cplx imag_unit{0.0, 1.0};

}  // namespace rabi
