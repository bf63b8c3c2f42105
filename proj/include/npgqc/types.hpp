#pragma once

#include <Eigen/Dense>
#include <complex>

namespace npgqc {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3cd;
using VecX = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr cplx im{0.0, 1.0};

/// "2pi x f MHz" expressed in rad/us (the internal unit system: time in us,
/// angular frequency in rad/us).
inline constexpr double mhz(double f) { return two_pi * f; }

} // namespace npgqc
