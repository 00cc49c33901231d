#pragma once

// Reference solutions shared by the unit tests and the acceptance runner.

#include <array>
#include <cmath>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rbfreg/rhombus.hpp"

namespace oracle {

using Wide = boost::multiprecision::cpp_bin_float_50;

// Solves the double-rounded 4x4 rhombus system for the y-coefficients by
// Gaussian elimination in 50 digits.
inline Eigen::Vector4d rhombus_c2(const rbfreg::KernelSpec& kernel, double delta) {
  const auto pairs = rbfreg::rhombus_landmarks(delta);
  std::array<std::array<Wide, 5>, 4> m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i][j] = rbfreg::eval(kernel, (pairs.source[i] - pairs.source[j]).norm());
    }
    m[i][4] = Wide(pairs.target[i].y()) - Wide(pairs.source[i].y());
  }
  for (int k = 0; k < 4; ++k) {
    int p = k;
    for (int i = k + 1; i < 4; ++i) {
      if (abs(m[i][k]) > abs(m[p][k])) p = i;
    }
    std::swap(m[k], m[p]);
    for (int i = k + 1; i < 4; ++i) {
      const Wide f = m[i][k] / m[k][k];
      for (int j = k; j < 5; ++j) m[i][j] -= f * m[k][j];
    }
  }
  std::array<Wide, 4> x;
  for (int i = 3; i >= 0; --i) {
    Wide s = m[i][4];
    for (int j = i + 1; j < 4; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  Eigen::Vector4d out;
  for (int i = 0; i < 4; ++i) out(i) = static_cast<double>(x[i]);
  return out;
}

inline double relative_gap(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace oracle
