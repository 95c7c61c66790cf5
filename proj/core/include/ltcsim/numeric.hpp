#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ltcsim {

// softplus(x) = log(1 + e^x), numerically stable for large |x|.
inline double softplus(double x) {
  if (x > 30.0) return x;
  return std::log1p(std::exp(x));
}

// Inverse of softplus. Values <= 0 map to a large negative raw value whose
// softplus underflows to exactly 0 in double precision.
inline double softplus_inv(double y) {
  if (y <= 0.0) return -1000.0;
  if (y > 30.0) return y;
  return std::log(std::expm1(y));
}

inline double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline Eigen::ArrayXXd softplus(const Eigen::ArrayXXd& x) {
  return (x > 30.0).select(x, x.exp().log1p());
}

inline Eigen::ArrayXXd logistic(const Eigen::ArrayXXd& z) { return z.logistic(); }

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace ltcsim
