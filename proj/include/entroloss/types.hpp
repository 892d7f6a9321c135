#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace entroloss {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

namespace tol {
inline constexpr double hermiticity = 1e-12;  // relative to max(1, |A|_max)
inline constexpr double psd = 1e-10;
inline constexpr double state_trace = 1e-12;
inline constexpr double support_cutoff = 1e-12;  // relative to the largest eigenvalue
inline constexpr double support_violation = 1e-10;
inline constexpr double unitarity = 1e-10;
inline constexpr double majorization = 1e-10;
}  // namespace tol

/// Size caps for dense materialization. Diagonal-type forms are exempt up to `max_structured_dim`.
struct Limits {
  std::int64_t max_dense_dim = 2048;
  std::int64_t max_structured_dim = std::int64_t{1} << 26;
};

inline Limits& limits() {
  static Limits instance;
  return instance;
}

/// eta(x) = -x log x with eta(0) = 0; natural logarithm throughout.
inline double eta(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

inline std::int64_t product(const Dims& dims) {
  std::int64_t p = 1;
  for (int d : dims) p *= d;
  return p;
}

}  // namespace entroloss
