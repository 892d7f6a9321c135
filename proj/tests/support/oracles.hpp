#pragma once

// Independent reference computations for tests. Built on Eigen's own solvers, not on the library's Jacobi code.

#include "entroloss/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

using entroloss::cplx;
using entroloss::Matrix;
using entroloss::RealVector;
using entroloss::Vector;

inline RealVector eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double entropy(const Matrix& m) {
  const RealVector ev = eigenvalues(m);
  double s = 0.0, t = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = std::max(0.0, ev(i));
    if (x > 0) s -= x * std::log(x);
    t += x;
  }
  return s + (t > 0 ? t * std::log(t) : 0.0);
}

inline double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log(p);
  if (p < 1) s -= (1 - p) * std::log(1 - p);
  return s;
}

inline Matrix trace_second(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap)
      for (int b = 0; b < db; ++b) out(a, ap) += m(a * db + b, ap * db + b);
  return out;
}

inline Matrix trace_first(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int bp = 0; bp < db; ++bp)
      for (int a = 0; a < da; ++a) out(b, bp) += m(a * db + b, a * db + bp);
  return out;
}

inline double mutual_information(const Matrix& m, int da, int db) {
  return entropy(trace_second(m, da, db)) + entropy(trace_first(m, da, db)) - entropy(m);
}

/// Closed-form entanglement of formation of a two-qubit state from the concurrence.
inline double wootters_ef(const Matrix& rho) {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Matrix tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> es(rho * tilde);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

/// E_F upper bound by brute force over two-member pure ensembles of a rank-2 two-qubit state.
/// Unitaries on the 2-dim purifying space reduce to rows (cos t, e^{ip} sin t), (-sin t, e^{ip} cos t).
inline double grid_ef_two_member(const Matrix& rho, int theta_points = 100, int phi_points = 100) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  const RealVector ev = es.eigenvalues();
  // Two largest eigenpairs carry the support.
  Matrix f(4, 2);
  for (int k = 0; k < 2; ++k) f.col(k) = std::sqrt(std::max(0.0, ev(3 - k))) * es.eigenvectors().col(3 - k);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < theta_points; ++i) {
    const double t = 0.5 * std::numbers::pi * i / (theta_points - 1);
    for (int j = 0; j < phi_points; ++j) {
      const cplx ph = std::polar(1.0, 2.0 * std::numbers::pi * j / phi_points);
      Matrix w(2, 2);
      w << std::cos(t), ph * std::sin(t), -std::sin(t), ph * std::cos(t);
      const Matrix psi = w * f.transpose();
      double s = 0.0;
      for (int r = 0; r < 2; ++r) {
        Matrix m(2, 2);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) m(a, b) = psi(r, a * 2 + b);
        s += entropy(m * m.adjoint());
      }
      best = std::min(best, s);
    }
  }
  return best;
}

}  // namespace oracle
