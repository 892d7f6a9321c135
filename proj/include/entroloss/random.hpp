#pragma once

#include "entroloss/operator.hpp"
#include "entroloss/types.hpp"

#include <cstdint>
#include <random>

namespace entroloss {

/// Seeded generator for random operators. Sequences are reproducible for a fixed seed
/// with a fixed standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }

  Matrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
    return g;
  }

  Vector complex_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
  }

  /// Haar-distributed unitary (QR of a Ginibre matrix, R diagonal made positive).
  Matrix haar_unitary(Eigen::Index n) { return haar_isometry(n, n); }

  /// Haar isometry with `cols` orthonormal columns in dimension `rows`.
  Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols) {
    const Matrix g = ginibre(rows, cols);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < cols; ++k) {
      const cplx d = r(k, k);
      if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q;
  }

  Matrix hermitian(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    return 0.5 * (g + g.adjoint());
  }

  /// Unit ket drawn uniformly from the sphere.
  Vector pure_ket(Eigen::Index n) { return complex_vector(n).normalized(); }

  /// Density matrix G G^dagger / Tr with G of size n x rank (Hilbert-Schmidt measure for rank = n).
  TraceClassElement density(Eigen::Index n, Eigen::Index rank = -1, Dims dims = {}) {
    if (rank <= 0) rank = n;
    const Matrix g = ginibre(n, rank);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return TraceClassElement::trusted_dense(std::move(rho), std::move(dims));
  }

  TraceClassElement pure_state(Eigen::Index n, Dims dims = {}) {
    return TraceClassElement::from_ket(pure_ket(n), std::move(dims));
  }

  /// Uniform point of the probability simplex.
  RealVector simplex(Eigen::Index n) {
    RealVector p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = -std::log(1.0 - uniform());
    return p / p.sum();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace entroloss
