#pragma once

// Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//
// Rotations are applied in row-cyclic order (p < q, p outer) so the result is a
// deterministic function of the input. During the first sweeps pairs below a
// threshold are skipped; afterwards negligible off-diagonal entries are zeroed
// without rotating.

#include "entroloss/error.hpp"
#include "entroloss/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace entroloss::jacobi {

struct Result {
  RealVector values;  // descending
  Matrix vectors;     // columns, empty when not requested
};

namespace detail {

inline double off_norm2(const Matrix& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index q = 1; q < n; ++q)
    for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
  return s;
}

// Diagonalizes `a` in place; `v` accumulates the rotations when non-null.
inline void diagonalize(Matrix& a, Matrix* v, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  if (n < 2) return;
  double frob2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) frob2 += std::norm(a(i, j));
  if (frob2 == 0.0) return;

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const double off2 = off_norm2(a);
    if (off2 == 0.0 || off2 <= 1e-32 * frob2) return;
    const double threshold = sweep < 4 ? 0.2 * std::sqrt(off2) / static_cast<double>(n * n) : 0.0;

    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double g = 100.0 * mag;
        if (sweep > 4 && std::abs(alpha) + g == std::abs(alpha) && std::abs(beta) + g == std::abs(beta)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (mag <= threshold || mag == 0.0) continue;

        double t;
        const double diff = beta - alpha;
        if (std::abs(diff) + g == std::abs(diff)) {
          t = mag / diff;
        } else {
          const double theta = 0.5 * diff / mag;
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx phase = std::conj(apq) / mag;  // e^{-i phi}
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
        const cplx gqp = -s * phase;
        const cplx gqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          const cplx nkp = c * akp + gqp * akq;
          const cplx nkq = s * akp + gqq * akq;
          a(k, p) = nkp;
          a(k, q) = nkq;
          a(p, k) = std::conj(nkp);
          a(q, k) = std::conj(nkq);
        }
        a(p, p) = alpha - t * mag;
        a(q, q) = beta + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (v != nullptr) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const cplx vkp = (*v)(k, p);
            const cplx vkq = (*v)(k, q);
            (*v)(k, p) = c * vkp + gqp * vkq;
            (*v)(k, q) = s * vkp + gqq * vkq;
          }
        }
      }
    }
  }
  fail(ErrorKind::ConvergenceFailure, "Jacobi sweeps exhausted for dimension " + std::to_string(n));
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix (only the lower/upper consistency is
/// assumed, not checked). Eigenvalues are returned in descending order, ties keep the
/// solver order.
inline Result eigh(const Matrix& input, bool with_vectors = true) {
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.adjoint());
  Matrix v;
  if (with_vectors) v = Matrix::Identity(n, n);
  detail::diagonalize(a, with_vectors ? &v : nullptr);

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

  Result out;
  out.values.resize(n);
  if (with_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    if (with_vectors) out.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }
  return out;
}

/// Eigenvalues only, descending. Splits the matrix into irreducible blocks of its
/// sparsity pattern first, so block-diagonal inputs cost one small solve per block.
inline RealVector eigenvalues(const Matrix& input) {
  const Eigen::Index n = input.rows();
  std::vector<Eigen::Index> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (input(i, j) != 0.0 || input(j, i) != 0.0) {
        const auto ri = find(i);
        const auto rj = find(j);
        if (ri != rj) parent[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }

  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> block_of(static_cast<size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find(i);
    if (block_of[static_cast<size_t>(r)] < 0) {
      block_of[static_cast<size_t>(r)] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(block_of[static_cast<size_t>(r)])].push_back(i);
  }

  std::vector<double> values;
  values.reserve(static_cast<size_t>(n));
  for (const auto& idx : blocks) {
    if (idx.size() == 1) {
      values.push_back(input(idx[0], idx[0]).real());
      continue;
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix sub(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) sub(i, j) = input(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    const auto r = eigh(sub, false);
    for (Eigen::Index k = 0; k < m; ++k) values.push_back(r.values(k));
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<RealVector>(values.data(), n);
}

}  // namespace entroloss::jacobi
