#pragma once

#include "entroloss/error.hpp"
#include "entroloss/operator.hpp"
#include "entroloss/types.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace entroloss {

namespace detail {

inline void check_keep(const Dims& dims, const std::vector<int>& keep) {
  require(!keep.empty(), ErrorKind::BadFactorization, "keep set must be nonempty");
  for (size_t i = 0; i < keep.size(); ++i) {
    require(keep[i] >= 0 && keep[i] < static_cast<int>(dims.size()), ErrorKind::BadFactorization,
            "keep index " + std::to_string(keep[i]) + " outside factor list");
    if (i > 0) require(keep[i] > keep[i - 1], ErrorKind::BadFactorization, "keep set must be strictly increasing");
  }
}

/// Multi-index decomposition of flat indices over `dims` (row-major, first factor most significant).
inline std::vector<int> digits(std::int64_t flat, const Dims& dims) {
  std::vector<int> out(dims.size());
  for (size_t i = dims.size(); i-- > 0;) {
    out[i] = static_cast<int>(flat % dims[i]);
    flat /= dims[i];
  }
  return out;
}

/// For each flat index of the full space, its index in the kept subsystem and in the traced rest.
struct Split {
  std::vector<std::int64_t> kept;
  std::vector<std::int64_t> rest;
  std::int64_t kept_dim = 1;
  std::int64_t rest_dim = 1;
  Dims kept_dims;
};

inline Split split_indices(const Dims& dims, const std::vector<int>& keep) {
  Split s;
  std::vector<bool> is_kept(dims.size(), false);
  for (int k : keep) is_kept[static_cast<size_t>(k)] = true;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (is_kept[i]) {
      s.kept_dim *= dims[i];
      s.kept_dims.push_back(dims[i]);
    } else {
      s.rest_dim *= dims[i];
    }
  }
  const std::int64_t n = product(dims);
  s.kept.resize(static_cast<size_t>(n));
  s.rest.resize(static_cast<size_t>(n));
  std::vector<int> digit(dims.size(), 0);
  for (std::int64_t flat = 0; flat < n; ++flat) {
    std::int64_t k = 0;
    std::int64_t r = 0;
    for (size_t i = 0; i < dims.size(); ++i) {
      if (is_kept[i]) k = k * dims[i] + digit[i];
      else r = r * dims[i] + digit[i];
    }
    s.kept[static_cast<size_t>(flat)] = k;
    s.rest[static_cast<size_t>(flat)] = r;
    for (size_t i = dims.size(); i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return s;
}

}  // namespace detail

inline TraceClassElement tensor(const TraceClassElement& a, const TraceClassElement& b) {
  Dims dims = a.factor_dims();
  dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
  const std::int64_t n = a.dim() * b.dim();

  using F = TraceClassElement::Form;
  const bool a_diag = a.is_diagonal();
  const bool b_diag = b.is_diagonal();
  if (a_diag && b_diag) {
    require(n <= limits().max_structured_dim, ErrorKind::DimensionOverflow,
            "tensor product dimension " + std::to_string(n));
    const RealVector da = a.form() == F::copy ? a.flat_copy_diagonal() : a.diagonal_values();
    const RealVector db = b.form() == F::copy ? b.flat_copy_diagonal() : b.diagonal_values();
    RealVector d(n);
    for (Eigen::Index i = 0; i < da.size(); ++i) d.segment(i * db.size(), db.size()) = da(i) * db;
    return TraceClassElement::from_diagonal(std::move(d), std::move(dims));
  }
  if (a.is_rank_one() && b.is_rank_one()) {
    require(n <= limits().max_structured_dim, ErrorKind::DimensionOverflow,
            "tensor product dimension " + std::to_string(n));
    const Vector pa = a.form() == F::ghz ? a.ghz_ket() : a.ket();
    const Vector pb = b.form() == F::ghz ? b.ghz_ket() : b.ket();
    Vector psi(n);
    for (Eigen::Index i = 0; i < pa.size(); ++i) psi.segment(i * pb.size(), pb.size()) = pa(i) * pb;
    return TraceClassElement::from_ket(std::move(psi), std::move(dims));
  }
  require(n <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "tensor product dimension " + std::to_string(n));
  const Matrix ma = a.dense();
  const Matrix mb = b.dense();
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < ma.cols(); ++j)
    for (Eigen::Index i = 0; i < ma.rows(); ++i)
      m.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  return TraceClassElement::trusted_dense(std::move(m), std::move(dims));
}

/// Reduced element on the factors listed in `keep` (ascending order).
inline TraceClassElement partial_trace(const TraceClassElement& w, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const Dims& dims = w.factor_dims();
  detail::check_keep(dims, keep);
  if (keep.size() == dims.size()) return w;

  using F = TraceClassElement::Form;
  switch (w.form()) {
    case F::ghz: {
      const Vector& c = w.ket();
      return TraceClassElement::copy(c.cwiseAbs2(), static_cast<int>(keep.size()), dims[0]);
    }
    case F::copy:
      return TraceClassElement::copy(w.diagonal_values(), static_cast<int>(keep.size()), dims[0]);
    default: break;
  }

  const detail::Split s = detail::split_indices(dims, keep);
  const std::int64_t n = w.dim();
  if (w.form() == F::diagonal) {
    RealVector d = RealVector::Zero(s.kept_dim);
    const RealVector& v = w.diagonal_values();
    for (std::int64_t i = 0; i < n; ++i) d(s.kept[static_cast<size_t>(i)]) += v(i);
    return TraceClassElement::from_diagonal(std::move(d), s.kept_dims);
  }
  require(s.kept_dim <= limits().max_dense_dim, ErrorKind::DimensionOverflow,
          "reduced dimension " + std::to_string(s.kept_dim));
  if (w.form() == F::pure) {
    Matrix m = Matrix::Zero(s.kept_dim, s.rest_dim);
    const Vector& psi = w.ket();
    for (std::int64_t i = 0; i < n; ++i) m(s.kept[static_cast<size_t>(i)], s.rest[static_cast<size_t>(i)]) = psi(i);
    return TraceClassElement::trusted_dense(m * m.adjoint(), s.kept_dims);
  }
  const Matrix& a = w.dense_storage();
  Matrix out = Matrix::Zero(s.kept_dim, s.kept_dim);
  // group flat indices by their traced part
  std::vector<std::vector<std::int64_t>> by_rest(static_cast<size_t>(s.rest_dim));
  for (std::int64_t i = 0; i < n; ++i) by_rest[static_cast<size_t>(s.rest[static_cast<size_t>(i)])].push_back(i);
  for (const auto& group : by_rest)
    for (std::int64_t j : group)
      for (std::int64_t i : group) out(s.kept[static_cast<size_t>(i)], s.kept[static_cast<size_t>(j)]) += a(i, j);
  return TraceClassElement::trusted_dense(std::move(out), s.kept_dims);
}

/// Reorders the tensor factors: factor `order[i]` of the input becomes factor i of the output.
inline TraceClassElement permute_parties(const TraceClassElement& w, const std::vector<int>& order) {
  const Dims& dims = w.factor_dims();
  require(order.size() == dims.size(), ErrorKind::BadFactorization, "permutation size mismatch");
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
      require(sorted[i] == static_cast<int>(i), ErrorKind::BadFactorization, "not a permutation");
  }
  using F = TraceClassElement::Form;
  if (w.form() == F::ghz || w.form() == F::copy) return w;  // symmetric under party exchange

  Dims out_dims(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) out_dims[i] = dims[static_cast<size_t>(order[i])];
  const std::int64_t n = w.dim();
  std::vector<std::int64_t> map(static_cast<size_t>(n));
  for (std::int64_t flat = 0; flat < n; ++flat) {
    const auto d = detail::digits(flat, dims);
    std::int64_t idx = 0;
    for (size_t i = 0; i < dims.size(); ++i) idx = idx * out_dims[i] + d[static_cast<size_t>(order[i])];
    map[static_cast<size_t>(flat)] = idx;
  }
  switch (w.form()) {
    case F::diagonal: {
      RealVector v(n);
      for (std::int64_t i = 0; i < n; ++i) v(map[static_cast<size_t>(i)]) = w.diagonal_values()(i);
      return TraceClassElement::from_diagonal(std::move(v), out_dims);
    }
    case F::pure: {
      Vector v(n);
      for (std::int64_t i = 0; i < n; ++i) v(map[static_cast<size_t>(i)]) = w.ket()(i);
      return TraceClassElement::from_ket(std::move(v), out_dims);
    }
    default: {
      const Matrix& a = w.dense_storage();
      Matrix m(n, n);
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < n; ++i) m(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = a(i, j);
      return TraceClassElement::trusted_dense(std::move(m), out_dims);
    }
  }
}

/// Zero-padding of every factor up to `target` (same number of factors, each at least as large).
inline TraceClassElement embed(const TraceClassElement& w, const Dims& target) {
  const Dims& dims = w.factor_dims();
  require(target.size() == dims.size(), ErrorKind::DimensionMismatch, "embedding must keep the factor count");
  for (size_t i = 0; i < dims.size(); ++i)
    require(target[i] >= dims[i], ErrorKind::DimensionMismatch, "embedding cannot shrink a factor");
  if (target == dims) return w;

  using F = TraceClassElement::Form;
  if (w.form() == F::ghz || w.form() == F::copy) {
    for (int t : target) require(t == target[0], ErrorKind::DimensionMismatch, "correlated forms need equal factors");
    return w.form() == F::ghz ? TraceClassElement::ghz(w.ket(), w.parties(), target[0])
                              : TraceClassElement::copy(w.diagonal_values(), w.parties(), target[0]);
  }
  const std::int64_t n = w.dim();
  const std::int64_t m = product(target);
  std::vector<std::int64_t> map(static_cast<size_t>(n));
  for (std::int64_t flat = 0; flat < n; ++flat) {
    const auto d = detail::digits(flat, dims);
    std::int64_t idx = 0;
    for (size_t i = 0; i < dims.size(); ++i) idx = idx * target[i] + d[i];
    map[static_cast<size_t>(flat)] = idx;
  }
  switch (w.form()) {
    case F::diagonal: {
      require(m <= limits().max_structured_dim, ErrorKind::DimensionOverflow, "embedding dimension");
      RealVector v = RealVector::Zero(m);
      for (std::int64_t i = 0; i < n; ++i) v(map[static_cast<size_t>(i)]) = w.diagonal_values()(i);
      return TraceClassElement::from_diagonal(std::move(v), target);
    }
    case F::pure: {
      require(m <= limits().max_structured_dim, ErrorKind::DimensionOverflow, "embedding dimension");
      Vector v = Vector::Zero(m);
      for (std::int64_t i = 0; i < n; ++i) v(map[static_cast<size_t>(i)]) = w.ket()(i);
      return TraceClassElement::from_ket(std::move(v), target);
    }
    default: {
      require(m <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "embedding dimension");
      const Matrix& a = w.dense_storage();
      Matrix out = Matrix::Zero(m, m);
      for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t i = 0; i < n; ++i) out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = a(i, j);
      return TraceClassElement::trusted_dense(std::move(out), target);
    }
  }
}

namespace detail {

// ||a a^dagger - b b^dagger||_1 for unnormalized kets, from the 2x2 Gram data.
inline double rank_one_distance(double na2, double nb2, cplx overlap) {
  const double tr = na2 - nb2;
  const double det = -(na2 * nb2 - std::norm(overlap));
  return std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
}

}  // namespace detail

/// Trace norm of A - B.
inline double trace_distance(const TraceClassElement& a, const TraceClassElement& b) {
  require(a.dim() == b.dim(), ErrorKind::DimensionMismatch, "trace distance of elements with different dims");
  using F = TraceClassElement::Form;
  if (a.form() == F::copy && b.form() == F::copy && a.factor_dims() == b.factor_dims()) {
    const RealVector& p = a.diagonal_values();
    const RealVector& q = b.diagonal_values();
    const Eigen::Index m = std::max(p.size(), q.size());
    RealVector pp = RealVector::Zero(m), qq = RealVector::Zero(m);
    pp.head(p.size()) = p;
    qq.head(q.size()) = q;
    return (pp - qq).cwiseAbs().sum();
  }
  if (a.is_diagonal() && b.is_diagonal()) {
    const RealVector p = a.form() == F::copy ? a.flat_copy_diagonal() : a.diagonal_values();
    const RealVector q = b.form() == F::copy ? b.flat_copy_diagonal() : b.diagonal_values();
    return (p - q).cwiseAbs().sum();
  }
  if (a.is_rank_one() && b.is_rank_one()) {
    cplx overlap;
    if (a.form() == F::ghz && b.form() == F::ghz && a.factor_dims() == b.factor_dims()) {
      const Eigen::Index m = std::min(a.ket().size(), b.ket().size());
      overlap = a.ket().head(m).dot(b.ket().head(m));
    } else {
      const Vector pa = a.form() == F::ghz ? a.ghz_ket() : a.ket();
      const Vector pb = b.form() == F::ghz ? b.ghz_ket() : b.ket();
      overlap = pa.dot(pb);
    }
    return detail::rank_one_distance(a.trace(), b.trace(), overlap);
  }
  Matrix diff = a.dense() - b.dense();
  // fix the overall sign so that d(a, b) and d(b, a) are bitwise equal
  for (Eigen::Index i = 0; i < diff.size(); ++i) {
    const double re = diff.data()[i].real();
    if (re != 0.0) {
      if (re < 0.0) diff = -diff;
      break;
    }
  }
  const RealVector ev = jacobi::eigenvalues(diff);
  return ev.cwiseAbs().sum();
}

struct LogOnSupport {
  HermitianOperator log;   // log A on supp A, zero elsewhere
  Matrix projector;        // onto supp A
  int rank = 0;
};

inline LogOnSupport op_log_on_support(const TraceClassElement& a) {
  const Matrix m = a.dense();
  const auto n = m.rows();
  LogOnSupport out;
  if (a.is_diagonal()) {
    const RealVector d = a.form() == TraceClassElement::Form::copy ? a.flat_copy_diagonal() : a.diagonal_values();
    const double top = d.size() > 0 ? d.maxCoeff() : 0.0;
    RealVector logd = RealVector::Zero(n);
    RealVector proj = RealVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (top > 0.0 && d(i) > tol::support_cutoff * top) {
        logd(i) = std::log(d(i));
        proj(i) = 1.0;
        ++out.rank;
      }
    }
    out.log = HermitianOperator::diagonal(logd);
    out.projector = proj.cast<cplx>().asDiagonal().toDenseMatrix();
    return out;
  }
  const auto sd = jacobi::eigh(m, true);
  const double top = n > 0 ? sd.values(0) : 0.0;
  Matrix l = Matrix::Zero(n, n);
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (top > 0.0 && sd.values(k) > tol::support_cutoff * top) {
      const Vector v = sd.vectors.col(k);
      l += std::log(sd.values(k)) * v * v.adjoint();
      p += v * v.adjoint();
      ++out.rank;
    }
  }
  out.log = HermitianOperator(0.5 * (l + l.adjoint()));
  out.projector = p;
  return out;
}

/// Column-stacking isomorphism M -> vec(M).
inline Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  require(rows >= 1 && cols >= 1 && v.size() == rows * cols, ErrorKind::DimensionMismatch,
          "unvec size " + std::to_string(v.size()) + " does not match " + std::to_string(rows) + "x" +
              std::to_string(cols));
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

/// Positive square root of a dense PSD element (negative rounding clipped).
inline Matrix psd_sqrt(const Matrix& a) {
  const auto sd = jacobi::eigh(a, true);
  const RealVector s = sd.values.cwiseMax(0.0).cwiseSqrt();
  return sd.vectors * s.cast<cplx>().asDiagonal() * sd.vectors.adjoint();
}

inline bool is_unitary(const Matrix& u, double tolerance = tol::unitarity) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool is_isometry(const Matrix& v, double tolerance = tol::unitarity) {
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace entroloss
