#pragma once

#include "entroloss/error.hpp"
#include "entroloss/jacobi.hpp"
#include "entroloss/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace entroloss {

/// Dense complex Hermitian matrix. Construction validates hermiticity and stores the
/// exactly Hermitian part.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  explicit HermitianOperator(Matrix entries) {
    require(entries.rows() == entries.cols() && entries.rows() >= 1, ErrorKind::DimensionMismatch,
            "Hermitian operator must be square with dim >= 1");
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    const double skew = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    require(skew <= tol::hermiticity * scale, ErrorKind::NonHermitian,
            "|A - A^dagger|_max = " + std::to_string(skew));
    entries_ = 0.5 * (entries + entries.adjoint());
  }

  static HermitianOperator diagonal(const RealVector& d) {
    return HermitianOperator(d.cast<cplx>().asDiagonal().toDenseMatrix());
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Eigenvalues (descending) together with the unitary of eigenvector columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const { return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint(); }
};

inline SpectralDecomposition eig_hermitian(const HermitianOperator& a) {
  auto r = jacobi::eigh(a.matrix(), true);
  return {std::move(r.values), std::move(r.vectors)};
}

/// Positive trace-class element of a finite-dimensional (possibly multipartite) space.
///
/// Besides dense storage, several structured forms avoid materializing large matrices:
///  - diagonal: diag(values) in the computational product basis;
///  - pure:     |psi><psi| for an unnormalized ket psi;
///  - ghz:      |psi><psi| with psi = sum_k c_k |k>^{(x) m}, all m factors of equal dim;
///  - copy:     sum_k p_k |k..k><k..k| over m equal factors (classically perfectly correlated).
class TraceClassElement {
 public:
  enum class Form { dense, diagonal, pure, ghz, copy };

  TraceClassElement() = default;

  /// Validated constructor from a dense PSD matrix.
  static TraceClassElement from_matrix(const Matrix& m, Dims dims = {}) {
    HermitianOperator h(m);
    TraceClassElement out;
    out.form_ = Form::dense;
    out.dense_ = h.matrix();
    out.dims_ = normalize_dims(std::move(dims), h.dim());
    const RealVector ev = jacobi::eigenvalues(out.dense_);
    require(ev(ev.size() - 1) >= -tol::psd, ErrorKind::NotPositive,
            "smallest eigenvalue " + std::to_string(ev(ev.size() - 1)));
    return out;
  }

  /// Dense element produced by an operation that is PSD by construction.
  static TraceClassElement trusted_dense(Matrix m, Dims dims = {}) {
    TraceClassElement out;
    out.form_ = Form::dense;
    const auto n = static_cast<int>(m.rows());
    out.dense_ = 0.5 * (m + m.adjoint());
    out.dims_ = normalize_dims(std::move(dims), n);
    return out;
  }

  static TraceClassElement from_diagonal(RealVector values, Dims dims = {}) {
    require(values.size() >= 1, ErrorKind::DimensionMismatch, "empty diagonal");
    require(values.minCoeff() >= -tol::psd, ErrorKind::NotPositive,
            "negative diagonal entry " + std::to_string(values.minCoeff()));
    TraceClassElement out;
    out.form_ = Form::diagonal;
    out.dims_ = normalize_dims(std::move(dims), static_cast<int>(values.size()));
    out.diag_ = values.cwiseMax(0.0);
    return out;
  }

  static TraceClassElement from_ket(Vector psi, Dims dims = {}) {
    require(psi.size() >= 1, ErrorKind::DimensionMismatch, "empty ket");
    TraceClassElement out;
    out.form_ = Form::pure;
    out.dims_ = normalize_dims(std::move(dims), static_cast<int>(psi.size()));
    out.ket_ = std::move(psi);
    return out;
  }

  /// sum_k c_k |k>^{(x) parties}, each factor of dimension `local_dim` >= c.size().
  static TraceClassElement ghz(Vector coeffs, int parties, int local_dim) {
    require(parties >= 1 && local_dim >= coeffs.size() && coeffs.size() >= 1, ErrorKind::DimensionMismatch,
            "ghz form needs parties >= 1 and local_dim >= #coefficients");
    if (parties == 1) {
      return from_ket(pad(coeffs, local_dim));
    }
    TraceClassElement out;
    out.form_ = Form::ghz;
    out.dims_ = Dims(static_cast<size_t>(parties), local_dim);
    out.ket_ = std::move(coeffs);
    return out;
  }

  /// sum_k p_k |k>^{(x) parties}<k|^{(x) parties}.
  static TraceClassElement copy(RealVector weights, int parties, int local_dim) {
    require(parties >= 1 && local_dim >= weights.size() && weights.size() >= 1, ErrorKind::DimensionMismatch,
            "copy form needs parties >= 1 and local_dim >= #weights");
    require(weights.minCoeff() >= -tol::psd, ErrorKind::NotPositive, "negative weight in copy form");
    if (parties == 1) {
      RealVector d = RealVector::Zero(local_dim);
      d.head(weights.size()) = weights.cwiseMax(0.0);
      return from_diagonal(std::move(d));
    }
    TraceClassElement out;
    out.form_ = Form::copy;
    out.dims_ = Dims(static_cast<size_t>(parties), local_dim);
    out.diag_ = weights.cwiseMax(0.0);
    return out;
  }

  Form form() const { return form_; }
  const Dims& factor_dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  std::int64_t dim() const { return product(dims_); }

  bool is_diagonal() const { return form_ == Form::diagonal || form_ == Form::copy; }
  bool is_rank_one() const { return form_ == Form::pure || form_ == Form::ghz; }

  /// Diagonal values (form diagonal) or correlated weights (form copy).
  const RealVector& diagonal_values() const { return diag_; }
  /// Ket (form pure) or ghz coefficients (form ghz).
  const Vector& ket() const { return ket_; }
  const Matrix& dense_storage() const { return dense_; }

  double trace() const {
    switch (form_) {
      case Form::dense: return dense_.trace().real();
      case Form::diagonal:
      case Form::copy: return diag_.sum();
      case Form::pure:
      case Form::ghz: return ket_.squaredNorm();
    }
    return 0.0;
  }

  /// Dense matrix of the element; throws DimensionOverflow above the dense cap.
  Matrix dense() const {
    if (form_ == Form::dense) return dense_;
    const std::int64_t n = dim();
    require(n <= limits().max_dense_dim, ErrorKind::DimensionOverflow,
            "dense materialization of dimension " + std::to_string(n));
    switch (form_) {
      case Form::diagonal: return diag_.cast<cplx>().asDiagonal().toDenseMatrix();
      case Form::pure: return ket_ * ket_.adjoint();
      case Form::ghz: {
        const Vector psi = ghz_ket();
        return psi * psi.adjoint();
      }
      case Form::copy: {
        Matrix m = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < diag_.size(); ++k) {
          const auto i = repeated_index(static_cast<int>(k));
          m(i, i) = diag_(k);
        }
        return m;
      }
      case Form::dense: break;
    }
    return dense_;
  }

  /// Spectrum, descending. Only nonzero-capable entries are listed for structured
  /// forms (the remaining eigenvalues are zero); `full` pads to dim().
  RealVector spectrum(bool full = false) const {
    RealVector v;
    switch (form_) {
      case Form::dense: return jacobi::eigenvalues(dense_);
      case Form::diagonal:
      case Form::copy: v = diag_; break;
      case Form::pure:
      case Form::ghz: v = RealVector::Constant(1, ket_.squaredNorm()); break;
    }
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    if (full && v.size() < dim()) {
      RealVector padded = RealVector::Zero(dim());
      padded.head(v.size()) = v;
      return padded;
    }
    return v;
  }

  /// Same element relabelled with a different factorization of the same total dim.
  TraceClassElement with_dims(Dims dims) const {
    require(product(dims) == dim(), ErrorKind::BadFactorization, "factor dims do not multiply to dim");
    if (form_ == Form::ghz || form_ == Form::copy) {
      TraceClassElement flat = form_ == Form::copy ? from_diagonal(flat_copy_diagonal(), std::move(dims))
                                                   : from_ket(ghz_ket(), std::move(dims));
      return flat;
    }
    TraceClassElement out = *this;
    out.dims_ = std::move(dims);
    return out;
  }

  TraceClassElement scaled(double factor) const {
    require(factor >= 0.0, ErrorKind::NotPositive, "negative scale factor");
    TraceClassElement out = *this;
    out.dense_ *= factor;
    out.diag_ *= factor;
    out.ket_ *= std::sqrt(factor);
    return out;
  }

  /// Index of |k>^{(x) m} in the flattened product basis.
  std::int64_t repeated_index(int k) const {
    std::int64_t idx = 0;
    for (int d : dims_) idx = idx * d + k;
    return idx;
  }

  Vector ghz_ket() const {
    const std::int64_t n = dim();
    require(n <= limits().max_dense_dim * limits().max_dense_dim, ErrorKind::DimensionOverflow,
            "ghz ket materialization of dimension " + std::to_string(n));
    Vector psi = Vector::Zero(n);
    for (Eigen::Index k = 0; k < ket_.size(); ++k) psi(repeated_index(static_cast<int>(k))) = ket_(k);
    return psi;
  }

  RealVector flat_copy_diagonal() const {
    const std::int64_t n = dim();
    require(n <= limits().max_structured_dim, ErrorKind::DimensionOverflow,
            "diagonal materialization of dimension " + std::to_string(n));
    RealVector d = RealVector::Zero(n);
    for (Eigen::Index k = 0; k < diag_.size(); ++k) d(repeated_index(static_cast<int>(k))) = diag_(k);
    return d;
  }

 private:
  static Dims normalize_dims(Dims dims, int n) {
    if (dims.empty()) return Dims{n};
    require(product(dims) == n, ErrorKind::BadFactorization, "factor dims do not multiply to dim");
    for (int d : dims) require(d >= 1, ErrorKind::BadFactorization, "factor dims must be >= 1");
    return dims;
  }

  static Vector pad(const Vector& v, int n) {
    Vector out = Vector::Zero(n);
    out.head(v.size()) = v;
    return out;
  }

  Form form_ = Form::diagonal;
  Dims dims_{1};
  Matrix dense_;
  RealVector diag_ = RealVector::Zero(1);
  Vector ket_;
};

/// A TraceClassElement with unit trace.
class DensityState : public TraceClassElement {
 public:
  DensityState() : TraceClassElement(TraceClassElement::from_diagonal(RealVector::Ones(1))) {}

  explicit DensityState(TraceClassElement element, double trace_tolerance = tol::state_trace)
      : TraceClassElement(std::move(element)) {
    const double t = trace();
    require(std::abs(t - 1.0) <= trace_tolerance, ErrorKind::NotPositive,
            "density state trace " + std::to_string(t) + " differs from 1");
  }

  /// Divides a nonzero element by its trace.
  static DensityState normalized(const TraceClassElement& element) {
    const double t = element.trace();
    require(t > 0.0, ErrorKind::NotPositive, "cannot normalize a zero element");
    return DensityState(element.scaled(1.0 / t), 1e-9);
  }
};

}  // namespace entroloss
