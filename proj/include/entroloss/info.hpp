#pragma once

#include "entroloss/error.hpp"
#include "entroloss/linalg.hpp"
#include "entroloss/operator.hpp"
#include "entroloss/types.hpp"

#include <array>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace entroloss {

/// Real number or +infinity. Any sum containing +inf is +inf; 0 * inf = 0.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal infinity() {
    ExtendedReal e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws FunctionalUndefined for +inf.
  double value() const {
    require(!infinite_, ErrorKind::FunctionalUndefined, "value requested from +inf");
    return value_;
  }
  /// Finite value or IEEE +inf.
  double as_double() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return {a.value_ + b.value_};
  }
  /// Subtraction of a finite amount. inf - finite = inf; x - inf is undefined.
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    require(!b.infinite_, ErrorKind::FunctionalUndefined, "subtracting +inf");
    if (a.infinite_) return infinity();
    return {a.value_ - b.value_};
  }
  friend ExtendedReal operator*(double s, ExtendedReal a) {
    require(s >= 0.0, ErrorKind::FunctionalUndefined, "negative multiple of an extended real");
    if (a.infinite_) return s == 0.0 ? ExtendedReal{0.0} : infinity();
    return {s * a.value_};
  }
  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a < b || a == b; }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }
  friend std::ostream& operator<<(std::ostream& os, ExtendedReal e) {
    return e.infinite_ ? os << "inf" : os << e.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

inline ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a < b ? b : a; }

/// Homogeneous von Neumann entropy: Tr eta(rho) - eta(Tr rho).
inline double von_neumann_entropy(const TraceClassElement& rho) {
  const RealVector ev = rho.spectrum();
  if (ev.size() > 0) {
    const double smallest = ev.minCoeff();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    require(smallest >= -tol::psd * scale, ErrorKind::NotPositive,
            "negative eigenvalue " + std::to_string(smallest));
  }
  double s = 0.0;
  double t = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = std::max(ev(i), 0.0);
    s += eta(x);
    t += x;
  }
  return std::max(0.0, s - eta(t));
}

/// Shannon entropy sum_k eta(p_k).
inline ExtendedReal shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += eta(std::max(p(i), 0.0));
  return s;
}

namespace detail {

// Diagonal of rho in the computational basis; structured forms list only entries that can be nonzero.
inline RealVector computational_weights(const TraceClassElement& rho) {
  using F = TraceClassElement::Form;
  switch (rho.form()) {
    case F::diagonal:
    case F::copy: return rho.diagonal_values();
    case F::pure:
    case F::ghz: return rho.ket().cwiseAbs2();
    case F::dense: return rho.dense_storage().diagonal().real();
  }
  return {};
}

inline ExtendedReal classical_relative_entropy(const RealVector& p, const RealVector& q) {
  const double top = q.size() > 0 ? q.maxCoeff() : 0.0;
  double outside = 0.0;
  double value = q.sum() - p.sum();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const bool in_support = top > 0.0 && q(i) > tol::support_cutoff * top;
    if (!in_support) {
      outside += std::max(p(i), 0.0);
      continue;
    }
    if (p(i) > 0.0) value += p(i) * (std::log(p(i)) - std::log(q(i)));
  }
  if (outside > tol::support_violation) return ExtendedReal::infinity();
  return value;
}

}  // namespace detail

/// Relative entropy extended to positive elements; +inf when supp rho escapes supp sigma.
inline ExtendedReal relative_entropy(const TraceClassElement& rho, const TraceClassElement& sigma) {
  require(rho.dim() == sigma.dim(), ErrorKind::DimensionMismatch, "relative entropy of elements with different dims");
  using F = TraceClassElement::Form;
  if (rho.is_diagonal() && sigma.is_diagonal()) {
    if (rho.form() == F::copy && sigma.form() == F::copy && rho.factor_dims() == sigma.factor_dims()) {
      const Eigen::Index m = std::max(rho.diagonal_values().size(), sigma.diagonal_values().size());
      RealVector p = RealVector::Zero(m), q = RealVector::Zero(m);
      p.head(rho.diagonal_values().size()) = rho.diagonal_values();
      q.head(sigma.diagonal_values().size()) = sigma.diagonal_values();
      return detail::classical_relative_entropy(p, q);
    }
    const RealVector p = rho.form() == F::copy ? rho.flat_copy_diagonal() : rho.diagonal_values();
    const RealVector q = sigma.form() == F::copy ? sigma.flat_copy_diagonal() : sigma.diagonal_values();
    return detail::classical_relative_entropy(p, q);
  }

  // Tr rho log rho from the spectrum of rho.
  const RealVector lam = rho.spectrum();
  double rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) rho_log_rho -= eta(std::max(lam(i), 0.0));
  const double tr_rho = rho.trace();
  const double tr_sigma = sigma.trace();

  double inside = 0.0;
  double rho_log_sigma = 0.0;
  if (sigma.form() == F::diagonal) {
    const RealVector q = sigma.diagonal_values();
    const RealVector p =
        rho.form() == F::ghz ? RealVector(rho.ghz_ket().cwiseAbs2()) : detail::computational_weights(rho);
    const double top = q.maxCoeff();
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      if (top > 0.0 && q(i) > tol::support_cutoff * top) {
        inside += p(i);
        rho_log_sigma += p(i) * std::log(q(i));
      }
    }
  } else {
    const Matrix r = rho.dense();
    const auto sd = jacobi::eigh(sigma.dense(), true);
    const double top = sd.values.size() > 0 ? sd.values(0) : 0.0;
    for (Eigen::Index k = 0; k < sd.values.size(); ++k) {
      if (top > 0.0 && sd.values(k) > tol::support_cutoff * top) {
        const auto v = sd.vectors.col(k);
        const double w = (v.adjoint() * r * v)(0, 0).real();
        inside += w;
        rho_log_sigma += w * std::log(sd.values(k));
      }
    }
  }
  if (tr_rho - inside > tol::support_violation) return ExtendedReal::infinity();
  return rho_log_rho - rho_log_sigma + tr_sigma - tr_rho;
}

/// Diagonal of a state in the columns of `basis`.
inline RealVector pinching_distribution(const TraceClassElement& rho, const Matrix& basis) {
  require(basis.rows() == rho.dim(), ErrorKind::DimensionMismatch, "basis dimension mismatch");
  require(is_unitary(basis), ErrorKind::NotUnitary, "pinching basis is not unitary");
  const Matrix r = rho.dense();
  RealVector p(basis.cols());
  for (Eigen::Index k = 0; k < basis.cols(); ++k)
    p(k) = std::max(0.0, (basis.col(k).adjoint() * r * basis.col(k))(0, 0).real());
  return p;
}

/// Pinching in the computational basis. Structured forms yield only their possibly nonzero entries.
inline RealVector computational_pinching(const TraceClassElement& rho) {
  return detail::computational_weights(rho).cwiseMax(0.0);
}

inline void require_parts(const TraceClassElement& w, int parts, const char* what) {
  require(w.parties() == parts, ErrorKind::BadFactorization,
          std::string(what) + " needs " + std::to_string(parts) + " factors, got " + std::to_string(w.parties()));
}

/// Mutual information, homogeneous in the trace.
inline ExtendedReal mutual_information(const TraceClassElement& w) {
  require_parts(w, 2, "mutual information");
  using F = TraceClassElement::Form;
  const double t = w.trace();
  if (t <= 0.0) return 0.0;
  if (w.is_rank_one()) return 2.0 * von_neumann_entropy(partial_trace(w, {0}));
  if (w.form() == F::copy) return von_neumann_entropy(w);
  const TraceClassElement n = w.scaled(1.0 / t);
  const TraceClassElement product_of_marginals = tensor(partial_trace(n, {0}), partial_trace(n, {1}));
  return t * relative_entropy(n, product_of_marginals);
}

/// H(AB) - H(B), checked against H(A) - I(A:B).
inline double conditional_entropy(const TraceClassElement& w) {
  require_parts(w, 2, "conditional entropy");
  const double h_ab = von_neumann_entropy(w);
  const double h_a = von_neumann_entropy(partial_trace(w, {0}));
  const double h_b = von_neumann_entropy(partial_trace(w, {1}));
  const double primary = h_ab - h_b;
  const double alternative = h_a - mutual_information(w).value();
  require(std::abs(primary - alternative) <= 1e-9, ErrorKind::NumericalInconsistency,
          "conditional entropy forms differ by " + std::to_string(std::abs(primary - alternative)));
  return primary;
}

/// I(A:C|B) by the entropy combination and the three mutual-information combinations, in that order.
inline std::array<double, 4> cmi_forms(const TraceClassElement& w) {
  require_parts(w, 3, "conditional mutual information");
  const Dims& d = w.factor_dims();
  const double h_abc = von_neumann_entropy(w);
  const double h_ab = von_neumann_entropy(partial_trace(w, {0, 1}));
  const double h_bc = von_neumann_entropy(partial_trace(w, {1, 2}));
  const double h_b = von_neumann_entropy(partial_trace(w, {1}));

  auto mi = [](const TraceClassElement& x) { return mutual_information(x).value(); };
  const double i_a_bc = mi(w.with_dims({d[0], d[1] * d[2]}));
  const double i_ab_c = mi(w.with_dims({d[0] * d[1], d[2]}));
  const double i_ab = mi(partial_trace(w, {0, 1}));
  const double i_bc = mi(partial_trace(w, {1, 2}));
  const double i_ac = mi(partial_trace(w, {0, 2}));
  const TraceClassElement acb = permute_parties(w, {0, 2, 1});
  const double i_ac_b = mi(acb.with_dims({d[0] * d[2], d[1]}));

  return {h_ab + h_bc - h_abc - h_b, i_a_bc - i_ab, i_ab_c - i_bc, i_ac - i_ab - i_bc + i_ac_b};
}

inline double conditional_mutual_information(const TraceClassElement& w) {
  const auto f = cmi_forms(w);
  for (size_t k = 1; k < f.size(); ++k)
    require(std::abs(f[k] - f[0]) <= 1e-8, ErrorKind::NumericalInconsistency,
            "conditional mutual information forms differ by " + std::to_string(std::abs(f[k] - f[0])));
  require(f[0] >= -1e-9, ErrorKind::NumericalInconsistency, "negative conditional mutual information");
  return std::max(0.0, f[0]);
}

/// Finite ensemble {weights_i, members_i} of positive elements of a common dimension.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<TraceClassElement> members)
      : weights_(std::move(weights)), members_(std::move(members)) {
    require(!members_.empty() && weights_.size() == members_.size(), ErrorKind::InconsistentEnsemble,
            "weights and members must be nonempty and of equal length");
    for (size_t i = 0; i < members_.size(); ++i) {
      require(weights_[i] >= 0.0, ErrorKind::InconsistentEnsemble, "negative ensemble weight");
      require(members_[i].dim() == members_[0].dim(), ErrorKind::InconsistentEnsemble, "members differ in dimension");
    }
  }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<TraceClassElement>& members() const { return members_; }
  size_t size() const { return members_.size(); }

  TraceClassElement average() const {
    bool diagonal = true;
    for (const auto& m : members_) diagonal = diagonal && m.form() == TraceClassElement::Form::diagonal;
    if (diagonal) {
      RealVector d = RealVector::Zero(members_[0].dim());
      for (size_t i = 0; i < members_.size(); ++i) d += weights_[i] * members_[i].diagonal_values();
      return TraceClassElement::from_diagonal(std::move(d), members_[0].factor_dims());
    }
    const auto n = members_[0].dim();
    require(n <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "ensemble average dimension");
    Matrix m = Matrix::Zero(n, n);
    for (size_t i = 0; i < members_.size(); ++i) m += weights_[i] * members_[i].dense();
    return TraceClassElement::trusted_dense(std::move(m), members_[0].factor_dims());
  }

  /// Throws InconsistentEnsemble unless weights sum to 1 and members are unit-trace.
  void require_state_ensemble() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    require(std::abs(s - 1.0) <= 1e-12, ErrorKind::InconsistentEnsemble,
            "weights sum to " + std::to_string(s));
    for (const auto& m : members_)
      require(std::abs(m.trace() - 1.0) <= 1e-10, ErrorKind::InconsistentEnsemble, "member is not a state");
  }

 private:
  std::vector<double> weights_;
  std::vector<TraceClassElement> members_;
};

/// Holevo quantity, evaluated as sum_i p_i H(rho_i || avg) and as H(avg) - sum_i p_i H(rho_i).
inline ExtendedReal holevo_quantity(const Ensemble& e) {
  e.require_state_ensemble();
  const TraceClassElement avg = e.average();
  ExtendedReal chi_re = 0.0;
  double mixing = 0.0;
  for (size_t i = 0; i < e.size(); ++i) {
    const double p = e.weights()[i];
    if (p == 0.0) continue;
    chi_re = chi_re + p * relative_entropy(e.members()[i], avg);
    mixing += p * von_neumann_entropy(e.members()[i]);
  }
  const double chi_h = von_neumann_entropy(avg) - mixing;
  require(chi_re.is_finite() && std::abs(chi_re.value() - chi_h) <= 1e-9, ErrorKind::NumericalInconsistency,
          "Holevo quantity forms disagree: " + chi_re.to_string() + " vs " + std::to_string(chi_h));
  return chi_re;
}

}  // namespace entroloss
