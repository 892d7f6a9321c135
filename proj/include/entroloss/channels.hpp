#pragma once

#include "entroloss/info.hpp"
#include "entroloss/jacobi.hpp"
#include "entroloss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace entroloss {

/// Kraus operator stored densely or as a monomial map: column a goes to row target[a] with weight[a].
class KrausOperator {
 public:
  static KrausOperator dense(Matrix m) {
    KrausOperator k;
    k.rows_ = m.rows();
    k.cols_ = m.cols();
    k.dense_ = std::move(m);
    return k;
  }

  /// target[a] < 0 marks a zero column.
  static KrausOperator monomial(std::int64_t rows, std::vector<std::int64_t> target, std::vector<cplx> weight) {
    require(target.size() == weight.size(), ErrorKind::DimensionMismatch, "monomial target/weight sizes differ");
    KrausOperator k;
    k.monomial_ = true;
    k.rows_ = rows;
    k.cols_ = static_cast<std::int64_t>(target.size());
    for (size_t a = 0; a < target.size(); ++a) {
      require(target[a] < rows, ErrorKind::DimensionMismatch, "monomial target row out of range");
      if (target[a] < 0 || weight[a] == cplx(0.0)) {
        target[a] = -1;
        weight[a] = 0.0;
      }
    }
    k.target_ = std::move(target);
    k.weight_ = std::move(weight);
    return k;
  }

  bool is_monomial() const { return monomial_; }
  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  const Matrix& dense_storage() const { return dense_; }
  const std::vector<std::int64_t>& target() const { return target_; }
  const std::vector<cplx>& weight() const { return weight_; }

  Matrix to_dense() const {
    if (!monomial_) return dense_;
    require(rows_ * cols_ <= limits().max_dense_dim * limits().max_dense_dim, ErrorKind::DimensionOverflow,
            "Kraus operator too large to materialize");
    Matrix m = Matrix::Zero(rows_, cols_);
    for (std::int64_t a = 0; a < cols_; ++a)
      if (target_[a] >= 0) m(target_[a], a) = weight_[a];
    return m;
  }

  KrausOperator scaled(cplx s) const {
    KrausOperator k = *this;
    if (monomial_)
      for (auto& w : k.weight_) w *= s;
    else
      k.dense_ *= s;
    return k;
  }

 private:
  bool monomial_ = false;
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  Matrix dense_;
  std::vector<std::int64_t> target_;
  std::vector<cplx> weight_;
};

namespace detail {

inline std::int64_t find_root(std::vector<std::int64_t>& parent, std::int64_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

/// Completely positive trace non-increasing map in Kraus form.
class QuantumOperation {
 public:
  QuantumOperation(std::vector<KrausOperator> kraus, Dims in_dims, Dims out_dims)
      : kraus_(std::move(kraus)), in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)) {
    require(!kraus_.empty(), ErrorKind::NotAChannel, "empty Kraus list");
    for (const auto& k : kraus_)
      require(k.rows() == out_dim() && k.cols() == in_dim(), ErrorKind::DimensionMismatch,
              "Kraus operator shape differs from the declared dims");
    validate();
  }

  /// Single-factor dims from the first operator.
  explicit QuantumOperation(std::vector<KrausOperator> kraus)
      : QuantumOperation(kraus, {static_cast<int>(kraus.at(0).cols())}, {static_cast<int>(kraus.at(0).rows())}) {}

  const std::vector<KrausOperator>& kraus() const { return kraus_; }
  const Dims& in_dims() const { return in_dims_; }
  const Dims& out_dims() const { return out_dims_; }
  std::int64_t in_dim() const { return product(in_dims_); }
  std::int64_t out_dim() const { return product(out_dims_); }
  int kraus_count() const { return static_cast<int>(kraus_.size()); }
  bool trace_preserving() const { return trace_preserving_; }
  bool all_monomial() const {
    return std::all_of(kraus_.begin(), kraus_.end(), [](const KrausOperator& k) { return k.is_monomial(); });
  }

  std::vector<Matrix> dense_kraus() const {
    require(in_dim() <= limits().max_dense_dim && out_dim() <= limits().max_dense_dim, ErrorKind::DimensionOverflow,
            "channel too large for dense Kraus operators");
    std::vector<Matrix> out;
    out.reserve(kraus_.size());
    for (const auto& k : kraus_) out.push_back(k.to_dense());
    return out;
  }

  /// sum_j K_j rho K_j^*.
  TraceClassElement apply(const TraceClassElement& rho) const {
    require(rho.dim() == in_dim(), ErrorKind::DimensionMismatch,
            "input dim " + std::to_string(rho.dim()) + " differs from channel input " + std::to_string(in_dim()));
    if (all_monomial() && rho.form() == TraceClassElement::Form::diagonal) {
      const RealVector& p = rho.diagonal_values();
      RealVector q = RealVector::Zero(out_dim());
      for (const auto& k : kraus_)
        for (std::int64_t a = 0; a < in_dim(); ++a)
          if (k.target()[a] >= 0 && p(a) != 0.0) q(k.target()[a]) += std::norm(k.weight()[a]) * p(a);
      return TraceClassElement::from_diagonal(std::move(q), out_dims_);
    }
    const Matrix r = rho.dense();
    Matrix out = Matrix::Zero(out_dim(), out_dim());
    for (const auto& k : dense_kraus()) out.noalias() += k * r * k.adjoint();
    return TraceClassElement::trusted_dense(0.5 * (out + out.adjoint()), out_dims_);
  }

 private:
  void validate() {
    if (all_monomial()) {
      validate_monomial();
      return;
    }
    Matrix s = Matrix::Zero(in_dim(), in_dim());
    for (const auto& k : dense_kraus()) s.noalias() += k.adjoint() * k;
    const RealVector ev = jacobi::eigenvalues(0.5 * (s + s.adjoint()));
    check_spectrum(ev.maxCoeff(), ev.minCoeff());
  }

  // sum K^*K splits into blocks of columns that share an output row in some operator.
  void validate_monomial() {
    const std::int64_t n = in_dim();
    std::vector<std::int64_t> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::int64_t> seen(static_cast<size_t>(out_dim()));
    for (const auto& k : kraus_) {
      std::fill(seen.begin(), seen.end(), -1);
      for (std::int64_t a = 0; a < n; ++a) {
        const auto r = k.target()[a];
        if (r < 0) continue;
        if (seen[r] < 0)
          seen[r] = a;
        else
          parent[detail::find_root(parent, a)] = detail::find_root(parent, seen[r]);
      }
    }
    std::vector<std::vector<std::int64_t>> blocks(static_cast<size_t>(n));
    for (std::int64_t a = 0; a < n; ++a) blocks[detail::find_root(parent, a)].push_back(a);
    double top = 0.0;
    double bottom = std::numeric_limits<double>::infinity();
    for (const auto& cols : blocks) {
      if (cols.empty()) continue;
      const auto m = static_cast<Eigen::Index>(cols.size());
      if (m == 1) {
        double s = 0.0;
        for (const auto& k : kraus_) s += std::norm(k.weight()[cols[0]]);
        top = std::max(top, s);
        bottom = std::min(bottom, s);
        continue;
      }
      require(m <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "monomial validation block too large");
      Matrix s = Matrix::Zero(m, m);
      for (const auto& k : kraus_)
        for (Eigen::Index i = 0; i < m; ++i)
          for (Eigen::Index j = 0; j < m; ++j) {
            const auto ri = k.target()[cols[i]];
            if (ri >= 0 && ri == k.target()[cols[j]]) s(i, j) += std::conj(k.weight()[cols[i]]) * k.weight()[cols[j]];
          }
      const RealVector ev = jacobi::eigenvalues(s);
      top = std::max(top, ev.maxCoeff());
      bottom = std::min(bottom, ev.minCoeff());
    }
    check_spectrum(top, bottom);
  }

  void check_spectrum(double top, double bottom) {
    require(top <= 1.0 + 1e-10, ErrorKind::NotAChannel,
            "sum K^*K has eigenvalue " + std::to_string(top) + " above 1");
    trace_preserving_ = bottom >= 1.0 - 1e-10;
  }

  std::vector<KrausOperator> kraus_;
  Dims in_dims_;
  Dims out_dims_;
  bool trace_preserving_ = false;
};

inline void require_channel(const QuantumOperation& phi, const char* what) {
  require(phi.trace_preserving(), ErrorKind::NotAChannel, std::string(what) + " needs a trace-preserving channel");
}

/// Isometry V with V[b m + j, a] = K_j[b, a] (output factor first, environment second).
struct StinespringDilation {
  Matrix isometry;
  int env_dim = 0;
  int out_dim = 0;
};

inline StinespringDilation stinespring(const QuantumOperation& phi) {
  const auto ks = phi.dense_kraus();
  const auto m = static_cast<Eigen::Index>(ks.size());
  const auto dout = phi.out_dim();
  require(dout * m <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "Stinespring isometry too large");
  Matrix v = Matrix::Zero(dout * m, phi.in_dim());
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index b = 0; b < dout; ++b) v.row(b * m + j) = ks[static_cast<size_t>(j)].row(b);
  return {std::move(v), static_cast<int>(m), static_cast<int>(dout)};
}

/// Environment output Tr_B V rho V^*: entry (j, l) = Tr K_l^* K_j rho.
inline TraceClassElement complementary_output(const QuantumOperation& phi, const TraceClassElement& rho) {
  require(rho.dim() == phi.in_dim(), ErrorKind::DimensionMismatch, "complementary input dim");
  const int m = phi.kraus_count();
  Matrix e = Matrix::Zero(m, m);
  if (phi.all_monomial() && rho.form() == TraceClassElement::Form::diagonal) {
    const RealVector& p = rho.diagonal_values();
    for (int j = 0; j < m; ++j)
      for (int l = j; l < m; ++l) {
        const auto& kj = phi.kraus()[static_cast<size_t>(j)];
        const auto& kl = phi.kraus()[static_cast<size_t>(l)];
        cplx s = 0.0;
        for (std::int64_t a = 0; a < phi.in_dim(); ++a)
          if (p(a) != 0.0 && kj.target()[a] >= 0 && kj.target()[a] == kl.target()[a])
            s += p(a) * kj.weight()[a] * std::conj(kl.weight()[a]);
        e(j, l) = s;
        e(l, j) = std::conj(s);
      }
  } else {
    const auto ks = phi.dense_kraus();
    const Matrix r = rho.dense();
    std::vector<Matrix> kr;
    kr.reserve(ks.size());
    for (const auto& k : ks) kr.push_back(k * r);
    for (int j = 0; j < m; ++j)
      for (int l = j; l < m; ++l) {
        const cplx s = (ks[static_cast<size_t>(l)].conjugate().cwiseProduct(kr[static_cast<size_t>(j)])).sum();
        e(j, l) = s;
        e(l, j) = std::conj(s);
      }
  }
  return TraceClassElement::trusted_dense(std::move(e));
}

/// Complementary operation with Kraus operators Khat_b[j, a] = K_j[b, a].
inline QuantumOperation complementary(const QuantumOperation& phi) {
  const auto ks = phi.dense_kraus();
  const int m = phi.kraus_count();
  std::vector<KrausOperator> out;
  out.reserve(static_cast<size_t>(phi.out_dim()));
  for (std::int64_t b = 0; b < phi.out_dim(); ++b) {
    Matrix kb(m, phi.in_dim());
    for (int j = 0; j < m; ++j) kb.row(j) = ks[static_cast<size_t>(j)].row(b);
    out.push_back(KrausOperator::dense(std::move(kb)));
  }
  return QuantumOperation(std::move(out), phi.in_dims(), {m});
}

/// Dimension of the span of the Kraus operators (rank of the Gram matrix Tr K_k^* K_l).
inline int choi_rank(const QuantumOperation& phi) {
  const int m = phi.kraus_count();
  Matrix g = Matrix::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      const auto& a = phi.kraus()[static_cast<size_t>(k)];
      const auto& b = phi.kraus()[static_cast<size_t>(l)];
      cplx s = 0.0;
      if (a.is_monomial() && b.is_monomial()) {
        for (std::int64_t c = 0; c < phi.in_dim(); ++c)
          if (a.target()[c] >= 0 && a.target()[c] == b.target()[c]) s += std::conj(a.weight()[c]) * b.weight()[c];
      } else {
        s = (a.to_dense().conjugate().cwiseProduct(b.to_dense())).sum();
      }
      g(k, l) = s;
      g(l, k) = std::conj(s);
    }
  const RealVector ev = jacobi::eigenvalues(g);
  const double top = ev.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rank += (top > 0.0 && ev(i) > tol::support_cutoff * top) ? 1 : 0;
  return rank;
}

/// H(Phi(rho)), homogeneous when Phi loses trace.
inline double output_entropy(const QuantumOperation& phi, const TraceClassElement& rho) {
  return von_neumann_entropy(phi.apply(rho));
}

inline double entropy_exchange(const QuantumOperation& phi, const TraceClassElement& rho) {
  return von_neumann_entropy(complementary_output(phi, rho));
}

/// |H_Phi + H_Phihat - H(rho) - I(B:E)| on the dilated state V rho V^*.
inline double ext2_residual(const QuantumOperation& phi, const TraceClassElement& rho) {
  require_channel(phi, "ext2_residual");
  const auto st = stinespring(phi);
  const Matrix r = rho.dense();
  const Matrix w = st.isometry * r * st.isometry.adjoint();
  const auto be = TraceClassElement::trusted_dense(0.5 * (w + w.adjoint()), {st.out_dim, st.env_dim});
  const double mi = mutual_information(be).value();
  return std::abs(output_entropy(phi, rho) + entropy_exchange(phi, rho) - von_neumann_entropy(rho) - mi);
}

namespace detail {

// (Phi (x) Id_R) applied to a ket on A (x) R stored with index a * dr + r.
inline TraceClassElement apply_on_first(const QuantumOperation& phi, const Vector& psi, Eigen::Index dr) {
  const auto din = phi.in_dim();
  const auto dout = phi.out_dim();
  const Matrix mat = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      psi.data(), din, dr);
  Matrix out = Matrix::Zero(dout * dr, dout * dr);
  for (const auto& k : phi.dense_kraus()) {
    const Matrix y = k * mat;  // dout x dr
    Vector v(dout * dr);
    for (Eigen::Index b = 0; b < dout; ++b)
      for (Eigen::Index r = 0; r < dr; ++r) v(b * dr + r) = y(b, r);
    out.noalias() += v * v.adjoint();
  }
  return TraceClassElement::trusted_dense(0.5 * (out + out.adjoint()),
                                          {static_cast<int>(dout), static_cast<int>(dr)});
}

inline double purified_mutual_information(const QuantumOperation& phi, const Vector& psi, Eigen::Index dr,
                                          const TraceClassElement& phi_rho) {
  const auto omega = apply_on_first(phi, psi, dr);
  const auto ref = partial_trace(omega, {1});
  const ExtendedReal d = relative_entropy(omega, tensor(phi_rho, ref));
  require(d.is_finite(), ErrorKind::NumericalInconsistency, "channel mutual information is +inf in finite dims");
  return d.value();
}

}  // namespace detail

/// Joint dimension up to which channel mutual information is evaluated from purifications.
inline constexpr std::int64_t purification_dense_limit = 256;

/// I(Phi, rho) = H(Phi (x) Id (rhohat) || Phi(rho) (x) varrho).
/// Small inputs: two purifications cross-checked within 1e-8. Larger inputs: H(rho) + H_Phi - H_Phihat.
inline double channel_mutual_information(const QuantumOperation& phi, const TraceClassElement& rho) {
  require_channel(phi, "channel_mutual_information");
  const auto phi_rho = phi.apply(rho);
  const double identity_form = von_neumann_entropy(rho) + von_neumann_entropy(phi_rho) - entropy_exchange(phi, rho);
  const auto din = phi.in_dim();
  if (din * phi.out_dim() > purification_dense_limit || rho.dim() > purification_dense_limit)
    return std::max(0.0, identity_form);

  const auto sd = jacobi::eigh(rho.dense(), true);
  Eigen::Index rank = 0;
  const double top = std::max(sd.values(0), 0.0);
  while (rank < sd.values.size() && sd.values(rank) > tol::support_cutoff * top) ++rank;
  rank = std::max<Eigen::Index>(rank, 1);
  Vector psi = Vector::Zero(din * rank);
  for (Eigen::Index k = 0; k < rank; ++k)
    for (Eigen::Index a = 0; a < din; ++a) psi(a * rank + k) = std::sqrt(std::max(sd.values(k), 0.0)) * sd.vectors(a, k);
  const double first = detail::purified_mutual_information(phi, psi, rank, phi_rho);

  // Second purification: rows of sqrt(rho) U with U the discrete Fourier matrix.
  Matrix f(din, din);
  for (Eigen::Index r = 0; r < din; ++r)
    for (Eigen::Index c = 0; c < din; ++c)
      f(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(din)), 2.0 * std::numbers::pi * r * c / din);
  const Matrix s = psd_sqrt(rho.dense()) * f;
  Vector psi2(din * din);
  for (Eigen::Index a = 0; a < din; ++a)
    for (Eigen::Index r = 0; r < din; ++r) psi2(a * din + r) = s(a, r);
  const double second = detail::purified_mutual_information(phi, psi2, din, phi_rho);
  require(std::abs(first - second) <= 1e-8, ErrorKind::NumericalInconsistency,
          "channel mutual information depends on the purification: " + std::to_string(first) + " vs " +
              std::to_string(second));
  require(std::abs(first - identity_form) <= 1e-8, ErrorKind::NumericalInconsistency,
          "channel mutual information disagrees with H(rho) + H_Phi - H_Phihat");
  return first;
}

/// I(Phi, rho) - H(rho), cross-checked against H(Phi(rho)) - H(Phihat(rho)).
inline double coherent_information(const QuantumOperation& phi, const TraceClassElement& rho) {
  require_channel(phi, "coherent_information");
  const double h = von_neumann_entropy(rho);
  const double ci = channel_mutual_information(phi, rho) - h;
  const double direct = output_entropy(phi, rho) - entropy_exchange(phi, rho);
  require(std::abs(ci - direct) <= 1e-8, ErrorKind::NumericalInconsistency,
          "coherent information forms disagree: " + std::to_string(ci) + " vs " + std::to_string(direct));
  require(ci >= -h - 1e-9 && ci <= h + 1e-9, ErrorKind::NumericalInconsistency,
          "coherent information outside [-H(rho), H(rho)]");
  return ci;
}

inline double entropy_gain(const QuantumOperation& phi, const TraceClassElement& rho) {
  return output_entropy(phi, rho) - von_neumann_entropy(rho);
}

namespace channels {

inline QuantumOperation identity(int d) {
  std::vector<std::int64_t> t(static_cast<size_t>(d));
  std::iota(t.begin(), t.end(), 0);
  return QuantumOperation({KrausOperator::monomial(d, std::move(t), std::vector<cplx>(static_cast<size_t>(d), 1.0))});
}

inline QuantumOperation unitary(const Matrix& u) {
  require(u.rows() == u.cols() && is_unitary(u), ErrorKind::NotUnitary, "unitary channel needs a unitary matrix");
  return QuantumOperation({KrausOperator::dense(u)});
}

/// |perm[a]><a| scaled by exp(i phase[a]); a unitary that keeps diagonal inputs diagonal.
inline QuantumOperation permutation_unitary(const std::vector<std::int64_t>& perm, const std::vector<double>& phase) {
  const auto d = static_cast<std::int64_t>(perm.size());
  require(phase.size() == perm.size(), ErrorKind::DimensionMismatch, "phase and permutation sizes differ");
  std::vector<char> hit(static_cast<size_t>(d), 0);
  std::vector<cplx> w(static_cast<size_t>(d));
  for (std::int64_t a = 0; a < d; ++a) {
    require(perm[a] >= 0 && perm[a] < d && !hit[perm[a]], ErrorKind::NotUnitary, "not a permutation");
    hit[perm[a]] = 1;
    w[a] = std::polar(1.0, phase[a]);
  }
  return QuantumOperation({KrausOperator::monomial(d, perm, std::move(w))});
}

/// (1 - p) rho + p Tr(rho) I / d.
inline QuantumOperation depolarizing(int d, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::ConfigError, "depolarizing parameter outside [0, 1]");
  std::vector<KrausOperator> ks;
  if (p < 1.0) ks.push_back(KrausOperator::dense(std::sqrt(1.0 - p) * Matrix::Identity(d, d)));
  if (p > 0.0)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix k = Matrix::Zero(d, d);
        k(i, j) = std::sqrt(p / d);
        ks.push_back(KrausOperator::dense(std::move(k)));
      }
  return QuantumOperation(std::move(ks));
}

/// (1 - p) rho + p sum_k |k><k| rho |k><k|, with Kraus operators proportional to powers of the clock matrix.
inline QuantumOperation dephasing(std::int64_t d, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::ConfigError, "dephasing parameter outside [0, 1]");
  std::vector<std::int64_t> t(static_cast<size_t>(d));
  std::iota(t.begin(), t.end(), 0);
  std::vector<KrausOperator> ks;
  const double w0 = 1.0 - p + p / static_cast<double>(d);
  ks.push_back(KrausOperator::monomial(d, t, std::vector<cplx>(static_cast<size_t>(d), std::sqrt(w0))));
  if (p > 0.0)
    for (std::int64_t j = 1; j < d; ++j) {
      std::vector<cplx> w(static_cast<size_t>(d));
      for (std::int64_t a = 0; a < d; ++a)
        w[a] = std::polar(std::sqrt(p / static_cast<double>(d)), 2.0 * std::numbers::pi * static_cast<double>(j * a % d) / d);
      ks.push_back(KrausOperator::monomial(d, t, std::move(w)));
    }
  return QuantumOperation(std::move(ks));
}

/// Tr_B as a channel AB -> A (keep_first) or Tr_A as AB -> B.
inline QuantumOperation partial_trace(int da, int db, bool keep_first = true) {
  std::vector<KrausOperator> ks;
  const int m = keep_first ? db : da;
  const int out = keep_first ? da : db;
  for (int e = 0; e < m; ++e) {
    std::vector<std::int64_t> t(static_cast<size_t>(da * db), -1);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        if ((keep_first ? b : a) == e) t[static_cast<size_t>(a * db + b)] = keep_first ? a : b;
    ks.push_back(KrausOperator::monomial(out, std::move(t), std::vector<cplx>(static_cast<size_t>(da * db), 1.0)));
  }
  return QuantumOperation(std::move(ks), {da, db}, {out});
}

/// Phi(rho) = sum_i Tr(M_i rho) sigma_i. Kraus operators sqrt(s_t m_s) |g_t><f_s| from the spectral forms.
inline QuantumOperation measure_prepare(const std::vector<Matrix>& povm, const std::vector<TraceClassElement>& preps) {
  require(!povm.empty() && povm.size() == preps.size(), ErrorKind::InvalidPOVM,
          "POVM and preparations must be nonempty and of equal length");
  const auto din = povm[0].rows();
  const auto dout = preps[0].dim();
  Matrix total = Matrix::Zero(din, din);
  std::vector<KrausOperator> ks;
  for (size_t i = 0; i < povm.size(); ++i) {
    const Matrix& mi = povm[i];
    require(mi.rows() == din && mi.cols() == din, ErrorKind::InvalidPOVM, "POVM elements differ in shape");
    require((mi - mi.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, ErrorKind::InvalidPOVM, "POVM element not Hermitian");
    require(preps[i].dim() == dout && std::abs(preps[i].trace() - 1.0) <= 1e-10, ErrorKind::InvalidPOVM,
            "preparation is not a state of the common output dim");
    total += mi;
    const auto em = jacobi::eigh(mi, true);
    require(em.values.minCoeff() >= -1e-10, ErrorKind::InvalidPOVM, "POVM element not positive");
    const auto es = jacobi::eigh(preps[i].dense(), true);
    for (Eigen::Index s = 0; s < em.values.size(); ++s) {
      if (em.values(s) <= 1e-14) continue;
      for (Eigen::Index t = 0; t < es.values.size(); ++t) {
        if (es.values(t) <= 1e-14) continue;
        ks.push_back(KrausOperator::dense(std::sqrt(em.values(s) * es.values(t)) * es.vectors.col(t) *
                                          em.vectors.col(s).adjoint()));
      }
    }
  }
  require((total - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() <= 1e-10, ErrorKind::InvalidPOVM,
          "POVM elements do not sum to the identity");
  return QuantumOperation(std::move(ks), {static_cast<int>(din)}, {static_cast<int>(dout)});
}

inline QuantumOperation custom(std::vector<Matrix> kraus) {
  std::vector<KrausOperator> ks;
  ks.reserve(kraus.size());
  for (auto& k : kraus) ks.push_back(KrausOperator::dense(std::move(k)));
  return QuantumOperation(std::move(ks));
}

/// Complementary of the measure-and-prepare channel.
inline QuantumOperation pseudo_diagonal(const std::vector<Matrix>& povm, const std::vector<TraceClassElement>& preps) {
  return complementary(measure_prepare(povm, preps));
}

/// Level k decays to k - 1 with probability gamma(k) = gamma * k / (k + 1); Choi rank 2, monomial.
inline QuantumOperation ladder_damping(std::int64_t d, double gamma) {
  require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::ConfigError, "damping parameter outside [0, 1]");
  std::vector<std::int64_t> stay(static_cast<size_t>(d)), down(static_cast<size_t>(d));
  std::vector<cplx> ws(static_cast<size_t>(d)), wd(static_cast<size_t>(d));
  for (std::int64_t k = 0; k < d; ++k) {
    const double g = gamma * static_cast<double>(k) / static_cast<double>(k + 1);
    stay[k] = k;
    ws[k] = std::sqrt(1.0 - g);
    down[k] = k - 1;
    wd[k] = k > 0 ? std::sqrt(g) : 0.0;
  }
  return QuantumOperation({KrausOperator::monomial(d, std::move(stay), std::move(ws)),
                           KrausOperator::monomial(d, std::move(down), std::move(wd))});
}

/// p rho + (1 - p) S rho S^* with S the cyclic shift; Choi rank 2, monomial.
inline QuantumOperation shift_mixture(std::int64_t d, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::ConfigError, "mixture parameter outside [0, 1]");
  std::vector<std::int64_t> same(static_cast<size_t>(d)), shift(static_cast<size_t>(d));
  for (std::int64_t k = 0; k < d; ++k) {
    same[k] = k;
    shift[k] = (k + 1) % d;
  }
  return QuantumOperation({KrausOperator::monomial(d, std::move(same), std::vector<cplx>(static_cast<size_t>(d), std::sqrt(p))),
                           KrausOperator::monomial(d, std::move(shift),
                                                   std::vector<cplx>(static_cast<size_t>(d), std::sqrt(1.0 - p)))});
}

}  // namespace channels

}  // namespace entroloss
