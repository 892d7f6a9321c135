#pragma once

#include "entroloss/channels.hpp"
#include "entroloss/info.hpp"
#include "entroloss/jacobi.hpp"
#include "entroloss/linalg.hpp"
#include "entroloss/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace entroloss {

/// rho = F F^* with columns sqrt(lambda_k) e_k on the support of rho.
struct Factorization {
  Matrix f;
  Dims dims;

  Eigen::Index dim() const { return f.rows(); }
  Eigen::Index rank() const { return f.cols(); }

  /// Rows of W F^T: member kets of the ensemble generated by the isometry W.
  Matrix kets(const Matrix& w) const { return w * f.transpose(); }
};

inline Factorization factorize(const TraceClassElement& rho) {
  Factorization out;
  out.dims = rho.factor_dims();
  if (rho.form() == TraceClassElement::Form::pure) {
    out.f = rho.ket();
    return out;
  }
  require(rho.dim() <= limits().max_dense_dim, ErrorKind::DimensionOverflow, "factorization of a large element");
  const auto sd = jacobi::eigh(rho.dense(), true);
  const double top = std::max(sd.values(0), 0.0);
  Eigen::Index r = 0;
  while (r < sd.values.size() && sd.values(r) > tol::support_cutoff * top) ++r;
  require(r >= 1, ErrorKind::NotPositive, "cannot factorize a zero element");
  out.f = sd.vectors.leftCols(r) * sd.values.head(r).cwiseSqrt().cast<cplx>().asDiagonal();
  return out;
}

namespace detail {

inline double homogeneous_entropy(const RealVector& ev) {
  double s = 0.0, t = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = std::max(ev(i), 0.0);
    s += eta(x);
    t += x;
  }
  return s - eta(t);
}

// Homogeneous entropy of a positive matrix; closed form up to 2 x 2.
inline double psd_entropy(const Matrix& g) {
  if (g.rows() == 1) return 0.0;
  if (g.rows() == 2) {
    const double a = g(0, 0).real(), d = g(1, 1).real();
    const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(g(0, 1)));
    RealVector ev(2);
    ev << 0.5 * (a + d + disc), 0.5 * (a + d - disc);
    return homogeneous_entropy(ev);
  }
  return homogeneous_entropy(jacobi::eigenvalues(g));
}

// Gram of the rows of m or of its columns, whichever is smaller; both carry the nonzero spectrum of m m^*.
inline double gram_entropy(const Matrix& m) {
  if (m.rows() <= m.cols()) return psd_entropy(m * m.adjoint());
  return psd_entropy(m.adjoint() * m);
}

// Entropy of the marginal on the kept factors of a (possibly unnormalized) ket.
inline double ket_marginal_entropy(const Vector& psi, const Split& s) {
  Matrix m = Matrix::Zero(s.kept_dim, s.rest_dim);
  for (size_t i = 0; i < s.kept.size(); ++i) m(s.kept[i], s.rest[i]) = psi(static_cast<Eigen::Index>(i));
  return gram_entropy(m);
}

// Reduced operator on the kept factors of sum_t |psi_t><psi_t| over the rows of `rows`.
inline Matrix rows_marginal(const Matrix& rows, const Split& s) {
  Matrix out = Matrix::Zero(s.kept_dim, s.kept_dim);
  for (Eigen::Index t = 0; t < rows.rows(); ++t) {
    Matrix m = Matrix::Zero(s.kept_dim, s.rest_dim);
    for (size_t i = 0; i < s.kept.size(); ++i) m(s.kept[i], s.rest[i]) = rows(t, static_cast<Eigen::Index>(i));
    out.noalias() += m * m.adjoint();
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline BoundedValue to_bounded(const IsometrySearchResult& r, double value, Direction d) {
  BoundedValue b;
  b.value = value;
  b.direction = d;
  b.converged = r.converged;
  b.gap_estimate = r.gap_estimate;
  b.exhausted = r.exhausted;
  return b;
}

inline void require_budget_members(Eigen::Index members, Eigen::Index group, Eigen::Index rank, const char* what) {
  require(members >= 1 && members * group >= rank, ErrorKind::ConfigError,
          std::string(what) + ": ensemble of " + std::to_string(members) + " members with " + std::to_string(group) +
              " kets each cannot reach rank " + std::to_string(rank));
}

}  // namespace detail

/// Estimate plus the isometry that produced it (empty for exact values).
struct RoofResult {
  BoundedValue bound;
  Matrix argument;
};

// ---------------------------------------------------------------- H_k and Delta_k

namespace detail {

inline RoofResult hk_search(const Factorization& fac, int k, int members, const OptimizerBudget& budget) {
  const Eigen::Index r = fac.rank();
  require_budget_members(members, k, r, "hk_approximator");
  auto f = [&](const Matrix& w) {
    const Matrix psi = fac.kets(w);
    double s = 0.0;
    for (int i = 0; i < members; ++i) s += gram_entropy(psi.middleRows(static_cast<Eigen::Index>(i) * k, k));
    return -s;
  };
  const auto res = minimize_over_isometries(f, static_cast<Eigen::Index>(members) * k, r, budget);
  return {to_bounded(res, -res.value, Direction::lower_bound), res.argument};
}

}  // namespace detail

/// Lower estimate of H_k(rho) = sup sum p_i H(rho_i) over ensembles of rank <= k states.
inline RoofResult hk_approximator_ex(const TraceClassElement& rho, int k, const OptimizerBudget& budget,
                                     int members = -1) {
  require(k >= 1, ErrorKind::ConfigError, "k must be >= 1");
  const auto fac = factorize(rho);
  const auto r = static_cast<int>(fac.rank());
  if (k == 1) return {BoundedValue::certified(0.0, Direction::lower_bound), {}};
  if (k >= r) return {BoundedValue::certified(von_neumann_entropy(rho), Direction::lower_bound), {}};
  if (members < 0) members = r;
  return detail::hk_search(fac, k, members, budget);
}

inline BoundedValue hk_approximator(const TraceClassElement& rho, int k, const OptimizerBudget& budget,
                                    int members = -1) {
  return hk_approximator_ex(rho, k, budget, members).bound;
}

/// Upper estimate of Delta_k(rho) = inf sum p_i H(rho_i || rho); identity with H - H_k asserted on the optimum.
inline BoundedValue delta_k(const TraceClassElement& rho, int k, const OptimizerBudget& budget, int members = -1) {
  require(k >= 1, ErrorKind::ConfigError, "k must be >= 1");
  const double h = von_neumann_entropy(rho);
  const auto fac = factorize(rho);
  const auto r = static_cast<int>(fac.rank());
  if (k == 1) return BoundedValue::certified(h, Direction::upper_bound);  // spectral ensemble
  if (k >= r) return BoundedValue::certified(0.0, Direction::upper_bound);
  if (members < 0) members = r;
  const auto hk = detail::hk_search(fac, k, members, budget);
  BoundedValue out = hk.bound;
  out.direction = Direction::upper_bound;
  out.value = h - hk.bound.value;

  const Matrix psi = fac.kets(hk.argument);
  const auto rho_t = TraceClassElement::trusted_dense(fac.f * fac.f.adjoint());
  double rel = 0.0;
  for (int i = 0; i < members; ++i) {
    const Matrix block = psi.middleRows(static_cast<Eigen::Index>(i) * k, k);
    const Matrix member = block.transpose() * block.conjugate();
    const double p = member.trace().real();
    if (p <= 1e-300) continue;
    rel += p * relative_entropy(TraceClassElement::trusted_dense(member / p), rho_t).value();
  }
  require(std::abs(rel - out.value) <= 1e-8, ErrorKind::NumericalInconsistency,
          "Delta_k identity residual " + std::to_string(std::abs(rel - out.value)));
  return out;
}

// ---------------------------------------------------------------- output entropy convex closure

namespace detail {

// Rows per member: pure members once the ensemble is large enough, mixed members otherwise.
inline Eigen::Index group_size(Eigen::Index rank, int members) { return (rank + members - 1) / members; }

inline double output_block_entropy(const std::vector<Matrix>& kraus, const Matrix& block) {
  const auto dout = kraus[0].rows();
  Matrix v(dout, static_cast<Eigen::Index>(kraus.size()) * block.rows());
  Eigen::Index c = 0;
  for (const auto& k : kraus)
    for (Eigen::Index t = 0; t < block.rows(); ++t) v.col(c++) = k * block.row(t).transpose();
  return gram_entropy(v);
}

}  // namespace detail

struct ConvexClosureResult {
  BoundedValue closure;  // UPPER on the convex closure of H_Phi
  BoundedValue holevo;   // LOWER on the constrained Holevo capacity
  Matrix argument;
};

inline ConvexClosureResult convex_closure_ex(const QuantumOperation& phi, const TraceClassElement& rho, int members,
                                             const OptimizerBudget& budget) {
  require(members >= 1, ErrorKind::ConfigError, "ensemble size must be >= 1");
  require(rho.dim() == phi.in_dim(), ErrorKind::DimensionMismatch, "convex closure input dim");
  const auto kraus = phi.dense_kraus();
  const auto fac = factorize(rho);
  const auto r = fac.rank();
  const auto g = detail::group_size(r, members);
  const double h_out = output_entropy(phi, rho);
  ConvexClosureResult out;
  if (members == 1) {
    out.closure = BoundedValue::certified(h_out, Direction::upper_bound);
    out.holevo = BoundedValue::certified(0.0, Direction::lower_bound);
    return out;
  }
  auto f = [&](const Matrix& w) {
    const Matrix psi = fac.kets(w);
    double s = 0.0;
    for (int i = 0; i < members; ++i) s += detail::output_block_entropy(kraus, psi.middleRows(i * g, g));
    return s;
  };
  const auto res = minimize_over_isometries(f, members * g, r, budget);
  out.closure = detail::to_bounded(res, res.value, Direction::upper_bound);
  out.holevo = detail::to_bounded(res, h_out - res.value, Direction::lower_bound);
  out.argument = res.argument;

  // Same ensemble, Holevo form sum p_i H(Phi(rho_i) || Phi(rho)).
  if (phi.out_dim() <= 64) {
    const Matrix psi = fac.kets(res.argument);
    const auto avg = phi.apply(TraceClassElement::trusted_dense(fac.f * fac.f.adjoint()));
    double chi = 0.0;
    for (int i = 0; i < members; ++i) {
      const Matrix block = psi.middleRows(i * g, g);
      const Matrix member = block.transpose() * block.conjugate();
      const double p = member.trace().real();
      if (p <= 1e-300) continue;
      chi += p * relative_entropy(phi.apply(TraceClassElement::trusted_dense(member / p)), avg).value();
    }
    require(std::abs(chi - out.holevo.value) <= 1e-8, ErrorKind::NumericalInconsistency,
            "convex closure identity residual " + std::to_string(std::abs(chi - out.holevo.value)));
  }
  return out;
}

inline BoundedValue convex_closure_output_entropy(const QuantumOperation& phi, const TraceClassElement& rho,
                                                  int members, const OptimizerBudget& budget) {
  return convex_closure_ex(phi, rho, members, budget).closure;
}

inline BoundedValue constrained_holevo(const QuantumOperation& phi, const TraceClassElement& rho, int members,
                                       const OptimizerBudget& budget) {
  return convex_closure_ex(phi, rho, members, budget).holevo;
}

// ---------------------------------------------------------------- entanglement of formation

namespace detail {

inline void require_bipartite(const Factorization& fac, const char* what) {
  require(fac.dims.size() == 2, ErrorKind::BadFactorization, std::string(what) + " needs a bipartite element");
}

inline double ef_objective(const Factorization& fac, const Matrix& w) {
  const Matrix psi = fac.kets(w);
  const int da = fac.dims[0], db = fac.dims[1];
  double s = 0.0;
  Matrix m(da, db);
  for (Eigen::Index i = 0; i < psi.rows(); ++i) {
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b) m(a, b) = psi(i, a * db + b);
    s += gram_entropy(m);
  }
  return s;
}

inline RoofResult ef_search(const Factorization& fac, int members, const OptimizerBudget& budget,
                            const std::optional<Matrix>& start = std::nullopt) {
  require_bipartite(fac, "entanglement_of_formation");
  require_budget_members(members, 1, fac.rank(), "entanglement_of_formation");
  const auto res =
      minimize_over_isometries([&](const Matrix& w) { return ef_objective(fac, w); }, members, fac.rank(), budget, start);
  return {to_bounded(res, res.value, Direction::upper_bound), res.argument};
}

}  // namespace detail

/// Upper estimate of E_F over pure ensembles of `members` states; exact on pure inputs.
inline RoofResult entanglement_of_formation_ex(const TraceClassElement& w, int members, const OptimizerBudget& budget) {
  require_parts(w, 2, "entanglement_of_formation");
  // A pure state admits only the trivial decomposition.
  if (w.form() == TraceClassElement::Form::ghz)
    return {BoundedValue::certified(von_neumann_entropy(partial_trace(w, {0})), Direction::upper_bound), {}};
  const auto fac = factorize(w);
  if (fac.rank() == 1) {
    return {BoundedValue::certified(detail::ef_objective(fac, Matrix::Identity(1, 1)), Direction::upper_bound), {}};
  }
  return detail::ef_search(fac, members, budget);
}

inline BoundedValue entanglement_of_formation(const TraceClassElement& w, int members, const OptimizerBudget& budget) {
  return entanglement_of_formation_ex(w, members, budget).bound;
}

// ---------------------------------------------------------------- c-squashed entanglement

namespace detail {

struct BipartiteSplits {
  Split a, b;
  explicit BipartiteSplits(const Dims& dims) : a(split_indices(dims, {0})), b(split_indices(dims, {1})) {}
};

inline double member_mutual_information(const Matrix& block, const BipartiteSplits& s) {
  const double hab = gram_entropy(block);
  const double ha = psd_entropy(rows_marginal(block, s.a));
  const double hb = psd_entropy(rows_marginal(block, s.b));
  return ha + hb - hab;
}

inline RoofResult csq_search(const Factorization& fac, int k, const OptimizerBudget& budget,
                             const std::optional<Matrix>& start = std::nullopt) {
  require_bipartite(fac, "csq_entanglement_k");
  const auto r = fac.rank();
  const BipartiteSplits splits(fac.dims);
  auto f = [&](const Matrix& w) {
    const Matrix psi = fac.kets(w);
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += member_mutual_information(psi.middleRows(i * r, r), splits);
    return s;
  };
  const auto res = minimize_over_isometries(f, k * r, r, budget, start);
  return {to_bounded(res, res.value, Direction::upper_bound), res.argument};
}

}  // namespace detail

/// Upper estimate of E_csq^k: inf over ensembles of at most k members of sum p_i I(A:B)_i (finite-ensemble version).
inline RoofResult csq_entanglement_k_ex(const TraceClassElement& w, int k, const OptimizerBudget& budget) {
  require(k >= 1, ErrorKind::ConfigError, "k must be >= 1");
  require_parts(w, 2, "csq_entanglement_k");
  if (k == 1 || w.form() == TraceClassElement::Form::ghz)
    return {BoundedValue::certified(mutual_information(w).value(), Direction::upper_bound), {}};
  const auto fac = factorize(w);
  return detail::csq_search(fac, k, budget);
}

inline BoundedValue csq_entanglement_k(const TraceClassElement& w, int k, const OptimizerBudget& budget) {
  return csq_entanglement_k_ex(w, k, budget).bound;
}

// ---------------------------------------------------------------- squashed entanglement with bounded extension

/// Upper estimate of E_sq^k = 1/2 inf I(A:B|E) over extensions with dim E = k.
/// Extensions come from isometries R -> E (x) F on the purifying system, dim F = dA dB k.
inline BoundedValue squashed_entanglement_k(const TraceClassElement& w, int k, const OptimizerBudget& budget) {
  require(k >= 1, ErrorKind::ConfigError, "extension dimension must be >= 1");
  require_parts(w, 2, "squashed_entanglement_k");
  // Every extension of a pure state is a product with E.
  if (k == 1 || w.form() == TraceClassElement::Form::ghz)
    return BoundedValue::certified(0.5 * mutual_information(w).value(), Direction::upper_bound);
  const auto fac = factorize(w);
  const int da = fac.dims[0], db = fac.dims[1];
  const auto r = fac.rank();
  const int fd = std::max<int>(da * db * k, static_cast<int>(r));
  const Dims dims{da, db, k, fd};
  const auto s_ae = detail::split_indices(dims, {0, 2});
  const auto s_be = detail::split_indices(dims, {1, 2});
  const auto s_f = detail::split_indices(dims, {3});
  const auto s_e = detail::split_indices(dims, {2});
  const Eigen::Index dab = da * db;
  auto f = [&](const Matrix& v) {
    // Ket on A B (E F): (I (x) V) sum_k F(:, k) (x) |k>.
    const Matrix t = fac.f * v.transpose();  // dab x (k fd)
    Vector psi(dab * k * fd);
    for (Eigen::Index ab = 0; ab < dab; ++ab) psi.segment(ab * k * fd, k * fd) = t.row(ab).transpose();
    const double cmi = detail::ket_marginal_entropy(psi, s_ae) + detail::ket_marginal_entropy(psi, s_be) -
                       detail::ket_marginal_entropy(psi, s_f) - detail::ket_marginal_entropy(psi, s_e);
    return 0.5 * cmi;
  };
  // Restart 0: trivial extension |k> -> |0>_E |k>_F.
  Matrix start = Matrix::Zero(static_cast<Eigen::Index>(k) * fd, r);
  for (Eigen::Index j = 0; j < r; ++j) start(j, j) = 1.0;
  const auto res = minimize_over_isometries(f, static_cast<Eigen::Index>(k) * fd, r, budget, start);
  return detail::to_bounded(res, std::max(res.value, 0.0), Direction::upper_bound);
}

// ---------------------------------------------------------------- classical correlations and discord

namespace detail {

// Blocks Omega_{b b'} (dA x dA) of a bipartite matrix.
inline std::vector<Matrix> b_blocks(const Matrix& m, int da, int db) {
  std::vector<Matrix> out(static_cast<size_t>(db * db), Matrix(da, da));
  for (int b = 0; b < db; ++b)
    for (int bp = 0; bp < db; ++bp)
      for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) out[static_cast<size_t>(b * db + bp)](a, ap) = m(a * db + b, ap * db + bp);
  return out;
}

}  // namespace detail

/// Lower estimate of C_B: H(omega_A) - inf sum_j H(omega_A^j) over rank-one POVMs of size m on B.
inline BoundedValue classical_correlations_CB(const TraceClassElement& w, int m, const OptimizerBudget& budget) {
  require_parts(w, 2, "classical_correlations_CB");
  const int da = w.factor_dims()[0], db = w.factor_dims()[1];
  require(m >= 2 && m >= db, ErrorKind::ConfigError, "POVM size must be >= max(2, dB)");
  const double ha = von_neumann_entropy(partial_trace(w, {0}));
  if (w.is_rank_one()) return BoundedValue::certified(ha, Direction::lower_bound);
  // Perfectly correlated classical state: measuring B in the computational basis leaves A pure.
  if (w.form() == TraceClassElement::Form::copy) return BoundedValue::certified(ha, Direction::lower_bound);
  const auto blocks = detail::b_blocks(w.dense(), da, db);
  auto f = [&](const Matrix& wm) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      Matrix cond = Matrix::Zero(da, da);
      for (int b = 0; b < db; ++b)
        for (int bp = 0; bp < db; ++bp) {
          const cplx c = wm(j, b) * std::conj(wm(j, bp));  // conj(v(b)) v(b') with v = W^* |j>
          if (c != cplx(0.0)) cond += c * blocks[static_cast<size_t>(b * db + bp)];
        }
      s += detail::psd_entropy(cond);
    }
    return s;
  };
  // Restart 0: eigenbasis of omega_B.
  const auto sb = jacobi::eigh(partial_trace(w, {1}).dense(), true);
  Matrix start = Matrix::Zero(m, db);
  start.topRows(db) = sb.vectors.adjoint();
  const auto res = minimize_over_isometries(f, m, db, budget, start);
  return detail::to_bounded(res, ha - res.value, Direction::lower_bound);
}

/// Upper estimate of the discord I(A:B) - C_B.
inline BoundedValue quantum_discord(const TraceClassElement& w, int m, const OptimizerBudget& budget) {
  BoundedValue cb = classical_correlations_CB(w, m, budget);
  cb.value = std::max(0.0, mutual_information(w).value() - cb.value);
  cb.direction = Direction::upper_bound;
  return cb;
}

// ---------------------------------------------------------------- Koashi-Winter

struct KoashiWinter {
  BoundedValue cb;  // C_B(omega_AB), LOWER
  BoundedValue ef;  // E_F(omega_AC), UPPER
  double h_a = 0.0;
  double signed_residual = 0.0;  // C_B + E_F - H(omega_A)
  bool converged() const { return cb.converged && ef.converged; }
};

inline KoashiWinter koashi_winter(const TraceClassElement& abc, const OptimizerBudget& budget, int members = 4) {
  require(abc.parties() == 3, ErrorKind::BadFactorization, "Koashi-Winter needs a tripartite state");
  bool pure = abc.is_rank_one();
  if (!pure) {
    const RealVector ev = abc.spectrum();
    pure = ev.size() >= 1 && std::abs(ev.maxCoeff() - abc.trace()) <= 1e-10;
  }
  require(pure, ErrorKind::NotPure, "Koashi-Winter identity needs a pure tripartite state");
  KoashiWinter kw;
  const auto ab = partial_trace(abc, {0, 1});
  const auto ac = partial_trace(abc, {0, 2});
  kw.h_a = von_neumann_entropy(partial_trace(abc, {0}));
  kw.cb = classical_correlations_CB(ab, std::max(members, ab.factor_dims()[1]), budget);
  kw.ef = entanglement_of_formation(ac, std::max<int>(members, static_cast<int>(factorize(ac).rank())), budget);
  kw.signed_residual = kw.cb.value + kw.ef.value - kw.h_a;
  return kw;
}

inline double koashi_winter_residual(const TraceClassElement& abc, const OptimizerBudget& budget, int members = 4) {
  return std::abs(koashi_winter(abc, budget, members).signed_residual);
}

// ---------------------------------------------------------------- two-copy regularization

enum class RoofMeasure { entanglement_of_formation, csq };

struct RegularizedEstimate {
  BoundedValue single;      // measure(omega)
  BoundedValue two_copy;    // measure(omega (x) omega) / 2
  bool subadditive = true;  // two_copy <= single + tolerance
};

/// 1/2 measure(omega (x) omega) with the (A1 A2 | B1 B2) cut; restart 0 is the product of the single-copy optimum.
inline RegularizedEstimate regularized_k2(RoofMeasure measure, const TraceClassElement& w,
                                          const OptimizerBudget& budget, int single_size = 4) {
  require_parts(w, 2, "regularized_k2");
  const int da = w.factor_dims()[0], db = w.factor_dims()[1];
  require(da * db <= 4, ErrorKind::DimensionOverflow, "two-copy regularization limited to 2 x 2 inputs");
  const auto fac = factorize(w);
  const auto r = fac.rank();

  RoofResult one;
  Eigen::Index group = 1;
  if (measure == RoofMeasure::entanglement_of_formation) {
    single_size = std::max<int>(single_size, static_cast<int>(r));
    one = fac.rank() == 1 ? RoofResult{BoundedValue::certified(detail::ef_objective(fac, Matrix::Identity(1, 1)),
                                                               Direction::upper_bound),
                                       Matrix::Identity(1, 1)}
                          : detail::ef_search(fac, single_size, budget);
  } else {
    group = r;
    one = detail::csq_search(fac, single_size, budget);
  }

  // Two-copy factorization in (A1 A2 B1 B2) order.
  Factorization two;
  two.dims = {da * da, db * db};
  two.f.resize(fac.dim() * fac.dim(), r * r);
  const Dims four{da, db, da, db};
  std::vector<Eigen::Index> map(static_cast<size_t>(fac.dim() * fac.dim()));
  for (Eigen::Index flat = 0; flat < static_cast<Eigen::Index>(map.size()); ++flat) {
    const auto d = detail::digits(flat, four);
    map[static_cast<size_t>(flat)] = ((static_cast<Eigen::Index>(d[0]) * da + d[2]) * db + d[1]) * db + d[3];
  }
  for (Eigen::Index k1 = 0; k1 < r; ++k1)
    for (Eigen::Index k2 = 0; k2 < r; ++k2) {
      Vector col(fac.dim() * fac.dim());
      const Vector prod = detail::kron(fac.f.col(k1), fac.f.col(k2));
      for (Eigen::Index i = 0; i < prod.size(); ++i) col(map[static_cast<size_t>(i)]) = prod(i);
      two.f.col(k1 * r + k2) = col;
    }

  // Product start with member-major row grouping.
  const Matrix& w1 = one.argument;
  const Eigen::Index m1 = w1.rows() / group;
  Matrix start(w1.rows() * w1.rows(), r * r);
  for (Eigen::Index i1 = 0; i1 < m1; ++i1)
    for (Eigen::Index t1 = 0; t1 < group; ++t1)
      for (Eigen::Index i2 = 0; i2 < m1; ++i2)
        for (Eigen::Index t2 = 0; t2 < group; ++t2) {
          const Eigen::Index row = (i1 * m1 + i2) * group * group + t1 * group + t2;
          start.row(row) = detail::kron(w1.row(i1 * group + t1).transpose(), w1.row(i2 * group + t2).transpose()).transpose();
        }

  RegularizedEstimate out;
  out.single = one.bound;
  RoofResult pair;
  if (measure == RoofMeasure::entanglement_of_formation) {
    if (r == 1) {
      pair = {BoundedValue::certified(detail::ef_objective(two, Matrix::Identity(1, 1)), Direction::upper_bound), {}};
    } else {
      pair = detail::ef_search(two, static_cast<int>(m1 * m1), budget, start);
    }
  } else {
    pair = detail::csq_search(two, static_cast<int>(m1 * m1), budget, start);
  }
  out.two_copy = pair.bound;
  out.two_copy.value *= 0.5;
  out.two_copy.gap_estimate *= 0.5;
  out.subadditive = out.two_copy.value <= out.single.value + 1e-9;
  return out;
}

}  // namespace entroloss
