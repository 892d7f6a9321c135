#pragma once

#include "entroloss/channels.hpp"
#include "entroloss/energy.hpp"
#include "entroloss/info.hpp"
#include "entroloss/linalg.hpp"
#include "entroloss/optimizer.hpp"
#include "entroloss/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entroloss {

using Grid = std::vector<std::int64_t>;
using Tags = std::map<std::string, std::string>;

inline constexpr int default_window = 3;

/// {2^lo, ..., 2^hi}.
inline Grid geometric_grid(int lo_exp, int hi_exp) {
  require(lo_exp >= 0 && hi_exp >= lo_exp && hi_exp < 40, ErrorKind::ConfigError, "bad geometric grid exponents");
  Grid g;
  for (int e = lo_exp; e <= hi_exp; ++e) g.push_back(std::int64_t{1} << e);
  return g;
}

inline Grid diagonal_grid() { return geometric_grid(4, 16); }
inline Grid dense_grid() { return geometric_grid(2, 7); }

inline void require_grid(const Grid& g, int window) {
  require(window >= 1, ErrorKind::ConfigError, "window must be >= 1");
  require(static_cast<int>(g.size()) >= 2 * window, ErrorKind::ConfigError,
          "grid of " + std::to_string(g.size()) + " points is shorter than 2 * window = " + std::to_string(2 * window));
  for (size_t i = 1; i < g.size(); ++i)
    require(g[i] > g[i - 1], ErrorKind::ConfigError, "grid must be strictly increasing");
  require(g.front() >= 1, ErrorKind::ConfigError, "grid entries must be >= 1");
}

/// Runs f(n) over the grid on the worker pool; results are in grid order.
template <class T, class F>
std::vector<T> map_grid(const Grid& grid, F&& f) {
  std::vector<T> out(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int i) { out[static_cast<size_t>(i)] = f(grid[static_cast<size_t>(i)]); });
  return out;
}

/// A sequence rho_n -> rho_0. The generator may return cone elements; the limit is zero-padded
/// into the generated dimension when distances are taken.
struct StateSequence {
  std::string name;
  std::function<TraceClassElement(std::int64_t)> generator;
  TraceClassElement limit;
  Grid n_grid;
  Tags tags;
  /// Known asymptotic values, keyed by the functional name (for example "dj_H").
  std::map<std::string, double> closed_forms;

  TraceClassElement at(std::int64_t n) const { return generator(n); }

  TraceClassElement limit_like(const TraceClassElement& x) const {
    if (limit.factor_dims() == x.factor_dims()) return limit;
    if (limit.parties() == x.parties()) return embed(limit, x.factor_dims());
    require(limit.parties() == 1, ErrorKind::DimensionMismatch, "limit and sequence have different factor counts");
    return embed(limit, {static_cast<int>(x.dim())});
  }
};

struct ConvergenceCheck {
  Grid grid;
  std::vector<double> distances;
  bool converging = false;
};

/// Trace distances to the embedded limit; converging when they do not increase over the trailing half.
inline ConvergenceCheck validate_convergence(const StateSequence& s) {
  ConvergenceCheck c;
  c.grid = s.n_grid;
  c.distances = map_grid<double>(s.n_grid, [&](std::int64_t n) {
    const TraceClassElement x = s.at(n);
    TraceClassElement lim = s.limit_like(x);
    if (x.parties() != lim.parties()) lim = lim.with_dims(x.factor_dims());
    return trace_distance(x, lim);
  });
  c.converging = !c.distances.empty();
  const size_t start = c.distances.size() / 2;
  for (size_t i = start + 1; i < c.distances.size(); ++i)
    if (c.distances[i] > c.distances[i - 1] + 1e-12) c.converging = false;
  if (c.distances.size() >= 2 && c.distances.back() >= c.distances.front()) c.converging = false;
  return c;
}

/// Finite-grid estimate of limsup f(x_n) - f(x_0).
struct DjEstimate {
  Grid grid;
  std::vector<double> values;
  int window = default_window;
  double tail_sup = 0.0;
  double tail_inf = 0.0;
  double limit_value = 0.0;
  /// max(tail_sup - limit_value, 0); +inf when the limit value is +inf.
  ExtendedReal dj = 0.0;
  /// max(limit_value - tail_inf, 0): the finite-grid gain.
  double gain = 0.0;
  bool monotone = false;
  std::optional<double> closed_form;
  std::optional<double> extrapolated;

  double dj_value() const { return dj.as_double(); }
};

inline DjEstimate dj_from_values(Grid grid, std::vector<double> values, double limit_value, int window) {
  require_grid(grid, window);
  require(values.size() == grid.size(), ErrorKind::DimensionMismatch, "values and grid differ in length");
  for (size_t i = 0; i < values.size(); ++i)
    require(!std::isnan(values[i]), ErrorKind::FunctionalUndefined, "functional is NaN at n = " + std::to_string(grid[i]));
  require(!std::isnan(limit_value), ErrorKind::FunctionalUndefined, "functional is NaN at the limit");
  DjEstimate e;
  e.window = window;
  const size_t first = values.size() - static_cast<size_t>(window);
  e.tail_sup = *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
  e.tail_inf = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
  e.limit_value = limit_value;
  if (std::isinf(limit_value)) {
    e.dj = ExtendedReal::infinity();
  } else if (std::isinf(e.tail_sup)) {
    e.dj = ExtendedReal::infinity();
  } else {
    e.dj = std::max(e.tail_sup - limit_value, 0.0);
  }
  e.gain = std::isinf(limit_value) ? 0.0 : std::max(limit_value - e.tail_inf, 0.0);
  bool up = true, down = true;
  for (size_t i = first + 1; i < values.size(); ++i) {
    up = up && values[i] >= values[i - 1];
    down = down && values[i] <= values[i - 1];
  }
  e.monotone = up || down;
  e.grid = std::move(grid);
  e.values = std::move(values);
  return e;
}

using StateFunctional = std::function<double(const TraceClassElement&)>;

/// Evaluates f along the grid (concurrently) and at the limit. f must be invariant under zero padding.
inline DjEstimate dj_estimate(const StateSequence& s, const StateFunctional& f, int window = default_window) {
  require_grid(s.n_grid, window);
  std::vector<double> v = map_grid<double>(s.n_grid, [&](std::int64_t n) { return f(s.at(n)); });
  return dj_from_values(s.n_grid, std::move(v), f(s.limit), window);
}

/// Least-squares fit of f(n) on {1, 1/log n, log log n / log n}; returns the constant term.
/// An extrapolation, not a bound.
inline double asymptotic_extrapolation(const Grid& grid, const std::vector<double>& values) {
  require(grid.size() == values.size() && grid.size() >= 4, ErrorKind::ConfigError,
          "extrapolation needs at least four grid points");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(grid.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(grid.size()));
  for (size_t i = 0; i < grid.size(); ++i) {
    const double l = std::log(static_cast<double>(std::max<std::int64_t>(grid[i], 3)));
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = 1.0 / l;
    a(r, 2) = std::log(l) / l;
    b(r) = values[i];
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

// ---------------------------------------------------------------- purification lift

namespace detail {

inline Vector rank_one_ket(const TraceClassElement& w) {
  using F = TraceClassElement::Form;
  if (w.form() == F::pure) return w.ket();
  if (w.form() == F::ghz) return w.ghz_ket();
  const auto sd = jacobi::eigh(w.dense(), true);
  const double top = std::max(sd.values(0), 0.0);
  for (Eigen::Index i = 1; i < sd.values.size(); ++i)
    require(sd.values(i) <= 1e-10 * std::max(top, 1.0), ErrorKind::NotPure, "purification target is not rank one");
  return std::sqrt(top) * sd.vectors.col(0);
}

inline bool diagonal_schmidt(const TraceClassElement& w) {
  return w.form() == TraceClassElement::Form::ghz && w.parties() == 2;
}

}  // namespace detail

/// Pure bipartite omega_n on A (x) K with Tr_K omega_n = rho_n and omega_n -> omega_0.
/// Diagonal rho_n with a Schmidt-form omega_0 gives Schmidt-form lifts sum_k sqrt(p_k) e^{i phi_k} |kk>.
/// Otherwise omega_n = vec(sqrt(rho_n) U_n), U_n the co-isometry factor of omega_0 extended by the identity.
inline StateSequence lift_by_purification(const StateSequence& seq, const TraceClassElement& omega0) {
  require(omega0.parties() == 2, ErrorKind::IncompatiblePurification, "purification must be bipartite");
  require(omega0.is_rank_one() || omega0.form() == TraceClassElement::Form::dense, ErrorKind::NotPure,
          "purification target must be pure");
  const int da0 = omega0.factor_dims()[0];
  const int dk0 = omega0.factor_dims()[1];
  require(da0 == seq.limit.dim(), ErrorKind::IncompatiblePurification, "A factor differs from the limit dimension");
  const TraceClassElement rho0 = seq.limit.with_dims({da0});

  StateSequence out;
  out.name = seq.name + "_lifted";
  out.n_grid = seq.n_grid;
  out.tags = seq.tags;
  out.tags["lift"] = "purification";

  if (detail::diagonal_schmidt(omega0)) {
    const Vector c = omega0.ket();
    require(rho0.is_diagonal(), ErrorKind::IncompatiblePurification, "Schmidt-form lift needs a diagonal limit");
    const RealVector p0 = computational_pinching(rho0);
    for (Eigen::Index k = 0; k < p0.size(); ++k) {
      const double ck = k < c.size() ? std::norm(c(k)) : 0.0;
      require(std::abs(ck - p0(k)) <= 1e-10, ErrorKind::IncompatiblePurification,
              "Tr_K omega_0 differs from the limit");
    }
    out.limit = omega0;
    out.generator = [seq, c](std::int64_t n) {
      const TraceClassElement rho = seq.at(n);
      require(rho.form() == TraceClassElement::Form::diagonal, ErrorKind::IncompatiblePurification,
              "Schmidt-form lift needs diagonal members");
      const RealVector& p = rho.diagonal_values();
      Vector coeffs(p.size());
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        const cplx phase = (k < c.size() && std::abs(c(k)) > 0.0) ? c(k) / std::abs(c(k)) : cplx(1.0);
        coeffs(k) = std::sqrt(p(k)) * phase;
      }
      return TraceClassElement::ghz(std::move(coeffs), 2, static_cast<int>(p.size()));
    };
    return out;
  }

  require(dk0 >= da0, ErrorKind::IncompatiblePurification, "purifying factor smaller than the purified one");
  const Vector psi0 = detail::rank_one_ket(omega0);
  Matrix m0(da0, dk0);
  for (int a = 0; a < da0; ++a)
    for (int k = 0; k < dk0; ++k) m0(a, k) = psi0(static_cast<Eigen::Index>(a) * dk0 + k);
  require((m0 * m0.adjoint() - rho0.dense()).cwiseAbs().maxCoeff() <= 1e-10, ErrorKind::IncompatiblePurification,
          "Tr_K omega_0 differs from the limit");
  Eigen::JacobiSVD<Matrix> svd(m0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix u0 = svd.matrixU() * Matrix::Identity(da0, dk0) * svd.matrixV().adjoint();

  out.limit = TraceClassElement::from_ket(psi0, {da0, dk0});
  out.generator = [seq, u0, da0, dk0](std::int64_t n) {
    const TraceClassElement rho = seq.at(n);
    const auto da = static_cast<int>(rho.dim());
    require(da >= da0, ErrorKind::IncompatiblePurification, "sequence dimension below the limit dimension");
    const int dk = dk0 + (da - da0);
    Matrix u = Matrix::Zero(da, dk);
    u.topLeftCorner(da0, dk0) = u0;
    if (da > da0) u.bottomRightCorner(da - da0, da - da0).setIdentity();
    const Matrix m = psd_sqrt(rho.dense()) * u;
    Vector psi(static_cast<Eigen::Index>(da) * dk);
    for (int a = 0; a < da; ++a)
      for (int k = 0; k < dk; ++k) psi(static_cast<Eigen::Index>(a) * dk + k) = m(a, k);
    TraceClassElement w = TraceClassElement::from_ket(std::move(psi), {da, dk});
    const double err = trace_distance(partial_trace(w, {0}), rho.with_dims({da}));
    require(err <= 1e-10, ErrorKind::IncompatiblePurification,
            "lift marginal error " + std::to_string(err) + " at n = " + std::to_string(n));
    return w;
  };
  return out;
}

/// max_n || Tr_K omega_n - rho_n ||_1 over the grid.
inline double lift_marginal_error(const StateSequence& base, const StateSequence& lifted) {
  const auto errs = map_grid<double>(base.n_grid, [&](std::int64_t n) {
    const TraceClassElement w = lifted.at(n);
    const TraceClassElement rho = base.at(n);
    const TraceClassElement m = partial_trace(w, {0});
    if (m.form() == TraceClassElement::Form::diagonal && rho.form() == TraceClassElement::Form::diagonal)
      return trace_distance(m, rho.with_dims({static_cast<int>(rho.dim())}));
    return trace_distance(m.with_dims({static_cast<int>(m.dim())}), rho.with_dims({static_cast<int>(rho.dim())}));
  });
  return *std::max_element(errs.begin(), errs.end());
}

// ---------------------------------------------------------------- channel/state pairs

struct ChannelStatePair {
  QuantumOperation channel;
  TraceClassElement state;
};

/// (Phi_n, rho_n) -> (Phi_0, rho_0).
struct PairSequence {
  std::string name;
  std::function<ChannelStatePair(std::int64_t)> generator;
  std::function<ChannelStatePair()> limit;
  Grid n_grid;
  Tags tags;
  /// Input states of the limit dimension used to probe strong convergence Phi_n(x) -> Phi_0(x).
  std::vector<TraceClassElement> probes;

  ChannelStatePair at(std::int64_t n) const { return generator(n); }
};

using PairFunctional = std::function<double(const QuantumOperation&, const TraceClassElement&)>;

inline DjEstimate dj_estimate(const PairSequence& s, const PairFunctional& f, int window = default_window) {
  require_grid(s.n_grid, window);
  std::vector<double> v = map_grid<double>(s.n_grid, [&](std::int64_t n) {
    const ChannelStatePair p = s.at(n);
    return f(p.channel, p.state);
  });
  const ChannelStatePair l = s.limit();
  return dj_from_values(s.n_grid, std::move(v), f(l.channel, l.state), window);
}

namespace detail {

inline TraceClassElement pad_to(const TraceClassElement& x, std::int64_t d) {
  const TraceClassElement flat = x.with_dims({static_cast<int>(x.dim())});
  return x.dim() == d ? flat : embed(flat, {static_cast<int>(d)});
}

}  // namespace detail

/// Output distances || Phi_n(x) - Phi_0(x) ||_1 for each probe (rows) along the grid (columns),
/// and || Phi_n(rho_n) - Phi_0(rho_0) ||_1 in the last row.
inline std::vector<std::vector<double>> strong_convergence_table(const PairSequence& s) {
  const ChannelStatePair l = s.limit();
  std::vector<std::vector<double>> rows(s.probes.size() + 1, std::vector<double>(s.n_grid.size()));
  parallel_for(static_cast<int>(s.n_grid.size()), [&](int i) {
    const ChannelStatePair p = s.at(s.n_grid[static_cast<size_t>(i)]);
    for (size_t j = 0; j < s.probes.size(); ++j) {
      const TraceClassElement in = detail::pad_to(s.probes[j], p.channel.in_dim());
      const TraceClassElement a = p.channel.apply(in).with_dims({static_cast<int>(p.channel.out_dim())});
      const TraceClassElement b = detail::pad_to(l.channel.apply(s.probes[j]), p.channel.out_dim());
      rows[j][static_cast<size_t>(i)] = trace_distance(a, b);
    }
    const TraceClassElement a = p.channel.apply(p.state).with_dims({static_cast<int>(p.channel.out_dim())});
    const TraceClassElement b = detail::pad_to(l.channel.apply(l.state), p.channel.out_dim());
    rows.back()[static_cast<size_t>(i)] = trace_distance(a, b);
  });
  return rows;
}

// ---------------------------------------------------------------- built-in families

struct FamilyParams {
  /// "log" or "linear".
  std::string law = "log";
  double scale = 1.0;
  double offset = 0.0;
  double energy = 1.0;
  int parties = 2;
  std::uint64_t seed = 7;
  Grid grid;
};

namespace detail {

inline Hamiltonian family_hamiltonian(const FamilyParams& p) {
  if (p.law == "log") return Hamiltonian::logarithmic(p.scale, p.offset, 1);
  if (p.law == "linear") return Hamiltonian::linear(p.offset, p.scale, 1);
  fail(ErrorKind::ConfigError, "unknown level law '" + p.law + "'");
}

// lim H(rho_n) = lim q_n log n. Log law: the level mean over 1..n grows like a log n, so the limit
// is (E - E_0)/a. Linear law: q_n = O(1/n) and the limit is 0.
inline double closed_form_sharp_loss(const FamilyParams& p) {
  const Hamiltonian h = family_hamiltonian(p);
  if (h.law() == Hamiltonian::Law::linear) return 0.0;
  return (p.energy - h.ground_energy()) / h.coefficient();
}

inline RealVector sharp_weights(const FamilyParams& p, std::int64_t n) {
  return sharp_sequence(family_hamiltonian(p), p.energy, n).diagonal_values();
}

inline Grid grid_or(const FamilyParams& p, Grid fallback) { return p.grid.empty() ? fallback : p.grid; }

inline TraceClassElement ground(int d = 1) {
  RealVector v = RealVector::Zero(d);
  v(0) = 1.0;
  return TraceClassElement::from_diagonal(std::move(v));
}

// Fixed full-rank state of dimension d drawn from the family seed.
inline TraceClassElement noise_state(std::uint64_t seed, int d, const Dims& dims) {
  Rng rng(seed);
  return rng.density(d, d, dims);
}

inline TraceClassElement product_ket_state(const Dims& dims) {
  const std::int64_t n = product(dims);
  Vector psi = Vector::Zero(n);
  psi(0) = 1.0;
  return TraceClassElement::from_ket(std::move(psi), dims);
}

// (1 - 1/n)|0...0><0...0| + (1/n) sigma.
inline TraceClassElement mix_to_ground(const TraceClassElement& sigma, std::int64_t n) {
  const Dims& dims = sigma.factor_dims();
  const double t = 1.0 / static_cast<double>(n);
  Matrix m = t * sigma.dense();
  m(0, 0) += 1.0 - t;
  return TraceClassElement::trusted_dense(std::move(m), dims);
}

// Sum of product states with the given seed: a separable full-rank element of trace 1.
inline TraceClassElement separable_noise(std::uint64_t seed, const Dims& dims, int terms) {
  Rng rng(seed);
  const std::int64_t n = product(dims);
  Matrix m = Matrix::Zero(n, n);
  const RealVector w = rng.simplex(terms);
  for (int t = 0; t < terms; ++t) {
    TraceClassElement x = rng.pure_state(dims[0]);
    for (size_t f = 1; f < dims.size(); ++f) x = tensor(x, rng.pure_state(dims[f]));
    m += w(t) * x.dense();
  }
  return TraceClassElement::trusted_dense(std::move(m), dims);
}

// Sharp weights moved onto levels offset, offset + stride, ...; the remaining levels are zero.
inline RealVector interleave(const RealVector& w, int stride, int offset, std::int64_t dim) {
  RealVector v = RealVector::Zero(dim);
  for (Eigen::Index k = 0; k < w.size(); ++k) v(k * stride + offset) = w(k);
  return v;
}

}  // namespace detail

using FamilyFactory = std::function<StateSequence(const FamilyParams&)>;

struct FamilyInfo {
  std::string description;
  FamilyFactory make;
};

/// Registered state-sequence families.
///  - sharp: (1 - q_n)|0><0| + (q_n/n) sum_{k=1..n} |k><k| at mean energy E; limit |0>
///  - spread_sharp: the same weight q_n spread over 2n levels (majorized by sharp)
///  - mix_to_pure: n^{-1} sigma + (1 - n^{-1})|0..0><0..0| with a fixed full-rank sigma on {2, 2}
///  - lifted_sharp: Schmidt-form purification of sharp on A (x) K
///  - copy_sharp: sum_k p_k |k>^{(x) m}<k|^{(x) m} with sharp weights (m = parties)
///  - ghz3_sharp: sum_k sqrt(p_k) |kkk>
///  - separable_mix: mix_to_pure with a separable sigma
///  - interleaved_sharp: sharp weights on even levels; limit |0>
inline const std::map<std::string, FamilyInfo>& builtin_families() {
  static const std::map<std::string, FamilyInfo> registry = [] {
    std::map<std::string, FamilyInfo> r;
    r["sharp"] = {"two-valued sharp-energy sequence on a single system", [](const FamilyParams& p) {
                    StateSequence s;
                    s.name = "sharp";
                    s.n_grid = detail::grid_or(p, diagonal_grid());
                    s.limit = detail::ground();
                    s.generator = [p](std::int64_t n) {
                      return TraceClassElement::from_diagonal(detail::sharp_weights(p, n));
                    };
                    s.tags["law"] = p.law;
                    s.closed_forms["dj_H"] = detail::closed_form_sharp_loss(p);
                    return s;
                  }};
    r["spread_sharp"] = {"sharp weight q_n spread over 2n excited levels", [](const FamilyParams& p) {
                           StateSequence s;
                           s.name = "spread_sharp";
                           s.n_grid = detail::grid_or(p, diagonal_grid());
                           s.limit = detail::ground();
                           s.generator = [p](std::int64_t n) {
                             const RealVector w = detail::sharp_weights(p, n);
                             const double q = 1.0 - w(0);
                             RealVector v = RealVector::Constant(2 * n + 1, q / (2.0 * static_cast<double>(n)));
                             v(0) = 1.0 - q;
                             return TraceClassElement::from_diagonal(std::move(v));
                           };
                           s.closed_forms["dj_H"] = detail::closed_form_sharp_loss(p);
                           return s;
                         }};
    r["mix_to_pure"] = {"n^{-1} sigma + (1 - n^{-1}) |00><00| on two qubits", [](const FamilyParams& p) {
                          StateSequence s;
                          s.name = "mix_to_pure";
                          s.n_grid = detail::grid_or(p, dense_grid());
                          const Dims dims{2, 2};
                          s.limit = detail::product_ket_state(dims);
                          const TraceClassElement sigma = detail::noise_state(p.seed, 4, dims);
                          s.generator = [sigma](std::int64_t n) { return detail::mix_to_ground(sigma, n); };
                          s.closed_forms["dj_H"] = 0.0;
                          return s;
                        }};
    r["separable_mix"] = {"n^{-1} sigma_sep + (1 - n^{-1}) |00><00| with separable sigma", [](const FamilyParams& p) {
                            StateSequence s;
                            s.name = "separable_mix";
                            s.n_grid = detail::grid_or(p, dense_grid());
                            const Dims dims{2, 2};
                            s.limit = detail::product_ket_state(dims);
                            const TraceClassElement sigma = detail::separable_noise(p.seed, dims, 6);
                            s.generator = [sigma](std::int64_t n) { return detail::mix_to_ground(sigma, n); };
                            s.tags["separable"] = "true";
                            s.closed_forms["dj_H"] = 0.0;
                            return s;
                          }};
    r["mix_to_pure3"] = {"n^{-1} sigma + (1 - n^{-1}) |000><000| on three qubits", [](const FamilyParams& p) {
                           StateSequence s;
                           s.name = "mix_to_pure3";
                           s.n_grid = detail::grid_or(p, dense_grid());
                           const Dims dims{2, 2, 2};
                           s.limit = detail::product_ket_state(dims);
                           const TraceClassElement sigma = detail::noise_state(p.seed, 8, dims);
                           s.generator = [sigma](std::int64_t n) { return detail::mix_to_ground(sigma, n); };
                           return s;
                         }};
    r["lifted_sharp"] = {"Schmidt-form purification of the sharp sequence", [](const FamilyParams& p) {
                           const StateSequence base = builtin_families().at("sharp").make(p);
                           StateSequence s = lift_by_purification(base, TraceClassElement::ghz(Vector::Ones(1), 2, 1));
                           s.name = "lifted_sharp";
                           s.closed_forms["dj_H_A"] = detail::closed_form_sharp_loss(p);
                           s.closed_forms["dj_I"] = 2.0 * detail::closed_form_sharp_loss(p);
                           return s;
                         }};
    r["copy_sharp"] = {"classically correlated copies of the sharp weights", [](const FamilyParams& p) {
                         StateSequence s;
                         s.name = "copy_sharp";
                         s.n_grid = detail::grid_or(p, diagonal_grid());
                         const int m = std::max(2, p.parties);
                         s.limit = TraceClassElement::copy(RealVector::Ones(1), m, 1);
                         s.generator = [p, m](std::int64_t n) {
                           const RealVector w = detail::sharp_weights(p, n);
                           return TraceClassElement::copy(w, m, static_cast<int>(w.size()));
                         };
                         s.tags["separable"] = "true";
                         s.closed_forms["dj_H"] = detail::closed_form_sharp_loss(p);
                         return s;
                       }};
    r["ghz3_sharp"] = {"sum_k sqrt(p_k) |kkk> with sharp weights", [](const FamilyParams& p) {
                         StateSequence s;
                         s.name = "ghz3_sharp";
                         s.n_grid = detail::grid_or(p, diagonal_grid());
                         s.limit = TraceClassElement::ghz(Vector::Ones(1), 3, 1);
                         s.generator = [p](std::int64_t n) {
                           const RealVector w = detail::sharp_weights(p, n);
                           return TraceClassElement::ghz(w.cwiseSqrt().cast<cplx>(), 3, static_cast<int>(w.size()));
                         };
                         s.closed_forms["dj_H_A"] = detail::closed_form_sharp_loss(p);
                         return s;
                       }};
    r["interleaved_sharp"] = {"sharp weights on the even levels", [](const FamilyParams& p) {
                                StateSequence s;
                                s.name = "interleaved_sharp";
                                s.n_grid = detail::grid_or(p, diagonal_grid());
                                s.limit = detail::ground();
                                s.generator = [p](std::int64_t n) {
                                  const RealVector w = detail::sharp_weights(p, n);
                                  return TraceClassElement::from_diagonal(detail::interleave(w, 2, 0, 2 * w.size()));
                                };
                                s.closed_forms["dj_H"] = detail::closed_form_sharp_loss(p);
                                return s;
                              }};
    return r;
  }();
  return registry;
}

inline StateSequence make_family(const std::string& name, const FamilyParams& p = {}) {
  const auto& r = builtin_families();
  const auto it = r.find(name);
  require(it != r.end(), ErrorKind::ConfigError, "unknown sequence family '" + name + "'");
  return it->second.make(p);
}

/// Depolarizing ramp Phi_n = depolarizing(d, p0 + c/n) paired with the two-qubit-free mixing
/// sequence n^{-1} sigma + (1 - n^{-1})|0><0| on a single d-level system.
inline PairSequence depolarizing_ramp(int d, double p0, double c, std::uint64_t seed, Grid grid = {}) {
  require(p0 >= 0.0 && p0 + c / 16.0 <= 1.0, ErrorKind::ConfigError, "depolarizing ramp leaves [0, 1]");
  PairSequence s;
  s.name = "depolarizing_ramp";
  s.n_grid = grid.empty() ? dense_grid() : std::move(grid);
  const TraceClassElement sigma = detail::noise_state(seed, d, {d});
  s.generator = [=](std::int64_t n) {
    const double p = std::min(1.0, p0 + c / static_cast<double>(n));
    return ChannelStatePair{channels::depolarizing(d, p), detail::mix_to_ground(sigma, n)};
  };
  s.limit = [=] { return ChannelStatePair{channels::depolarizing(d, p0), detail::ground(d)}; };
  s.probes = {detail::ground(d), sigma};
  return s;
}

/// A fixed channel family phi(dim) applied to the sharp sequence (input dim n + 1).
inline PairSequence sharp_pair(const std::string& name, std::function<QuantumOperation(std::int64_t)> phi,
                               std::int64_t limit_dim, const FamilyParams& p = {}) {
  PairSequence s;
  s.name = name;
  s.n_grid = detail::grid_or(p, diagonal_grid());
  s.generator = [p, phi](std::int64_t n) {
    const RealVector w = detail::sharp_weights(p, n);
    return ChannelStatePair{phi(w.size()), TraceClassElement::from_diagonal(w)};
  };
  s.limit = [phi, limit_dim] {
    return ChannelStatePair{phi(limit_dim), detail::ground(static_cast<int>(limit_dim))};
  };
  s.probes = {detail::ground(static_cast<int>(limit_dim))};
  return s;
}

}  // namespace entroloss
