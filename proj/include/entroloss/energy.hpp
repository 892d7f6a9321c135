#pragma once

#include "entroloss/hamiltonian.hpp"
#include "entroloss/info.hpp"
#include "entroloss/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entroloss {

/// inf{lambda > 0 : Tr exp(-lambda H) < inf}, from the level law.
inline ExtendedReal g_parameter(const Hamiltonian& h) {
  switch (h.law()) {
    case Hamiltonian::Law::log:
      if (h.coefficient() == 0.0) return ExtendedReal::infinity();
      return 1.0 / h.coefficient();
    case Hamiltonian::Law::linear:
      if (h.coefficient() == 0.0) return ExtendedReal::infinity();
      return 0.0;
    case Hamiltonian::Law::table:
      fail(ErrorKind::FiniteTableLaw, "g is not defined for an explicit finite table");
  }
  return 0.0;
}

struct GibbsState {
  double lambda = 0.0;
  DensityState state;
  double log_partition = 0.0;
  /// Upper bound on sum_{k >= d} exp(-lambda E_k).
  double tail_bound = 0.0;
};

namespace detail {

// Integral-test bound on the discarded part of the partition sum.
inline double gibbs_tail_bound(const Hamiltonian& h, double lambda, std::int64_t d) {
  switch (h.law()) {
    case Hamiltonian::Law::log: {
      const double s = lambda * h.coefficient();
      if (s <= 1.0) return std::numeric_limits<double>::infinity();
      // sum_{k>=d} (k+1)^{-s} <= int_d^inf x^{-s} dx
      return std::exp(-lambda * h.offset()) * std::pow(static_cast<double>(d), 1.0 - s) / (s - 1.0);
    }
    case Hamiltonian::Law::linear: {
      const double r = lambda * h.coefficient();
      if (r <= 0.0) return std::numeric_limits<double>::infinity();
      return std::exp(-lambda * h.level(d)) / -std::expm1(-r);
    }
    case Hamiltonian::Law::table: return 0.0;
  }
  return 0.0;
}

inline void require_lambda_above_g(const Hamiltonian& h, double lambda) {
  require(lambda > 0.0, ErrorKind::LambdaBelowG, "lambda must be positive");
  if (!h.parametric()) return;
  const ExtendedReal g = g_parameter(h);
  require(g.is_finite() && lambda > g.value(), ErrorKind::LambdaBelowG,
          "lambda " + std::to_string(lambda) + " is not above g(H) = " + g.to_string());
}

inline GibbsState truncated_gibbs(const Hamiltonian& h, double lambda, std::int64_t d) {
  require(d >= 1, ErrorKind::DimensionMismatch, "truncation must be >= 1");
  require(d <= limits().max_structured_dim, ErrorKind::DimensionOverflow, "truncation above the structured cap");
  const RealVector e = h.levels(d);
  const double e0 = e.minCoeff();
  RealVector w = (-lambda * (e.array() - e0)).exp().matrix();
  const double z = w.sum();
  GibbsState g;
  g.lambda = lambda;
  g.log_partition = std::log(z) - lambda * e0;
  g.state = DensityState(TraceClassElement::from_diagonal(w / z), 1e-12);
  return g;
}

}  // namespace detail

/// Gibbs state truncated to d levels. Refuses when the discarded tail exceeds tail_tolerance of Z.
inline GibbsState gibbs_state(const Hamiltonian& h, double lambda, std::int64_t d, double tail_tolerance = 1e-8) {
  detail::require_lambda_above_g(h, lambda);
  if (!h.parametric())
    require(d <= h.truncation_dim(), ErrorKind::SupportEscapesTruncation, "truncation beyond the level table");
  GibbsState g = detail::truncated_gibbs(h, lambda, d);
  g.tail_bound = h.parametric() ? detail::gibbs_tail_bound(h, lambda, d)
                                : (h.levels().tail(h.truncation_dim() - d).array() * -lambda).exp().sum();
  const double z = std::exp(g.log_partition);
  require(g.tail_bound <= tail_tolerance * z, ErrorKind::TruncationInadequate,
          "tail bound " + std::to_string(g.tail_bound) + " exceeds " + std::to_string(tail_tolerance) +
              " of the partition sum " + std::to_string(z));
  return g;
}

namespace detail {

// Diagonal of rho over the flat computational basis.
inline RealVector flat_diagonal(const TraceClassElement& rho) {
  using F = TraceClassElement::Form;
  switch (rho.form()) {
    case F::copy: return rho.flat_copy_diagonal();
    case F::ghz: return rho.ghz_ket().cwiseAbs2();
    default: return computational_weights(rho);
  }
}

inline RealVector levels_for(const TraceClassElement& rho, const Hamiltonian& h) {
  const RealVector p = flat_diagonal(rho);
  const std::int64_t d = h.truncation_dim();
  if (p.size() > d) {
    const double outside = p.tail(p.size() - d).sum();
    require(outside <= tol::support_violation, ErrorKind::SupportEscapesTruncation,
            "state has weight " + std::to_string(outside) + " beyond the truncation");
  }
  return h.levels(std::min<std::int64_t>(p.size(), d));
}

}  // namespace detail

/// Tr H rho over the truncation.
inline double mean_energy(const TraceClassElement& rho, const Hamiltonian& h) {
  const RealVector p = detail::flat_diagonal(rho);
  const RealVector e = detail::levels_for(rho, h);
  return p.head(e.size()).dot(e);
}

inline bool in_KHE(const TraceClassElement& rho, const Hamiltonian& h, double energy) {
  return mean_energy(rho, h) <= energy + 1e-10;
}

/// |H(rho) + D(rho || sigma_lambda) - lambda Tr H rho - log Z| over a d-level truncation.
inline double gibbs_identity_residual(const TraceClassElement& rho, const Hamiltonian& h, double lambda,
                                      std::int64_t d) {
  detail::require_lambda_above_g(h, lambda);
  require(rho.dim() <= d, ErrorKind::SupportEscapesTruncation,
          "state dimension " + std::to_string(rho.dim()) + " exceeds truncation " + std::to_string(d));
  const GibbsState g = detail::truncated_gibbs(h.with_truncation(static_cast<int>(std::max<std::int64_t>(d, 1))),
                                                lambda, d);
  const TraceClassElement rho_d = rho.dim() == d ? rho.with_dims({static_cast<int>(d)})
                                                 : embed(rho.with_dims({static_cast<int>(rho.dim())}),
                                                         {static_cast<int>(d)});
  const ExtendedReal rel = relative_entropy(rho_d, g.state);
  require(rel.is_finite(), ErrorKind::NumericalInconsistency, "relative entropy to a full-rank Gibbs state is +inf");
  const double lhs = von_neumann_entropy(rho) + rel.value();
  const double rhs = lambda * mean_energy(rho_d, h.with_truncation(static_cast<int>(d))) + g.log_partition;
  return std::abs(lhs - rhs);
}

/// Weight q_n moved from the ground level to the uniform mixture of levels 1..n.
inline double sharp_weight(const Hamiltonian& h, double energy, std::int64_t n) {
  require(n >= 1, ErrorKind::ConfigError, "sharp sequence needs n >= 1");
  const double e0 = h.ground_energy();
  require(energy > e0, ErrorKind::ConfigError, "energy must exceed the ground energy");
  long double sum = 0.0L;
  for (std::int64_t k = 1; k <= n; ++k) sum += h.level(k);
  const double mean = static_cast<double>(sum / static_cast<long double>(n));
  require(mean > e0, ErrorKind::QExceedsOne, "levels 1..n are degenerate with the ground level");
  const double q = (energy - e0) / (mean - e0);
  require(q <= 1.0, ErrorKind::QExceedsOne, "q_n = " + std::to_string(q) + " > 1 for n = " + std::to_string(n));
  return q;
}

/// rho_n = (1 - q_n)|0><0| + (q_n / n) sum_{k=1..n} |k><k| with Tr H rho_n = E.
inline DensityState sharp_sequence(const Hamiltonian& h, double energy, std::int64_t n) {
  require(n + 1 <= limits().max_structured_dim, ErrorKind::DimensionOverflow, "sharp sequence above structured cap");
  const double q = sharp_weight(h, energy, n);
  RealVector v = RealVector::Constant(n + 1, q / static_cast<double>(n));
  v(0) = 1.0 - q;
  return DensityState(TraceClassElement::from_diagonal(std::move(v)), 1e-10);
}

/// Closed-form entropy of the two-valued sharp-sequence spectrum.
inline double sharp_sequence_entropy(double q, std::int64_t n) {
  return eta(1.0 - q) + (q > 0.0 ? -q * std::log(q / static_cast<double>(n)) : 0.0);
}

/// Tr H_m (rho - rho_rearranged) with levels capped at E_m; m < 0 leaves the levels uncapped.
inline double energy_rearrangement_gap(const TraceClassElement& rho, const Hamiltonian& h, std::int64_t m = -1) {
  const TraceClassElement down = rearrangement(rho, h);
  RealVector p = detail::flat_diagonal(rho);
  RealVector e = detail::levels_for(rho, h);
  const RealVector& pd = down.diagonal_values();
  if (m >= 0) e = e.cwiseMin(h.level(m));
  const Eigen::Index n = e.size();
  const double up = p.head(n).dot(e);
  const double lo = pd.head(std::min<Eigen::Index>(n, pd.size())).dot(e.head(std::min<Eigen::Index>(n, pd.size())));
  return up - lo;
}

/// n^{-1} sigma + (1 - n^{-1}) rho0, the mixing sequence used for the g = inf divergence demonstration.
inline DensityState mixing_state(const TraceClassElement& sigma, const TraceClassElement& rho0, double n) {
  require(sigma.dim() == rho0.dim(), ErrorKind::DimensionMismatch, "mixing states of different dims");
  require(n >= 1.0, ErrorKind::ConfigError, "mixing index must be >= 1");
  return DensityState(Ensemble({1.0 / n, 1.0 - 1.0 / n}, {sigma, rho0}).average(), 1e-9);
}

}  // namespace entroloss
