#pragma once

#include "entroloss/hamiltonian.hpp"
#include "entroloss/info.hpp"
#include "entroloss/linalg.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace entroloss {

/// Nonincreasing nonnegative spectrum.
struct DescendingSpectrum {
  RealVector values;

  static DescendingSpectrum of(const TraceClassElement& rho) {
    RealVector v = rho.spectrum(true).cwiseMax(0.0);
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return {std::move(v)};
  }

  double at(Eigen::Index k) const { return k < values.size() ? values(k) : 0.0; }
  Eigen::Index size() const { return values.size(); }
};

/// Partial-sum test lambda > mu with absolute slack; shorter vectors are zero-padded.
inline bool majorizes(const DescendingSpectrum& lambda, const DescendingSpectrum& mu) {
  const Eigen::Index n = std::max(lambda.size(), mu.size());
  double sl = 0.0;
  double sm = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sl += lambda.at(k);
    sm += mu.at(k);
    if (sl < sm - tol::majorization) return false;
  }
  return true;
}

inline bool majorizes(const TraceClassElement& rho, const TraceClassElement& sigma) {
  require(rho.dim() == sigma.dim(), ErrorKind::DimensionMismatch, "majorization of elements with different dims");
  return majorizes(DescendingSpectrum::of(rho), DescendingSpectrum::of(sigma));
}

struct EntropyGap {
  double d_term = 0.0;  // classical relative entropy of the sorted spectra
  double f_term = 0.0;  // sum (mu_k - lambda_k)(-log mu_k)
};

/// H(sigma) = H(rho) + D(rho_sorted || sigma_sorted) + f for rho > sigma.
inline EntropyGap entropy_gap_decomposition(const TraceClassElement& rho, const TraceClassElement& sigma) {
  require(rho.dim() == sigma.dim(), ErrorKind::DimensionMismatch, "entropy gap of elements with different dims");
  const auto lam = DescendingSpectrum::of(rho);
  const auto mu = DescendingSpectrum::of(sigma);
  require(majorizes(lam, mu), ErrorKind::NotMajorized, "first argument does not majorize the second");
  EntropyGap g;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double l = lam.at(k);
    const double m = mu.at(k);
    if (m <= 0.0) continue;  // then l = 0 as well, up to the majorization slack
    if (l > 0.0) g.d_term += l * std::log(l / m);
    g.f_term += (m - l) * (-std::log(m));
  }
  const double lhs = von_neumann_entropy(sigma);
  const double rhs = von_neumann_entropy(rho) + g.d_term + g.f_term;
  require(std::abs(lhs - rhs) <= 1e-8, ErrorKind::NumericalInconsistency,
          "entropy gap identity residual " + std::to_string(std::abs(lhs - rhs)));
  return g;
}

/// f_n = sum (mu_k - lambda_k) min(n, -log mu_k); nondecreasing in n with limit f.
inline double f_gap_approximant(const TraceClassElement& rho, const TraceClassElement& sigma, double n) {
  require(rho.dim() == sigma.dim(), ErrorKind::DimensionMismatch, "entropy gap of elements with different dims");
  const auto lam = DescendingSpectrum::of(rho);
  const auto mu = DescendingSpectrum::of(sigma);
  require(majorizes(lam, mu), ErrorKind::NotMajorized, "first argument does not majorize the second");
  double f = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    const double m = mu.at(k);
    if (m <= 0.0) continue;
    f += (m - lam.at(k)) * std::min(n, -std::log(m));
  }
  return f;
}

/// Lemma-style weighted comparison: sum lambda_k h_k <= sum mu_k h_k for nondecreasing h >= 0.
inline bool weighted_sums_ordered(const RealVector& lambda, const RealVector& mu, const RealVector& h,
                                  double slack = 1e-9) {
  double a = 0.0, b = 0.0;
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    a += (k < lambda.size() ? lambda(k) : 0.0) * h(k);
    b += (k < mu.size() ? mu(k) : 0.0) * h(k);
  }
  return a <= b + slack;
}

/// Spectrum of rho placed in descending order along the ascending energy levels of h.
inline TraceClassElement rearrangement(const TraceClassElement& rho, const Hamiltonian& h) {
  const std::int64_t d = std::max<std::int64_t>(rho.dim(), h.truncation_dim());
  const auto lam = DescendingSpectrum::of(rho);
  RealVector v = RealVector::Zero(d);
  v.head(lam.size()) = lam.values;
  return TraceClassElement::from_diagonal(std::move(v));
}

/// Product-state decomposition sum_i p_i alpha_i (x) beta_i.
struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<TraceClassElement> a_states;
  std::vector<TraceClassElement> b_states;

  TraceClassElement state() const {
    require(!weights.empty() && weights.size() == a_states.size() && weights.size() == b_states.size(),
            ErrorKind::InconsistentEnsemble, "separable decomposition sizes differ");
    std::vector<TraceClassElement> members;
    members.reserve(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) members.push_back(tensor(a_states[i], b_states[i]));
    return Ensemble(weights, std::move(members)).average();
  }
};

/// Whether both marginals majorize the bipartite state (zero-padded spectra).
inline bool marginals_majorize(const TraceClassElement& w) {
  require_parts(w, 2, "marginal majorization");
  const auto joint = DescendingSpectrum::of(w);
  return majorizes(DescendingSpectrum::of(partial_trace(w, {0})), joint) &&
         majorizes(DescendingSpectrum::of(partial_trace(w, {1})), joint);
}

inline bool separable_majorization_check(const SeparableDecomposition& s) { return marginals_majorize(s.state()); }

}  // namespace entroloss
