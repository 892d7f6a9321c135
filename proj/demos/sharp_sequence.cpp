// Entropy along the sharp sequence for E_k = log(k + 1), E = 1: finite-n values against the
// asymptotic loss g(H)(E - E_0) = 1.
#include "entroloss/entroloss.hpp"

#include <cstdio>

int main() {
  using namespace entroloss;
  FamilyParams p;
  p.law = "log";
  p.energy = 1.0;
  const StateSequence s = make_family("sharp", p);
  const Hamiltonian h = Hamiltonian::logarithmic(1.0, 0.0, 1);

  std::printf("%8s %12s %12s %12s\n", "n", "q_n", "H(rho_n)", "E(rho_n)");
  for (const auto n : s.n_grid) {
    const TraceClassElement rho = s.at(n);
    const double q = 1.0 - rho.spectrum()(0);
    std::printf("%8lld %12.6f %12.6f %12.6f\n", static_cast<long long>(n), q, von_neumann_entropy(rho),
                mean_energy(rho, h.with_truncation(static_cast<int>(rho.dim()))));
  }
  const DjEstimate e = dj_estimate(s, [](const TraceClassElement& x) { return von_neumann_entropy(x); });
  std::printf("\nwindow estimate of dj H : %.6f\n", e.dj_value());
  std::printf("fitted limit            : %.6f\n", asymptotic_extrapolation(s.n_grid, e.values));
  std::printf("closed form g(H)(E-E_0) : %.6f\n", s.closed_forms.at("dj_H"));
}
