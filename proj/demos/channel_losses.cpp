// Output, input and environment entropy losses for a few channel/state sequences.
#include "entroloss/entroloss.hpp"

#include <cstdio>

int main() {
  using namespace entroloss;
  FamilyParams p;
  const std::vector<PairSequence> pairs{
      sharp_pair("identity", [](std::int64_t d) { return channels::identity(static_cast<int>(d)); }, 1, p),
      sharp_pair("ladder_damping", [](std::int64_t d) { return channels::ladder_damping(d, 0.5); }, 2, p),
      sharp_pair("shift_mixture", [](std::int64_t d) { return channels::shift_mixture(d, 0.3); }, 2, p),
      depolarizing_ramp(2, 0.5, 1.0, 7, dense_grid())};

  std::printf("%-16s %10s %10s %10s %10s\n", "pair", "dj H", "dj H_Phi", "dj H_env", "dj I_c");
  for (const auto& s : pairs) {
    const auto dj = [&](const PairFunctional& f) { return dj_estimate(s, f).dj_value(); };
    std::printf("%-16s %10.5f %10.5f %10.5f %10.5f\n", s.name.c_str(),
                dj([](const QuantumOperation&, const TraceClassElement& x) { return von_neumann_entropy(x); }),
                dj([](const QuantumOperation& phi, const TraceClassElement& x) { return output_entropy(phi, x); }),
                dj([](const QuantumOperation& phi, const TraceClassElement& x) { return entropy_exchange(phi, x); }),
                dj([](const QuantumOperation& phi, const TraceClassElement& x) {
                  return coherent_information(phi, x);
                }));
  }
}
