#include "entroloss/energy.hpp"
#include "entroloss/random.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace entroloss;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;  // sentinel distinct from the kinds tested below
}

// Partial sums of sum_k (k+1)^{-s} approach a finite value iff s > 1; returns the growth of the last doubling.
double doubling_increment(double s, int exponent) {
  double a = 0.0, b = 0.0;
  const long n = 1L << exponent;
  for (long k = 0; k < 2 * n; ++k) (k < n ? a : b) += std::pow(k + 1.0, -s);
  return b;
}

}  // namespace

TEST(Hamiltonian, Validation) {
  EXPECT_EQ(kind_of([] { Hamiltonian::table({0.0, 2.0, 1.0}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { Hamiltonian::linear(-1.0, 1.0, 4); }), ErrorKind::NotPositive);
  EXPECT_EQ(kind_of([] { Hamiltonian::table({0.0, 1.0}).level(2); }), ErrorKind::SupportEscapesTruncation);
  const auto h = Hamiltonian::logarithmic(2.0, 0.5, 8);
  EXPECT_NEAR(h.level(3), 2.0 * std::log(4.0) + 0.5, 1e-15);
  EXPECT_EQ(h.levels().size(), 8);
}

TEST(GParameter, ClosedForms) {
  EXPECT_EQ(g_parameter(Hamiltonian::logarithmic(1.0, 0.0, 4)).value(), 1.0);
  EXPECT_EQ(g_parameter(Hamiltonian::linear(0.0, 1.0, 4)).value(), 0.0);
  EXPECT_EQ(g_parameter(Hamiltonian::logarithmic(2.0, 0.0, 4)).value(), 0.5);
  EXPECT_TRUE(g_parameter(Hamiltonian::linear(1.0, 0.0, 4)).is_infinite());
  EXPECT_EQ(kind_of([] { g_parameter(Hamiltonian::table({0.0, 1.0})); }), ErrorKind::FiniteTableLaw);
}

TEST(GParameter, IntegralTestOracle) {
  // Convergent exponents shrink the doubling increment; divergent ones do not.
  EXPECT_LT(doubling_increment(1.2, 14), doubling_increment(1.2, 10));
  EXPECT_NEAR(doubling_increment(1.0, 14), std::log(2.0), 1e-4);
  EXPECT_GT(doubling_increment(0.9, 14), doubling_increment(0.9, 10));
  // E_k = 2 log(k+1): exp(-lambda E_k) = (k+1)^{-2 lambda}, critical at lambda = 0.5.
  EXPECT_NEAR(doubling_increment(2 * 0.5, 14), std::log(2.0), 1e-4);
}

TEST(Gibbs, TwoLevel) {
  const auto h = Hamiltonian::linear(0.0, 1.0, 2);
  const auto g = gibbs_state(h, 1.0, 2, 1.0);
  const double z = 1.0 + std::exp(-1.0);
  EXPECT_NEAR(g.state.diagonal_values()(0), 1.0 / z, 1e-15);
  EXPECT_NEAR(g.state.diagonal_values()(1), std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(g.log_partition, std::log(z), 1e-15);
  EXPECT_NEAR(mean_energy(g.state, h), std::exp(-1.0) / z, 1e-15);

  const auto cold = gibbs_state(Hamiltonian::table({0.0, 1.0}), 50.0, 2);
  EXPECT_GE(cold.state.diagonal_values()(0), 1.0 - 1e-6);
  EXPECT_NEAR(cold.state.diagonal_values()(1) / cold.state.diagonal_values()(0), std::exp(-50.0), 1e-30);
}

TEST(Gibbs, ZetaTail) {
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 1000);
  // The default 1e-8 relative tail needs d ~ 1e8 at lambda = 2; this truncation is refused.
  EXPECT_EQ(kind_of([&] { gibbs_state(h, 2.0, 1000); }), ErrorKind::TruncationInadequate);
  const auto g = gibbs_state(h, 2.0, 1000, 1e-3);
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  const double z = std::exp(g.log_partition);
  EXPECT_LE(z, zeta2);
  EXPECT_LE(zeta2 - z, g.tail_bound);
  EXPECT_NEAR(g.tail_bound, 1.0 / 1000.0, 1e-15);
  // Direct summation with a larger truncation meets the default tolerance.
  const auto fine = gibbs_state(Hamiltonian::logarithmic(1.0, 0.0, 1 << 26), 6.0, 1 << 20);
  double zeta6 = 0.0;
  for (int k = 200000; k >= 1; --k) zeta6 += std::pow(static_cast<double>(k), -6.0);
  EXPECT_NEAR(std::exp(fine.log_partition), zeta6, 1e-13);
}

TEST(Gibbs, LambdaBelowG) {
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 10);
  EXPECT_EQ(kind_of([&] { gibbs_state(h, 1.0, 10); }), ErrorKind::LambdaBelowG);
  EXPECT_EQ(kind_of([&] { gibbs_state(h, 0.5, 10); }), ErrorKind::LambdaBelowG);
  EXPECT_EQ(kind_of([&] { gibbs_identity_residual(TraceClassElement::from_diagonal(RealVector::Ones(1)), h, 0.9, 4); }),
            ErrorKind::LambdaBelowG);
}

TEST(GibbsIdentity, Examples) {
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 64);
  const double lambda = 1.7;
  const auto g = detail::truncated_gibbs(h, lambda, 8);
  EXPECT_LE(gibbs_identity_residual(g.state, h, lambda, 8), 1e-12);

  RealVector ground = RealVector::Zero(8);
  ground(0) = 1.0;
  EXPECT_LE(gibbs_identity_residual(TraceClassElement::from_diagonal(ground), h, lambda, 8), 1e-10);

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = TraceClassElement::from_diagonal(rng.simplex(8));
    EXPECT_LE(gibbs_identity_residual(d, h, lambda, 8), 1e-8);
    const auto dense = rng.density(4);
    EXPECT_LE(gibbs_identity_residual(dense, h, lambda, 8), 1e-8);
  }
  EXPECT_EQ(kind_of([&] { gibbs_identity_residual(rng.density(9), h, lambda, 8); }),
            ErrorKind::SupportEscapesTruncation);
}

TEST(GibbsIdentity, EntropyBoundOnEnergyShell) {
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 1 << 20);
  std::vector<GibbsState> gibbs;
  for (double lambda : {1.5, 2.0, 4.0}) gibbs.push_back(gibbs_state(h, lambda, 1 << 20, 1e-2));
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = TraceClassElement::from_diagonal(rng.simplex(16));
    const double e = mean_energy(rho, h);
    for (const auto& g : gibbs) {
      const double lambda = g.lambda;
      EXPECT_LE(von_neumann_entropy(rho), lambda * e + g.log_partition + g.tail_bound + 1e-9);
    }
  }
}

TEST(MeanEnergy, Examples) {
  const auto h = Hamiltonian::linear(0.3, 1.0, 4);
  RealVector ground = RealVector::Zero(4);
  ground(0) = 1.0;
  EXPECT_DOUBLE_EQ(mean_energy(TraceClassElement::from_diagonal(ground), h), 0.3);
  EXPECT_TRUE(in_KHE(TraceClassElement::from_diagonal(ground), h, 0.3));
  EXPECT_FALSE(in_KHE(TraceClassElement::from_diagonal(RealVector::Constant(4, 0.25)), h, 1.0));
  const auto spill = TraceClassElement::from_diagonal(RealVector::Constant(5, 0.2));
  EXPECT_EQ(kind_of([&] { mean_energy(spill, h); }), ErrorKind::SupportEscapesTruncation);
}

TEST(SharpSequence, ClosedForms) {
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, (1 << 16) + 1);
  for (int e = 4; e <= 16; e += 2) {
    const std::int64_t n = std::int64_t{1} << e;
    const auto rho = sharp_sequence(h, 1.0, n);
    ASSERT_EQ(rho.dim(), n + 1);
    EXPECT_TRUE(rho.is_diagonal());
    EXPECT_NEAR(mean_energy(rho, h), 1.0, 1e-10);

    // q_n from an independent sum of log(k+1) = log((n+1)!) via lgamma.
    const double q = n / (std::lgamma(n + 2.0));
    EXPECT_NEAR(rho.diagonal_values()(1) * n, q, 1e-10);
    RealVector ground = RealVector::Zero(n + 1);
    ground(0) = 1.0;
    EXPECT_NEAR(trace_distance(rho, TraceClassElement::from_diagonal(ground)), 2 * q, 1e-10);
    const double closed = eta(1 - q) - q * std::log(q / n);
    EXPECT_NEAR(von_neumann_entropy(rho), closed, 1e-9);
    EXPECT_NEAR(sharp_sequence_entropy(q, n), closed, 1e-12);
    EXPECT_GE(von_neumann_entropy(rho), q * std::log(static_cast<double>(n)) - 1e-12);
  }
  EXPECT_EQ(kind_of([&] { sharp_sequence(h, 1.0, 2); }), ErrorKind::QExceedsOne);
  EXPECT_EQ(kind_of([&] { sharp_sequence(h, 0.0, 64); }), ErrorKind::ConfigError);
}

TEST(SharpSequence, LinearLaw) {
  const auto h = Hamiltonian::linear(0.0, 1.0, 1 << 12);
  for (std::int64_t n : {4, 16, 256}) {
    const auto rho = sharp_sequence(h, 2.0, n);
    EXPECT_NEAR(rho.diagonal_values()(1) * n, 2.0 / ((n + 1) / 2.0), 1e-12);
    EXPECT_NEAR(mean_energy(rho, h), 2.0, 1e-10);
  }
}

TEST(RearrangementGap, Examples) {
  const auto h = Hamiltonian::linear(0.0, 1.0, 2);
  const Vector plus = Vector::Constant(2, cplx(1.0 / std::sqrt(2.0), 0.0));
  EXPECT_NEAR(energy_rearrangement_gap(TraceClassElement::from_ket(plus), h), 0.5, 1e-12);
  RealVector d(3);
  d << 0.5, 0.3, 0.2;
  EXPECT_NEAR(energy_rearrangement_gap(TraceClassElement::from_diagonal(d), Hamiltonian::linear(0, 1, 3)), 0.0, 1e-15);
}

TEST(RearrangementGap, ApproximantsMonotone) {
  Rng rng(7);
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = rng.density(4);
    const double full = energy_rearrangement_gap(rho, h);
    EXPECT_GE(full, -1e-9);
    double prev = -1e-12;
    for (int m = 0; m < 4; ++m) {
      const double f = energy_rearrangement_gap(rho, h, m);
      EXPECT_GE(f, prev - 1e-12);
      prev = f;
    }
    EXPECT_NEAR(prev, full, 1e-12);
  }
}

TEST(MixingState, EntropyGrowsWithTruncation) {
  // Constant levels: g = inf. The maximally mixed sigma on d levels drives H(rho_n) up as d grows.
  double prev = -1.0;
  for (int d : {4, 16, 64, 256}) {
    RealVector ground = RealVector::Zero(d);
    ground(0) = 1.0;
    const auto sigma = TraceClassElement::from_diagonal(RealVector::Constant(d, 1.0 / d));
    const double s = von_neumann_entropy(mixing_state(sigma, TraceClassElement::from_diagonal(ground), 8.0));
    EXPECT_GT(s, prev);
    prev = s;
  }
}
