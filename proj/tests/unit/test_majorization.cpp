#include "entroloss/majorization.hpp"
#include "entroloss/random.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace entroloss;

namespace {

TraceClassElement diag(std::initializer_list<double> v, Dims dims = {}) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return TraceClassElement::from_diagonal(d, std::move(dims));
}

RealVector sorted_desc(RealVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

RealVector oracle_spectrum(const TraceClassElement& t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.dense(), Eigen::EigenvaluesOnly);
  return sorted_desc(es.eigenvalues().cwiseMax(0.0));
}

double oracle_shannon(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0) s -= p(i) * std::log(p(i));
  return s;
}

// Mixture of random permutations: a doubly stochastic image is majorized by its preimage.
RealVector doubly_stochastic_image(const RealVector& p, Rng& rng, int terms = 4) {
  const RealVector w = rng.simplex(terms);
  RealVector out = RealVector::Zero(p.size());
  std::vector<int> perm(static_cast<size_t>(p.size()));
  for (int t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    for (Eigen::Index i = 0; i < p.size(); ++i) out(perm[static_cast<size_t>(i)]) += w(t) * p(i);
  }
  return out;
}

// sigma = sum_t w_t U_t rho U_t^*, majorized by rho.
TraceClassElement unitary_mixture(const TraceClassElement& rho, Rng& rng, int terms = 3) {
  const RealVector w = rng.simplex(terms);
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (int t = 0; t < terms; ++t) {
    const Matrix u = rng.haar_unitary(rho.dim());
    out += w(t) * u * rho.dense() * u.adjoint();
  }
  return TraceClassElement::trusted_dense(out);
}

}  // namespace

TEST(Majorizes, SpecExamples) {
  EXPECT_FALSE(majorizes(diag({0.5, 0.3, 0.2}), diag({0.6, 0.2, 0.2})));
  EXPECT_TRUE(majorizes(diag({0.6, 0.2, 0.2}), diag({0.5, 0.3, 0.2})));
  Rng rng(3);
  for (int n : {2, 3, 5}) {
    const auto rho = rng.density(n);
    EXPECT_TRUE(majorizes(rng.pure_state(n), rho));
    EXPECT_TRUE(majorizes(rho, TraceClassElement::from_diagonal(RealVector::Constant(n, 1.0 / n))));
  }
}

TEST(Majorizes, TiesAndDimensionMismatch) {
  EXPECT_TRUE(majorizes(diag({0.5, 0.5}), diag({0.5, 0.5})));
  EXPECT_TRUE(majorizes(diag({0.5, 0.5 - 5e-11, 5e-11}), diag({0.5, 0.5, 0.0})));
  try {
    majorizes(diag({1.0, 0.0}), diag({1.0, 0.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Majorizes, DoublyStochasticImages) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 6;
    const RealVector p = rng.simplex(n);
    const RealVector q = doubly_stochastic_image(p, rng);
    const auto rp = TraceClassElement::from_diagonal(p);
    const auto rq = TraceClassElement::from_diagonal(q);
    EXPECT_TRUE(majorizes(rp, rq));
    EXPECT_LE(oracle_shannon(p), oracle_shannon(q) + 1e-9);
  }
}

TEST(Majorizes, RankMonotone) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 3;
    const auto rho = rng.density(n, 1 + trial % n);
    const auto sigma = unitary_mixture(rho, rng);
    ASSERT_TRUE(majorizes(rho, sigma));
    const auto count = [](const RealVector& v) { return (v.array() > 1e-9).count(); };
    EXPECT_LE(count(oracle_spectrum(rho)), count(oracle_spectrum(sigma)));
  }
}

TEST(EntropyGap, Examples) {
  const auto g0 = entropy_gap_decomposition(diag({0.7, 0.3}), diag({0.3, 0.7}));
  EXPECT_NEAR(g0.d_term, 0.0, 1e-14);
  EXPECT_NEAR(g0.f_term, 0.0, 1e-14);

  const auto g = entropy_gap_decomposition(diag({1.0, 0.0}), diag({0.5, 0.5}));
  EXPECT_NEAR(g.d_term, std::log(2.0), 1e-14);
  EXPECT_NEAR(g.f_term, 0.0, 1e-14);

  try {
    entropy_gap_decomposition(diag({0.5, 0.5}), diag({1.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMajorized);
  }
}

TEST(EntropyGap, RandomPairsBothSides) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const auto rho = rng.density(n, 1 + trial % n);
    const auto sigma = unitary_mixture(rho, rng);
    const auto g = entropy_gap_decomposition(rho, sigma);
    const RealVector lam = oracle_spectrum(rho);
    const RealVector mu = oracle_spectrum(sigma);
    double d = 0.0, f = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (lam(k) > 1e-15) d += lam(k) * std::log(lam(k) / mu(k));
      if (mu(k) > 1e-15) f -= (mu(k) - lam(k)) * std::log(mu(k));
    }
    EXPECT_NEAR(g.d_term, d, 1e-8);
    EXPECT_NEAR(g.f_term, f, 1e-8);
    EXPECT_GE(g.d_term, -1e-10);
    EXPECT_GE(g.f_term, -1e-10);
    EXPECT_NEAR(oracle_shannon(mu), oracle_shannon(lam) + d + f, 1e-8);
  }
}

TEST(EntropyGap, PinskerConsequence) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const RealVector p = rng.simplex(n);
    const RealVector q = doubly_stochastic_image(p, rng);
    const double gap = oracle_shannon(q) - oracle_shannon(p);
    const double l1 = (sorted_desc(q) - sorted_desc(p)).cwiseAbs().sum();
    const auto g = entropy_gap_decomposition(TraceClassElement::from_diagonal(p), TraceClassElement::from_diagonal(q));
    EXPECT_GE(gap, g.d_term - 1e-8);
    EXPECT_GE(g.d_term, 0.5 * l1 * l1 - 1e-8);
  }
}

TEST(FGapApproximants, MonotoneAndConvergent) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const RealVector p = rng.simplex(n);
    const auto rp = TraceClassElement::from_diagonal(p);
    const auto rq = TraceClassElement::from_diagonal(doubly_stochastic_image(p, rng));
    EXPECT_EQ(f_gap_approximant(rp, rq, 0.0), 0.0);
    double prev = 0.0;
    for (int m = 1; m <= 20; ++m) {
      const double f = f_gap_approximant(rp, rq, m);
      EXPECT_GE(f, prev - 1e-12);
      prev = f;
    }
    EXPECT_NEAR(f_gap_approximant(rp, rq, 1e300), entropy_gap_decomposition(rp, rq).f_term, 1e-12);
  }
}

TEST(WeightedSums, LemmaOnRandomPairs) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 6;
    const RealVector lam = sorted_desc(rng.simplex(n));
    const RealVector mu = sorted_desc(doubly_stochastic_image(lam, rng));
    RealVector h(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) h(k) = (acc += rng.uniform());
    EXPECT_TRUE(weighted_sums_ordered(lam, mu, h));
  }
  // Reversed order fails for a strictly increasing weight.
  RealVector h(2);
  h << 0.0, 1.0;
  RealVector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.5, 0.5;
  EXPECT_FALSE(weighted_sums_ordered(b, a, h));
}

TEST(Rearrangement, Examples) {
  const auto h = Hamiltonian::linear(0.0, 1.0, 2);
  const Vector plus = Vector::Constant(2, cplx(1.0 / std::sqrt(2.0), 0.0));
  const auto r = rearrangement(TraceClassElement::from_ket(plus), h);
  EXPECT_NEAR(r.diagonal_values()(0), 1.0, 1e-12);
  EXPECT_NEAR(r.diagonal_values()(1), 0.0, 1e-12);

  const auto already = diag({0.6, 0.3, 0.1});
  const auto r2 = rearrangement(already, Hamiltonian::linear(0.0, 1.0, 3));
  EXPECT_EQ(r2.diagonal_values(), already.diagonal_values());
}

TEST(Rearrangement, EnergyAndEntropy) {
  Rng rng(51);
  const auto h = Hamiltonian::logarithmic(1.0, 0.0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = rng.density(3);
    const auto r = rearrangement(rho, h);
    const Matrix m = rho.dense();
    double e_rho = 0.0, e_r = 0.0;
    for (int k = 0; k < 3; ++k) {
      e_rho += std::log(k + 1.0) * m(k, k).real();
      e_r += std::log(k + 1.0) * r.diagonal_values()(k);
    }
    EXPECT_LE(e_r, e_rho + 1e-9);
    EXPECT_NEAR(oracle_shannon(r.diagonal_values()), oracle_shannon(oracle_spectrum(rho)), 1e-10);
  }
}

TEST(Separable, MarginalsMajorizeJoint) {
  Rng rng(61);
  SeparableDecomposition prod{{1.0}, {rng.density(2)}, {rng.density(3)}};
  EXPECT_TRUE(separable_majorization_check(prod));

  SeparableDecomposition cc{{0.3, 0.7}, {diag({1, 0}), diag({0, 1})}, {diag({1, 0}), diag({0, 1})}};
  EXPECT_TRUE(separable_majorization_check(cc));

  for (int trial = 0; trial < 50; ++trial) {
    SeparableDecomposition s;
    const RealVector w = rng.simplex(4);
    for (int i = 0; i < 4; ++i) {
      s.weights.push_back(w(i));
      s.a_states.push_back(rng.density(2, 1));
      s.b_states.push_back(rng.density(3, 1 + i % 3));
    }
    EXPECT_TRUE(separable_majorization_check(s));
  }

  Vector b = Vector::Zero(4);
  b(0) = b(3) = 1.0 / std::sqrt(2.0);
  EXPECT_FALSE(marginals_majorize(TraceClassElement::from_ket(b, {2, 2})));
}
