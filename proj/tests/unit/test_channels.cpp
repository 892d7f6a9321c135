#include "entroloss/channels.hpp"
#include "entroloss/random.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <chrono>

using namespace entroloss;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ConfigError;
}

double oracle_entropy(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0, t = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = std::max(0.0, es.eigenvalues()(i));
    if (x > 0) s -= x * std::log(x);
    t += x;
  }
  return s + (t > 0 ? t * std::log(t) : 0.0);
}

int oracle_rank(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return static_cast<int>((es.eigenvalues().array() > 1e-10 * top).count());
}

Matrix oracle_apply(const std::vector<Matrix>& ks, const Matrix& r) {
  Matrix out = Matrix::Zero(ks[0].rows(), ks[0].rows());
  for (const auto& k : ks) out += k * r * k.adjoint();
  return out;
}

// Environment output from the Stinespring state by an explicit index loop over the output factor.
Matrix oracle_env(const Matrix& v, const Matrix& r, int dout, int m) {
  const Matrix w = v * r * v.adjoint();
  Matrix e = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l)
      for (int b = 0; b < dout; ++b) e(j, l) += w(b * m + j, b * m + l);
  return e;
}

Matrix oracle_out(const Matrix& v, const Matrix& r, int dout, int m) {
  const Matrix w = v * r * v.adjoint();
  Matrix o = Matrix::Zero(dout, dout);
  for (int b = 0; b < dout; ++b)
    for (int bp = 0; bp < dout; ++bp)
      for (int j = 0; j < m; ++j) o(b, bp) += w(b * m + j, bp * m + j);
  return o;
}

// Choi matrix sum_{ij} Phi(|i><j|) (x) |i><j|.
Matrix oracle_choi(const std::vector<Matrix>& ks) {
  const auto din = ks[0].cols();
  const auto dout = ks[0].rows();
  Matrix c = Matrix::Zero(dout * din, dout * din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index j = 0; j < din; ++j) {
      Matrix eij = Matrix::Zero(din, din);
      eij(i, j) = 1.0;
      const Matrix out = oracle_apply(ks, eij);
      for (Eigen::Index b = 0; b < dout; ++b)
        for (Eigen::Index bp = 0; bp < dout; ++bp) c(b * din + i, bp * din + j) = out(b, bp);
    }
  return c;
}

// Random channel from a Haar isometry split into m Kraus blocks.
QuantumOperation random_channel(Rng& rng, int din, int dout, int m) {
  const Matrix v = rng.haar_isometry(dout * m, din);
  std::vector<Matrix> ks;
  for (int j = 0; j < m; ++j) {
    Matrix k(dout, din);
    for (int b = 0; b < dout; ++b) k.row(b) = v.row(b * m + j);
    ks.push_back(k);
  }
  return channels::custom(ks);
}

RealVector sorted_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST(Apply, Examples) {
  Rng rng(1);
  const auto rho = rng.density(3);
  EXPECT_LE((channels::identity(3).apply(rho).dense() - rho.dense()).cwiseAbs().maxCoeff(), 1e-15);

  const auto dep = channels::depolarizing(2, 1.0);
  for (int t = 0; t < 10; ++t)
    EXPECT_LE((dep.apply(rng.density(2)).dense() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);

  const Vector plus = Vector::Constant(2, cplx(1.0 / std::sqrt(2.0), 0.0));
  const auto out = channels::dephasing(2, 1.0).apply(TraceClassElement::from_ket(plus));
  EXPECT_LE((out.dense() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);

  EXPECT_EQ(kind_of([&] { dep.apply(rng.density(3)); }), ErrorKind::DimensionMismatch);
}

TEST(Apply, DenseMatchesKrausOracleAndPreservesTrace) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto phi = random_channel(rng, 3, 2, 3);
    EXPECT_TRUE(phi.trace_preserving());
    const auto rho = rng.density(3);
    const Matrix o = oracle_apply(phi.dense_kraus(), rho.dense());
    const auto out = phi.apply(rho);
    EXPECT_LE((out.dense() - o).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(out.trace(), 1.0, 1e-12);
    EXPECT_GE(sorted_spectrum(out.dense()).minCoeff(), -1e-12);
  }
}

TEST(Apply, MonomialFastPathMatchesDense) {
  Rng rng(3);
  const std::vector<QuantumOperation> ops = {channels::dephasing(5, 0.4), channels::ladder_damping(5, 0.7),
                                             channels::shift_mixture(5, 0.3),
                                             channels::permutation_unitary({2, 0, 4, 1, 3}, {0.1, 0.2, 0.3, 0.4, 0.5})};
  for (const auto& phi : ops) {
    ASSERT_TRUE(phi.all_monomial());
    EXPECT_TRUE(phi.trace_preserving());
    for (int t = 0; t < 10; ++t) {
      const auto p = TraceClassElement::from_diagonal(rng.simplex(5));
      const auto fast = phi.apply(p);
      EXPECT_TRUE(fast.is_diagonal());
      EXPECT_LE((fast.dense() - oracle_apply(phi.dense_kraus(), p.dense())).cwiseAbs().maxCoeff(), 1e-14);
      const Matrix v = stinespring(phi).isometry;
      const Matrix env = oracle_env(v, p.dense(), 5, phi.kraus_count());
      EXPECT_LE((complementary_output(phi, p).dense() - env).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Validation, Errors) {
  EXPECT_EQ(kind_of([] { channels::custom({Matrix::Identity(2, 2) * 1.1}); }), ErrorKind::NotAChannel);
  Matrix u = Matrix::Identity(2, 2);
  u(0, 1) = 0.5;
  EXPECT_EQ(kind_of([&] { channels::unitary(u); }), ErrorKind::NotUnitary);
  EXPECT_EQ(kind_of([] { channels::permutation_unitary({0, 0}, {0, 0}); }), ErrorKind::NotUnitary);
  const std::vector<Matrix> bad = {0.5 * Matrix::Identity(2, 2), 0.4 * Matrix::Identity(2, 2)};
  const std::vector<TraceClassElement> preps = {TraceClassElement::from_diagonal(RealVector::Unit(2, 0)),
                                                TraceClassElement::from_diagonal(RealVector::Unit(2, 1))};
  EXPECT_EQ(kind_of([&] { channels::measure_prepare(bad, preps); }), ErrorKind::InvalidPOVM);

  // A monomial operation that overlaps two columns on one row: sum K^*K has eigenvalue 2.
  EXPECT_EQ(kind_of([] { QuantumOperation({KrausOperator::monomial(1, {0, 0}, {1.0, 1.0})}, {2}, {1}); }),
            ErrorKind::NotAChannel);
  const QuantumOperation half({KrausOperator::monomial(2, {0, 1}, {std::sqrt(0.5), std::sqrt(0.5)})});
  EXPECT_FALSE(half.trace_preserving());
  EXPECT_EQ(kind_of([&] { coherent_information(half, TraceClassElement::from_diagonal(RealVector::Unit(2, 0))); }),
            ErrorKind::NotAChannel);
}

TEST(Stinespring, IsometryAndMarginals) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = random_channel(rng, 2, 3, 2);
    const auto st = stinespring(phi);
    EXPECT_EQ(st.env_dim, 2);
    EXPECT_LE((st.isometry.adjoint() * st.isometry - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
    const auto rho = rng.density(2);
    EXPECT_LE((oracle_out(st.isometry, rho.dense(), 3, 2) - phi.apply(rho).dense()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Complementary, Examples) {
  Rng rng(5);
  const auto id = channels::identity(3);
  const auto rho = rng.density(3);
  EXPECT_EQ(complementary_output(id, rho).dim(), 1);
  EXPECT_NEAR(entropy_exchange(id, rho), 0.0, 1e-14);

  // Full qubit dephasing: env spectrum equals the diagonal of rho (basis-independent comparison).
  const auto deph = channels::dephasing(2, 1.0);
  EXPECT_EQ(stinespring(deph).env_dim, 2);
  const auto q = rng.density(2);
  RealVector diag = q.dense().diagonal().real();
  std::sort(diag.data(), diag.data() + 2);
  EXPECT_LE((sorted_spectrum(complementary_output(deph, q).dense()) - diag).cwiseAbs().maxCoeff(), 1e-12);

  // Partial trace AB -> A: environment entropy equals H(omega_B) on pure probes.
  const auto tr = channels::partial_trace(2, 3);
  for (int t = 0; t < 10; ++t) {
    const auto w = rng.pure_state(6, {2, 3});
    EXPECT_NEAR(entropy_exchange(tr, w), oracle_entropy(partial_trace(w, {1}).dense()), 1e-10);
  }
}

TEST(Complementary, DoubleComplementaryEntropy) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = random_channel(rng, 2, 2, 2);
    const auto cc = complementary(complementary(phi));
    for (int t = 0; t < 5; ++t) {
      const auto rho = rng.density(2);
      EXPECT_NEAR(output_entropy(cc, rho), output_entropy(phi, rho), 1e-10);
      EXPECT_NEAR(output_entropy(complementary(phi), rho), entropy_exchange(phi, rho), 1e-10);
    }
  }
}

TEST(ChoiRank, AgainstChoiSpectrum) {
  EXPECT_EQ(choi_rank(channels::identity(3)), 1);
  EXPECT_EQ(choi_rank(channels::depolarizing(2, 1.0)), 4);
  EXPECT_EQ(choi_rank(channels::dephasing(2, 1.0)), 2);
  EXPECT_EQ(choi_rank(channels::ladder_damping(4, 0.5)), 2);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 4;
    const auto phi = random_channel(rng, 2, 2, m);
    EXPECT_EQ(choi_rank(phi), oracle_rank(oracle_choi(phi.dense_kraus())));
  }
  for (double p : {0.0, 0.3, 1.0}) {
    const auto dep = channels::depolarizing(3, p);
    EXPECT_EQ(choi_rank(dep), oracle_rank(oracle_choi(dep.dense_kraus())));
  }
}

TEST(OutputEntropy, Examples) {
  Rng rng(8);
  const auto rho = rng.density(2);
  EXPECT_NEAR(output_entropy(channels::depolarizing(2, 1.0), rho), std::log(2.0), 1e-12);
  EXPECT_NEAR(output_entropy(channels::identity(2), rho), oracle_entropy(rho.dense()), 1e-12);
  const Matrix u = rng.haar_unitary(2);
  const auto half = channels::custom({std::sqrt(0.5) * u});
  EXPECT_NEAR(output_entropy(half, rho), 0.5 * oracle_entropy(rho.dense()), 1e-12);
}

TEST(Ext2, Residual) {
  Rng rng(9);
  EXPECT_LE(ext2_residual(channels::identity(2), rng.pure_state(2)), 1e-12);
  for (int trial = 0; trial < 50; ++trial) {
    EXPECT_LE(ext2_residual(channels::dephasing(2, rng.uniform()), rng.density(2)), 1e-8);
    EXPECT_LE(ext2_residual(random_channel(rng, 2, 2, 3), rng.density(2)), 1e-8);
  }
}

TEST(ChannelMutualInformation, Examples) {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = rng.density(3, 1 + trial % 3);
    EXPECT_NEAR(channel_mutual_information(channels::identity(3), rho), 2 * oracle_entropy(rho.dense()), 1e-9);
    EXPECT_NEAR(channel_mutual_information(channels::depolarizing(3, 1.0), rho), 0.0, 1e-9);
  }
}

TEST(ChannelMutualInformation, IdentityFormOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto phi = random_channel(rng, 3, 2, 2);
    const auto rho = rng.density(3);
    const auto st = stinespring(phi);
    const double h = oracle_entropy(rho.dense());
    const double hb = oracle_entropy(oracle_out(st.isometry, rho.dense(), 2, 2));
    const double he = oracle_entropy(oracle_env(st.isometry, rho.dense(), 2, 2));
    EXPECT_NEAR(channel_mutual_information(phi, rho), h + hb - he, 1e-8);
    EXPECT_NEAR(coherent_information(phi, rho), hb - he, 1e-8);
  }
}

TEST(CoherentInformation, Examples) {
  Rng rng(12);
  const auto rho = rng.density(2);
  const double h = oracle_entropy(rho.dense());
  EXPECT_NEAR(coherent_information(channels::identity(2), rho), h, 1e-9);
  EXPECT_NEAR(coherent_information(channels::depolarizing(2, 1.0), rho), -h, 1e-9);
  EXPECT_NEAR(coherent_information(channels::dephasing(2, 1.0), TraceClassElement::from_diagonal(RealVector::Constant(2, 0.5))),
              0.0, 1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = random_channel(rng, 2, 2, 1 + trial % 4);
    const auto r = rng.density(2);
    const double ci = coherent_information(phi, r);
    const double hr = oracle_entropy(r.dense());
    EXPECT_GE(ci, -hr - 1e-9);
    EXPECT_LE(ci, hr + 1e-9);
  }
}

TEST(PseudoDiagonal, NonnegativeCoherentInformationAndGain) {
  Rng rng(13);
  // Basis measurement with basis repreparation: the complementary is a dephasing-type channel.
  std::vector<Matrix> povm;
  std::vector<TraceClassElement> preps;
  for (int k = 0; k < 3; ++k) {
    Matrix p = Matrix::Zero(3, 3);
    p(k, k) = 1.0;
    povm.push_back(p);
    preps.push_back(TraceClassElement::from_diagonal(RealVector::Unit(3, k)));
  }
  const auto pd = channels::pseudo_diagonal(povm, preps);
  for (int t = 0; t < 20; ++t) {
    const auto r = rng.density(3);
    const auto out = pd.apply(r);
    EXPECT_LE((out.dense().diagonal() - r.dense().diagonal()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(coherent_information(pd, r), -1e-9);
    EXPECT_GE(entropy_gain(pd, r), -1e-9);
  }
  // Random rank-one POVM with random pure preparations.
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = rng.haar_unitary(2);
    std::vector<Matrix> m = {u.col(0) * u.col(0).adjoint(), u.col(1) * u.col(1).adjoint()};
    std::vector<TraceClassElement> s = {rng.pure_state(2), rng.pure_state(2)};
    const auto ch = channels::pseudo_diagonal(m, s);
    const auto r = rng.density(2);
    EXPECT_GE(coherent_information(ch, r), -1e-9);
    EXPECT_GE(entropy_gain(ch, r), -1e-9);
  }
}

TEST(LargeDims, MonomialOnSharpScale) {
  const std::int64_t d = (1 << 16) + 1;
  Rng rng(14);
  RealVector p = RealVector::Constant(d, 0.1 / (d - 1));
  p(0) = 0.9;
  const auto rho = TraceClassElement::from_diagonal(p);
  const auto t0 = std::chrono::steady_clock::now();
  const auto lad = channels::ladder_damping(d, 0.5);
  const auto out = lad.apply(rho);
  EXPECT_NEAR(out.trace(), 1.0, 1e-12);
  EXPECT_EQ(choi_rank(lad), 2);
  const double ci = coherent_information(lad, rho);
  EXPECT_NEAR(ci, output_entropy(lad, rho) - entropy_exchange(lad, rho), 1e-12);
  std::vector<std::int64_t> perm(static_cast<size_t>(d));
  std::vector<double> ph(static_cast<size_t>(d), 0.0);
  for (std::int64_t k = 0; k < d; ++k) perm[k] = (k * 7 + 3) % d;
  const auto u = channels::permutation_unitary(perm, ph);
  EXPECT_NEAR(output_entropy(u, rho), von_neumann_entropy(rho), 1e-10);
  EXPECT_NEAR(entropy_exchange(u, rho), 0.0, 1e-14);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 5.0);
}
