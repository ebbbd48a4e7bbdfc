#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "paramphase/channel.hpp"
#include "paramphase/models.hpp"
#include "paramphase/rg.hpp"

using namespace paramphase;
using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using Tensor = MpsTensor<C>;

namespace {

// Phi(x) by an explicit index sum, independent of the Kronecker transfer matrix.
M apply_by_indices(const Tensor& t, const M& x) {
  const Index D = t.bond_dim();
  M out = M::Zero(D, D);
  for (Index i = 0; i < t.phys_dim(); ++i)
    for (Index a = 0; a < D; ++a)
      for (Index b = 0; b < D; ++b)
        for (Index c = 0; c < D; ++c)
          for (Index e = 0; e < D; ++e) out(a, b) += t[i](a, c) * x(c, e) * std::conj(t[i](b, e));
  return out;
}

// omega(O_1 ... O_n) as a sum over physical configurations of the chain:
// sum_{i,j} prod_k <i_k|O_k|j_k> Tr[rho T_{i_1} ... T_{i_n} T_{j_n}^dag ... T_{j_1}^dag].
C chain_expectation(const Tensor& t, const M& rho, const std::vector<M>& ops) {
  const Index d = t.phys_dim(), D = t.bond_dim();
  const std::size_t n = ops.size();
  std::size_t configs = 1;
  for (std::size_t k = 0; k < n; ++k) configs *= static_cast<std::size_t>(d);
  C total = 0;
  for (std::size_t ci = 0; ci < configs; ++ci) {
    for (std::size_t cj = 0; cj < configs; ++cj) {
      C weight = 1;
      M left = M::Identity(D, D), right = M::Identity(D, D);
      std::size_t ri = ci, rj = cj;
      for (std::size_t k = 0; k < n; ++k) {
        const Index i = static_cast<Index>(ri % static_cast<std::size_t>(d));
        const Index j = static_cast<Index>(rj % static_cast<std::size_t>(d));
        ri /= static_cast<std::size_t>(d);
        rj /= static_cast<std::size_t>(d);
        weight *= ops[k](i, j);
        left = left * t[i];
        right = t[j].adjoint() * right;
      }
      if (weight != C(0)) total += weight * (rho * left * right).trace();
    }
  }
  return total;
}

Tensor random_conjugate(const Tensor& t, std::mt19937_64& rng) {
  return t.conjugated(random_unitary(t.bond_dim(), rng));
}

}  // namespace

TEST(Channel, AkltIsUnitalWithKnownSpectrum) {
  const Tensor t = aklt_tensor();
  EXPECT_EQ(t.phys_dim(), 3);
  EXPECT_EQ(t.bond_dim(), 2);
  EXPECT_LT(t.unitality_residual(), 1e-14);
  const auto spec = transfer_spectrum(channel_from_tensor(t));
  ASSERT_EQ(spec.eigenvalues.size(), 4u);
  const std::vector<C> expected{1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(spec.eigenvalues[i] - expected[i]), 1e-10);
  EXPECT_NEAR(spec.gap, 2.0 / 3, 1e-10);
}

TEST(Channel, TransferMatrixMatchesIndexSum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Tensor t = random_unital_tensor(3, 3, rng);
    const auto c = channel_from_tensor(t);
    const M x = random_gaussian(3, 3, rng);
    EXPECT_LT((c.apply(x) - apply_by_indices(t, x)).norm(), 1e-12);
    const Eigen::VectorXcd vx = Eigen::Map<const Eigen::VectorXcd>(x.data(), 9);
    const Eigen::VectorXcd ex = c.transfer_matrix() * vx;
    EXPECT_LT((Eigen::Map<const M>(ex.data(), 3, 3) - apply_by_indices(t, x)).norm(), 1e-12);
  }
}

TEST(Channel, AdjointIsHilbertSchmidtDual) {
  std::mt19937_64 rng(11);
  const Tensor t = random_unital_tensor(2, 4, rng);
  const auto c = channel_from_tensor(t);
  const M x = random_gaussian(4, 4, rng), k = random_gaussian(4, 4, rng);
  EXPECT_LT(std::abs((k.adjoint() * c.apply(x)).trace() - (c.apply_adjoint(k).adjoint() * x).trace()), 1e-12);
  EXPECT_LT((c.apply(M::Identity(4, 4)) - M::Identity(4, 4)).norm(), 1e-12);
}

TEST(Channel, IsometricFormReproducesChannel) {
  std::mt19937_64 rng(3);
  const Tensor t = random_unital_tensor(3, 2, rng);
  const auto v = isometry_of(t);
  const M x = random_gaussian(2, 2, rng);
  EXPECT_LT((apply_isometric(v, x) - channel_from_tensor(t).apply(x)).norm(), 1e-12);
  const Tensor back = tensor_of(v);
  for (Index i = 0; i < 3; ++i) EXPECT_LT((back[i] - t[i]).norm(), 1e-14);
}

TEST(Channel, RejectsMalformedTensors) {
  EXPECT_THROW(Tensor(std::vector<M>{}), ValidationError);
  EXPECT_THROW(Tensor(std::vector<M>{M::Identity(2, 2), M::Identity(3, 3)}), ValidationError);
  EXPECT_THROW(Tensor(std::vector<M>{M::Zero(2, 3)}), ValidationError);
  M nan = M::Identity(2, 2);
  nan(0, 0) = C(std::nan(""), 0);
  EXPECT_THROW(Tensor(std::vector<M>{nan}), ValidationError);
  const Tensor non_unital(std::vector<M>{2.0 * M::Identity(2, 2)});
  EXPECT_FALSE(non_unital.is_unital(1e-10));
  EXPECT_THROW(transfer_spectrum(channel_from_tensor(non_unital)), ValidationError);
}

TEST(Channel, DensityOperatorValidation) {
  M rho = M::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityOp<C>{rho});
  EXPECT_THROW(DensityOp<C>(M::Identity(2, 2)), ValidationError);
  M neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityOp<C>{neg}, ValidationError);
  M nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(DensityOp<C>{nonherm}, ValidationError);
}

TEST(Channel, StationaryStateOfAkltIsMaximallyMixed) {
  const auto rho = stationary_state(channel_from_tensor(aklt_tensor()));
  EXPECT_LT((rho.matrix() - M::Identity(2, 2) / 2.0).norm(), 1e-10);
}

TEST(Channel, StationaryStateIsInvariantUnderAdjoint) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = channel_from_tensor(random_unital_tensor(2, 3, rng));
    const auto rho = stationary_state(c);
    EXPECT_LT((c.apply_adjoint(rho.matrix()) - rho.matrix()).norm(), 1e-10);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(Channel, UnitaryConjugationIsNotPrimitive) {
  M u(2, 2);
  u << 0, 1, 1, 0;
  const auto t = unitary_conjugation_tensor(u);
  EXPECT_THROW(stationary_state(channel_from_tensor(t)), ComputationError);
  EXPECT_FALSE(injectivity_length(t, 8).has_value());
  const auto report = check_split_purity(channel_from_tensor(t), 4);
  EXPECT_FALSE(report.primitive);
  EXPECT_FALSE(report.distance.has_value());
}

TEST(Channel, InjectivityLengths) {
  EXPECT_EQ(injectivity_length(aklt_tensor(), 8), std::optional<int>(2));
  std::mt19937_64 rng(2);
  const auto rho = random_density(3, rng);
  EXPECT_EQ(injectivity_length(fixed_tensor(rho), 18), std::optional<int>(1));
  // A single scalar Kraus operator on D = 1 is injective immediately.
  EXPECT_EQ(injectivity_length(Tensor(std::vector<M>{M::Identity(1, 1)}), 1), std::optional<int>(1));
}

TEST(Channel, AkltSplitPurityDistance) {
  const auto report = check_split_purity(channel_from_tensor(aklt_tensor()), 8);
  ASSERT_TRUE(report.primitive);
  ASSERT_TRUE(report.distance.has_value());
  EXPECT_LE(*report.distance, 10 * std::pow(1.0 / 3, 8));
  EXPECT_EQ(report.peripheral.size(), 1u);
}

TEST(Channel, AkltCorrelationsDecayAsMinusOneThird) {
  const auto s = Sfcs<C>::from_channel(channel_from_tensor(aklt_tensor()));
  const M sz = spin1_sz();
  EXPECT_LT(std::abs(expectation(s, {sz})), 1e-12);
  for (int r = 1; r <= 6; ++r) {
    const C g = two_point(s, sz, sz, r);
    EXPECT_NEAR(g.real(), 4.0 / 3 * std::pow(-1.0 / 3, r), 1e-12);
    EXPECT_NEAR(g.imag(), 0.0, 1e-12);
  }
}

TEST(Channel, ExpectationMatchesChainContraction) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 4; ++trial) {
    const Tensor t = random_unital_tensor(2, 3, rng);
    const auto s = Sfcs<C>::from_channel(channel_from_tensor(t));
    const std::vector<M> ops{random_gaussian(2, 2, rng), random_gaussian(2, 2, rng), random_gaussian(2, 2, rng)};
    EXPECT_LT(std::abs(expectation(s, ops) - chain_expectation(t, s.rho().matrix(), ops)), 1e-11);
    const M id = M::Identity(2, 2);
    EXPECT_LT(std::abs(two_point(s, ops[0], ops[1], 3) - chain_expectation(t, s.rho().matrix(), {ops[0], id, id, ops[1]})),
              1e-11);
  }
}

TEST(Channel, FixedPointCorrelationsStopAtNearestNeighbours) {
  std::mt19937_64 rng(23);
  const auto rho = random_density(3, rng);
  const Tensor t = fixed_tensor(rho);
  const auto s = Sfcs<C>::from_channel(channel_from_tensor(t));
  const M a = random_gaussian(t.phys_dim(), t.phys_dim(), rng), b = random_gaussian(t.phys_dim(), t.phys_dim(), rng);
  // Neighbours share a bond and may correlate; beyond that nothing does.
  EXPECT_GT(std::abs(connected_two_point(s, a, b, 1)), 1e-3);
  for (int r = 2; r <= 4; ++r) EXPECT_LT(std::abs(connected_two_point(s, a, b, r)), 1e-11);
}

TEST(Channel, SfcsRejectsNonStationaryState) {
  M rho(2, 2);
  rho << 0.9, 0, 0, 0.1;
  // The AKLT channel leaves only 1/2 invariant.
  EXPECT_THROW(Sfcs<C>(channel_from_tensor(aklt_tensor()), DensityOp<C>(rho)), ValidationError);
}

TEST(Channel, RealScalarInstantiation) {
  std::vector<Eigen::MatrixXd> kraus(3, Eigen::MatrixXd::Zero(2, 2));
  kraus[0](0, 1) = std::sqrt(2.0 / 3);
  kraus[1](0, 0) = -std::sqrt(1.0 / 3);
  kraus[1](1, 1) = std::sqrt(1.0 / 3);
  kraus[2](1, 0) = -std::sqrt(2.0 / 3);
  const MpsTensor<double> t(kraus);
  const auto spec = transfer_spectrum(channel_from_tensor(t));
  EXPECT_NEAR(spec.gap, 2.0 / 3, 1e-10);
  const auto complex_version = t.cast<C>();
  EXPECT_LT((complex_version[0] - aklt_tensor()[0]).norm(), 1e-14);
}

// Conjugating a tensor by a unitary leaves spectrum, injectivity length and
// expectation values unchanged.
TEST(Channel, GaugeCovariance) {
  std::mt19937_64 rng(29);
  std::vector<Tensor> fixtures{aklt_tensor(), random_unital_tensor(2, 3, rng), fixed_tensor(random_density(2, rng))};
  for (const auto& t : fixtures) {
    for (int trial = 0; trial < 5; ++trial) {
      const Tensor g = random_conjugate(t, rng);
      const auto a = transfer_spectrum(channel_from_tensor(t)).eigenvalues;
      const auto b = transfer_spectrum(channel_from_tensor(g)).eigenvalues;
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(std::abs(a[i]) - std::abs(b[i])), 1e-10);
      EXPECT_EQ(injectivity_length(t, 18), injectivity_length(g, 18));
      const auto sa = Sfcs<C>::from_channel(channel_from_tensor(t));
      const auto sb = Sfcs<C>::from_channel(channel_from_tensor(g));
      const Index d = t.phys_dim();
      const std::vector<M> ops{random_gaussian(d, d, rng), random_gaussian(d, d, rng)};
      EXPECT_LT(std::abs(expectation(sa, ops) - expectation(sb, ops)), 1e-10);
    }
  }
}
