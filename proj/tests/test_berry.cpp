#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "paramphase/berry.hpp"
#include "paramphase/models.hpp"
#include "paramphase/rg.hpp"

using namespace paramphase;
using M = Eigen::MatrixXcd;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent count: -(1/2pi) sum_T sign_T remainder(sum_i (-1)^i arg lambda(face_i), 2pi).
double direct_number(const PhaseData& p, const SimplicialComplex& k, const std::vector<int>& signs) {
  double total = 0;
  const auto& tets = k.simplices(3);
  for (std::size_t t = 0; t < tets.size(); ++t) {
    double bracket = 0;
    for (int i = 0; i < 4; ++i) {
      std::vector<int> f;
      for (int j = 0; j < 4; ++j)
        if (j != i) f.push_back(tets[t][static_cast<std::size_t>(j)]);
      bracket += (i % 2 ? -1.0 : 1.0) * std::arg(p.lambda[k.require_index(f)]);
    }
    total += signs[t] * std::remainder(bracket, 2 * kPi);
  }
  return -total / (2 * kPi);
}

std::vector<int> reversed(std::vector<int> o) {
  for (auto& s : o) s = -s;
  return o;
}

}  // namespace

TEST(Berry, AnglesWrapIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(principal_arg({-1.0, -0.0}), kPi, 1e-15);
}

TEST(Berry, SyntheticTargetsOnThreeSphere) {
  const auto k = boundary_of_simplex(4);
  const auto signs = fundamental_cycle(k);
  for (long long target = -2; target <= 2; ++target) {
    const PhaseData p = synthetic_family(k, target);
    const BerryNumber n = berry_number(p, k);
    EXPECT_EQ(n.value, target);
    EXPECT_LE(n.residual, 1e-6);
    EXPECT_NEAR(direct_number(p, k, signs), double(target), 1e-9);
    const BerryOutput out = berry_class(p, k);
    ASSERT_EQ(out.coordinates.free.size(), 1u);
    EXPECT_EQ(out.coordinates.free[0], target);
    ASSERT_TRUE(out.number.has_value());
    EXPECT_EQ(out.number->value, target);
    EXPECT_EQ(out.group.to_string(), "Z");
  }
  EXPECT_THROW(synthetic_family(k, 3), ValidationError);
}

TEST(Berry, InvariantUnderEdgePhaseGauge) {
  const auto k = boundary_of_simplex(4);
  for (long long target : {-2LL, 1LL}) {
    const PhaseData p = synthetic_family(k, target);
    const auto base_class = berry_class(p, k).coordinates;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PhaseData q = gauge_perturb(p, k, seed);
      EXPECT_EQ(berry_number(q, k).value, target) << "seed " << seed;
      EXPECT_EQ(berry_class(q, k).coordinates, base_class) << "seed " << seed;
    }
  }
}

TEST(Berry, OrientationReversalNegates) {
  const auto k = boundary_of_simplex(4);
  const auto o = fundamental_cycle(k);
  for (long long target = -2; target <= 2; ++target) {
    const PhaseData p = synthetic_family(k, target);
    EXPECT_EQ(berry_number(p, k, reversed(o)).value, -target);
  }
  EXPECT_THROW(berry_number(synthetic_family(k, 1), k, std::vector<int>{1, 1}), ValidationError);
}

TEST(Berry, SyntheticFamilyOnProductManifold) {
  const auto k = builtin_complex("s2xs1");
  const PhaseData p = synthetic_family(k, 1);
  EXPECT_EQ(berry_number(p, k).value, 1);
  EXPECT_EQ(berry_class(p, k).coordinates.free, std::vector<Integer>{1});
}

TEST(Berry, ConstantFamilyIsTrivial) {
  const auto k = boundary_of_simplex(4);
  const auto family = constant_family(k, aklt_tensor());
  const auto g = gauge_data(family);
  for (double eta : g.eta) EXPECT_NEAR(eta, 1.0, 1e-10);
  const PhaseData p = phase_data(g, k);
  for (double dev : p.dev) EXPECT_LT(dev, 1e-10);
  EXPECT_EQ(berry_number(family).value, 0);
  EXPECT_TRUE(berry_class(family).coordinates.is_zero());
}

TEST(Berry, EdgeGaugeRecoversConjugation) {
  std::mt19937_64 rng(53);
  const Tensor t = aklt_tensor();
  for (int trial = 0; trial < 5; ++trial) {
    const M q = random_unitary(2, rng);
    const EdgeGauge e = edge_gauge(t, t.conjugated(q));
    EXPECT_NEAR(e.eta, 1.0, 1e-10);
    EXPECT_LT((e.unitary * e.unitary.adjoint() - M::Identity(2, 2)).norm(), 1e-10);
    // U Q is a scalar of modulus one.
    const M uq = e.unitary * q;
    const auto lambda = uq.trace() / 2.0;
    EXPECT_NEAR(std::abs(lambda), 1.0, 1e-10);
    EXPECT_LT((uq - lambda * M::Identity(2, 2)).norm(), 1e-10);
    EXPECT_GE(e.unitary.trace().real(), 0.0);
    EXPECT_NEAR(e.unitary.trace().imag(), 0.0, 1e-10);
  }
}

// A family of gauge-conjugated copies of one tensor is trivial, whatever the
// gauges and whatever extra edge phases are applied.
TEST(Berry, ConjugatedFamilyIsTrivial) {
  std::mt19937_64 rng(59);
  const auto k = boundary_of_simplex(4);
  std::vector<Tensor> tensors;
  for (int v = 0; v < k.vertex_count(); ++v) tensors.push_back(aklt_tensor().conjugated(random_unitary(2, rng)));
  const TensorFamily family(k, tensors);
  const GaugeData g = gauge_data(family);
  const PhaseData p = phase_data(g, k);
  for (double dev : p.dev) EXPECT_LT(dev, 1e-8);
  EXPECT_EQ(berry_number(p, k).value, 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_EQ(berry_number(phase_data(gauge_perturb(g, seed), k), k).value, 0);
}

TEST(Berry, FixedPointFamily) {
  std::mt19937_64 rng(61);
  const auto k = boundary_of_simplex(4);
  const auto rho = random_density(2, rng);
  const auto family = constant_family(k, fixed_tensor(rho));
  EXPECT_EQ(berry_number(family).value, 0);
}

TEST(Berry, BocksteinPhasesGiveTorsionClass) {
  const auto k = builtin_complex("rp2xs1");
  const auto z = bockstein_witness(k, 2);
  ASSERT_TRUE(z.has_value());
  const BerryOutput out = berry_class(phases_from_z2(k, z->values), k);
  EXPECT_EQ(out.group.to_string(), "Z_2");
  EXPECT_EQ(out.coordinates.torsion, std::vector<Integer>{1});
  EXPECT_FALSE(out.number.has_value());
  // The integer cocycle is the Bockstein cocycle itself.
  EXPECT_EQ(CohomologyGroup(k, 3).classify(out.cocycle), bockstein_z2(k, *z));
  // Edge gauge changes do not move the class.
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_EQ(berry_class(gauge_perturb(phases_from_z2(k, z->values), k, seed), k).coordinates, out.coordinates);
}

TEST(Berry, Failures) {
  const auto k = boundary_of_simplex(4);
  PhaseData p = synthetic_family(k, 0);

  PhaseData off_circle = p;
  off_circle.lambda[0] *= 2.0;
  EXPECT_THROW(berry_number(off_circle, k), ValidationError);

  PhaseData noisy = p;
  noisy.dev[0] = 0.5;
  EXPECT_THROW(berry_number(noisy, k), ComputationError);

  // A single -1 face puts the flux of its two tetrahedra on the branch cut.
  PhaseData cut;
  cut.lambda.assign(k.count(2), {1.0, 0.0});
  cut.lambda[0] = {-1.0, 0.0};
  EXPECT_THROW(berry_number(cut, k), ComputationError);

  EXPECT_THROW(berry_number(p, boundary_of_simplex(3)), ValidationError);

  std::mt19937_64 rng(67);
  std::vector<Tensor> far{aklt_tensor(), random_unital_tensor(3, 2, rng), aklt_tensor(), aklt_tensor(), aklt_tensor()};
  BerryConfig strict;
  strict.eta_min = 0.999;
  const TensorFamily family(k, far, strict);
  EXPECT_THROW(gauge_data(family, strict), ComputationError);

  M u(2, 2);
  u << 0, 1, 1, 0;
  EXPECT_THROW(constant_family(k, unitary_conjugation_tensor(u)), ValidationError);
  EXPECT_THROW(TensorFamily(k, {aklt_tensor()}), ValidationError);
}
