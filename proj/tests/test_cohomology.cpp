#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "paramphase/cohomology.hpp"

using namespace paramphase;

namespace {

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(Eigen::Index(i), Eigen::Index(j)) = m(i, j).convert_to<double>();
  return out;
}

long rank_over_q(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return Eigen::FullPivLU<Eigen::MatrixXd>(to_double(m)).rank();
}

// Betti number from ranks of coboundaries over Q.
long betti(const SimplicialComplex& k, int degree) {
  const long n = static_cast<long>(k.count(degree));
  const long out = degree < k.dimension() ? rank_over_q(coboundary_matrix(k, degree)) : 0;
  const long in = degree > 0 ? rank_over_q(coboundary_matrix(k, degree - 1)) : 0;
  return n - out - in;
}

long torsion_divisible_by(const AbelianGroup& g, int p) {
  long count = 0;
  for (const auto& d : g.torsion)
    if (d % p == 0) ++count;
  return count;
}

AbelianGroup h(const SimplicialComplex& k, int degree, Ring ring = Ring::integers()) {
  return cohomology_group(k, degree, ring);
}

void expect_group(const AbelianGroup& g, std::size_t free_rank, std::vector<long long> torsion) {
  EXPECT_EQ(g.free_rank, free_rank) << g.to_string();
  ASSERT_EQ(g.torsion.size(), torsion.size()) << g.to_string();
  for (std::size_t i = 0; i < torsion.size(); ++i) EXPECT_EQ(g.torsion[i], torsion[i]) << g.to_string();
}

IntMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 7), entry(-9, 9), sparsity(0, 2);
  IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = sparsity(rng) == 0 ? 0 : entry(rng);
  return m;
}

}  // namespace

TEST(Smith, PropertyOnRandomMatrices) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix a = random_matrix(rng);
    const SmithForm f = smith_normal_form(a);
    EXPECT_EQ(f.u * a * f.v, f.s);
    EXPECT_EQ(abs(determinant(f.u)), 1);
    EXPECT_EQ(abs(determinant(f.v)), 1);
    EXPECT_EQ(f.u * f.u_inv, IntMatrix::identity(a.rows()));
    EXPECT_EQ(f.v * f.v_inv, IntMatrix::identity(a.cols()));
    for (std::size_t i = 0; i < f.s.rows(); ++i)
      for (std::size_t j = 0; j < f.s.cols(); ++j)
        if (i != j) EXPECT_EQ(f.s(i, j), 0);
    const auto diag = f.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      EXPECT_GE(diag[i], 0);
      if (i + 1 < diag.size() && diag[i + 1] != 0) EXPECT_EQ(diag[i + 1] % diag[i], 0);
      EXPECT_EQ(diag[i] != 0, i < f.rank);
    }
    EXPECT_EQ(static_cast<long>(f.rank), rank_over_q(a));
  }
}

TEST(Smith, KnownForm) {
  const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const auto d = smith_normal_form(a).diagonal();
  EXPECT_EQ(d, (std::vector<Integer>{2, 6, 12}));
  EXPECT_EQ(determinant(a), -144);
}

TEST(Smith, LargeEntriesStayExact) {
  IntMatrix a{{1, 0}, {0, 1}};
  a(0, 0) = Integer("123456789012345678901234567890");
  a(1, 1) = Integer("987654321098765432109876543210");
  const SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.u * a * f.v, f.s);
  EXPECT_EQ(f.s(0, 0) * f.s(1, 1), a(0, 0) * a(1, 1));
}

TEST(Complexes, BuiltinsAreWellFormed) {
  EXPECT_EQ(boundary_of_simplex(4).euler_characteristic(), 0);
  EXPECT_EQ(boundary_of_simplex(3).euler_characteristic(), 2);
  EXPECT_EQ(projective_plane().euler_characteristic(), 1);
  EXPECT_EQ(projective_plane().count(2), 10u);
  EXPECT_EQ(torus().euler_characteristic(), 0);
  const auto p = product_complex(projective_plane(), circle());
  EXPECT_EQ(p.vertex_count(), 18);
  EXPECT_EQ(p.dimension(), 3);
  EXPECT_EQ(p.euler_characteristic(), 0);
  EXPECT_THROW(builtin_complex("klein"), ValidationError);
}

TEST(Complexes, ExplicitListsAreValidated) {
  EXPECT_THROW(SimplicialComplex::from_simplices(3, {{2, {{0, 1, 2}}}}), ValidationError);
  EXPECT_THROW(SimplicialComplex::from_simplices(2, {{1, {{0, 1}, {1, 0}}}}), ValidationError);
  EXPECT_THROW(SimplicialComplex::from_simplices(2, {{1, {{0, 5}}}}), ValidationError);
  const auto k = SimplicialComplex::from_simplices(3, {{1, {{0, 1}, {1, 2}, {0, 2}}}});
  EXPECT_EQ(k.count(1), 3u);
}

TEST(Cohomology, CoboundarySquaresToZero) {
  for (const char* name : {"s1", "s2", "s3", "rp2", "torus", "rp2xs1", "s2xs1"}) {
    const auto k = builtin_complex(name);
    for (int d = 0; d + 2 <= k.dimension(); ++d)
      EXPECT_TRUE((coboundary_matrix(k, d + 1) * coboundary_matrix(k, d)).is_zero()) << name;
  }
}

TEST(Cohomology, Spheres) {
  const auto s3 = boundary_of_simplex(4);
  expect_group(h(s3, 0), 1, {});
  expect_group(h(s3, 1), 0, {});
  expect_group(h(s3, 2), 0, {});
  expect_group(h(s3, 3), 1, {});
  expect_group(h(boundary_of_simplex(3), 2), 1, {});
}

TEST(Cohomology, TorsionAndTori) {
  expect_group(h(projective_plane(), 1), 0, {});
  expect_group(h(projective_plane(), 2), 0, {2});
  expect_group(h(builtin_complex("rp2xs1"), 3), 0, {2});
  expect_group(h(torus(), 1), 2, {});
  expect_group(h(torus(), 2), 1, {});
  EXPECT_EQ(h(projective_plane(), 2).to_string(), "Z_2");
  EXPECT_EQ(h(boundary_of_simplex(4), 2).to_string(), "0");
}

TEST(Cohomology, FreeRankMatchesRationalBetti) {
  for (const char* name : {"s1", "s2", "s3", "rp2", "torus", "rp2xs1", "s2xs1"}) {
    const auto k = builtin_complex(name);
    for (int d = 0; d <= k.dimension(); ++d) {
      EXPECT_EQ(static_cast<long>(h(k, d).free_rank), betti(k, d)) << name << " degree " << d;
      EXPECT_EQ(static_cast<long>(h(k, d, Ring::reals()).free_rank), betti(k, d)) << name;
    }
  }
}

// dim H^k(K; Z_p) = b_k + t_k(p) + t_{k+1}(p).
TEST(Cohomology, UniversalCoefficientsModP) {
  for (const char* name : {"rp2", "torus", "rp2xs1", "s2xs1"}) {
    const auto k = builtin_complex(name);
    for (int p : {2, 3}) {
      for (int d = 0; d <= k.dimension(); ++d) {
        const AbelianGroup mod = h(k, d, Ring::mod(p));
        long expected = static_cast<long>(h(k, d).free_rank) + torsion_divisible_by(h(k, d), p);
        if (d < k.dimension()) expected += torsion_divisible_by(h(k, d + 1), p);
        EXPECT_EQ(static_cast<long>(mod.free_rank + mod.torsion.size()), expected) << name << " p=" << p << " d=" << d;
      }
    }
  }
}

// H^n(K x S^1) = H^n(K) + H^{n-1}(K).
TEST(Cohomology, KunnethWithCircle) {
  for (const auto& k : {projective_plane(), boundary_of_simplex(3), torus()}) {
    const auto product = product_complex(k, circle());
    for (int n = 0; n <= product.dimension(); ++n) {
      std::size_t free_rank = n <= k.dimension() ? h(k, n).free_rank : 0;
      std::vector<Integer> torsion = n <= k.dimension() ? h(k, n).torsion : std::vector<Integer>{};
      if (n >= 1) {
        const auto lower = h(k, n - 1);
        free_rank += lower.free_rank;
        torsion.insert(torsion.end(), lower.torsion.begin(), lower.torsion.end());
      }
      const auto g = h(product, n);
      EXPECT_EQ(g.free_rank, free_rank);
      std::sort(torsion.begin(), torsion.end());
      EXPECT_EQ(g.torsion, torsion);
    }
  }
}

TEST(Cohomology, GeneratorsAreCocyclesAndClassifyToUnitVectors) {
  const auto k = builtin_complex("rp2xs1");
  for (int d = 0; d <= 3; ++d) {
    const CohomologyGroup g(k, d);
    const auto& grp = g.group();
    ASSERT_EQ(grp.generators.size(), grp.torsion.size() + grp.free_rank);
    for (std::size_t i = 0; i < grp.generators.size(); ++i) {
      if (d < 3) EXPECT_TRUE(std::all_of(coboundary(k, d, grp.generators[i]).begin(), coboundary(k, d, grp.generators[i]).end(), [](const Integer& v) { return v == 0; }));
      const auto c = g.classify(grp.generators[i]);
      for (std::size_t t = 0; t < c.torsion.size(); ++t) EXPECT_EQ(c.torsion[t], t == i ? 1 : 0);
      for (std::size_t f = 0; f < c.free.size(); ++f) EXPECT_EQ(c.free[f], f + grp.torsion.size() == i ? 1 : 0);
    }
  }
}

TEST(Cohomology, CoboundariesClassifyToZero) {
  const auto k = builtin_complex("rp2xs1");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3);
  IntVector b(k.count(1));
  for (auto& v : b) v = entry(rng);
  const CohomologyGroup g(k, 2);
  EXPECT_TRUE(g.classify(coboundary(k, 1, b)).is_zero());
  IntVector not_cocycle(k.count(2));
  not_cocycle[0] = 1;
  EXPECT_THROW(g.classify(not_cocycle), ComputationError);
}

TEST(Cohomology, DegreeOutOfRange) {
  EXPECT_THROW(h(circle(), 2), ValidationError);
  EXPECT_THROW(coboundary_matrix(circle(), 1), ValidationError);
  EXPECT_THROW(Ring::mod(4), ValidationError);
}

// The mod-2 witness on RP^2 x S^1 maps to the generator of H^3 = Z_2.
TEST(Bockstein, TorsionDetectionOnProduct) {
  const auto k = builtin_complex("rp2xs1");
  const auto z = bockstein_witness(k, 2);
  ASSERT_TRUE(z.has_value());
  const auto c = bockstein_z2(k, *z);
  ASSERT_EQ(c.torsion.size(), 1u);
  EXPECT_EQ(c.torsion[0], 1);

  // Doubling the Bockstein class gives zero in Z_2.
  IntVector lift(z->values.size());
  for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = mod_floor(z->values[i], 2);
  IntVector twice = coboundary(k, 2, lift);
  const CohomologyGroup h3(k, 3);
  EXPECT_TRUE(h3.classify(twice).is_zero());
  EXPECT_TRUE(bockstein_of_lift(k, 2, IntVector(lift.size())).is_zero());

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> shift(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    IntVector other = lift;
    for (auto& v : other) v += 2 * shift(rng);
    EXPECT_EQ(bockstein_of_lift(k, 2, other), c);
  }
}

TEST(Bockstein, ProjectivePlaneAndOrientableSpaces) {
  const auto rp2 = projective_plane();
  const auto w = bockstein_witness(rp2, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(bockstein_z2(rp2, *w).torsion, std::vector<Integer>{1});
  EXPECT_FALSE(bockstein_witness(builtin_complex("s2xs1"), 1).has_value());
  EXPECT_FALSE(bockstein_witness(torus(), 1).has_value());
  EXPECT_THROW(bockstein_z2(rp2, Cochain{1, Ring::integers(), IntVector(rp2.count(1))}), ValidationError);
  IntVector bad(rp2.count(1));
  bad[0] = 1;
  EXPECT_THROW(bockstein_z2(rp2, Cochain{1, Ring::mod(2), bad}), ComputationError);
}

TEST(Orientation, FundamentalCycles) {
  const auto s3 = boundary_of_simplex(4);
  const auto cycle = fundamental_cycle(s3);
  ASSERT_EQ(cycle.size(), 5u);
  const CohomologyGroup g(s3, 3);
  EXPECT_EQ(abs(evaluate(g.group().generators[0], cycle)), 1);
  // A coboundary evaluates to zero on a cycle.
  IntVector b(s3.count(2), 1);
  EXPECT_EQ(evaluate(coboundary(s3, 2, b), cycle), 0);
  EXPECT_THROW(fundamental_cycle(builtin_complex("rp2xs1")), ComputationError);
  EXPECT_THROW(fundamental_cycle(SimplicialComplex::from_facets(4, {{0, 1, 2, 3}})), ComputationError);
  EXPECT_NO_THROW(fundamental_cycle(builtin_complex("s2xs1")));
}

TEST(Real, CoboundarySolve) {
  const auto k = builtin_complex("s2xs1");
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  RealCochain h0(static_cast<Eigen::Index>(k.count(1)));
  for (Eigen::Index i = 0; i < h0.size(); ++i) h0(i) = normal(rng);
  const Eigen::MatrixXd d = real_coboundary_matrix(k, 1);
  const RealCochain g = d * h0;
  const RealCochain sol = solve_real_coboundary(k, 1, g);
  EXPECT_LT((d * sol - g).norm(), 1e-9);
  RealCochain not_exact = RealCochain::Zero(static_cast<Eigen::Index>(k.count(2)));
  not_exact(0) = 1;
  EXPECT_THROW(solve_real_coboundary(k, 1, not_exact), ComputationError);
}
