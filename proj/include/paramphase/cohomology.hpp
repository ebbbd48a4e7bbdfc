#pragma once

// Simplicial cochains with integer, mod-p and real coefficients.
//
// Orientation convention: a simplex is stored as its strictly increasing
// vertex tuple (v_0 < ... < v_k) and carries the orientation of that order.
// The coboundary is (dc)(v_0..v_{k+1}) = sum_i (-1)^i c(v_0..^v_i..v_{k+1}).

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paramphase/errors.hpp"
#include "paramphase/integer.hpp"

namespace paramphase {

using Simplex = std::vector<int>;

class SimplicialComplex {
 public:
  static constexpr int kMaxDimension = 4;

  // Downward closure of a list of simplices (any vertex order; sorted here).
  static SimplicialComplex from_facets(int vertex_count, const std::vector<Simplex>& facets);

  // Explicit simplex lists by dimension. Vertices are implied by the count.
  // Every face must be listed and no simplex may repeat.
  static SimplicialComplex from_simplices(int vertex_count, const std::map<int, std::vector<Simplex>>& by_dim);

  int vertex_count() const { return vertex_count_; }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  // Empty for k outside [0, dimension()].
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;
  std::size_t require_index(const Simplex& s) const;
  long long euler_characteristic() const;

 private:
  void build_index();

  int vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

// Built-in triangulations.
SimplicialComplex boundary_of_simplex(int n);  // S^{n-1} as the boundary of the n-simplex
SimplicialComplex circle();                    // 3 vertices
SimplicialComplex projective_plane();          // 6 vertices, 10 triangles
SimplicialComplex torus();                     // circle x circle
SimplicialComplex point();

// Lookup by name: s1, s2, s3, rp2, torus, point, rp2xs1, s2xs1.
SimplicialComplex builtin_complex(const std::string& name);

// Staircase triangulation of |K| x |L|; vertex (a, b) gets index a * |L_0| + b.
SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l);

struct Ring {
  enum class Kind { Integers, ModP, Reals };
  Kind kind = Kind::Integers;
  int p = 0;

  static Ring integers() { return {Kind::Integers, 0}; }
  static Ring mod(int p);
  static Ring reals() { return {Kind::Reals, 0}; }
  std::string name() const;
};

// Integer or mod-p valued k-cochain; values are indexed like K.simplices(k).
struct Cochain {
  int degree = 0;
  Ring ring;
  IntVector values;
};

using RealCochain = Eigen::VectorXd;

// delta_k : C^k -> C^{k+1} as an (n_{k+1} x n_k) matrix. Requires 0 <= k < dim K.
IntMatrix coboundary_matrix(const SimplicialComplex& k, int degree);
IntVector coboundary(const SimplicialComplex& k, int degree, const IntVector& c);
Eigen::MatrixXd real_coboundary_matrix(const SimplicialComplex& k, int degree);

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;        // invariant factors, each >= 2, d_1 | d_2 | ...
  std::vector<IntVector> generators;   // torsion generators first, then free ones
  std::string to_string() const;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
};

// Coordinates of a class: residues modulo the invariant factors and free parts.
struct ClassCoordinates {
  std::vector<Integer> torsion;
  std::vector<Integer> free;
  bool is_zero() const;
  bool operator==(const ClassCoordinates&) const = default;
};

// H^k(K; ring) with explicit generators and a classifier for cocycles.
class CohomologyGroup {
 public:
  CohomologyGroup(const SimplicialComplex& k, int degree, Ring ring = Ring::integers());

  const AbelianGroup& group() const { return group_; }
  int degree() const { return degree_; }
  const Ring& ring() const { return ring_; }

  // Throws ComputationError("not a cocycle") when dc != 0 in the ring.
  ClassCoordinates classify(const IntVector& cocycle) const;
  // Real coordinates along the free generators (reals only).
  Eigen::VectorXd classify_real(const RealCochain& cocycle) const;

  // Replace free generator i by its negative.
  void negate_free_generator(std::size_t i);

 private:
  void build_integral(const SimplicialComplex& k);
  void build_mod_p(const SimplicialComplex& k);

  int degree_;
  Ring ring_;
  AbelianGroup group_;
  IntMatrix delta_;       // delta_k
  IntMatrix delta_prev_;  // delta_{k-1}
  // Integer path: coordinates = transform * (V_inv c)[kernel rows].
  IntMatrix kernel_coords_;  // rows of V_B^{-1} spanning kernel coordinates
  IntMatrix transform_;      // U' of the image SNF
  std::size_t unit_count_ = 0;     // invariant factors equal to 1 (skipped)
  std::size_t torsion_count_ = 0;  // integral torsion factors, kept even over the reals
  std::vector<int> free_signs_;
};

AbelianGroup cohomology_group(const SimplicialComplex& k, int degree, Ring ring = Ring::integers());
ClassCoordinates classify(const SimplicialComplex& k, int degree, const Cochain& c);

// Integral Bockstein of a mod-2 cocycle: class of (d z~)/2 in H^{k+1}(K; Z),
// z~ the {0,1} lift.
ClassCoordinates bockstein_z2(const SimplicialComplex& k, const Cochain& z);
// Same, with a caller-supplied integer lift of z (any lift gives the same class).
ClassCoordinates bockstein_of_lift(const SimplicialComplex& k, int degree, const IntVector& lift);
// A generator of H^k(K; Z_2) with non-zero Bockstein, if there is one.
std::optional<Cochain> bockstein_witness(const SimplicialComplex& k, int degree);

// Coherent orientation signs (+1/-1) of the top simplices of a closed
// pseudomanifold. Throws "not a closed manifold" / "non-orientable".
std::vector<int> fundamental_cycle(const SimplicialComplex& k);

Integer evaluate(const IntVector& c, const std::vector<int>& cycle);
double evaluate(const RealCochain& c, const std::vector<int>& cycle);

// Some h with delta_k h = g (g a (k+1)-cochain); throws "not exact" when the
// least-squares residual exceeds `tol`.
RealCochain solve_real_coboundary(const SimplicialComplex& k, int degree, const RealCochain& g,
                                  double tol = 1e-9);

}  // namespace paramphase
