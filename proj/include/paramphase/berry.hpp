#pragma once

// Higher Berry class of a family of states over a triangulated parameter
// space. Vertices of the complex stand for patches, edges for double overlaps
// (an overlap gauge unitary), triangles for triple overlaps (a U(1) phase) and
// tetrahedra for the flux of that phase.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "paramphase/channel.hpp"
#include "paramphase/cohomology.hpp"

namespace paramphase {

using Tensor = MpsTensor<std::complex<double>>;

struct BerryConfig {
  double dev_max = 0.3;           // largest accepted deviation of a triangle product from a scalar
  double eta_min = 0.5;           // smallest accepted overlap modulus on an edge
  double branch_margin = 1e-6;    // reject fluxes this close to +-pi
  double quantization_tol = 1e-4;
  double integrality_tol = 1e-6;
  int injectivity_n_max = 0;      // 0: 2 D^2
  Tolerances tol;
};

// Principal argument in (-pi, pi].
double principal_arg(std::complex<double> z);
// Reduction of an angle into (-pi, pi].
double wrap_angle(double x);

class TensorFamily {
 public:
  TensorFamily(SimplicialComplex complex, std::vector<Tensor> tensors, const BerryConfig& cfg = {});

  const SimplicialComplex& complex() const { return complex_; }
  const std::vector<Tensor>& tensors() const { return tensors_; }
  const Tensor& at(int vertex) const { return tensors_.at(static_cast<std::size_t>(vertex)); }

 private:
  SimplicialComplex complex_;
  std::vector<Tensor> tensors_;
};

// The same tensor on every vertex.
TensorFamily constant_family(const SimplicialComplex& k, const Tensor& t, const BerryConfig& cfg = {});

struct EdgeGauge {
  double eta = 0;           // modulus of the leading mixed-transfer eigenvalue
  Eigen::MatrixXcd unitary;  // polar factor of the leading eigen-matrix
};

// Leading eigenpair of x -> sum_i T^u_i x (T^v_i)^dag. For T^u = Q_u T Q_u^dag
// and T^v = Q_v T Q_v^dag the gauge is Q_u Q_v^dag up to a phase.
EdgeGauge edge_gauge(const Tensor& u, const Tensor& v, const BerryConfig& cfg = {});

// Indexed like K.simplices(1); U_vu = U_uv^dag is implied.
struct GaugeData {
  std::vector<Eigen::MatrixXcd> unitaries;
  std::vector<double> eta;
};

GaugeData gauge_data(const TensorFamily& family, const BerryConfig& cfg = {});

struct TrianglePhase {
  std::complex<double> lambda;
  double dev = 0;
};

// P = U_uv U_vw U_wu, lambda = Tr P / |Tr P|, dev = ||P - lambda 1||_F / sqrt(D).
TrianglePhase triangle_phase(const GaugeData& g, const SimplicialComplex& k, const Simplex& triangle);

// Indexed like K.simplices(2).
struct PhaseData {
  std::vector<std::complex<double>> lambda;
  std::vector<double> dev;
};

PhaseData phase_data(const GaugeData& g, const SimplicialComplex& k, const BerryConfig& cfg = {});

// Principal value of the alternating sum of face arguments of a tetrahedron.
double tet_flux(const PhaseData& p, const SimplicialComplex& k, const Simplex& tet, const BerryConfig& cfg = {});

struct BerryNumber {
  long long value = 0;
  double residual = 0;
};

// n = round(-(1/2pi) sum_T sign(T) G_T) with the orientation of
// fundamental_cycle(K) (or an explicit one).
BerryNumber berry_number(const PhaseData& p, const SimplicialComplex& k, const BerryConfig& cfg = {});
BerryNumber berry_number(const PhaseData& p, const SimplicialComplex& k, const std::vector<int>& orientation,
                         const BerryConfig& cfg = {});
BerryNumber berry_number(const TensorFamily& family, const BerryConfig& cfg = {});

struct BerryOutput {
  std::vector<double> flux;          // per tetrahedron, in (-pi, pi]
  IntVector cocycle;                 // integer 3-cocycle ((db) - G) / 2pi
  AbelianGroup group;                // H^3(K; Z)
  ClassCoordinates coordinates;      // class of the cocycle
  std::optional<BerryNumber> number; // when K is closed and orientable
};

// Free coordinates are reported against a generator evaluating to +1 on the
// fundamental cycle when K is a connected closed oriented 3-manifold.
BerryOutput berry_class(const PhaseData& p, const SimplicialComplex& k, const BerryConfig& cfg = {});
BerryOutput berry_class(const TensorFamily& family, const BerryConfig& cfg = {});

// Phase data whose berry_number is `target` on a closed oriented 3-manifold.
PhaseData synthetic_family(const SimplicialComplex& k, long long target);

// lambda = (-1)^z for a mod-2 2-cochain z.
PhaseData phases_from_z2(const SimplicialComplex& k, const IntVector& z);

// Multiply by seeded random edge phases (pure U(1) gauge change).
PhaseData gauge_perturb(const PhaseData& p, const SimplicialComplex& k, std::uint64_t seed);
GaugeData gauge_perturb(const GaugeData& g, std::uint64_t seed);

}  // namespace paramphase
