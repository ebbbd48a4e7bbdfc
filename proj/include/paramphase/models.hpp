#pragma once

// Reference tensors and seeded random generators used by fixtures and tests.

#include <cmath>
#include <random>
#include <vector>

#include "paramphase/channel.hpp"

namespace paramphase {

// AKLT tensor, d = 3, D = 2: {sqrt(2/3) s+, -sqrt(1/3) sz, -sqrt(2/3) s-} with
// Pauli sz and s+ = |0><1|. Unital and trace preserving.
template <typename Scalar = std::complex<double>>
MpsTensor<Scalar> aklt_tensor() {
  using Real = RealOf<Scalar>;
  Mat<Scalar> sp = Mat<Scalar>::Zero(2, 2), sz = Mat<Scalar>::Zero(2, 2), sm = Mat<Scalar>::Zero(2, 2);
  sp(0, 1) = Scalar(1);
  sm(1, 0) = Scalar(1);
  sz(0, 0) = Scalar(1);
  sz(1, 1) = Scalar(-1);
  const Real a = std::sqrt(Real(2) / Real(3)), b = std::sqrt(Real(1) / Real(3));
  return MpsTensor<Scalar>({Scalar(a) * sp, Scalar(-b) * sz, Scalar(-a) * sm});
}

// Spin-1 S^z in the physical basis ordering of aklt_tensor (m = +1, 0, -1).
inline Mat<std::complex<double>> spin1_sz() {
  Mat<std::complex<double>> s = Mat<std::complex<double>>::Zero(3, 3);
  s(0, 0) = 1.0;
  s(2, 2) = -1.0;
  return s;
}

// Single Kraus matrix U: x -> U x U^dag. Unital, never primitive for D > 1.
template <typename Scalar>
MpsTensor<Scalar> unitary_conjugation_tensor(const Mat<Scalar>& u) {
  return MpsTensor<Scalar>({u});
}

template <typename Rng>
Mat<std::complex<double>> random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat<std::complex<double>> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

// Haar-distributed isometry (rows >= cols): QR of a Gaussian matrix with the
// phases of R's diagonal absorbed into Q.
template <typename Rng>
Mat<std::complex<double>> random_isometry(Index rows, Index cols, Rng& rng) {
  const Mat<std::complex<double>> g = random_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<Mat<std::complex<double>>> qr(g);
  Mat<std::complex<double>> q = qr.householderQ() * Mat<std::complex<double>>::Identity(rows, cols);
  const Mat<std::complex<double>> r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    const auto diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

template <typename Rng>
Mat<std::complex<double>> random_unitary(Index n, Rng& rng) {
  return random_isometry(n, n, rng);
}

// Kraus family read off the blocks of a random (dD) x D isometry.
template <typename Rng>
MpsTensor<std::complex<double>> random_unital_tensor(Index d, Index bond, Rng& rng) {
  const Mat<std::complex<double>> v = random_isometry(d * bond, bond, rng);
  std::vector<Mat<std::complex<double>>> kraus;
  for (Index i = 0; i < d; ++i) kraus.push_back(v.middleRows(i * bond, bond).adjoint());
  return MpsTensor<std::complex<double>>(std::move(kraus));
}

// Faithful density operator W W^dag / Tr with W Gaussian, shifted away from
// singularity.
template <typename Rng>
DensityOp<std::complex<double>> random_density(Index n, Rng& rng, double floor = 0.05) {
  const Mat<std::complex<double>> w = random_gaussian(n, n, rng);
  Mat<std::complex<double>> rho = w * w.adjoint();
  rho /= rho.trace();
  rho = (1.0 - floor) * rho + floor * Mat<std::complex<double>>::Identity(n, n) / double(n);
  return DensityOp<std::complex<double>>(rho);
}

}  // namespace paramphase
