#pragma once

// Renormalization flow Phi -> Phi o Phi on generalized MPS tensors and its
// zero-correlation-length fixed points x -> x rho^{1/2}.

#include <vector>

#include "paramphase/channel.hpp"

namespace paramphase {

template <typename Scalar>
struct FixedPointData {
  DensityOp<Scalar> rho;
  Index phys_dim = 0;                         // dimension of the blocked physical space
  int iterations = 0;
  RealOf<Scalar> residual = 0;                // distance of the final channel from Tr[rho .] 1
  std::vector<RealOf<Scalar>> residual_history;  // one entry per iteration
  MpsTensor<Scalar> tensor;                   // final compressed tensor
};

// Two sites into one: Kraus family {T_i T_j}, pair (i, j) at index i*d + j.
template <typename Scalar>
MpsTensor<Scalar> block(const MpsTensor<Scalar>& t) {
  const Index d = t.phys_dim();
  std::vector<Mat<Scalar>> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out.push_back(t[i] * t[j]);
  return MpsTensor<Scalar>(std::move(out));
}

// Unitary recombination on the physical index: keep an orthonormal basis of
// the span of the Kraus matrices (singular values above `tol`), weighted so the
// channel is unchanged.
template <typename Scalar>
MpsTensor<Scalar> compress(const MpsTensor<Scalar>& t, RealOf<Scalar> tol = RealOf<Scalar>(1e-12)) {
  const Index D = t.bond_dim();
  Mat<Scalar> stacked(D * D, t.phys_dim());
  for (Index i = 0; i < t.phys_dim(); ++i) stacked.col(i) = detail::vec<Scalar>(t[i]);
  Eigen::BDCSVD<Mat<Scalar>> svd(stacked, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol) ++rank;
  if (rank == 0) throw ValidationError("cannot compress an all-zero tensor");
  std::vector<Mat<Scalar>> out;
  out.reserve(static_cast<std::size_t>(rank));
  for (Index k = 0; k < rank; ++k) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> column = svd.matrixU().col(k) * s(k);
    out.push_back(detail::unvec<Scalar>(column, D));
  }
  return MpsTensor<Scalar>(std::move(out));
}

// Kraus family {e_ij rho^{1/2}}, matrix unit e_ij at index i*D + j. Its channel
// is exactly x -> Tr[rho x] 1.
template <typename Scalar>
MpsTensor<Scalar> fixed_tensor(const DensityOp<Scalar>& rho, RealOf<Scalar> tol = RealOf<Scalar>(1e-10)) {
  if (!rho.is_faithful(tol)) throw ValidationError("density operator is not faithful");
  const Index D = rho.dim();
  const Mat<Scalar> root = rho.sqrt();
  std::vector<Mat<Scalar>> out;
  out.reserve(static_cast<std::size_t>(D * D));
  for (Index i = 0; i < D; ++i)
    for (Index j = 0; j < D; ++j) {
      Mat<Scalar> m = Mat<Scalar>::Zero(D, D);
      m.row(i) = root.row(j);
      out.push_back(std::move(m));
    }
  return MpsTensor<Scalar>(std::move(out));
}

struct RgOptions {
  double tol = 1e-8;            // stopping distance
  double compress_tol = 1e-12;  // singular-value cutoff
  int max_iter = 16;
  Tolerances tolerances;
};

template <typename Scalar>
FixedPointData<Scalar> rg_flow(const MpsTensor<Scalar>& t, const RgOptions& opt = {}) {
  using Real = RealOf<Scalar>;
  if (opt.max_iter < 1) throw ValidationError("max_iter must be at least 1");
  // Rejects non-unital and non-primitive input before any blocking.
  stationary_state(channel_from_tensor(t), opt.tolerances);

  MpsTensor<Scalar> current = t;
  std::vector<Real> history;
  for (int it = 1; it <= opt.max_iter; ++it) {
    current = compress(block(current), Real(opt.compress_tol));
    const auto channel = channel_from_tensor(current);
    auto rho = stationary_state(channel, opt.tolerances);
    const Real residual = distance_from_limit(channel, rho);
    history.push_back(residual);
    if (residual <= Real(opt.tol)) {
      return FixedPointData<Scalar>{std::move(rho), current.phys_dim(), it, residual, std::move(history),
                                    std::move(current)};
    }
  }
  throw ComputationError("no convergence after " + std::to_string(opt.max_iter) + " iterations");
}

}  // namespace paramphase
