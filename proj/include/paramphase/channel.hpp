#pragma once

// Generalized MPS tensors with finite bond space, their transfer channels and
// the state they define on the infinite chain.
//
// Convention used throughout the library:
//   Phi(x)      = sum_i T_i x T_i^dag          (acts on observables)
//   Phi^dag(k)  = sum_i T_i^dag k T_i          (acts on density operators)
// so that Tr[Phi^dag(k) x] = Tr[k Phi(x)]. Matrices are vectorized column-major,
// vec(A x B^dag) = (conj(B) (x) A) vec(x).

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paramphase/errors.hpp"

namespace paramphase {

using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename Scalar>
using ComplexOf = std::complex<RealOf<Scalar>>;

namespace detail {

template <typename Scalar, typename Derived>
Mat<Scalar> narrow(const Eigen::MatrixBase<Derived>& m) {
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    return m.template cast<Scalar>();
  } else {
    return m.real().template cast<Scalar>();
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

// Column-major reshape of a length D*D vector into a D x D matrix.
template <typename Scalar>
Mat<Scalar> unvec(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, Index d) {
  return Eigen::Map<const Mat<Scalar>>(v.data(), d, d);
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vec(const Mat<Scalar>& m) {
  return Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>(m.data(), m.size());
}

// Eigenvalues sorted by descending modulus; ties resolved by real then imaginary part.
template <typename RealT>
void sort_by_modulus(std::vector<std::complex<RealT>>& values) {
  std::stable_sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    const RealT ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > RealT(1e-13)) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

}  // namespace detail

// Generalized MPS tensor restricted to a d-dimensional physical space and a
// D-dimensional bond space: the list T_i = T(|i>) of D x D matrices.
template <typename Scalar>
class MpsTensor {
 public:
  using Matrix = Mat<Scalar>;

  explicit MpsTensor(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("tensor needs at least one Kraus matrix");
    const Index d = kraus_.front().rows();
    if (d < 1) throw ValidationError("bond dimension must be positive");
    for (const auto& t : kraus_) {
      if (t.rows() != d || t.cols() != d)
        throw ValidationError("Kraus matrices must all be square of the same dimension");
      if (!detail::all_finite(t)) throw ValidationError("Kraus matrix has non-finite entries");
    }
  }

  Index phys_dim() const { return static_cast<Index>(kraus_.size()); }
  Index bond_dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& operator[](Index i) const { return kraus_[static_cast<std::size_t>(i)]; }

  // || sum_i T_i T_i^dag - 1 ||_2
  RealOf<Scalar> unitality_residual() const {
    Matrix acc = Matrix::Zero(bond_dim(), bond_dim());
    for (const auto& t : kraus_) acc.noalias() += t * t.adjoint();
    acc -= Matrix::Identity(bond_dim(), bond_dim());
    return acc.operatorNorm();
  }

  bool is_unital(RealOf<Scalar> tol) const { return unitality_residual() <= tol; }

  // T_i -> U T_i U^dag.
  MpsTensor conjugated(const Matrix& u) const {
    if (u.rows() != bond_dim() || u.cols() != bond_dim())
      throw ValidationError("gauge unitary has wrong dimension");
    std::vector<Matrix> out;
    out.reserve(kraus_.size());
    for (const auto& t : kraus_) out.push_back(u * t * u.adjoint());
    return MpsTensor(std::move(out));
  }

  template <typename Other>
  MpsTensor<Other> cast() const {
    std::vector<Mat<Other>> out;
    out.reserve(kraus_.size());
    for (const auto& t : kraus_) out.push_back(t.template cast<Other>());
    return MpsTensor<Other>(std::move(out));
  }

 private:
  std::vector<Matrix> kraus_;
};

// Completely positive map x -> sum_i T_i x T_i^dag on D x D matrices.
template <typename Scalar>
class QuantumChannel {
 public:
  using Matrix = Mat<Scalar>;
  using Complex = ComplexOf<Scalar>;

  explicit QuantumChannel(MpsTensor<Scalar> t) : tensor_(std::move(t)) {}

  Index dim() const { return tensor_.bond_dim(); }
  const std::vector<Matrix>& kraus() const { return tensor_.kraus(); }
  const MpsTensor<Scalar>& tensor() const { return tensor_; }
  RealOf<Scalar> unitality_residual() const { return tensor_.unitality_residual(); }

  void require_unital(RealOf<Scalar> tol) const {
    if (unitality_residual() > tol)
      throw ValidationError("channel is not unital (residual " +
                            std::to_string(static_cast<double>(unitality_residual())) + ")");
  }

  Matrix apply(const Matrix& x) const {
    check_dim(x);
    Matrix out = Matrix::Zero(dim(), dim());
    for (const auto& t : kraus()) out.noalias() += t * x * t.adjoint();
    return out;
  }

  Matrix apply_adjoint(const Matrix& k) const {
    check_dim(k);
    Matrix out = Matrix::Zero(dim(), dim());
    for (const auto& t : kraus()) out.noalias() += t.adjoint() * k * t;
    return out;
  }

  // D^2 x D^2 matrix E with vec(Phi(x)) = E vec(x).
  Matrix transfer_matrix() const {
    const Index d = dim();
    Matrix e = Matrix::Zero(d * d, d * d);
    for (const auto& t : kraus()) e += Eigen::kroneckerProduct(t.conjugate(), t).eval();
    return e;
  }

 private:
  void check_dim(const Matrix& x) const {
    if (x.rows() != dim() || x.cols() != dim())
      throw ValidationError("operand dimension does not match the bond dimension");
  }

  MpsTensor<Scalar> tensor_;
};

template <typename Scalar>
QuantumChannel<Scalar> channel_from_tensor(const MpsTensor<Scalar>& t) {
  return QuantumChannel<Scalar>(t);
}

template <typename Scalar>
Mat<Scalar> apply(const QuantumChannel<Scalar>& c, const Mat<Scalar>& x) {
  return c.apply(x);
}

template <typename Scalar>
Mat<Scalar> apply_adjoint(const QuantumChannel<Scalar>& c, const Mat<Scalar>& k) {
  return c.apply_adjoint(k);
}

// Positive semidefinite unit-trace operator on the bond space.
template <typename Scalar>
class DensityOp {
 public:
  using Matrix = Mat<Scalar>;

  explicit DensityOp(Matrix rho, RealOf<Scalar> tol = RealOf<Scalar>(1e-10)) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
      throw ValidationError("density operator must be a non-empty square matrix");
    if (!detail::all_finite(rho_)) throw ValidationError("density operator has non-finite entries");
    if ((rho_ - rho_.adjoint()).norm() > tol) throw ValidationError("density operator is not Hermitian");
    if (std::abs(rho_.trace() - Scalar(1)) > tol) throw ValidationError("density operator must have unit trace");
    rho_ = (rho_ + rho_.adjoint().eval()) / RealOf<Scalar>(2);
    eigenvalues_ = Eigen::SelfAdjointEigenSolver<Matrix>(rho_, Eigen::EigenvaluesOnly).eigenvalues();
    if (eigenvalues_(0) < -tol) throw ValidationError("density operator is not positive semidefinite");
  }

  const Matrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  // Ascending.
  const Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1>& spectrum() const { return eigenvalues_; }
  RealOf<Scalar> min_eigenvalue() const { return eigenvalues_(0); }
  bool is_faithful(RealOf<Scalar> tol) const { return min_eigenvalue() > tol; }

  Matrix sqrt() const { return Eigen::SelfAdjointEigenSolver<Matrix>(rho_).operatorSqrt(); }

 private:
  Matrix rho_;
  Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> eigenvalues_;
};

// Stinespring/Popescu isometry V : C^D -> C^d (x) C^D with Phi(x) = V^dag (1 (x) x) V.
// Block i of V is T_i^dag.
template <typename Scalar>
class Isometry {
 public:
  using Matrix = Mat<Scalar>;

  Isometry(Matrix v, Index phys_dim, RealOf<Scalar> tol = RealOf<Scalar>(1e-10))
      : v_(std::move(v)), phys_dim_(phys_dim) {
    if (phys_dim_ < 1 || v_.cols() < 1 || v_.rows() != phys_dim_ * v_.cols())
      throw ValidationError("isometry must have shape (d*D) x D");
    const Matrix gram = v_.adjoint() * v_;
    if ((gram - Matrix::Identity(v_.cols(), v_.cols())).norm() > tol)
      throw ValidationError("matrix is not an isometry");
  }

  const Matrix& matrix() const { return v_; }
  Index phys_dim() const { return phys_dim_; }
  Index bond_dim() const { return v_.cols(); }

 private:
  Matrix v_;
  Index phys_dim_;
};

template <typename Scalar>
Isometry<Scalar> isometry_of(const MpsTensor<Scalar>& t, RealOf<Scalar> tol = RealOf<Scalar>(1e-10)) {
  if (!t.is_unital(tol)) throw ValidationError("tensor is not unital");
  const Index d = t.phys_dim(), D = t.bond_dim();
  Mat<Scalar> v(d * D, D);
  for (Index i = 0; i < d; ++i) v.middleRows(i * D, D) = t[i].adjoint();
  return Isometry<Scalar>(std::move(v), d, tol);
}

template <typename Scalar>
MpsTensor<Scalar> tensor_of(const Isometry<Scalar>& v) {
  const Index D = v.bond_dim();
  std::vector<Mat<Scalar>> kraus;
  kraus.reserve(static_cast<std::size_t>(v.phys_dim()));
  for (Index i = 0; i < v.phys_dim(); ++i) kraus.push_back(v.matrix().middleRows(i * D, D).adjoint());
  return MpsTensor<Scalar>(std::move(kraus));
}

// V^dag (1 (x) x) V, the isometric form of the channel.
template <typename Scalar>
Mat<Scalar> apply_isometric(const Isometry<Scalar>& v, const Mat<Scalar>& x) {
  const Mat<Scalar> lifted =
      Eigen::kroneckerProduct(Mat<Scalar>::Identity(v.phys_dim(), v.phys_dim()), x).eval();
  return v.matrix().adjoint() * lifted * v.matrix();
}

template <typename RealT>
struct TransferSpectrum {
  std::vector<std::complex<RealT>> eigenvalues;  // descending modulus
  RealT gap = 0;                                  // 1 - |lambda_2|
};

template <typename Scalar>
TransferSpectrum<RealOf<Scalar>> transfer_spectrum(const QuantumChannel<Scalar>& c,
                                                   const Tolerances& tol = {}) {
  using Real = RealOf<Scalar>;
  c.require_unital(Real(tol.algebraic));
  const Mat<ComplexOf<Scalar>> e = c.transfer_matrix().template cast<ComplexOf<Scalar>>();
  Eigen::ComplexEigenSolver<Mat<ComplexOf<Scalar>>> solver(e, false);
  if (solver.info() != Eigen::Success) throw ComputationError("eigendecomposition failed");
  TransferSpectrum<Real> out;
  out.eigenvalues.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  detail::sort_by_modulus(out.eigenvalues);
  out.gap = out.eigenvalues.size() > 1 ? Real(1) - std::abs(out.eigenvalues[1]) : Real(1);
  if (std::abs(out.eigenvalues.front() - std::complex<Real>(1)) > Real(tol.spectral))
    throw ComputationError("leading transfer eigenvalue is not 1");
  return out;
}

// Fixed point of the adjoint channel, normalized to unit trace.
template <typename Scalar>
DensityOp<Scalar> stationary_state(const QuantumChannel<Scalar>& c, const Tolerances& tol = {}) {
  using Real = RealOf<Scalar>;
  using Complex = ComplexOf<Scalar>;
  c.require_unital(Real(tol.algebraic));
  const Index D = c.dim();
  const Mat<Complex> adj = c.transfer_matrix().adjoint().template cast<Complex>();
  Eigen::ComplexEigenSolver<Mat<Complex>> solver(adj, true);
  if (solver.info() != Eigen::Success) throw ComputationError("eigendecomposition failed");

  Index lead = 0;
  Index peripheral = 0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Real m = std::abs(solver.eigenvalues()(i));
    if (m >= Real(1) - Real(tol.spectral)) ++peripheral;
    if (m > std::abs(solver.eigenvalues()(lead))) lead = i;
  }
  if (peripheral != 1) throw ComputationError("not primitive: peripheral spectrum is degenerate");

  Mat<Complex> rho = detail::unvec<Complex>(solver.eigenvectors().col(lead), D);
  const Complex tr = rho.trace();
  if (std::abs(tr) < Real(tol.spectral)) throw ComputationError("stationary state has vanishing trace");
  rho /= tr;
  rho = (rho + rho.adjoint().eval()) / Real(2);
  const Real lowest = Eigen::SelfAdjointEigenSolver<Mat<Complex>>(rho, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (lowest < -Real(tol.spectral)) throw ComputationError("stationary state is not positive");
  return DensityOp<Scalar>(detail::narrow<Scalar>(rho), Real(tol.spectral));
}

// Smallest n with span{T_{i1}...T_{in}} = M_D, or nullopt if none up to n_max.
template <typename Scalar>
std::optional<int> injectivity_length(const MpsTensor<Scalar>& t, int n_max,
                                      RealOf<Scalar> tol = RealOf<Scalar>(1e-10)) {
  using Real = RealOf<Scalar>;
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  const Index D = t.bond_dim();
  if (D == 1) return 1;
  const Index full = D * D;

  auto orthonormal_span = [tol](const Mat<Scalar>& columns) {
    Eigen::JacobiSVD<Mat<Scalar>> svd(columns, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const Real cutoff = tol * std::max(Real(1), s.size() ? s(0) : Real(0));
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff) ++rank;
    return Mat<Scalar>(svd.matrixU().leftCols(rank));
  };

  Mat<Scalar> stacked(full, t.phys_dim());
  for (Index i = 0; i < t.phys_dim(); ++i) stacked.col(i) = detail::vec<Scalar>(t[i]);
  Mat<Scalar> basis = orthonormal_span(stacked);
  for (int n = 1; n <= n_max; ++n) {
    if (basis.cols() == full) return n;
    if (n == n_max) break;
    Mat<Scalar> next(full, t.phys_dim() * basis.cols());
    for (Index i = 0; i < t.phys_dim(); ++i)
      for (Index k = 0; k < basis.cols(); ++k) {
        const Mat<Scalar> x = detail::unvec<Scalar>(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(basis.col(k)), D);
        next.col(i * basis.cols() + k) = detail::vec<Scalar>(Mat<Scalar>(t[i] * x));
      }
    basis = orthonormal_span(next);
  }
  return std::nullopt;
}

// Semi-finitely correlated state: a unital channel together with a stationary
// density operator.
template <typename Scalar>
class Sfcs {
 public:
  Sfcs(QuantumChannel<Scalar> channel, DensityOp<Scalar> rho, const Tolerances& tol = {})
      : channel_(std::move(channel)), rho_(std::move(rho)) {
    using Real = RealOf<Scalar>;
    channel_.require_unital(Real(tol.algebraic));
    if (rho_.dim() != channel_.dim()) throw ValidationError("density operator has wrong dimension");
    const Real drift = (channel_.apply_adjoint(rho_.matrix()) - rho_.matrix()).norm();
    if (drift > Real(tol.algebraic)) throw ValidationError("density operator is not stationary");
  }

  // Pairs the channel with its computed stationary state.
  static Sfcs from_channel(const QuantumChannel<Scalar>& channel, const Tolerances& tol = {}) {
    return Sfcs(channel, stationary_state(channel, tol), tol);
  }

  const QuantumChannel<Scalar>& channel() const { return channel_; }
  const DensityOp<Scalar>& rho() const { return rho_; }

 private:
  QuantumChannel<Scalar> channel_;
  DensityOp<Scalar> rho_;
};

namespace detail {

// E(O (x) x) = sum_ij <i|O|j> T_i x T_j^dag
template <typename Scalar>
Mat<ComplexOf<Scalar>> dressed_step(const MpsTensor<Scalar>& t, const Mat<ComplexOf<Scalar>>& op,
                                    const Mat<ComplexOf<Scalar>>& x) {
  using Complex = ComplexOf<Scalar>;
  if (op.rows() != t.phys_dim() || op.cols() != t.phys_dim())
    throw ValidationError("local operator must act on the physical space");
  const Index D = t.bond_dim();
  Mat<Complex> out = Mat<Complex>::Zero(D, D);
  for (Index j = 0; j < t.phys_dim(); ++j) {
    const Mat<Complex> right = x * t[j].adjoint().template cast<Complex>();
    for (Index i = 0; i < t.phys_dim(); ++i) {
      if (op(i, j) == Complex(0)) continue;
      out.noalias() += op(i, j) * (t[i].template cast<Complex>() * right);
    }
  }
  return out;
}

}  // namespace detail

// omega(O_1 (x) ... (x) O_n) = Tr[rho E(O_1 (x) E(O_2 (x) ... E(O_n (x) 1)))]
template <typename Scalar>
ComplexOf<Scalar> expectation(const Sfcs<Scalar>& s, const std::vector<Mat<ComplexOf<Scalar>>>& ops) {
  using Complex = ComplexOf<Scalar>;
  const auto& t = s.channel().tensor();
  Mat<Complex> x = Mat<Complex>::Identity(t.bond_dim(), t.bond_dim());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) x = detail::dressed_step(t, *it, x);
  return (s.rho().matrix().template cast<Complex>() * x).trace();
}

// omega(A (x) 1^{r-1} (x) B)
template <typename Scalar>
ComplexOf<Scalar> two_point(const Sfcs<Scalar>& s, const Mat<ComplexOf<Scalar>>& a,
                            const Mat<ComplexOf<Scalar>>& b, int r) {
  using Complex = ComplexOf<Scalar>;
  if (r < 1) throw ValidationError("separation must be at least 1");
  const auto& t = s.channel().tensor();
  const QuantumChannel<Complex> phi(t.template cast<Complex>());
  Mat<Complex> x = detail::dressed_step(t, b, Mat<Complex>::Identity(t.bond_dim(), t.bond_dim()));
  for (int k = 1; k < r; ++k) x = phi.apply(x);
  x = detail::dressed_step(t, a, x);
  return (s.rho().matrix().template cast<Complex>() * x).trace();
}

template <typename Scalar>
ComplexOf<Scalar> connected_two_point(const Sfcs<Scalar>& s, const Mat<ComplexOf<Scalar>>& a,
                                      const Mat<ComplexOf<Scalar>>& b, int r) {
  return two_point(s, a, b, r) - expectation(s, {a}) * expectation(s, {b});
}

namespace detail {

// vec(1) vec(rho^T)^T, the transfer matrix of x -> Tr[rho x] 1.
template <typename Scalar>
Mat<Scalar> rank_one_limit(const Mat<Scalar>& rho) {
  const Index D = rho.rows();
  const Mat<Scalar> one = Mat<Scalar>::Identity(D, D);
  const Mat<Scalar> rho_t = rho.transpose();
  return vec<Scalar>(one) * vec<Scalar>(rho_t).transpose();
}

template <typename Scalar>
Mat<Scalar> matrix_power(Mat<Scalar> base, int n) {
  Mat<Scalar> result = Mat<Scalar>::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

}  // namespace detail

// Operator 2-norm distance of the transfer matrix of Phi from that of
// x -> Tr[rho x] 1.
template <typename Scalar>
RealOf<Scalar> distance_from_limit(const QuantumChannel<Scalar>& c, const DensityOp<Scalar>& rho, int n = 1) {
  const Mat<Scalar> diff = detail::matrix_power(c.transfer_matrix(), n) - detail::rank_one_limit(rho.matrix());
  return diff.operatorNorm();
}

template <typename RealT>
struct SplitPurityReport {
  std::vector<std::complex<RealT>> peripheral;  // eigenvalues on the unit circle
  bool primitive = false;
  std::optional<RealT> distance;  // || Phi^N - Tr[rho .] 1 ||, primitive channels only
};

template <typename Scalar>
SplitPurityReport<RealOf<Scalar>> check_split_purity(const QuantumChannel<Scalar>& c, int n,
                                                     const Tolerances& tol = {}) {
  using Real = RealOf<Scalar>;
  if (n < 0) throw ValidationError("power must be non-negative");
  const auto spec = transfer_spectrum(c, tol);
  SplitPurityReport<Real> report;
  for (const auto& l : spec.eigenvalues)
    if (std::abs(l) >= Real(1) - Real(tol.spectral)) report.peripheral.push_back(l);
  report.primitive = report.peripheral.size() == 1;
  if (report.primitive) report.distance = distance_from_limit(c, stationary_state(c, tol), n);
  return report;
}

}  // namespace paramphase
