#include "paramphase/berry.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace paramphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Simplex face(const Simplex& s, std::size_t i) {
  Simplex out;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) out.push_back(s[j]);
  return out;
}

Eigen::MatrixXcd edge_unitary(const GaugeData& g, const SimplicialComplex& k, int a, int b) {
  if (a < b) return g.unitaries.at(k.require_index({a, b}));
  return g.unitaries.at(k.require_index({b, a})).adjoint();
}

void require_three_dimensional(const SimplicialComplex& k) {
  if (k.dimension() != 3) throw ValidationError("higher Berry data needs a 3-dimensional complex");
}

void check_phase_data(const PhaseData& p, const SimplicialComplex& k, const BerryConfig& cfg) {
  if (p.lambda.size() != k.count(2)) throw ValidationError("phase data does not match the complex");
  if (!p.dev.empty() && p.dev.size() != p.lambda.size()) throw ValidationError("deviation list has wrong length");
  for (std::size_t t = 0; t < p.lambda.size(); ++t) {
    if (!std::isfinite(p.lambda[t].real()) || !std::isfinite(p.lambda[t].imag()) ||
        std::abs(std::abs(p.lambda[t]) - 1.0) > 1e-8)
      throw ValidationError("triangle phase is not a unit complex number");
    if (!p.dev.empty() && p.dev[t] > cfg.dev_max) throw ComputationError("triangle product is not scalar");
  }
}

}  // namespace

double wrap_angle(double x) {
  double r = std::fmod(x + kPi, kTwoPi);
  if (r <= 0) r += kTwoPi;
  return r - kPi;
}

double principal_arg(std::complex<double> z) { return wrap_angle(std::arg(z)); }

// ---------------------------------------------------------------------------

TensorFamily::TensorFamily(SimplicialComplex complex, std::vector<Tensor> tensors, const BerryConfig& cfg)
    : complex_(std::move(complex)), tensors_(std::move(tensors)) {
  if (tensors_.size() != static_cast<std::size_t>(complex_.vertex_count()))
    throw ValidationError("every vertex needs a tensor");
  const Index d = tensors_.front().phys_dim(), bond = tensors_.front().bond_dim();
  const int n_max = cfg.injectivity_n_max > 0 ? cfg.injectivity_n_max : static_cast<int>(2 * bond * bond);
  for (const auto& t : tensors_) {
    if (t.phys_dim() != d || t.bond_dim() != bond)
      throw ValidationError("family tensors must share physical and bond dimensions");
    if (!t.is_unital(cfg.tol.algebraic)) throw ValidationError("family tensor is not unital");
    if (!injectivity_length(t, n_max)) throw ValidationError("family tensor is not injective");
  }
}

TensorFamily constant_family(const SimplicialComplex& k, const Tensor& t, const BerryConfig& cfg) {
  return TensorFamily(k, std::vector<Tensor>(static_cast<std::size_t>(k.vertex_count()), t), cfg);
}

EdgeGauge edge_gauge(const Tensor& u, const Tensor& v, const BerryConfig& cfg) {
  if (u.phys_dim() != v.phys_dim() || u.bond_dim() != v.bond_dim())
    throw ValidationError("edge tensors must share dimensions");
  const Index bond = u.bond_dim();
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(bond * bond, bond * bond);
  for (Index i = 0; i < u.phys_dim(); ++i) mixed += Eigen::kroneckerProduct(v[i].conjugate(), u[i]).eval();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mixed, true);
  if (solver.info() != Eigen::Success) throw ComputationError("eigendecomposition failed");
  const auto& values = solver.eigenvalues();
  Index lead = 0;
  for (Index i = 1; i < values.size(); ++i)
    if (std::abs(values(i)) > std::abs(values(lead))) lead = i;
  for (Index i = 0; i < values.size(); ++i)
    if (i != lead && std::abs(values(i)) >= std::abs(values(lead)) - cfg.tol.spectral)
      throw ComputationError("ambiguous gauge: leading mixed-transfer eigenvalue is not simple");

  EdgeGauge out;
  out.eta = std::abs(values(lead));
  if (out.eta < cfg.eta_min) throw ComputationError("patches too far apart");
  const Eigen::VectorXcd column = solver.eigenvectors().col(lead);
  const Eigen::MatrixXcd m = Eigen::Map<const Eigen::MatrixXcd>(column.data(), bond, bond);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.unitary = svd.matrixU() * svd.matrixV().adjoint();
  const std::complex<double> tr = out.unitary.trace();
  if (std::abs(tr) > 1e-8) out.unitary *= std::conj(tr) / std::abs(tr);
  return out;
}

GaugeData gauge_data(const TensorFamily& family, const BerryConfig& cfg) {
  GaugeData g;
  for (const auto& e : family.complex().simplices(1)) {
    auto eg = edge_gauge(family.at(e[0]), family.at(e[1]), cfg);
    g.eta.push_back(eg.eta);
    g.unitaries.push_back(std::move(eg.unitary));
  }
  return g;
}

TrianglePhase triangle_phase(const GaugeData& g, const SimplicialComplex& k, const Simplex& triangle) {
  if (triangle.size() != 3) throw ValidationError("triangle needs three vertices");
  if (g.unitaries.size() != k.count(1)) throw ValidationError("gauge data does not match the complex");
  const int u = triangle[0], v = triangle[1], w = triangle[2];
  const Eigen::MatrixXcd p = edge_unitary(g, k, u, v) * edge_unitary(g, k, v, w) * edge_unitary(g, k, w, u);
  const std::complex<double> tr = p.trace();
  if (std::abs(tr) < 1e-12) throw ComputationError("no scalar part");
  TrianglePhase out;
  out.lambda = tr / std::abs(tr);
  const Index bond = p.rows();
  out.dev = (p - out.lambda * Eigen::MatrixXcd::Identity(bond, bond)).norm() / std::sqrt(double(bond));
  return out;
}

PhaseData phase_data(const GaugeData& g, const SimplicialComplex& k, const BerryConfig& cfg) {
  PhaseData p;
  for (const auto& t : k.simplices(2)) {
    const auto tp = triangle_phase(g, k, t);
    if (tp.dev > cfg.dev_max) throw ComputationError("triangle product is not scalar");
    p.lambda.push_back(tp.lambda);
    p.dev.push_back(tp.dev);
  }
  return p;
}

double tet_flux(const PhaseData& p, const SimplicialComplex& k, const Simplex& tet, const BerryConfig& cfg) {
  if (tet.size() != 4) throw ValidationError("tetrahedron needs four vertices");
  if (p.lambda.size() != k.count(2)) throw ValidationError("phase data does not match the complex");
  double bracket = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double a = principal_arg(p.lambda[k.require_index(face(tet, i))]);
    bracket += (i % 2 == 0) ? a : -a;
  }
  const double g = wrap_angle(bracket);
  if (kPi - std::abs(g) < cfg.branch_margin) throw ComputationError("flux on branch cut");
  return g;
}

BerryNumber berry_number(const PhaseData& p, const SimplicialComplex& k, const std::vector<int>& orientation,
                         const BerryConfig& cfg) {
  require_three_dimensional(k);
  check_phase_data(p, k, cfg);
  const auto& tets = k.simplices(3);
  if (orientation.size() != tets.size()) throw ValidationError("orientation does not match the complex");
  double sum = 0;
  for (std::size_t t = 0; t < tets.size(); ++t) sum += orientation[t] * tet_flux(p, k, tets[t], cfg);
  BerryNumber out;
  out.value = std::llround(-sum / kTwoPi);
  out.residual = std::abs(-sum - kTwoPi * static_cast<double>(out.value));
  if (out.residual > cfg.quantization_tol) throw ComputationError("not quantized");
  return out;
}

BerryNumber berry_number(const PhaseData& p, const SimplicialComplex& k, const BerryConfig& cfg) {
  require_three_dimensional(k);
  return berry_number(p, k, fundamental_cycle(k), cfg);
}

BerryNumber berry_number(const TensorFamily& family, const BerryConfig& cfg) {
  const auto& k = family.complex();
  return berry_number(phase_data(gauge_data(family, cfg), k, cfg), k, cfg);
}

BerryOutput berry_class(const PhaseData& p, const SimplicialComplex& k, const BerryConfig& cfg) {
  require_three_dimensional(k);
  check_phase_data(p, k, cfg);
  std::vector<double> args(p.lambda.size());
  for (std::size_t t = 0; t < args.size(); ++t) args[t] = principal_arg(p.lambda[t]);

  BerryOutput out;
  for (const auto& tet : k.simplices(3)) {
    const double g = tet_flux(p, k, tet, cfg);
    double db = 0;
    for (std::size_t i = 0; i < 4; ++i) db += (i % 2 == 0 ? 1.0 : -1.0) * args[k.require_index(face(tet, i))];
    const double c = (db - g) / kTwoPi;
    const double rounded = std::round(c);
    if (std::abs(c - rounded) > cfg.integrality_tol) throw ComputationError("internal inconsistency: non-integral flux cocycle");
    out.flux.push_back(g);
    out.cocycle.emplace_back(static_cast<long long>(rounded));
  }

  CohomologyGroup h3(k, 3);
  std::optional<std::vector<int>> orientation;
  try {
    orientation = fundamental_cycle(k);
  } catch (const ComputationError&) {
  }
  if (orientation && h3.group().free_rank == 1) {
    if (evaluate(h3.group().generators.back(), *orientation) < 0) h3.negate_free_generator(0);
  }
  out.group = h3.group();
  out.coordinates = h3.classify(out.cocycle);
  if (orientation) out.number = berry_number(p, k, *orientation, cfg);
  return out;
}

BerryOutput berry_class(const TensorFamily& family, const BerryConfig& cfg) {
  const auto& k = family.complex();
  return berry_class(phase_data(gauge_data(family, cfg), k, cfg), k, cfg);
}

PhaseData synthetic_family(const SimplicialComplex& k, long long target) {
  require_three_dimensional(k);
  const auto signs = fundamental_cycle(k);
  const CohomologyGroup h3(k, 3);
  if (h3.group().free_rank == 0) throw ValidationError("H^3 has no free part");
  IntVector n = h3.group().generators[h3.group().torsion.size()];
  const Integer e = evaluate(n, signs);
  if (e == -1) {
    for (auto& v : n) v = -v;
  } else if (e != 1) {
    throw ComputationError("free generator does not evaluate to +-1");
  }

  const auto tets = static_cast<Eigen::Index>(k.count(3));
  const double spread = -kTwoPi * static_cast<double>(target) / static_cast<double>(tets);
  if (std::abs(spread) > kPi - 1e-3) throw ValidationError("target too large for this triangulation");
  RealCochain rhs(tets);
  for (Eigen::Index t = 0; t < tets; ++t)
    rhs(t) = signs[static_cast<std::size_t>(t)] * spread +
             kTwoPi * static_cast<double>(target) * n[static_cast<std::size_t>(t)].convert_to<double>();
  const RealCochain b = solve_real_coboundary(k, 2, rhs);

  PhaseData p;
  for (Eigen::Index t = 0; t < b.size(); ++t) {
    p.lambda.push_back(std::polar(1.0, b(t)));
    p.dev.push_back(0.0);
  }
  return p;
}

PhaseData phases_from_z2(const SimplicialComplex& k, const IntVector& z) {
  if (z.size() != k.count(2)) throw ValidationError("cochain does not match the complex");
  PhaseData p;
  for (const auto& v : z) {
    p.lambda.emplace_back(mod_floor(v, 2) == 0 ? 1.0 : -1.0, 0.0);
    p.dev.push_back(0.0);
  }
  return p;
}

PhaseData gauge_perturb(const PhaseData& p, const SimplicialComplex& k, std::uint64_t seed) {
  if (p.lambda.size() != k.count(2)) throw ValidationError("phase data does not match the complex");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<double> theta(k.count(1));
  for (auto& t : theta) t = angle(rng);
  PhaseData out = p;
  const auto& tris = k.simplices(2);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& s = tris[t];
    const double shift = theta[k.require_index({s[1], s[2]})] - theta[k.require_index({s[0], s[2]})] +
                         theta[k.require_index({s[0], s[1]})];
    out.lambda[t] *= std::polar(1.0, shift);
  }
  return out;
}

GaugeData gauge_perturb(const GaugeData& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  GaugeData out = g;
  for (auto& u : out.unitaries) u *= std::polar(1.0, angle(rng));
  return out;
}

}  // namespace paramphase
