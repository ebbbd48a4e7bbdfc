#include "paramphase/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace paramphase {

namespace {

void check_vertices(const Simplex& s, int vertex_count) {
  for (int v : s)
    if (v < 0 || v >= vertex_count) throw ValidationError("simplex vertex out of range");
}

Simplex sorted_unique(Simplex s) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ValidationError("simplex has a repeated vertex");
  return s;
}

Simplex drop(const Simplex& s, std::size_t i) {
  Simplex out;
  out.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) out.push_back(s[j]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex SimplicialComplex::from_facets(int vertex_count, const std::vector<Simplex>& facets) {
  if (vertex_count < 1) throw ValidationError("complex needs at least one vertex");
  std::vector<std::set<Simplex>> by_dim(1);
  for (int v = 0; v < vertex_count; ++v) by_dim[0].insert({v});
  for (const auto& raw : facets) {
    if (raw.empty()) throw ValidationError("empty simplex");
    const Simplex f = sorted_unique(raw);
    check_vertices(f, vertex_count);
    const int dim = static_cast<int>(f.size()) - 1;
    if (dim > kMaxDimension) throw ValidationError("simplex dimension exceeds 4");
    if (static_cast<int>(by_dim.size()) <= dim) by_dim.resize(static_cast<std::size_t>(dim) + 1);
    // All non-empty subsets.
    const unsigned n = static_cast<unsigned>(f.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex sub;
      for (unsigned b = 0; b < n; ++b)
        if (mask & (1u << b)) sub.push_back(f[b]);
      by_dim[sub.size() - 1].insert(std::move(sub));
    }
  }
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  for (auto& layer : by_dim) k.simplices_.emplace_back(layer.begin(), layer.end());
  k.build_index();
  return k;
}

SimplicialComplex SimplicialComplex::from_simplices(int vertex_count,
                                                    const std::map<int, std::vector<Simplex>>& by_dim) {
  if (vertex_count < 1) throw ValidationError("complex needs at least one vertex");
  int top = 0;
  for (const auto& [dim, list] : by_dim) {
    if (dim < 0 || dim > kMaxDimension) throw ValidationError("simplex dimension out of range");
    if (!list.empty()) top = std::max(top, dim);
  }
  std::vector<std::set<Simplex>> layers(static_cast<std::size_t>(top) + 1);
  for (int v = 0; v < vertex_count; ++v) layers[0].insert({v});
  for (const auto& [dim, list] : by_dim) {
    for (const auto& raw : list) {
      const Simplex s = sorted_unique(raw);
      check_vertices(s, vertex_count);
      if (static_cast<int>(s.size()) != dim + 1)
        throw ValidationError("simplex listed under the wrong dimension");
      if (dim == 0) continue;
      if (!layers[static_cast<std::size_t>(dim)].insert(s).second)
        throw ValidationError("duplicate simplex");
    }
  }
  for (int dim = top; dim >= 1; --dim)
    for (const auto& s : layers[static_cast<std::size_t>(dim)])
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!layers[static_cast<std::size_t>(dim) - 1].count(drop(s, i)))
          throw ValidationError("a face of a listed simplex is missing");
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  for (auto& layer : layers) k.simplices_.emplace_back(layer.begin(), layer.end());
  k.build_index();
  return k;
}

void SimplicialComplex::build_index() {
  while (simplices_.size() > 1 && simplices_.back().empty()) simplices_.pop_back();
  index_.assign(simplices_.size(), {});
  for (std::size_t d = 0; d < simplices_.size(); ++d)
    for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d][simplices_[d][i]] = i;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> empty;
  if (k < 0 || k > dimension()) return empty;
  return simplices_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  const int d = static_cast<int>(s.size()) - 1;
  if (d < 0 || d > dimension()) return std::nullopt;
  Simplex key = s;
  std::sort(key.begin(), key.end());
  const auto& idx = index_[static_cast<std::size_t>(d)];
  const auto it = idx.find(key);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::require_index(const Simplex& s) const {
  const auto i = index_of(s);
  if (!i) throw ValidationError("simplex not in complex");
  return *i;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long long>(count(d));
  return chi;
}

// ---------------------------------------------------------------------------
// Built-ins

SimplicialComplex boundary_of_simplex(int n) {
  if (n < 1 || n > SimplicialComplex::kMaxDimension + 1) throw ValidationError("boundary dimension out of range");
  Simplex all(static_cast<std::size_t>(n) + 1);
  for (int v = 0; v <= n; ++v) all[static_cast<std::size_t>(v)] = v;
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < all.size(); ++i) facets.push_back(drop(all, i));
  return SimplicialComplex::from_facets(n + 1, facets);
}

SimplicialComplex circle() { return boundary_of_simplex(2); }

SimplicialComplex projective_plane() {
  return SimplicialComplex::from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

SimplicialComplex torus() { return product_complex(circle(), circle()); }

SimplicialComplex point() { return SimplicialComplex::from_facets(1, {}); }

SimplicialComplex builtin_complex(const std::string& name) {
  if (name == "point") return point();
  if (name == "s1") return circle();
  if (name == "s2") return boundary_of_simplex(3);
  if (name == "s3") return boundary_of_simplex(4);
  if (name == "rp2") return projective_plane();
  if (name == "torus") return torus();
  if (name == "rp2xs1") return product_complex(projective_plane(), circle());
  if (name == "s2xs1") return product_complex(boundary_of_simplex(3), circle());
  throw ValidationError("unknown built-in complex '" + name + "'");
}

SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l) {
  if (k.dimension() + l.dimension() > SimplicialComplex::kMaxDimension)
    throw ValidationError("product dimension exceeds 4");
  const int nk = k.vertex_count(), nl = l.vertex_count();
  std::vector<Simplex> chains;

  auto projections_valid = [&](const std::vector<std::pair<int, int>>& chain) {
    Simplex xs, ys;
    for (const auto& [a, b] : chain) {
      if (xs.empty() || xs.back() != a) xs.push_back(a);
      if (ys.empty() || ys.back() != b) ys.push_back(b);
    }
    return k.index_of(xs).has_value() && l.index_of(ys).has_value();
  };

  std::vector<std::pair<int, int>> chain;
  std::function<void()> extend = [&]() {
    Simplex s;
    for (const auto& [a, b] : chain) s.push_back(a * nl + b);
    chains.push_back(s);
    const auto [a0, b0] = chain.back();
    for (int a = a0; a < nk; ++a)
      for (int b = b0; b < nl; ++b) {
        if (a == a0 && b == b0) continue;
        chain.emplace_back(a, b);
        if (projections_valid(chain)) extend();
        chain.pop_back();
      }
  };
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nl; ++b) {
      chain = {{a, b}};
      extend();
    }
  return SimplicialComplex::from_facets(nk * nl, chains);
}

// ---------------------------------------------------------------------------
// Rings and cochains

Ring Ring::mod(int p) {
  if (p < 2) throw ValidationError("modulus must be a prime >= 2");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw ValidationError("modulus must be prime");
  return {Kind::ModP, p};
}

std::string Ring::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::ModP: return "Z" + std::to_string(p);
    case Kind::Reals: return "R";
  }
  return "?";
}

namespace {

// delta_k for any k >= -1; rows n_{k+1}, cols n_k (n_{-1} = 0).
IntMatrix delta(const SimplicialComplex& k, int degree) {
  const std::size_t rows = k.count(degree + 1);
  const std::size_t cols = degree < 0 ? 0 : k.count(degree);
  IntMatrix m(rows, cols);
  if (degree < 0) return m;
  const auto& upper = k.simplices(degree + 1);
  for (std::size_t r = 0; r < upper.size(); ++r)
    for (std::size_t i = 0; i < upper[r].size(); ++i)
      m(r, k.require_index(drop(upper[r], i))) = (i % 2 == 0) ? 1 : -1;
  return m;
}

Eigen::MatrixXd to_real(const IntMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
  return out;
}

// Dense matrix over Z/p, p prime.
using ModMatrix = std::vector<std::vector<long long>>;

long long inverse_mod(long long a, long long p) {
  long long result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

ModMatrix reduce(const IntMatrix& m, int p) {
  ModMatrix out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = mod_floor(m(i, j), p).convert_to<long long>();
  return out;
}

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(ModMatrix& m, std::size_t cols, long long p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    const long long inv = inverse_mod(m[row][c], p);
    for (auto& v : m[row]) v = v * inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const long long f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<long long>> nullspace_mod(const IntMatrix& a, long long p) {
  ModMatrix m = reduce(a, static_cast<int>(p));
  const std::size_t n = a.cols();
  const auto pivots = rref(m, n, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<long long>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<long long> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - m[r][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

IntMatrix coboundary_matrix(const SimplicialComplex& k, int degree) {
  if (degree < 0 || degree >= k.dimension()) throw ValidationError("coboundary degree out of range");
  return delta(k, degree);
}

IntVector coboundary(const SimplicialComplex& k, int degree, const IntVector& c) {
  if (c.size() != k.count(degree)) throw ValidationError("cochain length does not match the complex");
  return delta(k, degree) * c;
}

Eigen::MatrixXd real_coboundary_matrix(const SimplicialComplex& k, int degree) {
  return to_real(delta(k, degree));
}

// ---------------------------------------------------------------------------
// Groups

std::string AbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z_" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool ClassCoordinates::is_zero() const {
  for (const auto& t : torsion)
    if (t != 0) return false;
  for (const auto& f : free)
    if (f != 0) return false;
  return true;
}

CohomologyGroup::CohomologyGroup(const SimplicialComplex& k, int degree, Ring ring)
    : degree_(degree), ring_(ring) {
  if (degree < 0 || degree > k.dimension()) throw ValidationError("cohomology degree out of range");
  delta_ = delta(k, degree);
  delta_prev_ = delta(k, degree - 1);
  if (ring_.kind == Ring::Kind::ModP) {
    build_mod_p(k);
  } else {
    build_integral(k);
    if (ring_.kind == Ring::Kind::Reals) {
      group_.generators.erase(group_.generators.begin(),
                              group_.generators.begin() + static_cast<std::ptrdiff_t>(group_.torsion.size()));
      group_.torsion.clear();
    }
  }
}

void CohomologyGroup::build_integral(const SimplicialComplex& k) {
  const std::size_t n = k.count(degree_);
  const SmithForm sb = smith_normal_form(delta_);
  const std::size_t m = n - sb.rank;
  kernel_coords_ = sb.v_inv.rows_range(sb.rank, m);
  const IntMatrix kernel_basis = sb.v.cols_range(sb.rank, m);
  const SmithForm sa = smith_normal_form(kernel_coords_ * delta_prev_);
  transform_ = sa.u;
  const IntMatrix gens = kernel_basis * sa.u_inv;
  const auto diag = sa.diagonal();

  unit_count_ = 0;
  for (std::size_t i = 0; i < sa.rank; ++i)
    if (diag[i] == 1) ++unit_count_;
  for (std::size_t i = unit_count_; i < sa.rank; ++i) {
    group_.torsion.push_back(diag[i]);
    group_.generators.push_back(gens.column(i));
  }
  torsion_count_ = group_.torsion.size();
  group_.free_rank = m - sa.rank;
  for (std::size_t i = sa.rank; i < m; ++i) group_.generators.push_back(gens.column(i));
  free_signs_.assign(group_.free_rank, 1);
}

void CohomologyGroup::build_mod_p(const SimplicialComplex& k) {
  const long long p = ring_.p;
  const std::size_t n = k.count(degree_);
  const auto kernel = nullspace_mod(delta_, p);
  const ModMatrix image = reduce(delta_prev_, ring_.p);
  // Columns [image | kernel]; kernel pivots complete a basis of ker mod im.
  const std::size_t na = delta_prev_.cols();
  ModMatrix m(n, std::vector<long long>(na + kernel.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < na; ++j) m[i][j] = image[i][j];
    for (std::size_t j = 0; j < kernel.size(); ++j) m[i][na + j] = kernel[j][i];
  }
  const auto pivots = rref(m, na + kernel.size(), p);
  for (auto c : pivots) {
    if (c < na) continue;
    IntVector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = kernel[c - na][i];
    group_.generators.push_back(std::move(g));
    group_.torsion.push_back(p);
  }
}

ClassCoordinates CohomologyGroup::classify(const IntVector& c) const {
  if (c.size() != delta_.cols()) throw ValidationError("cochain length does not match the complex");
  ClassCoordinates out;
  if (ring_.kind == Ring::Kind::ModP) {
    const long long p = ring_.p;
    for (const auto& v : delta_ * c)
      if (mod_floor(v, p) != 0) throw ComputationError("not a cocycle");
    const std::size_t n = c.size(), na = delta_prev_.cols(), ng = group_.generators.size();
    const ModMatrix image = reduce(delta_prev_, ring_.p);
    ModMatrix m(n, std::vector<long long>(na + ng + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < na; ++j) m[i][j] = image[i][j];
      for (std::size_t j = 0; j < ng; ++j) m[i][na + j] = group_.generators[j][i].convert_to<long long>();
      m[i][na + ng] = mod_floor(c[i], p).convert_to<long long>();
    }
    const auto pivots = rref(m, na + ng, p);
    out.torsion.assign(ng, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (pivots[r] >= na) out.torsion[pivots[r] - na] = m[r][na + ng];
    return out;
  }
  for (const auto& v : delta_ * c)
    if (v != 0) throw ComputationError("not a cocycle");
  const IntVector z = transform_ * (kernel_coords_ * c);
  if (ring_.kind == Ring::Kind::Integers)
    for (std::size_t i = 0; i < torsion_count_; ++i)
      out.torsion.push_back(mod_floor(z[unit_count_ + i], group_.torsion[i]));
  for (std::size_t i = 0; i < group_.free_rank; ++i)
    out.free.push_back(z[unit_count_ + torsion_count_ + i] * free_signs_[i]);
  return out;
}

Eigen::VectorXd CohomologyGroup::classify_real(const RealCochain& c) const {
  if (ring_.kind != Ring::Kind::Reals) throw ValidationError("real classification needs real coefficients");
  if (static_cast<std::size_t>(c.size()) != delta_.cols())
    throw ValidationError("cochain length does not match the complex");
  if ((to_real(delta_) * c).norm() > 1e-9 * std::max(1.0, c.norm())) throw ComputationError("not a cocycle");
  const Eigen::Index na = static_cast<Eigen::Index>(delta_prev_.cols());
  const Eigen::Index ng = static_cast<Eigen::Index>(group_.free_rank);
  Eigen::MatrixXd system(c.size(), na + ng);
  system.leftCols(na) = to_real(delta_prev_);
  for (Eigen::Index j = 0; j < ng; ++j)
    for (Eigen::Index i = 0; i < c.size(); ++i)
      system(i, na + j) = group_.generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].convert_to<double>();
  const Eigen::VectorXd x = system.completeOrthogonalDecomposition().solve(c);
  return x.tail(ng);
}

void CohomologyGroup::negate_free_generator(std::size_t i) {
  if (i >= group_.free_rank) throw ValidationError("free generator index out of range");
  auto& g = group_.generators[group_.generators.size() - group_.free_rank + i];
  for (auto& v : g) v = -v;
  free_signs_[i] = -free_signs_[i];
}

AbelianGroup cohomology_group(const SimplicialComplex& k, int degree, Ring ring) {
  return CohomologyGroup(k, degree, ring).group();
}

ClassCoordinates classify(const SimplicialComplex& k, int degree, const Cochain& c) {
  if (c.degree != degree) throw ValidationError("cochain degree mismatch");
  return CohomologyGroup(k, degree, c.ring).classify(c.values);
}

ClassCoordinates bockstein_of_lift(const SimplicialComplex& k, int degree, const IntVector& lift) {
  if (degree + 1 > k.dimension()) throw ValidationError("Bockstein target degree exceeds the complex");
  IntVector w = coboundary(k, degree, lift);
  for (auto& v : w) {
    if (v % 2 != 0) throw ComputationError("not a cocycle mod 2");
    v /= 2;
  }
  return CohomologyGroup(k, degree + 1).classify(w);
}

ClassCoordinates bockstein_z2(const SimplicialComplex& k, const Cochain& z) {
  if (z.ring.kind != Ring::Kind::ModP || z.ring.p != 2) throw ValidationError("Bockstein input must be mod 2");
  IntVector lift(z.values.size());
  for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = mod_floor(z.values[i], 2);
  return bockstein_of_lift(k, z.degree, lift);
}

std::optional<Cochain> bockstein_witness(const SimplicialComplex& k, int degree) {
  if (degree < 0 || degree >= k.dimension()) return std::nullopt;
  const CohomologyGroup h(k, degree, Ring::mod(2));
  for (const auto& g : h.group().generators) {
    Cochain z{degree, Ring::mod(2), g};
    if (!bockstein_z2(k, z).is_zero()) return z;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Orientation and evaluation

std::vector<int> fundamental_cycle(const SimplicialComplex& k) {
  const int n = k.dimension();
  if (n < 1) throw ComputationError("not a closed manifold");
  // Purity: each lower simplex lies in a simplex one dimension up.
  for (int d = 0; d < n; ++d) {
    std::vector<bool> covered(k.count(d), false);
    for (const auto& s : k.simplices(d + 1))
      for (std::size_t i = 0; i < s.size(); ++i) covered[k.require_index(drop(s, i))] = true;
    if (std::find(covered.begin(), covered.end(), false) != covered.end())
      throw ComputationError("not a closed manifold");
  }
  const auto& tops = k.simplices(n);
  // face -> (top simplex, incidence sign)
  std::vector<std::vector<std::pair<std::size_t, int>>> cofaces(k.count(n - 1));
  for (std::size_t t = 0; t < tops.size(); ++t)
    for (std::size_t i = 0; i < tops[t].size(); ++i)
      cofaces[k.require_index(drop(tops[t], i))].emplace_back(t, i % 2 ? -1 : 1);
  for (const auto& c : cofaces)
    if (c.size() != 2) throw ComputationError("not a closed manifold");

  std::vector<std::vector<std::size_t>> faces_of(tops.size());
  for (std::size_t f = 0; f < cofaces.size(); ++f)
    for (const auto& [t, sign] : cofaces[f]) faces_of[t].push_back(f);

  std::vector<int> signs(tops.size(), 0);
  for (std::size_t start = 0; start < tops.size(); ++start) {
    if (signs[start] != 0) continue;
    signs[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t t = queue.front();
      queue.pop_front();
      for (std::size_t f : faces_of[t]) {
        const auto& pair = cofaces[f];
        const auto& self = pair[0].first == t ? pair[0] : pair[1];
        const auto& other = pair[0].first == t ? pair[1] : pair[0];
        const int wanted = -signs[t] * self.second * other.second;
        if (signs[other.first] == 0) {
          signs[other.first] = wanted;
          queue.push_back(other.first);
        } else if (signs[other.first] != wanted) {
          throw ComputationError("non-orientable");
        }
      }
    }
  }
  return signs;
}

Integer evaluate(const IntVector& c, const std::vector<int>& cycle) {
  if (c.size() != cycle.size()) throw ValidationError("cochain and cycle have different lengths");
  Integer total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) total += c[i] * cycle[i];
  return total;
}

double evaluate(const RealCochain& c, const std::vector<int>& cycle) {
  if (static_cast<std::size_t>(c.size()) != cycle.size())
    throw ValidationError("cochain and cycle have different lengths");
  double total = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) total += c(static_cast<Eigen::Index>(i)) * cycle[i];
  return total;
}

RealCochain solve_real_coboundary(const SimplicialComplex& k, int degree, const RealCochain& g, double tol) {
  const Eigen::MatrixXd d = real_coboundary_matrix(k, degree);
  if (g.size() != d.rows()) throw ValidationError("cochain length does not match the complex");
  const RealCochain h = d.completeOrthogonalDecomposition().solve(g);
  if ((d * h - g).norm() > tol) throw ComputationError("not exact");
  return h;
}

}  // namespace paramphase
