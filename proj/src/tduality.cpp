#include "paramphase/tduality.hpp"

#include <sstream>

namespace paramphase {

namespace {

IntVector zeros(std::size_t n) { return IntVector(n); }

IntVector difference(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Whether y lies in the column span of A over Z.
bool in_image(const IntMatrix& a, const IntVector& y) {
  const SmithForm f = smith_normal_form(a);
  const IntVector uy = f.u * y;
  for (std::size_t i = 0; i < uy.size(); ++i) {
    if (i < f.rank) {
      if (uy[i] % f.s(i, i) != 0) return false;
    } else if (uy[i] != 0) {
      return false;
    }
  }
  return true;
}

IntMatrix linear_combination(const std::vector<IntMatrix>& maps, const IntVector& e, std::size_t rows,
                             std::size_t cols) {
  IntMatrix out(rows, cols);
  if (maps.empty()) return out;
  if (e.size() != maps.size()) throw ValidationError("class has the wrong number of coordinates");
  for (std::size_t a = 0; a < maps.size(); ++a) {
    if (e[a] == 0) continue;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) += e[a] * maps[a](i, j);
  }
  return out;
}

// Relations of H^3 together with the image of cup with e on H^1.
IntMatrix coker_relations(const BasePresentation& b, const IntVector& e) {
  return hstack(b.h(3).relations(), cup_h1(b, e));
}

void check_map(const std::vector<IntMatrix>& maps, const BasePresentation& b, int from, int to,
               const char* what) {
  const auto& src = b.h(from);
  const auto& dst = b.h(to);
  const auto& h2 = b.h(2);
  if (maps.empty()) return;
  if (maps.size() != h2.generator_count())
    throw ValidationError(std::string(what) + ": need one map per generator of H^2");
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const IntMatrix& m = maps[a];
    if (m.rows() != dst.generator_count() || m.cols() != src.generator_count())
      throw ValidationError(std::string(what) + ": map has the wrong shape");
    const IntVector zero = zeros(dst.generator_count());
    // Torsion in the source must land on zero.
    for (std::size_t j = 0; j < src.torsion.size(); ++j) {
      IntVector col = m.column(j);
      for (auto& v : col) v *= src.torsion[j];
      if (!dst.equal(col, zero)) throw ValidationError(std::string(what) + ": map ignores source relations");
    }
    // A torsion generator of H^2 must act with matching order.
    if (a < h2.torsion.size()) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        IntVector col = m.column(j);
        for (auto& v : col) v *= h2.torsion[a];
        if (!dst.equal(col, zero)) throw ValidationError(std::string(what) + ": map is not linear in e");
      }
    }
  }
}

FinitelyGenerated direct_sum(const FinitelyGenerated& a, const FinitelyGenerated& b) {
  const std::size_t n = a.generator_count() + b.generator_count();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < a.torsion.size(); ++i) r(i, i) = a.torsion[i];
  for (std::size_t i = 0; i < b.torsion.size(); ++i)
    r(a.generator_count() + i, a.generator_count() + i) = b.torsion[i];
  return quotient_group(r);
}

}  // namespace

bool FinitelyGenerated::is_trivial() const { return torsion.empty() && free_rank == 0; }

std::string FinitelyGenerated::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    os << (first ? "" : " + ") << "Z_" << d;
    first = false;
  }
  return os.str();
}

IntMatrix FinitelyGenerated::relations() const {
  const std::size_t n = generator_count();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < torsion.size(); ++i) r(i, i) = torsion[i];
  return r;
}

IntVector FinitelyGenerated::reduce(const IntVector& x) const {
  if (x.size() != generator_count()) throw ValidationError("element has the wrong number of coordinates");
  IntVector out = x;
  for (std::size_t i = 0; i < torsion.size(); ++i) out[i] = mod_floor(out[i], torsion[i]);
  return out;
}

bool FinitelyGenerated::equal(const IntVector& a, const IntVector& b) const { return reduce(a) == reduce(b); }

FinitelyGenerated quotient_group(const IntMatrix& a) {
  FinitelyGenerated g;
  const SmithForm f = smith_normal_form(a);
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.s(i, i) > 1) g.torsion.push_back(f.s(i, i));
  g.free_rank = a.rows() - f.rank;
  return g;
}

void BasePresentation::validate() const {
  if (groups.size() != 5) throw ValidationError("base presentation needs H^0 .. H^4");
  for (const auto& g : groups)
    for (const auto& d : g.torsion)
      if (d < 2) throw ValidationError("torsion orders must be at least 2");
  check_map(cup1, *this, 1, 3, "cup1");
  check_map(cup2, *this, 2, 4, "cup2");
}

BasePresentation surface_base(int genus) {
  if (genus < 0) throw ValidationError("genus must be non-negative");
  BasePresentation b;
  b.name = genus == 0 ? "S2" : genus == 1 ? "T2" : "genus" + std::to_string(genus);
  b.groups = {{{}, 1}, {{}, static_cast<std::size_t>(2 * genus)}, {{}, 1}, {{}, 0}, {{}, 0}};
  b.cup1 = {IntMatrix(0, static_cast<std::size_t>(2 * genus))};
  b.cup2 = {IntMatrix(0, 1)};
  return b;
}

BasePresentation sphere_base() { return surface_base(0); }

BasePresentation projective_plane_base() {
  BasePresentation b;
  b.name = "RP2";
  b.groups = {{{}, 1}, {{}, 0}, {{Integer(2)}, 0}, {{}, 0}, {{}, 0}};
  b.cup1 = {IntMatrix(0, 0)};
  b.cup2 = {IntMatrix(0, 1)};
  return b;
}

BasePresentation builtin_base(const std::string& name) {
  if (name == "S2") return sphere_base();
  if (name == "T2") return surface_base(1);
  if (name == "RP2") return projective_plane_base();
  if (name.rfind("genus", 0) == 0 && name.size() > 5) {
    try {
      std::size_t used = 0;
      const int g = std::stoi(name.substr(5), &used);
      if (used == name.size() - 5 && g >= 0) return surface_base(g);
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("unknown base: " + name);
}

IntMatrix cup_h1(const BasePresentation& b, const IntVector& e) {
  return linear_combination(b.cup1, e, b.h(3).generator_count(), b.h(1).generator_count());
}

IntMatrix cup_h2(const BasePresentation& b, const IntVector& e) {
  return linear_combination(b.cup2, e, b.h(4).generator_count(), b.h(2).generator_count());
}

GysinPresentation gysin_h3(const BasePresentation& b, const IntVector& c1) {
  b.validate();
  const auto& h2 = b.h(2);
  const auto& h4 = b.h(4);
  if (c1.size() != h2.generator_count()) throw ValidationError("c1 has the wrong number of coordinates");

  GysinPresentation out;
  out.coker = quotient_group(coker_relations(b, c1));

  // Kernel lattice L = {x : M2 x in im R4}, the projection of ker [M2 | R4].
  const std::size_t n2 = h2.generator_count(), n4 = h4.generator_count();
  const IntMatrix joint = hstack(cup_h2(b, c1), h4.relations());
  const SmithForm fj = smith_normal_form(joint);
  IntMatrix spanning(n2, n2 + n4 - fj.rank);
  for (std::size_t j = fj.rank; j < n2 + n4; ++j)
    for (std::size_t i = 0; i < n2; ++i) spanning(i, j - fj.rank) = fj.v(i, j);

  // Basis of L: columns of U^{-1} scaled by the invariant factors.
  const SmithForm fl = smith_normal_form(spanning);
  out.ker_basis = IntMatrix(n2, fl.rank);
  for (std::size_t j = 0; j < fl.rank; ++j)
    for (std::size_t i = 0; i < n2; ++i) out.ker_basis(i, j) = fl.u_inv(i, j) * fl.s(j, j);

  // ker = L / im R2, with R2 written in the basis of L.
  const IntMatrix ur = fl.u * h2.relations();
  IntMatrix coords(fl.rank, n2);
  for (std::size_t i = 0; i < fl.rank; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      if (ur(i, j) % fl.s(i, i) != 0) throw ValidationError("cup2 does not respect the relations of H^2");
      coords(i, j) = ur(i, j) / fl.s(i, i);
    }
  out.ker = quotient_group(coords);

  if (out.coker.is_trivial())
    out.h3 = out.ker;
  else if (out.ker.torsion.empty())
    out.h3 = direct_sum(out.coker, out.ker);
  return out;
}

bool in_cup_kernel(const BasePresentation& b, const IntVector& e, const IntVector& x) {
  const auto& h4 = b.h(4);
  return h4.equal(cup_h2(b, e) * x, zeros(h4.generator_count()));
}

void TDualPair::validate() const {
  base.validate();
  if (c1.size() != base.h(2).generator_count()) throw ValidationError("c1 has the wrong number of coordinates");
  if (h.ker.size() != base.h(2).generator_count())
    throw ValidationError("H ker component has the wrong number of coordinates");
  if (h.coker.size() != base.h(3).generator_count())
    throw ValidationError("H coker component has the wrong number of coordinates");
  if (!in_cup_kernel(base, c1, h.ker)) throw ValidationError("H ker component is not annihilated by cup with c1");
}

bool same_coordinates(const TDualPair& a, const TDualPair& b) {
  if (!(a.base == b.base)) return false;
  const auto& h2 = a.base.h(2);
  if (!h2.equal(a.c1, b.c1) || !h2.equal(a.h.ker, b.h.ker)) return false;
  return in_image(coker_relations(a.base, a.c1), difference(a.h.coker, b.h.coker));
}

IntVector pushforward(const TDualPair& p) { return p.base.h(2).reduce(p.h.ker); }

TDualPair tdualize(const TDualPair& p) {
  p.validate();
  TDualPair out;
  out.base = p.base;
  out.c1 = pushforward(p);
  if (!in_cup_kernel(p.base, out.c1, p.c1))
    throw ComputationError("c1 is not the push-forward of any class on the dual total space");
  out.h.ker = p.base.h(2).reduce(p.c1);
  out.h.coker = zeros(p.base.h(3).generator_count());
  out.ambiguous_lift = !quotient_group(coker_relations(p.base, out.c1)).is_trivial();
  return out;
}

std::string name_total_space(const BasePresentation& b, const IntVector& c1) {
  if (b.name == "S2" && c1.size() == 1) {
    const Integer n = abs(c1[0]);
    if (n == 0) return "S²×S¹";
    if (n == 1) return "S³";
    return "L(" + n.str() + ";1)";
  }
  std::ostringstream os;
  os << "total space over " << b.name << " with c1=[";
  for (std::size_t i = 0; i < c1.size(); ++i) os << (i ? "," : "") << c1[i];
  os << "]";
  return os.str();
}

DualityReport verify_duality(const TDualPair& a, const TDualPair& b) {
  DualityReport r;
  r.same_base = a.base == b.base;
  if (!r.same_base) return r;
  a.validate();
  b.validate();
  const auto& h2 = a.base.h(2);
  r.forward = h2.equal(b.c1, a.h.ker);
  r.backward = h2.equal(a.c1, b.h.ker);
  const bool coker_a = !quotient_group(coker_relations(a.base, a.c1)).is_trivial();
  const bool coker_b = !quotient_group(coker_relations(b.base, b.c1)).is_trivial();
  if (coker_a && coker_b) {
    const IntMatrix both = hstack(coker_relations(a.base, a.c1), cup_h1(a.base, b.c1));
    r.coker_agreement = in_image(both, difference(a.h.coker, b.h.coker));
  }
  return r;
}

TDualPair sphere_pair(long long n, long long m) {
  TDualPair p;
  p.base = sphere_base();
  p.c1 = {Integer(n)};
  p.h.ker = {Integer(m)};
  return p;
}

}  // namespace paramphase
