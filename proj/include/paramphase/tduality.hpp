#pragma once

// Topological T-duality of (circle bundle M -> B, H in H^3(M)) pairs through
// the Gysin sequence
//
//   H^1(B) --e--> H^3(B) --pi^*--> H^3(M) --pi_*--> H^2(B) --e--> H^4(B)
//
// so that 0 -> coker(e: H^1 -> H^3) -> H^3(M) -> ker(e: H^2 -> H^4) -> 0.
// Elements of H^3(M) are stored as a pair: the push-forward (an element of
// H^2(B) lying in the kernel) and a coker component (an element of H^3(B),
// meaningful modulo the image of cup with e).

#include <optional>
#include <string>
#include <vector>

#include "paramphase/errors.hpp"
#include "paramphase/integer.hpp"

namespace paramphase {

// Finitely generated abelian group Z_{d_1} + ... + Z_{d_t} + Z^r in
// coordinates: the first t entries are residues, the last r are free.
struct FinitelyGenerated {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;

  std::size_t generator_count() const { return torsion.size() + free_rank; }
  bool is_trivial() const;
  std::string to_string() const;
  // Diagonal relation matrix (generator_count x generator_count).
  IntMatrix relations() const;
  // Canonical representative: torsion entries reduced into [0, d).
  IntVector reduce(const IntVector& x) const;
  bool equal(const IntVector& a, const IntVector& b) const;
  bool operator==(const FinitelyGenerated&) const = default;
};

// Z^n / image(A) with invariant factors (1s dropped).
FinitelyGenerated quotient_group(const IntMatrix& a);

struct BasePresentation {
  std::string name;
  std::vector<FinitelyGenerated> groups;  // H^0 .. H^4
  // cup1[a]: H^1 -> H^3 and cup2[a]: H^2 -> H^4 for the a-th generator of H^2.
  std::vector<IntMatrix> cup1;
  std::vector<IntMatrix> cup2;

  const FinitelyGenerated& h(int k) const { return groups.at(static_cast<std::size_t>(k)); }
  // Throws ValidationError on shape mismatches or maps that do not respect relations.
  void validate() const;
  bool operator==(const BasePresentation&) const = default;
};

BasePresentation sphere_base();                  // S2
BasePresentation surface_base(int genus);        // closed oriented genus-g surface
BasePresentation projective_plane_base();        // RP2
// S2, T2, RP2 or genus<g>.
BasePresentation builtin_base(const std::string& name);

// Linear maps M1(e) and M2(e) for e in H^2(B).
IntMatrix cup_h1(const BasePresentation& b, const IntVector& e);
IntMatrix cup_h2(const BasePresentation& b, const IntVector& e);

struct GysinPresentation {
  FinitelyGenerated coker;  // coker(M1(e): H^1 -> H^3)
  FinitelyGenerated ker;    // ker(M2(e): H^2 -> H^4)
  // Basis of the kernel lattice in H^2 coordinates (columns).
  IntMatrix ker_basis;
  // H^3(M) when the extension is known to split (coker trivial or ker free).
  std::optional<FinitelyGenerated> h3;
};

GysinPresentation gysin_h3(const BasePresentation& b, const IntVector& c1);

struct Flux {
  IntVector ker;    // pi_* H in H^2(B)
  IntVector coker;  // component in H^3(B) / im M1(c1)
  bool operator==(const Flux&) const = default;
};

struct TDualPair {
  BasePresentation base;
  IntVector c1;
  Flux h;
  bool ambiguous_lift = false;

  // Throws ValidationError when coordinates have the wrong length or the
  // ker component is not annihilated by cup with c1.
  void validate() const;
};

// Two pairs with identical reduced (base, c1, H) coordinates.
bool same_coordinates(const TDualPair& a, const TDualPair& b);

// Whether x is in ker(M2(e)).
bool in_cup_kernel(const BasePresentation& b, const IntVector& e, const IntVector& x);

IntVector pushforward(const TDualPair& p);

// c1' = pi_* H and H' the lift of c1 with zero coker component.
TDualPair tdualize(const TDualPair& p);

std::string name_total_space(const BasePresentation& b, const IntVector& c1);

struct DualityReport {
  bool same_base = false;
  bool forward = false;   // c1(b) = pi_* H(a)
  bool backward = false;  // c1(a) = pi_* H(b)
  std::optional<bool> coker_agreement;  // only when both coker groups are non-trivial
  bool ok() const { return same_base && forward && backward && coker_agreement.value_or(true); }
};

DualityReport verify_duality(const TDualPair& a, const TDualPair& b);

// Pair over S2 with integers c1 = n and H = m.
TDualPair sphere_pair(long long n, long long m);

}  // namespace paramphase
