#pragma once

#include "spines/complex.hpp"
#include "spines/witness.hpp"

namespace spines {

// Integer homology, one group per degree: Z^betti (+) sum Z/d for the listed
// torsion divisors, each >= 2, in divisibility order.
struct HomologySummary {
  std::vector<long> betti;
  std::vector<std::vector<Int>> torsion;

  int top_degree() const { return static_cast<int>(betti.size()) - 1; }
  long betti_at(int k) const {
    return (k >= 0 && k <= top_degree()) ? betti[static_cast<size_t>(k)] : 0;
  }
  std::vector<Int> torsion_at(int k) const {
    return (k >= 0 && k <= top_degree()) ? torsion[static_cast<size_t>(k)]
                                         : std::vector<Int>{};
  }
  bool group_trivial(int k) const { return betti_at(k) == 0 && torsion_at(k).empty(); }

  bool operator==(const HomologySummary&) const = default;
};

// Homology over Z.  The complex must already be over the trivial group;
// callers with a nontrivial coefficient group decide explicitly whether to
// augment first (augment_complex).
HomologySummary homology_Z(const BasedComplex& C);

// One cohomology group H^degree(C; Z) as (betti, torsion divisors).  Same
// trivial-group requirement as homology_Z.
std::pair<long, std::vector<Int>> cohomology_Z(const BasedComplex& C, int degree);

// True when H_j = 0 for all j >= 3 and H^3 = 0.  Decided over the trivial
// group only; otherwise throws UndecidedError.
bool is_homologically_2dim(const BasedComplex& C);

// True when the mapping cone of f is acyclic over Z (the map induces an
// isomorphism on integral homology).  Complexes over a nontrivial group are
// augmented first.
bool is_Z_homology_equivalence(const ChainMap& f);

// Cells of degree >= 3 removed by simple moves.  Requires a complex over the
// trivial group with is_homologically_2dim; `forward` maps the input onto
// the reduced complex and the witness replays the whole reduction.
struct Reduce2Result {
  BasedComplex complex;
  SimpleWitness witness;
  ChainMap forward;
  ChainMap backward;
  ChainHomotopy on_result;  // forward*backward ~ id
  ChainHomotopy on_start;   // backward*forward ~ id
};

Reduce2Result reduce_to_dim2(const BasedComplex& C);

// Canonical direct sum of elementary pieces: per degree, free generators
// first, then sources of torsion pieces (divisor >= 2, ascending), then
// targets of the pieces one degree up.  Two complexes with equal homology
// summaries produce the identical standard form, which is what the duality
// constructions rely on.  to_form*from_form = id on the form exactly;
// from_form*to_form ~ id via on_source.
struct StandardFormResult {
  BasedComplex form;
  ChainMap to_form;
  ChainMap from_form;
  ChainHomotopy on_source;
  ChainHomotopy on_form;
};

StandardFormResult standard_form_Z(const BasedComplex& C);

// Given f : A -> B, j : F -> B and a nullhomotopy h of the composite
// A -> B -> cone(j), reads off the degreewise F-component as a chain map
// L : A -> F together with a homotopy j*L ~ f extracted from the target
// component.  h may be oriented either way (0 ~ incl*f or incl*f ~ 0).
struct LiftResult {
  ChainMap lift;
  ChainHomotopy homotopy;  // j*lift ~ f
};

LiftResult lift_from_nullhomotopy(const ChainMap& f, const ChainMap& j,
                                  const ChainHomotopy& h);

}  // namespace spines
