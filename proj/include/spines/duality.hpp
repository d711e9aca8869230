#pragma once

#include <optional>

#include "spines/homology.hpp"
#include "spines/presentation.hpp"

namespace spines {

// A based complex together with a duality equivalence onto its n-dual.
struct PoincareComplex {
  BasedComplex chains;
  int dim = 4;
  ChainMap duality_map;  // chains -> dualize(chains, dim)
};

// Validates endpoints, the chain-map property, and that the duality map is
// a Z-homology equivalence.
PoincareComplex make_poincare_complex(const BasedComplex& chains, int dim,
                                      const ChainMap& duality_map);

// The two-cell model of the 4-sphere: ranks (1,0,0,0,1), zero boundaries,
// duality the 0 <-> 4 degree swap by the identity.
PoincareComplex s4_model();

// The duality verification package: two maps into the middle complex and a
// nullhomotopy of  C_K -> N -> dual(N) -> dual(L), oriented either way.
struct DualityDatum {
  PoincareComplex poincare;
  ChainMap K_map;  // C_K -> poincare.chains
  ChainMap L_map;  // C_L -> poincare.chains
  ChainHomotopy nullhomotopy;
};

// The Alexander-Lefshetz criterion on homology summaries of connected
// 2-complexes: H1(K) = H^2(L) and H2(K) = H^1(L), with cohomology read off
// the summary by universal coefficients (H^1 = free part of H1,
// H^2 = free part of H2 plus torsion of H1).  Symmetric in its arguments.
bool check_dual_homology_S4(const HomologySummary& hK, const HomologySummary& hL);

// The canonical complementary spine: one generator with relator a^n per
// torsion divisor n of H1, one free generator per Z summand of H2, and one
// empty relator per Z summand of H1; over the trivial group.
Presentation2Complex canonical_dual_spine(const HomologySummary& hK);

// Checks a duality datum: verifies the nullhomotopy against the displayed
// composition, lifts the middle map through dual(cone(L_map)) -> dual(N),
// and confirms the lift is a Z-homology equivalence.  Simpleness is by
// convention over the trivial group; over a nontrivial group a
// SimpleWitness replaying C_K onto the relative dual is required, else
// UndecidedError.  Returns true on success; failures throw CheckFailedError
// naming the identity that broke.
bool verify_simple_algebraic_duality(
    const DualityDatum& d, const BasedComplex& L_chains,
    const std::optional<SimpleWitness>& simple = std::nullopt);

// Constructs an accepted datum for two presentations over the trivial group
// whose homologies pass check_dual_homology_S4, by matching the standard
// forms of C_K and dual(cone(C_L -> S4), 4).
DualityDatum build_duality_datum_S4(const Presentation2Complex& K,
                                    const Presentation2Complex& L);

}  // namespace spines
