#pragma once

#include <optional>

#include "spines/homology.hpp"
#include "spines/witness.hpp"

namespace spines {

// Lifting data for the two alignment stages.  The degree-0 stage uses
// (g0, s, t, u) subject to
//   (1) f0*g0 + d1*s = id      (s : D0 -> D1)
//   (2) g0*f0 + d1*t = id      (t : C0 -> C1)
//   (3) d2*u + f1*t = s*f0     (u : C0 -> D2)
// and the degree-1 stage uses (g, s) subject to
//   d1C*g = d1D  and  d2D*s = id - f1*g   (g : D1 -> C1, s : D1 -> D2).
// Over the trivial group the witnesses are solved for; over a nontrivial
// group they must be supplied and are verified.
struct AlignmentWitness {
  RingMat g0;
  RingMat s;
  RingMat t;
  RingMat u;
  RingMat g;
};

// Result of one alignment stage.  The vertical maps into_C / into_D are the
// diagram inclusions; witness_C / witness_D are move scripts replaying the
// originals onto C_prime / D_prime exactly.  square_homotopy connects
// f_prime*into_C to into_D*f.
struct AlignedPair {
  BasedComplex C_prime;
  BasedComplex D_prime;
  ChainMap f_prime;
  ChainMap into_C;
  ChainMap into_D;
  SimpleWitness witness_C;
  SimpleWitness witness_D;
  ChainHomotopy square_homotopy;
};

// Degree-0 alignment: rebuilds the source so the degree-0 component becomes
// the identity; the target complex is unchanged and f_prime*into_C = f on
// the nose.  Over the trivial group the preconditions (H0(f) iso, H1(f)
// epi) are decided by Smith reduction of the mapping cone and the witness
// is found by one joint linear solve; otherwise `supplied` is required.
AlignedPair align_deg0(const ChainMap& f,
                       const std::optional<AlignmentWitness>& supplied = std::nullopt);

// Degree-1 alignment: requires the degree-0 component to be the identity
// already.  Rebuilds both sides so f_prime is a basis-preserving
// isomorphism in degrees 0 and 1; the square commutes up to the returned
// verified homotopy.
AlignedPair align_deg1(const ChainMap& f,
                       const std::optional<AlignmentWitness>& supplied = std::nullopt);

// Splitting off a based summand: f : D -> C with identity components in
// degrees 0 and 1 on equal ranks.  C gains a cancelling (2,3) pair per
// degree-2 basis vector of D and elementary moves make the degree-2
// component the inclusion of a based summand.
struct SplitResult {
  BasedComplex complex;    // C''
  ChainMap map;            // f'' : D -> C''
  ChainHomotopy homotopy;  // from into*f to f''
  ChainMap into;           // the inclusion C -> C'' of the old cells
  SimpleWitness witness;   // replays C onto C''
};

SplitResult split_summand(const ChainMap& f);

}  // namespace spines
