#pragma once

#include "spines/align.hpp"
#include "spines/duality.hpp"
#include "spines/homology.hpp"
#include "spines/witness.hpp"

namespace spines {

// Output of realize_decomposition.  Given a chain map f : D -> target.chains
// into a self-dual ambient complex, the pipeline reduces D to two dimensions,
// aligns f degree by degree, splits the image off as a based summand N', and
// hands back the complementary dual piece W together with a verified duality
// datum tying M = reduced D to W.
struct DecompositionResult {
  BasedComplex M_chains;   // the reduced, aligned copy of D (2-dimensional)
  BasedComplex N_prime;    // the rebuilt ambient complex containing M as a summand
  BasedComplex W_full;     // dual of the mapping cone of M -> N', before reduction
  BasedComplex W_chains;   // W_full reduced to two dimensions

  ChainMap D_to_M;         // D -> M, a homotopy equivalence
  ChainMap M_to_N;         // the based summand inclusion M -> N'
  ChainMap W_reindex;      // W_full -> W_chains (the reduction's forward map)
  ChainMap target_forward; // target.chains -> N' built from the alignment inclusions

  // M_to_N * D_to_M  ~  target_forward * f, naturality of the whole pipeline.
  ChainHomotopy factor_homotopy;

  // The duality datum produced for (M -> N' <- W_chains); it has already
  // been accepted by verify_simple_algebraic_duality against W_chains.
  DualityDatum datum;

  SimpleWitness reduce_witness;  // D onto the 2-dimensional reduction
  SimpleWitness source_witness;  // reduced D onto M (alignment moves)
  SimpleWitness target_witness;  // target.chains onto N'
  SimpleWitness dual_witness;    // W_full onto W_chains
};

// Runs the full pipeline.  Requirements checked up front:
//   - trivial coefficient group, a validated 4-dimensional Poincare complex
//     whose duality map equals its own dual and is invertible degreewise,
//   - f a verified chain map D -> target.chains with D homologically
//     2-dimensional, H0(f) an isomorphism and H1(f) an epimorphism.
// Failures of the numbered stages rethrow with a "realize <stage>:" prefix so
// callers can tell which leg of the pipeline rejected the input.
DecompositionResult realize_decomposition(const BasedComplex& D,
                                          const PoincareComplex& target,
                                          const ChainMap& f);

}  // namespace spines
