#pragma once

#include <optional>

#include "spines/homology.hpp"
#include "spines/witness.hpp"

namespace spines {

// A word in the free group on presentation generators x1..xn, stored as raw
// syllables (generator, exponent), 1-based, NOT freely reduced.  Relators
// keep the spelling they were given; comparisons reduce first.
struct FreeWord {
  std::vector<std::pair<int, long long>> syllables;

  bool operator==(const FreeWord&) const = default;
  bool empty() const { return syllables.empty(); }
};

// Concatenation with on-the-fly merging of adjacent equal-generator
// syllables (so reduced inputs stay reduced).
FreeWord free_mul(const FreeWord& a, const FreeWord& b);
FreeWord free_inv(const FreeWord& w);
FreeWord free_reduce(const FreeWord& w);
FreeWord free_gen(int i, long long e = 1);

// A presentation of a group together with a homomorphism pi_map onto the
// coefficient group: a 2-complex with one 0-cell, free_rank 1-cells and one
// 2-cell per relator.  Relators must die under pi_map.
struct Presentation2Complex {
  int free_rank = 0;
  std::vector<FreeWord> relators;
  GroupSpec pi;
  std::vector<GroupWord> pi_map;  // image of x1..xn in pi

  bool operator==(const Presentation2Complex&) const = default;
};

// Validates ranges and that relators map to the identity of pi.
Presentation2Complex make_presentation(int free_rank, std::vector<FreeWord> relators,
                                       const GroupSpec& pi, std::vector<GroupWord> pi_map);

// Equality up to free reduction of relators (order matters).
bool presentations_match(const Presentation2Complex& A, const Presentation2Complex& B);

GroupWord pi_image(const Presentation2Complex& P, const FreeWord& w);

// The pi-composed Fox derivative d/dx_i of w, an element of Z[pi]:
// d(uv) = du + u dv, d(x_i) = 1, d(x_i^-1) = -x_i^-1.
RingElement fox_derivative(const Presentation2Complex& P, int i, const FreeWord& w);

// The cellular chain complex of the presentation over Z[pi]: ranks
// (1, free_rank, #relators), d2 given by Fox derivatives, d1 by
// pi_map(x_i) - 1.
BasedComplex fox_boundary(const Presentation2Complex& P);

enum class PresMoveKind {
  Expand,            // add generator y = x_{n+1} and relator y*w (y dies to pi_image(w)^-1)
  Collapse,          // remove generator `gen` via relator `rel` of the exact form gen*w
  InvertRelator,     // r_i -> r_i^-1
  ConjugateRelator,  // r_i -> w r_i w^-1
  MultiplyRelator,   // r_i -> r_i * r_j, i != j
  HomologicalChange, // r_i -> word with identical Fox rows over Z[pi]
  StabilizePair,     // Expand with the empty word: adds y and relator y
  PermuteRelators,   // relator i gets old relator perm[i]
};

struct PresMove {
  PresMoveKind kind = PresMoveKind::StabilizePair;
  long rel = 0;   // 0-based relator index
  long rel2 = 0;  // second relator for MultiplyRelator
  int gen = 0;    // 1-based generator index for Collapse
  FreeWord word;  // Expand / ConjugateRelator / HomologicalChange
  std::vector<long> perm;

  bool operator==(const PresMove&) const = default;
};

struct MoveSequence {
  Presentation2Complex initial;
  std::vector<PresMove> moves;

  bool operator==(const MoveSequence&) const = default;
};

// Applies one move; throws CheckFailedError when a precondition fails
// (collapse shape, homological-change rows) and InvalidInputError for
// out-of-range indices.
Presentation2Complex apply_move(const Presentation2Complex& P, const PresMove& m);

// True when replacing relator `rel` by new_word keeps every Fox derivative
// row equal over Z[pi] (and new_word still dies in pi).
bool verify_homological_change(const Presentation2Complex& P, long rel,
                               const FreeWord& new_word);

// The chain-level witness of a single move, relative to fox_boundary(P).
SimpleWitness move_witness(const Presentation2Complex& P, const PresMove& m);

// Replays a whole sequence: applies the presentation moves, accumulates the
// chain witness, replays it on fox_boundary(initial) and checks the endpoint
// equals fox_boundary(final) on the nose.
struct MovesToChainResult {
  Presentation2Complex final_presentation;
  SimpleWitness witness;
  ChainMap forward;   // fox(initial) -> fox(final)
  ChainMap backward;  // homotopy inverse, from the replay
  ChainHomotopy on_result;
  ChainHomotopy on_start;
};

MovesToChainResult moves_to_chain_equiv(const MoveSequence& s);

// Synthesis of a move sequence realizing a chain equivalence
// e : fox(K) -> fox(L), decided over the trivial group.  The endpoint
// matches L up to free reduction of relators; `homotopy` connects the
// sequence's chain shadow to e.  A supplied witness is replay-checked
// against fox(L) first.  Over a nontrivial group this throws
// UndecidedError.
struct SynthesisResult {
  MoveSequence moves;
  ChainMap chain_map;      // shadow of the synthesized moves
  ChainHomotopy homotopy;  // chain_map ~ e
};

SynthesisResult synthesize_moves_from_equiv(const Presentation2Complex& K,
                                            const Presentation2Complex& L,
                                            const ChainMap& e,
                                            const std::optional<SimpleWitness>& w);

}  // namespace spines
