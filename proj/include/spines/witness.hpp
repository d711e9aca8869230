#pragma once

#include <utility>

#include "spines/complex.hpp"

namespace spines {

// The five primitive moves of a simple equivalence between based complexes.
// All indices are 0-based here; the text format is 1-based.
enum class WitnessMoveKind { Stabilize, Destabilize, Elementary, UnitDiagonal, Permutation };

struct WitnessMove {
  WitnessMoveKind kind = WitnessMoveKind::Stabilize;
  // Stabilize(k): add a cancelling pair in degrees (k+1, k), appended last.
  // Destabilize(k): remove the last pair in degrees (k+1, k); the boundary
  // must be exactly the identity on that pair and otherwise decoupled.
  int degree = 0;
  // Elementary, column flavor: basis change e_i' = e_i + c*e_j in `degree`
  // (so d col_i += c*col_j with c acting on the left, and the row of the
  // next boundary compensates on the right).  With row_flavor set the same
  // data is read as the row operation row_i += row_j*c on d_degree, which is
  // the column move (degree-1, j, i, -c).
  bool row_flavor = false;
  long i = 0;
  long j = 0;
  // Elementary coefficient, or the unit (+- group word) for UnitDiagonal.
  RingElement scalar;
  // Permutation: new basis vector j is old basis vector perm[j].
  std::vector<long> perm;

  bool operator==(const WitnessMove&) const = default;
};

WitnessMove stab_move(int degree);
WitnessMove destab_move(int degree);
WitnessMove elem_move(int degree, long i, long j, const RingElement& c);
WitnessMove elem_row_move(int degree, long i, long j, const RingElement& c);
WitnessMove unit_move(int degree, long i, const RingElement& u);
WitnessMove perm_move(int degree, std::vector<long> p);

// A finite move script; replaying it certifies a simple equivalence.
struct SimpleWitness {
  std::vector<WitnessMove> moves;

  bool operator==(const SimpleWitness&) const = default;
};

SimpleWitness witness_concat(const SimpleWitness& a, const SimpleWitness& b);
// The reversed script with each move inverted; replaying it from the result
// complex returns to the start, and its forward map equals the original
// backward map on the nose.
SimpleWitness witness_inverse(const SimpleWitness& w);

// Effect of a single move, with the exact chain data it carries: fwd/bwd are
// mutually inverse up to the homotopies h_old (on the input) and h_new (on
// the output), oriented as dh + hd = id - composite.
struct MoveResult {
  BasedComplex complex;
  std::map<int, RingMat> fwd;
  std::map<int, RingMat> bwd;
  std::map<int, RingMat> h_old;
  std::map<int, RingMat> h_new;
};

// Throws InvalidInputError for malformed moves (bad indices, non-unit
// scalar) and CheckFailedError when a Destabilize precondition fails.
MoveResult apply_witness_move(const BasedComplex& C, const WitnessMove& m);

BasedComplex replay(const BasedComplex& C, const SimpleWitness& w);

// Replay plus the accumulated chain equivalence between the endpoints.
struct ReplayEquivalence {
  BasedComplex start;
  BasedComplex result;
  ChainMap forward;         // start -> result
  ChainMap backward;        // result -> start
  ChainHomotopy on_result;  // forward*backward ~ id
  ChainHomotopy on_start;   // backward*forward ~ id
};

ReplayEquivalence replay_with_equivalence(const BasedComplex& C, const SimpleWitness& w);

// Adds a cancelling pair in degrees (k+1, k); also returns the one-move
// witness.  The degree may exceed the current top degree.
std::pair<BasedComplex, SimpleWitness> stabilize(const BasedComplex& C, int k);

// Applies one Elementary, UnitDiagonal or Permutation move and returns the
// one-move witness.
std::pair<BasedComplex, SimpleWitness> elementary_op(const BasedComplex& C,
                                                     const WitnessMove& m);

}  // namespace spines
