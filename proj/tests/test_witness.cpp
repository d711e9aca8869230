#include <doctest.h>

#include "helpers.hpp"
#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/witness.hpp"

using namespace spines;

namespace {

BasedComplex mod2_complex() {
  const GroupSpec t = trivial_group();
  RingMat d2(t, 1, 1);
  d2.at(0, 0) = ring_from_int(t, Int(2));
  return make_complex(t, {1, 1, 1}, {{2, d2}, {1, RingMat(t, 1, 1)}});
}

HomologySummary homology_over_Z(const BasedComplex& C) {
  return C.ring.kind == GroupKind::Trivial ? homology_Z(C)
                                           : homology_Z(augment_complex(C));
}

// Degreewise comparison, robust to summaries of different lengths.
bool same_homology(const HomologySummary& a, const HomologySummary& b) {
  const int top = std::max(a.top_degree(), b.top_degree());
  for (int k = 0; k <= top; ++k)
    if (a.betti_at(k) != b.betti_at(k) || a.torsion_at(k) != b.torsion_at(k))
      return false;
  return true;
}

}  // namespace

TEST_CASE("stabilization adds a cancelling pair at the end") {
  const BasedComplex C = mod2_complex();
  const auto [S, w] = stabilize(C, 1);
  CHECK(S.rank(1) == 2);
  CHECK(S.rank(2) == 2);
  CHECK(S.boundary(2).at(1, 1) == ring_one(C.ring));
  CHECK(S.boundary(2).at(0, 1).is_zero());
  CHECK(S.boundary(2).at(1, 0).is_zero());
  CHECK_NOTHROW(validate_complex(S));
  // Degrees above the top work too.
  const auto [S2, w2] = stabilize(C, 4);
  CHECK(S2.rank(4) == 1);
  CHECK(S2.rank(5) == 1);
  CHECK(S2.boundary(5).at(0, 0) == ring_one(C.ring));
}

TEST_CASE("destabilization undoes its stabilization and checks shape") {
  const BasedComplex C = mod2_complex();
  const auto [S, w] = stabilize(C, 1);
  const MoveResult back = apply_witness_move(S, destab_move(1));
  CHECK(back.complex == C);
  // The original complex has no cancelling pair at the end of degree (2, 1):
  // its boundary entry there is 2, not a unit.
  CHECK_THROWS_AS(apply_witness_move(C, destab_move(1)), CheckFailedError);
}

TEST_CASE("elementary moves change exactly the stated rows and columns") {
  const GroupSpec t = trivial_group();
  RingMat d2(t, 2, 2);
  d2.at(0, 0) = ring_from_int(t, Int(2));
  d2.at(1, 1) = ring_from_int(t, Int(3));
  const BasedComplex C = make_complex(t, {1, 2, 2}, {{2, d2}});

  SUBCASE("column move adds c*col_j to col_i of d_k") {
    const RingElement c = ring_from_int(t, Int(5));
    const MoveResult r = apply_witness_move(C, elem_move(2, 0, 1, c));
    CHECK(r.complex.boundary(2).at(0, 0) == ring_from_int(t, Int(2)));
    CHECK(r.complex.boundary(2).at(1, 0) == ring_from_int(t, Int(15)));
    CHECK(r.complex.boundary(2).at(1, 1) == ring_from_int(t, Int(3)));
    CHECK_NOTHROW(validate_complex(r.complex));
  }
  SUBCASE("row move is the matching column move one degree down") {
    const RingElement c = ring_from_int(t, Int(5));
    const MoveResult a = apply_witness_move(C, elem_row_move(2, 0, 1, c));
    const MoveResult b = apply_witness_move(C, elem_move(1, 1, 0, ring_neg(c)));
    CHECK(a.complex == b.complex);
  }
  SUBCASE("unit move scales a basis vector") {
    const MoveResult r =
        apply_witness_move(C, unit_move(1, 0, ring_from_int(t, Int(-1))));
    CHECK(r.complex.boundary(2).at(0, 0) == ring_from_int(t, Int(-2)));
    CHECK_NOTHROW(validate_complex(r.complex));
    CHECK_THROWS_AS(apply_witness_move(C, unit_move(1, 0, ring_from_int(t, Int(2)))),
                    InvalidInputError);
  }
  SUBCASE("permutation relabels basis vectors") {
    const MoveResult r = apply_witness_move(C, perm_move(1, {1, 0}));
    CHECK(r.complex.boundary(2).at(0, 0).is_zero());
    CHECK(r.complex.boundary(2).at(1, 0) == ring_from_int(t, Int(2)));
    CHECK_THROWS_AS(apply_witness_move(C, perm_move(1, {0, 0})), InvalidInputError);
  }
  SUBCASE("malformed indices are rejected") {
    CHECK_THROWS_AS(apply_witness_move(C, elem_move(2, 0, 0, ring_one(t))),
                    InvalidInputError);
    CHECK_THROWS_AS(apply_witness_move(C, elem_move(2, 0, 5, ring_one(t))),
                    InvalidInputError);
  }
}

TEST_CASE("replay equivalences verify and invert on random scripts") {
  testgen::Rng rng(51);
  const std::vector<GroupSpec> groups = {trivial_group(), finite_cyclic_group(2),
                                         free_group(2), free_abelian_group(2)};
  for (const GroupSpec& g : groups) {
    for (int it = 0; it < 10; ++it) {
      const BasedComplex C0 = testgen::random_complex(rng, g, 3, 4);
      BasedComplex C = C0;
      const SimpleWitness w = testgen::roughen(rng, C, 8);
      CHECK(replay(C0, w) == C);

      const ReplayEquivalence rep = replay_with_equivalence(C0, w);
      CHECK(rep.start == C0);
      CHECK(rep.result == C);
      CHECK_NOTHROW(verify_chain_map(rep.forward));
      CHECK_NOTHROW(verify_chain_map(rep.backward));
      CHECK_NOTHROW(verify_homotopy(rep.on_result));
      CHECK_NOTHROW(verify_homotopy(rep.on_start));
      CHECK(rep.on_result.from_map == compose_maps(rep.forward, rep.backward));
      CHECK(rep.on_result.to_map == identity_map(C));
      CHECK(rep.on_start.from_map == compose_maps(rep.backward, rep.forward));
      CHECK(rep.on_start.to_map == identity_map(C0));

      // The inverse script returns to the start and swaps the maps.
      const SimpleWitness wi = witness_inverse(w);
      CHECK(replay(C, wi) == C0);
      const ReplayEquivalence repi = replay_with_equivalence(C, wi);
      CHECK(repi.forward == rep.backward);

      // Simple equivalences preserve integral homology.
      CHECK(same_homology(homology_over_Z(C0), homology_over_Z(C)));
    }
  }
}

TEST_CASE("witness concatenation replays in sequence") {
  testgen::Rng rng(52);
  BasedComplex C = testgen::random_complex(rng, trivial_group(), 2, 3);
  const BasedComplex C0 = C;
  const SimpleWitness w1 = testgen::roughen(rng, C, 4);
  const SimpleWitness w2 = testgen::roughen(rng, C, 4);
  CHECK(replay(C0, witness_concat(w1, w2)) == C);
}
