#include <doctest.h>

#include "helpers.hpp"
#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/presentation.hpp"

using namespace spines;

namespace {

// A chain equivalence fox(K) -> fox(L) through the shared standard form.
ChainMap equivalence_via_forms(const Presentation2Complex& K,
                               const Presentation2Complex& L) {
  const StandardFormResult sK = standard_form_Z(fox_boundary(K));
  const StandardFormResult sL = standard_form_Z(fox_boundary(L));
  REQUIRE(sK.form == sL.form);
  return compose_maps(sL.from_form, sK.to_form);
}

Presentation2Complex trivial_pi_presentation(int gens, std::vector<FreeWord> rels) {
  const GroupSpec t = trivial_group();
  return make_presentation(gens, std::move(rels), t,
                           std::vector<GroupWord>(static_cast<size_t>(gens),
                                                  word_identity(t)));
}

}  // namespace

TEST_CASE("synthesis turns a chain equivalence into a move script") {
  const Presentation2Complex K = trivial_pi_presentation(1, {free_gen(1, 2)});
  // The same group, padded with a cancelling generator and relator.
  const Presentation2Complex L = trivial_pi_presentation(
      2, {free_mul(free_gen(1, 2), free_gen(2)), free_gen(2)});

  const ChainMap e = equivalence_via_forms(K, L);
  const SynthesisResult res = synthesize_moves_from_equiv(K, L, e, std::nullopt);

  CHECK(res.moves.initial == K);
  Presentation2Complex P = res.moves.initial;
  for (const PresMove& m : res.moves.moves) P = apply_move(P, m);
  CHECK(presentations_match(P, L));

  // The shadow map and its homotopy to e are verified data.
  CHECK_NOTHROW(verify_chain_map(res.chain_map));
  CHECK_NOTHROW(verify_homotopy(res.homotopy));
  const bool connects_shadow_to_e =
      (res.homotopy.from_map == res.chain_map && res.homotopy.to_map == e) ||
      (res.homotopy.from_map == e && res.homotopy.to_map == res.chain_map);
  CHECK(connects_shadow_to_e);

  // The script verifies as a chain equivalence in its own right.
  const MovesToChainResult run = moves_to_chain_equiv(res.moves);
  CHECK(presentations_match(run.final_presentation, L));
}

TEST_CASE("synthesis round trips on random equivalent pairs") {
  testgen::Rng rng(81);
  const GroupSpec t = trivial_group();
  for (int it = 0; it < 6; ++it) {
    // Build L from K by a random legal move sequence, so the two sides are
    // genuinely equivalent.
    const MoveSequence s = testgen::random_move_sequence(rng, t, 5);
    const Presentation2Complex K = s.initial;
    Presentation2Complex L = K;
    for (const PresMove& m : s.moves) L = apply_move(L, m);

    const ChainMap e = equivalence_via_forms(K, L);
    const SynthesisResult res = synthesize_moves_from_equiv(K, L, e, std::nullopt);
    Presentation2Complex P = res.moves.initial;
    for (const PresMove& m : res.moves.moves) P = apply_move(P, m);
    CHECK(presentations_match(P, L));
    CHECK_NOTHROW(moves_to_chain_equiv(res.moves));
  }
}

TEST_CASE("synthesis is undecided over nontrivial groups") {
  const GroupSpec pi = finite_cyclic_group(2);
  const Presentation2Complex K =
      make_presentation(1, {free_gen(1, 2)}, pi, {word_generator(pi, 1)});
  const ChainMap e = identity_map(fox_boundary(K));
  CHECK_THROWS_AS(synthesize_moves_from_equiv(K, K, e, std::nullopt),
                  UndecidedError);
}

TEST_CASE("synthesis rejects maps that are not equivalences") {
  const Presentation2Complex K = trivial_pi_presentation(1, {free_gen(1, 2)});
  const Presentation2Complex L = trivial_pi_presentation(1, {free_gen(1, 3)});
  const ChainMap bad = zero_map(fox_boundary(K), fox_boundary(L));
  CHECK_THROWS_AS(synthesize_moves_from_equiv(K, L, bad, std::nullopt),
                  CheckFailedError);
}
