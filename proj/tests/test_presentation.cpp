#include <doctest.h>

#include "helpers.hpp"
#include "spines/errors.hpp"
#include "spines/presentation.hpp"

using namespace spines;

namespace {

Presentation2Complex cyclic_presentation(int n) {
  const GroupSpec pi = finite_cyclic_group(n);
  return make_presentation(1, {free_gen(1, n)}, pi, {word_generator(pi, 1)});
}

const std::vector<GroupSpec> kGroups = {trivial_group(), finite_cyclic_group(2),
                                        finite_cyclic_group(6), free_group(2),
                                        free_abelian_group(2)};

}  // namespace

TEST_CASE("raw spelling survives until multiplication or reduction") {
  // Raw syllables are stored as given; x1*x1 is two syllables.
  FreeWord spelled;
  spelled.syllables = {{1, 1}, {1, 1}};
  CHECK(spelled.syllables.size() == 2);
  CHECK(free_reduce(spelled) == free_gen(1, 2));
  // free_mul merges adjacent equal-generator syllables as it goes.
  const FreeWord w = free_mul(free_gen(1), free_gen(1));
  CHECK(w == free_gen(1, 2));
  CHECK(free_mul(free_gen(1), free_gen(1, -1)).syllables.empty());
  const FreeWord nested = free_mul(free_gen(2), spelled);
  CHECK(free_reduce(nested).syllables.size() == 2);
  CHECK(free_reduce(free_mul(nested, free_inv(nested))).syllables.empty());
}

TEST_CASE("presentation construction validates its data") {
  const GroupSpec pi = finite_cyclic_group(2);
  // Relator mentions a missing generator.
  CHECK_THROWS_AS(make_presentation(1, {free_gen(2)}, pi, {word_generator(pi, 1)}),
                  InvalidInputError);
  // pi_map has the wrong length.
  CHECK_THROWS_AS(make_presentation(2, {}, pi, {word_generator(pi, 1)}),
                  InvalidInputError);
  // Relator does not die in pi.
  CHECK_THROWS_AS(make_presentation(1, {free_gen(1)}, pi, {word_generator(pi, 1)}),
                  InvalidInputError);
  CHECK_NOTHROW(cyclic_presentation(4));
}

TEST_CASE("fox derivative of a power sums the group elements") {
  for (int n = 2; n <= 12; ++n) {
    const Presentation2Complex P = cyclic_presentation(n);
    const RingElement d = fox_derivative(P, 1, free_gen(1, n));
    RingElement expect = ring_zero(P.pi);
    for (int e = 0; e < n; ++e)
      expect = ring_add(expect, ring_from_word(P.pi, word_generator(P.pi, 1, e)));
    CHECK(d == expect);
  }
}

TEST_CASE("fox derivative satisfies the product rule") {
  testgen::Rng rng(71);
  for (const GroupSpec& pi : kGroups) {
    const Presentation2Complex P = testgen::random_presentation(rng, pi);
    if (P.free_rank == 0) continue;
    for (int it = 0; it < 60; ++it) {
      FreeWord u, v;
      for (long s = testgen::pick(rng, 0, 4); s > 0; --s)
        u = free_mul(u, free_gen(static_cast<int>(testgen::pick(rng, 1, P.free_rank)),
                                 testgen::pick(rng, -2, 2) >= 0 ? 1 : -1));
      for (long s = testgen::pick(rng, 0, 4); s > 0; --s)
        v = free_mul(v, free_gen(static_cast<int>(testgen::pick(rng, 1, P.free_rank)),
                                 testgen::pick(rng, -2, 2) >= 0 ? 1 : -1));
      for (int i = 1; i <= P.free_rank; ++i) {
        const RingElement lhs = fox_derivative(P, i, free_mul(u, v));
        const RingElement rhs =
            ring_add(fox_derivative(P, i, u),
                     ring_mul(ring_from_word(P.pi, pi_image(P, u)),
                              fox_derivative(P, i, v)));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("fox derivative of an inverse") {
  const Presentation2Complex P = cyclic_presentation(3);
  // d(x^-1) = -x^-1.
  CHECK(fox_derivative(P, 1, free_gen(1, -1)) ==
        ring_from_word(P.pi, word_generator(P.pi, 1, -1), Int(-1)));
  CHECK(fox_derivative(P, 1, FreeWord{}).is_zero());
}

TEST_CASE("fox boundary on worked presentations") {
  SUBCASE("Z/2 over its own group ring") {
    const Presentation2Complex P = cyclic_presentation(2);
    const BasedComplex C = fox_boundary(P);
    const GroupSpec g = P.pi;
    const RingElement t = ring_from_word(g, word_generator(g, 1));
    CHECK(C.ranks == std::vector<long>{1, 1, 1});
    CHECK(C.boundary(1).at(0, 0) == ring_sub(t, ring_one(g)));
    CHECK(C.boundary(2).at(0, 0) == ring_add(ring_one(g), t));
    CHECK_NOTHROW(validate_complex(C));
  }
  SUBCASE("torus relator over the free abelian cover") {
    const GroupSpec pi = free_abelian_group(2);
    const FreeWord comm = free_mul(
        free_mul(free_gen(1), free_gen(2)),
        free_mul(free_gen(1, -1), free_gen(2, -1)));
    const Presentation2Complex P = make_presentation(
        2, {comm}, pi, {word_generator(pi, 1), word_generator(pi, 2)});
    const BasedComplex C = fox_boundary(P);
    const RingElement x = ring_from_word(pi, word_generator(pi, 1));
    const RingElement y = ring_from_word(pi, word_generator(pi, 2));
    CHECK(C.boundary(2).at(0, 0) == ring_sub(ring_one(pi), y));
    CHECK(C.boundary(2).at(1, 0) == ring_sub(x, ring_one(pi)));
    CHECK_NOTHROW(validate_complex(C));
  }
  SUBCASE("random presentations have d1*d2 = 0") {
    testgen::Rng rng(72);
    for (const GroupSpec& pi : kGroups)
      for (int it = 0; it < 10; ++it)
        CHECK_NOTHROW(validate_complex(
            fox_boundary(testgen::random_presentation(rng, pi))));
  }
}

TEST_CASE("each move kind acts as documented") {
  const Presentation2Complex P = cyclic_presentation(2);

  SUBCASE("expand adds a generator and its defining relator") {
    PresMove m;
    m.kind = PresMoveKind::Expand;
    m.word = free_gen(1, 2);
    const Presentation2Complex Q = apply_move(P, m);
    CHECK(Q.free_rank == 2);
    CHECK(Q.relators.size() == 2);
    CHECK(free_reduce(Q.relators[1]) ==
          free_reduce(free_mul(free_gen(2), free_gen(1, 2))));
    CHECK(pi_image(Q, Q.relators[1]).is_identity());
  }
  SUBCASE("stabpair is expand with the empty word") {
    PresMove m;
    m.kind = PresMoveKind::StabilizePair;
    const Presentation2Complex Q = apply_move(P, m);
    CHECK(Q.free_rank == 2);
    CHECK(free_reduce(Q.relators[1]) == free_gen(2));
  }
  SUBCASE("collapse undoes expand") {
    PresMove up;
    up.kind = PresMoveKind::Expand;
    up.word = free_gen(1, 2);
    const Presentation2Complex Q = apply_move(P, up);
    PresMove down;
    down.kind = PresMoveKind::Collapse;
    down.gen = 2;
    down.rel = 1;
    const Presentation2Complex R = apply_move(Q, down);
    CHECK(presentations_match(R, P));
    // Collapsing with a relator of the wrong shape fails.
    PresMove bad = down;
    bad.rel = 0;
    CHECK_THROWS_AS(apply_move(Q, bad), CheckFailedError);
  }
  SUBCASE("invert, conjugate, multiply, permute") {
    PresMove inv;
    inv.kind = PresMoveKind::InvertRelator;
    inv.rel = 0;
    CHECK(free_reduce(apply_move(P, inv).relators[0]) == free_gen(1, -2));

    PresMove conj;
    conj.kind = PresMoveKind::ConjugateRelator;
    conj.rel = 0;
    conj.word = free_gen(1);
    CHECK(free_reduce(apply_move(P, conj).relators[0]) == free_gen(1, 2));

    PresMove stab;
    stab.kind = PresMoveKind::StabilizePair;
    const Presentation2Complex Q = apply_move(P, stab);
    PresMove mult;
    mult.kind = PresMoveKind::MultiplyRelator;
    mult.rel = 1;
    mult.rel2 = 0;
    CHECK(free_reduce(apply_move(Q, mult).relators[1]) ==
          free_reduce(free_mul(free_gen(2), free_gen(1, 2))));

    PresMove perm;
    perm.kind = PresMoveKind::PermuteRelators;
    perm.perm = {1, 0};
    const Presentation2Complex R = apply_move(Q, perm);
    CHECK(R.relators[1] == Q.relators[0]);
    CHECK_THROWS_AS(
        [&] {
          PresMove bad;
          bad.kind = PresMoveKind::MultiplyRelator;
          bad.rel = 0;
          bad.rel2 = 0;
          return apply_move(P, bad);
        }(),
        InvalidInputError);
  }
  SUBCASE("homological change demands equal Fox rows") {
    // Padding with a cancelling pair changes nothing homologically.
    const FreeWord padded =
        free_mul(P.relators[0], free_mul(free_gen(1), free_gen(1, -1)));
    CHECK(verify_homological_change(P, 0, padded));
    PresMove m;
    m.kind = PresMoveKind::HomologicalChange;
    m.rel = 0;
    m.word = padded;
    CHECK_NOTHROW(apply_move(P, m));

    // x^2 and x^3 have different rows over the free group of rank one.
    const GroupSpec f1 = free_group(1);
    const Presentation2Complex F = make_presentation(
        1, {free_mul(free_gen(1), free_gen(1, -1))}, f1, {word_identity(f1)});
    CHECK_FALSE(verify_homological_change(F, 0, free_gen(1)));
    PresMove bad;
    bad.kind = PresMoveKind::HomologicalChange;
    bad.rel = 0;
    bad.word = free_gen(1);
    CHECK_THROWS_AS(apply_move(F, bad), CheckFailedError);
  }
}

TEST_CASE("move witnesses replay the fox chains onto the moved presentation") {
  testgen::Rng rng(73);
  for (const GroupSpec& pi : kGroups) {
    for (int it = 0; it < 8; ++it) {
      const MoveSequence s = testgen::random_move_sequence(rng, pi, 6);
      Presentation2Complex P = s.initial;
      for (const PresMove& m : s.moves) {
        const SimpleWitness w = move_witness(P, m);
        const Presentation2Complex Q = apply_move(P, m);
        CHECK(replay(fox_boundary(P), w) == fox_boundary(Q));
        P = Q;
      }
    }
  }
}

TEST_CASE("whole sequences produce verified chain equivalences") {
  testgen::Rng rng(74);
  for (const GroupSpec& pi : kGroups) {
    const MoveSequence s = testgen::random_move_sequence(rng, pi, 8);
    const MovesToChainResult r = moves_to_chain_equiv(s);
    Presentation2Complex P = s.initial;
    for (const PresMove& m : s.moves) P = apply_move(P, m);
    CHECK(r.final_presentation == P);
    CHECK(replay(fox_boundary(s.initial), r.witness) == fox_boundary(P));
    CHECK_NOTHROW(verify_chain_map(r.forward));
    CHECK_NOTHROW(verify_chain_map(r.backward));
    CHECK_NOTHROW(verify_homotopy(r.on_result));
    CHECK_NOTHROW(verify_homotopy(r.on_start));
    CHECK(r.forward.source == fox_boundary(s.initial));
    CHECK(r.forward.target == fox_boundary(P));
  }
}
