#include <doctest.h>

#include "helpers.hpp"
#include "spines/complex.hpp"
#include "spines/errors.hpp"

using namespace spines;

namespace {

const std::vector<GroupSpec> kGroups = {trivial_group(), finite_cyclic_group(2),
                                        free_group(2)};

// 0 -> Z -2-> Z -0-> Z -> 0, the chains of a presentation of Z/2.
BasedComplex mod2_complex() {
  const GroupSpec t = trivial_group();
  RingMat d2(t, 1, 1);
  d2.at(0, 0) = ring_from_int(t, Int(2));
  return make_complex(t, {1, 1, 1}, {{2, d2}, {1, RingMat(t, 1, 1)}});
}

}  // namespace

TEST_CASE("make_complex normalizes trailing zeros and fills shapes") {
  const GroupSpec t = trivial_group();
  const BasedComplex C = make_complex(t, {1, 2, 0, 0}, {});
  CHECK(C.top_degree() == 1);
  CHECK(C.rank(5) == 0);
  CHECK(C.boundary(1).rows == 1);
  CHECK(C.boundary(1).cols == 2);
  const BasedComplex Z = make_complex(t, {}, {});
  CHECK(Z.top_degree() == 0);
  CHECK(Z.rank(0) == 0);
  CHECK(zero_complex(t) == Z);
}

TEST_CASE("validation rejects bad shapes and nonzero d*d") {
  const GroupSpec t = trivial_group();
  CHECK_THROWS_AS(make_complex(t, {1, -1}, {}), InvalidInputError);
  RingMat bad(t, 2, 1);
  CHECK_THROWS_AS(make_complex(t, {1, 1}, {{1, bad}}), InvalidInputError);
  RingMat d2(t, 1, 1), d1(t, 1, 1);
  d2.at(0, 0) = ring_one(t);
  d1.at(0, 0) = ring_one(t);
  CHECK_THROWS_AS(validate_complex(make_complex(t, {1, 1, 1}, {{1, d1}, {2, d2}})),
                  CheckFailedError);
  CHECK_NOTHROW(validate_complex(mod2_complex()));
}

TEST_CASE("direct sums put blocks on the diagonal") {
  const BasedComplex C = mod2_complex();
  const BasedComplex S = direct_sum(C, C);
  CHECK(S.rank(1) == 2);
  CHECK(S.boundary(2).at(0, 0) == ring_from_int(C.ring, Int(2)));
  CHECK(S.boundary(2).at(0, 1).is_zero());
  CHECK(S.boundary(2).at(1, 1) == ring_from_int(C.ring, Int(2)));
  CHECK_NOTHROW(validate_complex(S));
}

TEST_CASE("chain maps verify the commuting square and reject the rest") {
  const BasedComplex C = mod2_complex();
  CHECK_NOTHROW(verify_chain_map(identity_map(C)));
  CHECK_NOTHROW(verify_chain_map(zero_map(C, C)));
  // Multiplication by (1, 0, ...) degreewise is not a chain map here.
  std::map<int, RingMat> comps;
  comps.emplace(0, rm_identity(C.ring, 1));
  comps.emplace(2, rm_identity(C.ring, 1));
  const ChainMap bad = make_chain_map(C, C, comps);
  CHECK_THROWS_AS(verify_chain_map(bad), CheckFailedError);
}

TEST_CASE("map algebra and composition") {
  testgen::Rng rng(41);
  for (const GroupSpec& g : kGroups) {
    BasedComplex C = testgen::random_complex(rng, g, 3);
    BasedComplex D = C;
    const SimpleWitness w = testgen::roughen(rng, D, 5);
    const ReplayEquivalence rep = replay_with_equivalence(C, w);
    CHECK_NOTHROW(verify_chain_map(rep.forward));
    CHECK_NOTHROW(verify_chain_map(rep.backward));
    const ChainMap round = compose_maps(rep.backward, rep.forward);
    CHECK(round.source == C);
    CHECK(round.target == C);
    CHECK(map_sub(round, identity_map(C)) ==
          map_neg(map_sub(identity_map(C), round)));
  }
}

TEST_CASE("homotopy bookkeeping: flip, whiskering, concatenation") {
  testgen::Rng rng(42);
  const GroupSpec g = finite_cyclic_group(2);
  BasedComplex C = testgen::random_complex(rng, g, 3);
  BasedComplex D = C;
  const SimpleWitness w = testgen::roughen(rng, D, 6);
  const ReplayEquivalence rep = replay_with_equivalence(C, w);

  const ChainHomotopy h = rep.on_start;  // backward*forward ~ id
  CHECK_NOTHROW(verify_homotopy(h));
  const ChainHomotopy hf = homotopy_flip(h);
  CHECK(hf.from_map == h.to_map);
  CHECK(hf.to_map == h.from_map);
  CHECK_NOTHROW(verify_homotopy(hf));

  const ChainHomotopy hl = homotopy_left(rep.forward, h);
  CHECK(hl.from_map == compose_maps(rep.forward, h.from_map));
  CHECK_NOTHROW(verify_homotopy(hl));
  const ChainHomotopy hr = homotopy_right(h, rep.backward);
  CHECK(hr.to_map == compose_maps(h.to_map, rep.backward));
  CHECK_NOTHROW(verify_homotopy(hr));

  const ChainHomotopy z = zero_homotopy(rep.forward);
  CHECK(z.from_map == rep.forward);
  CHECK_NOTHROW(verify_homotopy(z));
  // Concatenation needs matching middle endpoints.
  const ChainHomotopy joined = homotopy_concat(homotopy_flip(h), h);
  CHECK(joined.from_map == h.to_map);
  CHECK(joined.to_map == h.to_map);
  CHECK_NOTHROW(verify_homotopy(joined));
  CHECK_THROWS_AS(homotopy_concat(h, hl), CheckFailedError);
}

TEST_CASE("mapping cone blocks and inclusion") {
  const BasedComplex C = mod2_complex();
  const ChainMap f = identity_map(C);
  const BasedComplex cone = mapping_cone(f);
  CHECK(cone.rank(0) == 1);
  CHECK(cone.rank(1) == 2);
  CHECK(cone.rank(2) == 2);
  CHECK(cone.rank(3) == 1);
  CHECK_NOTHROW(validate_complex(cone));
  // d_cone(a, b) = (-d a, -f a + d b): check each signed block.
  const RingMat d2 = cone.boundary(2);
  CHECK(d2.at(0, 0).is_zero());                          // -d1 of C
  CHECK(d2.at(1, 0) == ring_from_int(C.ring, Int(-1)));  // -f
  CHECK(d2.at(1, 1) == ring_from_int(C.ring, Int(2)));   // d2 of C
  const RingMat d3 = cone.boundary(3);
  CHECK(d3.at(0, 0) == ring_from_int(C.ring, Int(-2)));  // -d2 of C
  CHECK(d3.at(1, 0) == ring_from_int(C.ring, Int(-1)));  // -f
  const ChainMap incl = cone_inclusion(f);
  CHECK(incl.source == C);
  CHECK(incl.target == cone);
  CHECK_NOTHROW(verify_chain_map(incl));
}

TEST_CASE("dualizing is an involution and reverses boundaries") {
  testgen::Rng rng(43);
  for (const GroupSpec& g : kGroups) {
    for (int it = 0; it < 10; ++it) {
      const BasedComplex C = testgen::random_complex(rng, g, 3);
      const int n = 4;
      const BasedComplex D = dualize(C, n);
      CHECK_NOTHROW(validate_complex(D));
      for (int k = 0; k <= n; ++k) CHECK(D.rank(k) == C.rank(n - k));
      CHECK(dualize(D, n) == C);
      if (C.top_degree() >= 1 && C.rank(0) > 0 && C.rank(1) > 0)
        CHECK(D.boundary(n) == bar_transpose(C.boundary(1)));
    }
  }
  CHECK_THROWS_AS(dualize(mod2_complex(), 1), InvalidInputError);
}

TEST_CASE("dualized maps compose backward") {
  testgen::Rng rng(44);
  const GroupSpec g = finite_cyclic_group(3);
  BasedComplex C = testgen::random_complex(rng, g, 3);
  BasedComplex D = C;
  const SimpleWitness w = testgen::roughen(rng, D, 5);
  const ReplayEquivalence rep = replay_with_equivalence(C, w);
  const ChainMap a = rep.forward, b = rep.backward;
  const int n = 4;
  CHECK_NOTHROW(verify_chain_map(dualize_map(a, n)));
  CHECK(dualize_map(compose_maps(a, b), n) ==
        compose_maps(dualize_map(b, n), dualize_map(a, n)));
  CHECK(dualize_map(dualize_map(a, n), n) == a);
}

TEST_CASE("dualized homotopies keep their orientation") {
  testgen::Rng rng(45);
  const GroupSpec g = trivial_group();
  BasedComplex C = testgen::random_complex(rng, g, 3);
  BasedComplex D = C;
  const SimpleWitness w = testgen::roughen(rng, D, 5);
  const ReplayEquivalence rep = replay_with_equivalence(C, w);
  const ChainHomotopy h = rep.on_result;
  const int n = 4;
  const ChainHomotopy hd = dualize_homotopy(h, n);
  CHECK(hd.from_map == dualize_map(h.from_map, n));
  CHECK(hd.to_map == dualize_map(h.to_map, n));
  CHECK_NOTHROW(verify_homotopy(hd));
}

TEST_CASE("augmentation sends Z[pi] chains to integer chains") {
  const GroupSpec g = finite_cyclic_group(2);
  const RingElement t = ring_from_word(g, word_generator(g, 1));
  RingMat d2(g, 1, 1), d1(g, 1, 1);
  d2.at(0, 0) = ring_add(ring_one(g), t);  // 1 + t
  d1.at(0, 0) = ring_sub(t, ring_one(g));  // t - 1
  const BasedComplex C = make_complex(g, {1, 1, 1}, {{2, d2}, {1, d1}});
  const BasedComplex A = augment_complex(C);
  CHECK(A.ring == trivial_group());
  CHECK(A.boundary(2).at(0, 0) == ring_from_int(trivial_group(), Int(2)));
  CHECK(A.boundary(1).at(0, 0).is_zero());
  const ChainMap id_aug = augment_chain_map(identity_map(C));
  CHECK(id_aug.source == A);
  CHECK_NOTHROW(verify_chain_map(id_aug));
}
