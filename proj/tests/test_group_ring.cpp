#include <doctest.h>

#include "helpers.hpp"
#include "spines/errors.hpp"
#include "spines/group.hpp"
#include "spines/ring.hpp"

using namespace spines;

namespace {

const std::vector<GroupSpec> kGroups = {trivial_group(), finite_cyclic_group(2),
                                        finite_cyclic_group(5), free_group(2),
                                        free_abelian_group(2)};

// Multiplication in Z[Z/n] is polynomial convolution mod x^n - 1; this
// independent implementation is the oracle for ring_mul.
std::vector<Int> cyclic_coeffs(int n, const RingElement& a) {
  std::vector<Int> v(static_cast<size_t>(n));
  for (const auto& [w, c] : a.terms) {
    const long long e = w.is_identity() ? 0 : w.syllables.at(0).second;
    v[static_cast<size_t>(e)] += c;
  }
  return v;
}

RingElement from_cyclic_coeffs(const GroupSpec& g, const std::vector<Int>& v) {
  RingElement out = ring_zero(g);
  for (size_t e = 0; e < v.size(); ++e)
    out = ring_add(out, ring_from_word(g, word_generator(g, 1, static_cast<long long>(e)),
                                       v[e]));
  return out;
}

}  // namespace

TEST_CASE("group specs validate their parameters") {
  CHECK_THROWS_AS(free_group(-1).check(), InvalidInputError);
  CHECK_THROWS_AS(finite_cyclic_group(0).check(), InvalidInputError);
  CHECK_THROWS_AS(finite_cyclic_group(1).check(), InvalidInputError);
  CHECK(trivial_group().generator_count() == 0);
  CHECK(finite_cyclic_group(7).generator_count() == 1);
  CHECK(free_group(3).generator_count() == 3);
  CHECK(free_abelian_group(2).generator_count() == 2);
}

TEST_CASE("word normalization per group") {
  SUBCASE("trivial: everything is the identity") {
    const GroupSpec g = trivial_group();
    CHECK(normalize_word(g, {}).is_identity());
  }
  SUBCASE("finite cyclic reduces exponents mod n") {
    const GroupSpec g = finite_cyclic_group(3);
    CHECK(word_generator(g, 1, 5) == word_generator(g, 1, 2));
    CHECK(word_generator(g, 1, -1) == word_generator(g, 1, 2));
    CHECK(word_generator(g, 1, 3).is_identity());
  }
  SUBCASE("free groups cancel adjacent inverse pairs") {
    const GroupSpec g = free_group(2);
    const GroupWord w = normalize_word(g, {{1, 1}, {2, 1}, {2, -1}, {1, 1}});
    CHECK(w == word_generator(g, 1, 2));
  }
  SUBCASE("free abelian sorts and merges") {
    const GroupSpec g = free_abelian_group(2);
    const GroupWord w = normalize_word(g, {{2, 1}, {1, 1}, {2, 2}});
    const GroupWord expect = word_mul(g, word_generator(g, 1), word_generator(g, 2, 3));
    CHECK(w == expect);
    CHECK(normalize_word(g, {{1, 1}, {1, -1}}).is_identity());
  }
}

TEST_CASE("word group laws hold on random samples") {
  testgen::Rng rng(11);
  for (const GroupSpec& g : kGroups) {
    for (int it = 0; it < 50; ++it) {
      const GroupWord a = testgen::random_word(rng, g, 4);
      const GroupWord b = testgen::random_word(rng, g, 4);
      const GroupWord c = testgen::random_word(rng, g, 4);
      CHECK(word_mul(g, a, word_inv(g, a)).is_identity());
      CHECK(word_mul(g, word_mul(g, a, b), c) == word_mul(g, a, word_mul(g, b, c)));
      CHECK(word_mul(g, a, word_identity(g)) == a);
    }
  }
}

TEST_CASE("ring multiplication matches cyclic convolution oracle") {
  testgen::Rng rng(12);
  for (const int n : {2, 3, 6}) {
    const GroupSpec g = finite_cyclic_group(n);
    for (int it = 0; it < 100; ++it) {
      const RingElement a = testgen::random_element(rng, g, 3, 4);
      const RingElement b = testgen::random_element(rng, g, 3, 4);
      const std::vector<Int> va = cyclic_coeffs(n, a), vb = cyclic_coeffs(n, b);
      std::vector<Int> vc(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vc[static_cast<size_t>((i + j) % n)] += va[i] * vb[j];
      CHECK(ring_mul(a, b) == from_cyclic_coeffs(g, vc));
    }
  }
}

TEST_CASE("ring axioms hold on random samples") {
  testgen::Rng rng(13);
  for (const GroupSpec& g : kGroups) {
    for (int it = 0; it < 40; ++it) {
      const RingElement a = testgen::random_element(rng, g, 3, 3);
      const RingElement b = testgen::random_element(rng, g, 3, 3);
      const RingElement c = testgen::random_element(rng, g, 3, 3);
      CHECK(ring_mul(a, ring_add(b, c)) == ring_add(ring_mul(a, b), ring_mul(a, c)));
      CHECK(ring_mul(ring_mul(a, b), c) == ring_mul(a, ring_mul(b, c)));
      CHECK(ring_sub(a, a).is_zero());
      CHECK(ring_mul(a, ring_one(g)) == a);
      CHECK(ring_mul(ring_one(g), a) == a);
      CHECK(ring_scale(Int(-3), a) == ring_mul(ring_from_int(g, Int(-3)), a));
    }
  }
}

TEST_CASE("free group rings are noncommutative") {
  const GroupSpec g = free_group(2);
  const RingElement x = ring_from_word(g, word_generator(g, 1));
  const RingElement y = ring_from_word(g, word_generator(g, 2));
  CHECK(ring_mul(x, y) != ring_mul(y, x));
}

TEST_CASE("zero divisors in Z[Z/2]") {
  const GroupSpec g = finite_cyclic_group(2);
  const RingElement t = ring_from_word(g, word_generator(g, 1));
  const RingElement a = ring_add(ring_one(g), t);
  const RingElement b = ring_sub(ring_one(g), t);
  CHECK(ring_mul(a, b).is_zero());
}

TEST_CASE("augmentation is a ring homomorphism onto Z") {
  testgen::Rng rng(14);
  for (const GroupSpec& g : kGroups) {
    for (int it = 0; it < 40; ++it) {
      const RingElement a = testgen::random_element(rng, g, 3, 3);
      const RingElement b = testgen::random_element(rng, g, 3, 3);
      CHECK(augment(ring_add(a, b)) == augment(a) + augment(b));
      CHECK(augment(ring_mul(a, b)) == augment(a) * augment(b));
    }
  }
  CHECK(augment(ring_one(trivial_group())) == 1);
}

TEST_CASE("involution is an additive anti-homomorphism of order two") {
  testgen::Rng rng(15);
  for (const GroupSpec& g : kGroups) {
    for (int it = 0; it < 40; ++it) {
      const RingElement a = testgen::random_element(rng, g, 3, 3);
      const RingElement b = testgen::random_element(rng, g, 3, 3);
      CHECK(involute(involute(a)) == a);
      CHECK(involute(ring_add(a, b)) == ring_add(involute(a), involute(b)));
      CHECK(involute(ring_mul(a, b)) == ring_mul(involute(b), involute(a)));
      CHECK(augment(involute(a)) == augment(a));
    }
  }
}

TEST_CASE("trivial units and their inverses") {
  const GroupSpec g = finite_cyclic_group(4);
  const RingElement t = ring_from_word(g, word_generator(g, 1));
  const RingElement mt = ring_neg(t);
  CHECK(is_trivial_unit(t));
  CHECK(is_trivial_unit(mt));
  CHECK(is_trivial_unit(ring_one(g)));
  CHECK_FALSE(is_trivial_unit(ring_from_int(g, Int(2))));
  CHECK_FALSE(is_trivial_unit(ring_add(ring_one(g), t)));
  CHECK_FALSE(is_trivial_unit(ring_zero(g)));
  CHECK(ring_mul(t, trivial_unit_inverse(t)) == ring_one(g));
  CHECK(ring_mul(mt, trivial_unit_inverse(mt)) == ring_one(g));
  CHECK_THROWS_AS(trivial_unit_inverse(ring_from_int(g, Int(2))), InvalidInputError);
}
