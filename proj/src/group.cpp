#include "spines/group.hpp"

#include <algorithm>
#include <map>

#include "spines/errors.hpp"

namespace spines {

int GroupSpec::generator_count() const {
  switch (kind) {
    case GroupKind::Trivial:
      return 0;
    case GroupKind::Free:
    case GroupKind::FreeAbelian:
      return param;
    case GroupKind::FiniteCyclic:
      return 1;
  }
  return 0;
}

void GroupSpec::check() const {
  switch (kind) {
    case GroupKind::Trivial:
      return;
    case GroupKind::Free:
    case GroupKind::FreeAbelian:
      if (param < 0) throw InvalidInputError("group rank must be >= 0");
      return;
    case GroupKind::FiniteCyclic:
      if (param < 1) throw InvalidInputError("cyclic group order must be >= 1");
      return;
  }
}

GroupSpec trivial_group() { return {GroupKind::Trivial, 0}; }
GroupSpec free_group(int rank) {
  GroupSpec g{GroupKind::Free, rank};
  g.check();
  return g;
}
GroupSpec free_abelian_group(int rank) {
  GroupSpec g{GroupKind::FreeAbelian, rank};
  g.check();
  return g;
}
GroupSpec finite_cyclic_group(int order) {
  GroupSpec g{GroupKind::FiniteCyclic, order};
  g.check();
  return g;
}

GroupWord normalize_word(const GroupSpec& g, const RawLetters& letters) {
  const int n = g.generator_count();
  for (const auto& [gen, exp] : letters) {
    if (gen < 1 || gen > n)
      throw InvalidInputError("generator index " + std::to_string(gen) +
                              " out of range for this group");
    (void)exp;
  }
  GroupWord w;
  switch (g.kind) {
    case GroupKind::Trivial:
      return w;
    case GroupKind::FiniteCyclic: {
      const long long order = g.param;
      long long e = 0;
      for (const auto& [gen, exp] : letters) {
        (void)gen;
        e = (e + exp % order + order) % order;
      }
      if (e != 0) w.syllables.emplace_back(1, e);
      return w;
    }
    case GroupKind::FreeAbelian: {
      std::map<int, long long> v;
      for (const auto& [gen, exp] : letters) v[gen] += exp;
      for (const auto& [gen, exp] : v)
        if (exp != 0) w.syllables.emplace_back(gen, exp);
      return w;
    }
    case GroupKind::Free: {
      // Free reduction with a stack; adjacent syllables always have
      // distinct generators.
      for (const auto& [gen, exp] : letters) {
        if (exp == 0) continue;
        if (!w.syllables.empty() && w.syllables.back().first == gen) {
          w.syllables.back().second += exp;
          if (w.syllables.back().second == 0) w.syllables.pop_back();
        } else {
          w.syllables.emplace_back(gen, exp);
        }
      }
      return w;
    }
  }
  return w;
}

GroupWord word_identity(const GroupSpec&) { return {}; }

GroupWord word_generator(const GroupSpec& g, int i, long long exponent) {
  return normalize_word(g, {{i, exponent}});
}

GroupWord word_mul(const GroupSpec& g, const GroupWord& a, const GroupWord& b) {
  RawLetters letters = a.syllables;
  letters.insert(letters.end(), b.syllables.begin(), b.syllables.end());
  return normalize_word(g, letters);
}

GroupWord word_inv(const GroupSpec& g, const GroupWord& a) {
  RawLetters letters;
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
    letters.emplace_back(it->first, -it->second);
  return normalize_word(g, letters);
}

}  // namespace spines
