#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace spines {

enum class GroupKind { Trivial, Free, FreeAbelian, FiniteCyclic };

// The coefficient group pi of a group ring Z[pi].  `param` is the rank for
// Free and FreeAbelian and the order (>= 1) for FiniteCyclic; it is unused
// for Trivial.
struct GroupSpec {
  GroupKind kind = GroupKind::Trivial;
  int param = 0;

  bool operator==(const GroupSpec&) const = default;

  int generator_count() const;
  // Throws InvalidInputError if the parameter is out of range.
  void check() const;
};

GroupSpec trivial_group();
GroupSpec free_group(int rank);
GroupSpec free_abelian_group(int rank);
GroupSpec finite_cyclic_group(int order);

// A group element in canonical form, stored as syllables (generator,
// exponent) with 1-based generator indices and nonzero exponents.  The
// canonical form depends on the kind: freely reduced syllable string (Free),
// exponent vector sorted by generator (FreeAbelian), a single exponent in
// [1, order) or empty (FiniteCyclic), empty (Trivial).  Words compare
// lexicographically on syllables, which is a total order on each group.
struct GroupWord {
  std::vector<std::pair<int, long long>> syllables;

  auto operator<=>(const GroupWord&) const = default;
  bool is_identity() const { return syllables.empty(); }
};

// Unreduced input letters, same encoding as syllables.
using RawLetters = std::vector<std::pair<int, long long>>;

// Canonical form of the element spelled by `letters`.  Rejects generator
// indices outside [1, generator_count].
GroupWord normalize_word(const GroupSpec& g, const RawLetters& letters);

GroupWord word_identity(const GroupSpec& g);
GroupWord word_generator(const GroupSpec& g, int i, long long exponent = 1);
GroupWord word_mul(const GroupSpec& g, const GroupWord& a, const GroupWord& b);
GroupWord word_inv(const GroupSpec& g, const GroupWord& a);

}  // namespace spines
