#pragma once

#include <map>

#include "spines/group.hpp"
#include "spines/integers.hpp"

namespace spines {

// An element of the integral group ring Z[pi]: a finite formal sum of
// canonical group words with nonzero integer coefficients.
struct RingElement {
  GroupSpec group;
  std::map<GroupWord, Int> terms;

  bool operator==(const RingElement& o) const {
    return group == o.group && terms == o.terms;
  }
  bool is_zero() const { return terms.empty(); }
};

RingElement ring_zero(const GroupSpec& g);
RingElement ring_one(const GroupSpec& g);
RingElement ring_from_int(const GroupSpec& g, const Int& n);
RingElement ring_from_word(const GroupSpec& g, const GroupWord& w, const Int& c = Int(1));

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_scale(const Int& c, const RingElement& a);

// Augmentation Z[pi] -> Z: sum of coefficients.
Int augment(const RingElement& a);

// The standard involution sum(c_m * m) -> sum(c_m * m^-1).
RingElement involute(const RingElement& a);

// True when a = +-m for a single group word m.  (These are the units a
// SimpleWitness may place on a diagonal; Z[pi] can have further units for
// some pi, but those never arise here.)
bool is_trivial_unit(const RingElement& a);

// Inverse of a trivial unit +-m, namely +-(m^-1).  Throws CheckFailedError
// if a is not a trivial unit.
RingElement trivial_unit_inverse(const RingElement& a);

}  // namespace spines
