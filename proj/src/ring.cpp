#include "spines/ring.hpp"

#include "spines/errors.hpp"

namespace spines {

RingElement ring_zero(const GroupSpec& g) { return {g, {}}; }

RingElement ring_one(const GroupSpec& g) { return ring_from_int(g, 1); }

RingElement ring_from_int(const GroupSpec& g, const Int& n) {
  RingElement e{g, {}};
  if (n != 0) e.terms[word_identity(g)] = n;
  return e;
}

RingElement ring_from_word(const GroupSpec& g, const GroupWord& w, const Int& c) {
  RingElement e{g, {}};
  if (c != 0) e.terms[w] = c;
  return e;
}

static void require_same_group(const RingElement& a, const RingElement& b) {
  if (!(a.group == b.group))
    throw InvalidInputError("ring elements over different coefficient groups");
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
  require_same_group(a, b);
  RingElement out = a;
  for (const auto& [w, c] : b.terms) {
    Int& slot = out.terms[w];
    slot += c;
    if (slot == 0) out.terms.erase(w);
  }
  return out;
}

RingElement ring_neg(const RingElement& a) {
  RingElement out{a.group, {}};
  for (const auto& [w, c] : a.terms) out.terms[w] = -c;
  return out;
}

RingElement ring_sub(const RingElement& a, const RingElement& b) {
  return ring_add(a, ring_neg(b));
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  require_same_group(a, b);
  RingElement out{a.group, {}};
  for (const auto& [wa, ca] : a.terms) {
    for (const auto& [wb, cb] : b.terms) {
      GroupWord w = word_mul(a.group, wa, wb);
      Int& slot = out.terms[w];
      slot += ca * cb;
      if (slot == 0) out.terms.erase(w);
    }
  }
  return out;
}

RingElement ring_scale(const Int& c, const RingElement& a) {
  RingElement out{a.group, {}};
  if (c == 0) return out;
  for (const auto& [w, cw] : a.terms) out.terms[w] = c * cw;
  return out;
}

Int augment(const RingElement& a) {
  Int s = 0;
  for (const auto& [w, c] : a.terms) {
    (void)w;
    s += c;
  }
  return s;
}

RingElement involute(const RingElement& a) {
  RingElement out{a.group, {}};
  for (const auto& [w, c] : a.terms) out.terms[word_inv(a.group, w)] = c;
  return out;
}

bool is_trivial_unit(const RingElement& a) {
  if (a.terms.size() != 1) return false;
  const Int& c = a.terms.begin()->second;
  return c == 1 || c == -1;
}

RingElement trivial_unit_inverse(const RingElement& a) {
  if (!is_trivial_unit(a))
    throw CheckFailedError("element is not of the form +-(group word)");
  const auto& [w, c] = *a.terms.begin();
  return ring_from_word(a.group, word_inv(a.group, w), c);
}

}  // namespace spines
