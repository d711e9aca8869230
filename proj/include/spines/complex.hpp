#pragma once

#include <map>
#include <vector>

#include "spines/ring_matrix.hpp"

namespace spines {

// A based free chain complex of left Z[pi]-modules, concentrated in
// degrees 0..top_degree().  boundaries[k] is the matrix of
// d_k : C_k -> C_{k-1} for 1 <= k <= top_degree(); storage is normalized so
// that ranks has no trailing zeros (but always at least one entry) and every
// degree in range has an explicitly shaped matrix.  Normalized storage makes
// structural equality meaningful.
struct BasedComplex {
  GroupSpec ring;
  std::vector<long> ranks{0};
  std::map<int, RingMat> boundaries;

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
  long rank(int k) const {
    return (k >= 0 && k <= top_degree()) ? ranks[static_cast<size_t>(k)] : 0;
  }
  RingMat boundary(int k) const;

  bool operator==(const BasedComplex&) const = default;
};

// Normalizes and shape-checks; throws InvalidInputError on negative ranks,
// matrices of the wrong shape, or coefficient group mismatches.  Does not
// check dd = 0; that is validate_complex.
BasedComplex make_complex(const GroupSpec& ring, std::vector<long> ranks,
                          std::map<int, RingMat> boundaries);

// Checks dd = 0; on failure throws CheckFailedError naming the first
// offending degree and entry.
void validate_complex(const BasedComplex& C);

BasedComplex zero_complex(const GroupSpec& g);
BasedComplex direct_sum(const BasedComplex& A, const BasedComplex& B);

// A chain map carrying its endpoints by value.  Components are stored
// sparsely (zero and empty-shaped degrees omitted) so equal maps compare
// equal structurally.
struct ChainMap {
  BasedComplex source;
  BasedComplex target;
  std::map<int, RingMat> components;

  RingMat component(int k) const;

  bool operator==(const ChainMap&) const = default;
};

ChainMap make_chain_map(const BasedComplex& source, const BasedComplex& target,
                        const std::map<int, RingMat>& components);
// Throws CheckFailedError naming the first degree where the square fails to
// commute.
void verify_chain_map(const ChainMap& f);

ChainMap identity_map(const BasedComplex& C);
ChainMap zero_map(const BasedComplex& source, const BasedComplex& target);
// g after f; CheckFailedError if f.target != g.source.
ChainMap compose_maps(const ChainMap& g, const ChainMap& f);
ChainMap map_add(const ChainMap& f, const ChainMap& g);
ChainMap map_sub(const ChainMap& f, const ChainMap& g);
ChainMap map_neg(const ChainMap& f);

// A homotopy h between chain maps f and g with the orientation
//   d h + h d = g - f,
// components h_k : source_k -> target_{k+1}.
struct ChainHomotopy {
  ChainMap from_map;
  ChainMap to_map;
  std::map<int, RingMat> components;

  RingMat component(int k) const;

  bool operator==(const ChainHomotopy&) const = default;
};

ChainHomotopy make_homotopy(const ChainMap& from_map, const ChainMap& to_map,
                            const std::map<int, RingMat>& components);
// Throws CheckFailedError naming the first degree where dh + hd != g - f.
void verify_homotopy(const ChainHomotopy& h);

ChainHomotopy zero_homotopy(const ChainMap& f);
// Reverses orientation: if h : f ~ g then flip(h) : g ~ f.
ChainHomotopy homotopy_flip(const ChainHomotopy& h);
// h1 : f ~ g and h2 : g ~ k compose to f ~ k by adding components.
ChainHomotopy homotopy_concat(const ChainHomotopy& h1, const ChainHomotopy& h2);
// Whiskering: a*f ~ a*g and f*b ~ g*b.
ChainHomotopy homotopy_left(const ChainMap& a, const ChainHomotopy& h);
ChainHomotopy homotopy_right(const ChainHomotopy& h, const ChainMap& b);

// cone(f)_k = source_{k-1} (+) target_k with d(a, b) = (-da, db - fa).
BasedComplex mapping_cone(const ChainMap& f);
// The canonical inclusion target -> cone(f).
ChainMap cone_inclusion(const ChainMap& f);

// n-dual: rank_k = rank C_{n-k} and d_k = bar-transpose of d^C_{n-k+1}.
// Requires n >= top_degree(C).  dualize(dualize(C, n), n) = C.
BasedComplex dualize(const BasedComplex& C, int n);
// Contravariant: for f : X -> Y this is dual(Y) -> dual(X) with components
// bar_transpose(f_{n-k}).
ChainMap dualize_map(const ChainMap& f, int n);
// For h : u ~ v (maps X -> Y) this is a homotopy dual(u) ~ dual(v) with
// components bar_transpose(h_{n-k-1}); the orientation is preserved.
ChainHomotopy dualize_homotopy(const ChainHomotopy& h, int n);

// Entrywise augmentation: the same cell structure over the trivial group.
BasedComplex augment_complex(const BasedComplex& C);
ChainMap augment_chain_map(const ChainMap& f);

}  // namespace spines
