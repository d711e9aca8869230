#pragma once

#include <vector>

#include "spines/int_matrix.hpp"
#include "spines/ring.hpp"

namespace spines {

// Dense matrix over Z[pi], row-major.  Matrices represent maps of finitely
// generated based free left modules: column c holds the coordinates of the
// image of the c-th basis vector, and coordinates are left coefficients.
struct RingMat {
  GroupSpec group;
  long rows = 0;
  long cols = 0;
  std::vector<RingElement> a;

  RingMat() = default;
  RingMat(const GroupSpec& g, long r, long c)
      : group(g), rows(r), cols(c), a(static_cast<size_t>(r) * c, ring_zero(g)) {}

  RingElement& at(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
  const RingElement& at(long r, long c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  bool operator==(const RingMat&) const = default;
};

RingMat rm_identity(const GroupSpec& g, long n);

// Matrix of outer*inner.  Because coordinates are left coefficients, the
// inner map's entries multiply on the LEFT:
//   out[r][c] = sum_m inner[m][c] * outer[r][m].
RingMat compose(const RingMat& outer, const RingMat& inner);

RingMat rm_add(const RingMat& A, const RingMat& B);
RingMat rm_sub(const RingMat& A, const RingMat& B);
RingMat rm_neg(const RingMat& A);
bool rm_is_zero(const RingMat& A);

// Left/right multiplication of every entry by a fixed ring element.
RingMat scale_left(const RingElement& c, const RingMat& A);
RingMat scale_right(const RingMat& A, const RingElement& c);

// Entrywise involution followed by transposition.  This is contravariant:
// bar_transpose(compose(A, B)) = compose(bar_transpose(B), bar_transpose(A)).
RingMat bar_transpose(const RingMat& A);

// Entrywise augmentation down to an integer matrix.
IntMat augment_matrix(const RingMat& A);

// Conversion for matrices all of whose entries are integer multiples of the
// identity; throws InvalidInputError otherwise.
IntMat to_int_matrix(const RingMat& A);
RingMat from_int_matrix(const GroupSpec& g, const IntMat& A);

RingMat hstack(const std::vector<RingMat>& blocks);
RingMat vstack(const std::vector<RingMat>& blocks);
RingMat block_matrix(const std::vector<std::vector<RingMat>>& grid);

}  // namespace spines
