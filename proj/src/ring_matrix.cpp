#include "spines/ring_matrix.hpp"

#include "spines/errors.hpp"

namespace spines {

RingMat rm_identity(const GroupSpec& g, long n) {
  RingMat I(g, n, n);
  for (long i = 0; i < n; ++i) I.at(i, i) = ring_one(g);
  return I;
}

RingMat compose(const RingMat& outer, const RingMat& inner) {
  if (!(outer.group == inner.group))
    throw InvalidInputError("matrix product over different coefficient groups");
  if (outer.cols != inner.rows) throw InvalidInputError("matrix shape mismatch in product");
  RingMat out(outer.group, outer.rows, inner.cols);
  for (long r = 0; r < outer.rows; ++r)
    for (long m = 0; m < outer.cols; ++m) {
      const RingElement& o = outer.at(r, m);
      if (o.is_zero()) continue;
      for (long c = 0; c < inner.cols; ++c) {
        const RingElement& i = inner.at(m, c);
        if (i.is_zero()) continue;
        out.at(r, c) = ring_add(out.at(r, c), ring_mul(i, o));
      }
    }
  return out;
}

static void require_same_shape(const RingMat& A, const RingMat& B) {
  if (!(A.group == B.group) || A.rows != B.rows || A.cols != B.cols)
    throw InvalidInputError("matrix shape mismatch");
}

RingMat rm_add(const RingMat& A, const RingMat& B) {
  require_same_shape(A, B);
  RingMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = ring_add(C.a[i], B.a[i]);
  return C;
}

RingMat rm_sub(const RingMat& A, const RingMat& B) {
  require_same_shape(A, B);
  RingMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = ring_sub(C.a[i], B.a[i]);
  return C;
}

RingMat rm_neg(const RingMat& A) {
  RingMat C = A;
  for (auto& e : C.a) e = ring_neg(e);
  return C;
}

bool rm_is_zero(const RingMat& A) {
  for (const auto& e : A.a)
    if (!e.is_zero()) return false;
  return true;
}

RingMat scale_left(const RingElement& c, const RingMat& A) {
  RingMat C = A;
  for (auto& e : C.a) e = ring_mul(c, e);
  return C;
}

RingMat scale_right(const RingMat& A, const RingElement& c) {
  RingMat C = A;
  for (auto& e : C.a) e = ring_mul(e, c);
  return C;
}

RingMat bar_transpose(const RingMat& A) {
  RingMat C(A.group, A.cols, A.rows);
  for (long r = 0; r < A.rows; ++r)
    for (long c = 0; c < A.cols; ++c) C.at(c, r) = involute(A.at(r, c));
  return C;
}

IntMat augment_matrix(const RingMat& A) {
  IntMat C(A.rows, A.cols);
  for (long r = 0; r < A.rows; ++r)
    for (long c = 0; c < A.cols; ++c) C.at(r, c) = augment(A.at(r, c));
  return C;
}

IntMat to_int_matrix(const RingMat& A) {
  IntMat C(A.rows, A.cols);
  for (long r = 0; r < A.rows; ++r)
    for (long c = 0; c < A.cols; ++c) {
      const RingElement& e = A.at(r, c);
      for (const auto& [w, coeff] : e.terms) {
        if (!w.is_identity())
          throw InvalidInputError("matrix entry has a non-identity group term");
        C.at(r, c) = coeff;
      }
    }
  return C;
}

RingMat from_int_matrix(const GroupSpec& g, const IntMat& A) {
  RingMat C(g, A.rows, A.cols);
  for (long r = 0; r < A.rows; ++r)
    for (long c = 0; c < A.cols; ++c) C.at(r, c) = ring_from_int(g, A.at(r, c));
  return C;
}

RingMat hstack(const std::vector<RingMat>& blocks) {
  if (blocks.empty()) throw InvalidInputError("hstack of no blocks");
  const long rows = blocks[0].rows;
  long cols = 0;
  for (const auto& b : blocks) {
    if (b.rows != rows) throw InvalidInputError("hstack row mismatch");
    cols += b.cols;
  }
  RingMat C(blocks[0].group, rows, cols);
  long off = 0;
  for (const auto& b : blocks) {
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < b.cols; ++c) C.at(r, off + c) = b.at(r, c);
    off += b.cols;
  }
  return C;
}

RingMat vstack(const std::vector<RingMat>& blocks) {
  if (blocks.empty()) throw InvalidInputError("vstack of no blocks");
  const long cols = blocks[0].cols;
  long rows = 0;
  for (const auto& b : blocks) {
    if (b.cols != cols) throw InvalidInputError("vstack column mismatch");
    rows += b.rows;
  }
  RingMat C(blocks[0].group, rows, cols);
  long off = 0;
  for (const auto& b : blocks) {
    for (long r = 0; r < b.rows; ++r)
      for (long c = 0; c < cols; ++c) C.at(off + r, c) = b.at(r, c);
    off += b.rows;
  }
  return C;
}

RingMat block_matrix(const std::vector<std::vector<RingMat>>& grid) {
  std::vector<RingMat> rows;
  rows.reserve(grid.size());
  for (const auto& row : grid) rows.push_back(hstack(row));
  return vstack(rows);
}

}  // namespace spines
