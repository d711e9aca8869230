#pragma once

#include <optional>
#include <vector>

#include "spines/integers.hpp"

namespace spines {

// Dense integer matrix, row-major.  Rows and columns may be zero; the entry
// vector then stays empty.
struct IntMat {
  long rows = 0;
  long cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(long r, long c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const IntMat&) const = default;
};

IntMat int_identity(long n);
IntMat int_mul(const IntMat& A, const IntMat& B);
IntMat int_add(const IntMat& A, const IntMat& B);
IntMat int_sub(const IntMat& A, const IntMat& B);
IntMat int_neg(const IntMat& A);
IntMat int_transpose(const IntMat& A);
bool int_is_zero(const IntMat& A);

// Smith normal form: U * input * V = diag(divisors) padded with zeros, with
// U, V unimodular and each divisor positive and dividing the next.
struct SNFResult {
  IntMat U;
  IntMat V;
  std::vector<Int> divisors;
};

SNFResult snf(const IntMat& A);

// Diagonal of U*A*V including zeros, length min(rows, cols).  Cheaper
// callers that only need ranks/divisors use snf() and divisors.size().
long rank_Z(const IntMat& A);

// Solve A X = B over the integers; nullopt when no integral solution exists.
std::optional<IntMat> solve_linear(const IntMat& A, const IntMat& B);

// Exact determinant (Bareiss elimination), square input only.
Int det(const IntMat& A);

// Inverse of a unimodular matrix; throws CheckFailedError otherwise.
IntMat inv_unimodular(const IntMat& A);

// One elementary column operation on a square integer matrix.
struct ColOp {
  enum class Kind { Add, Neg, Swap };
  Kind kind;
  long i = 0;
  long j = 0;  // Add: col_i += c*col_j; Swap: cols i, j
  Int c;
};

// Column operations reducing a square unimodular matrix to the identity, in
// application order.  Throws CheckFailedError for singular or non-unimodular
// input.
std::vector<ColOp> gl_col_ops(const IntMat& A);

ColOp col_op_inverse(const ColOp& op);

// Python-style floor division and the matching remainder; the reduction
// loops ported here rely on floor semantics.
Int floor_div(const Int& a, const Int& b);

}  // namespace spines
