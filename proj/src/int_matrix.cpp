#include "spines/int_matrix.hpp"

#include <algorithm>
#include <utility>

#include "spines/errors.hpp"

namespace spines {

IntMat int_identity(long n) {
  IntMat I(n, n);
  for (long i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMat int_mul(const IntMat& A, const IntMat& B) {
  if (A.cols != B.rows) throw InvalidInputError("integer matrix shape mismatch in product");
  IntMat C(A.rows, B.cols);
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.cols; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (long j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

static void require_same_shape(const IntMat& A, const IntMat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw InvalidInputError("integer matrix shape mismatch");
}

IntMat int_add(const IntMat& A, const IntMat& B) {
  require_same_shape(A, B);
  IntMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

IntMat int_sub(const IntMat& A, const IntMat& B) {
  require_same_shape(A, B);
  IntMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

IntMat int_neg(const IntMat& A) {
  IntMat C = A;
  for (auto& x : C.a) x = -x;
  return C;
}

IntMat int_transpose(const IntMat& A) {
  IntMat C(A.cols, A.rows);
  for (long i = 0; i < A.rows; ++i)
    for (long j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

bool int_is_zero(const IntMat& A) {
  return std::all_of(A.a.begin(), A.a.end(), [](const Int& x) { return x == 0; });
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

SNFResult snf(const IntMat& A) {
  const long rows = A.rows, cols = A.cols;
  IntMat S = A;
  IntMat U = int_identity(rows);
  IntMat V = int_identity(cols);

  auto swap_rows = [&](long i, long j) {
    for (long c = 0; c < cols; ++c) std::swap(S.at(i, c), S.at(j, c));
    for (long c = 0; c < rows; ++c) std::swap(U.at(i, c), U.at(j, c));
  };
  auto swap_cols = [&](long i, long j) {
    for (long r = 0; r < rows; ++r) std::swap(S.at(r, i), S.at(r, j));
    for (long r = 0; r < cols; ++r) std::swap(V.at(r, i), V.at(r, j));
  };
  auto addrow = [&](long dst, long src, const Int& c) {
    for (long k = 0; k < cols; ++k) S.at(dst, k) += c * S.at(src, k);
    for (long k = 0; k < rows; ++k) U.at(dst, k) += c * U.at(src, k);
  };
  auto addcol = [&](long dst, long src, const Int& c) {
    for (long r = 0; r < rows; ++r) S.at(r, dst) += c * S.at(r, src);
    for (long r = 0; r < cols; ++r) V.at(r, dst) += c * V.at(r, src);
  };
  auto negrow = [&](long i) {
    for (long c = 0; c < cols; ++c) S.at(i, c) = -S.at(i, c);
    for (long c = 0; c < rows; ++c) U.at(i, c) = -U.at(i, c);
  };

  long t = 0;
  while (t < std::min(rows, cols)) {
    // Pivot: the entry of smallest nonzero absolute value in the trailing
    // block, which keeps intermediate entries modest.
    long pi = -1, pj = -1;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (S.at(i, j) != 0 &&
            (pi < 0 || int_abs(S.at(i, j)) < int_abs(S.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = t + 1; i < rows; ++i)
        if (S.at(i, t) != 0) {
          Int q = floor_div(S.at(i, t), S.at(t, t));
          addrow(i, t, -q);
          if (S.at(i, t) != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
      for (long j = t + 1; j < cols; ++j)
        if (S.at(t, j) != 0) {
          Int q = floor_div(S.at(t, j), S.at(t, t));
          addcol(j, t, -q);
          if (S.at(t, j) != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
    }
    if (S.at(t, t) < 0) negrow(t);
    ++t;
  }

  // Enforce the divisibility chain d_i | d_{i+1} by folding column i+1 into
  // column i and re-clearing the 2x2 block.
  bool changed = true;
  while (changed) {
    changed = false;
    for (long i = 0; i + 1 < std::min(rows, cols); ++i) {
      const Int a = S.at(i, i);
      const Int b = S.at(i + 1, i + 1);
      if (a != 0 && b % a != 0) {
        addcol(i, i + 1, 1);
        while (true) {
          if (S.at(i, i) == 0 ||
              (S.at(i + 1, i) != 0 && int_abs(S.at(i + 1, i)) < int_abs(S.at(i, i))))
            swap_rows(i, i + 1);
          if (S.at(i + 1, i) != 0) {
            Int q = floor_div(S.at(i + 1, i), S.at(i, i));
            addrow(i + 1, i, -q);
            continue;
          }
          if (S.at(i, i + 1) != 0) {
            Int q = floor_div(S.at(i, i + 1), S.at(i, i));
            addcol(i + 1, i, -q);
            continue;
          }
          break;
        }
        if (S.at(i, i) < 0) negrow(i);
        if (S.at(i + 1, i + 1) < 0) negrow(i + 1);
        changed = true;
      }
    }
  }

  SNFResult res;
  res.U = std::move(U);
  res.V = std::move(V);
  for (long i = 0; i < std::min(rows, cols); ++i)
    if (S.at(i, i) != 0) res.divisors.push_back(S.at(i, i));
  return res;
}

long rank_Z(const IntMat& A) { return static_cast<long>(snf(A).divisors.size()); }

std::optional<IntMat> solve_linear(const IntMat& A, const IntMat& B) {
  if (A.rows != B.rows) throw InvalidInputError("solve_linear shape mismatch");
  const long rows = A.rows, cols = A.cols, k = B.cols;
  if (rows == 0) return IntMat(cols, k);
  SNFResult s = snf(A);
  IntMat UB = int_mul(s.U, B);
  IntMat Y(cols, k);
  const long nd = static_cast<long>(s.divisors.size());
  for (long i = 0; i < rows; ++i) {
    const Int d = i < nd ? s.divisors[static_cast<size_t>(i)] : Int(0);
    for (long j = 0; j < k; ++j) {
      if (d == 0) {
        if (UB.at(i, j) != 0) return std::nullopt;
      } else {
        if (UB.at(i, j) % d != 0) return std::nullopt;
        if (i < cols) Y.at(i, j) = UB.at(i, j) / d;
      }
    }
  }
  return int_mul(s.V, Y);
}

Int det(const IntMat& A) {
  if (A.rows != A.cols) throw InvalidInputError("determinant of a non-square matrix");
  const long n = A.rows;
  if (n == 0) return 1;
  IntMat M = A;
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (M.at(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (M.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (long c = 0; c < n; ++c) std::swap(M.at(k, c), M.at(p, c));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        M.at(i, j) = (M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j)) / prev;
    prev = M.at(k, k);
  }
  return sign > 0 ? M.at(n - 1, n - 1) : Int(-M.at(n - 1, n - 1));
}

IntMat inv_unimodular(const IntMat& A) {
  if (A.rows != A.cols) throw InvalidInputError("inverse of a non-square matrix");
  auto X = solve_linear(A, int_identity(A.rows));
  if (!X) throw CheckFailedError("matrix is not invertible over the integers");
  if (int_mul(A, *X) != int_identity(A.rows))
    throw CheckFailedError("matrix is not invertible over the integers");
  return *X;
}

std::vector<ColOp> gl_col_ops(const IntMat& Ain) {
  if (Ain.rows != Ain.cols) throw InvalidInputError("gl_col_ops needs a square matrix");
  const long n = Ain.rows;
  IntMat A = Ain;
  std::vector<ColOp> ops;
  auto do_op = [&](ColOp op) {
    switch (op.kind) {
      case ColOp::Kind::Add:
        for (long r = 0; r < n; ++r) A.at(r, op.i) += op.c * A.at(r, op.j);
        break;
      case ColOp::Kind::Neg:
        for (long r = 0; r < n; ++r) A.at(r, op.i) = -A.at(r, op.i);
        break;
      case ColOp::Kind::Swap:
        for (long r = 0; r < n; ++r) std::swap(A.at(r, op.i), A.at(r, op.j));
        break;
    }
    ops.push_back(std::move(op));
  };

  for (long r = 0; r < n; ++r) {
    // Euclidean reduction along row r, rightward columns only.
    while (true) {
      std::vector<long> nz;
      for (long c = r; c < n; ++c)
        if (A.at(r, c) != 0) nz.push_back(c);
      if (nz.empty()) throw CheckFailedError("singular matrix in column reduction");
      long c0 = nz[0];
      for (long c : nz)
        if (int_abs(A.at(r, c)) < int_abs(A.at(r, c0))) c0 = c;
      bool done = true;
      for (long c : nz)
        if (c != c0) {
          Int q = floor_div(A.at(r, c), A.at(r, c0));
          if (q != 0) do_op({ColOp::Kind::Add, c, c0, -q});
          if (A.at(r, c) != 0) done = false;
        }
      if (done) break;
    }
    if (A.at(r, r) == 0) {
      long c0 = r;
      while (A.at(r, c0) == 0) ++c0;
      do_op({ColOp::Kind::Swap, r, c0, 0});
    }
    if (A.at(r, r) < 0) do_op({ColOp::Kind::Neg, r, 0, 0});
  }
  for (long r = 0; r < n; ++r) {
    if (A.at(r, r) != 1) throw CheckFailedError("matrix is not unimodular");
    for (long c = 0; c < n; ++c)
      if (c != r && A.at(r, c) != 0) do_op({ColOp::Kind::Add, c, r, -A.at(r, c)});
  }
  if (A != int_identity(n)) throw CheckFailedError("column reduction did not terminate");
  return ops;
}

ColOp col_op_inverse(const ColOp& op) {
  ColOp inv = op;
  if (op.kind == ColOp::Kind::Add) inv.c = -op.c;
  return inv;
}

}  // namespace spines
