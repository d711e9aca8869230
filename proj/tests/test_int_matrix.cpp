#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "spines/errors.hpp"
#include "spines/int_matrix.hpp"

using namespace spines;

namespace {

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Determinant-of-minors oracle for the Smith divisors: s_k = d_k / d_{k-1}
// where d_k is the gcd of all k x k minors.
Int minor_det(const IntMat& A, const std::vector<long>& rows,
              const std::vector<long>& cols) {
  const size_t k = rows.size();
  IntMat m(static_cast<long>(k), static_cast<long>(k));
  for (size_t r = 0; r < k; ++r)
    for (size_t c = 0; c < k; ++c) m.at(static_cast<long>(r), static_cast<long>(c)) =
        A.at(rows[r], cols[c]);
  return det(m);
}

void subsets(long n, long k, std::vector<long>& cur,
             const std::function<void(const std::vector<long>&)>& fn, long from = 0) {
  if (static_cast<long>(cur.size()) == k) {
    fn(cur);
    return;
  }
  for (long i = from; i <= n - (k - static_cast<long>(cur.size())); ++i) {
    cur.push_back(i);
    subsets(n, k, cur, fn, i + 1);
    cur.pop_back();
  }
}

std::vector<Int> snf_oracle(const IntMat& A) {
  std::vector<Int> divisors;
  Int prev(1);
  for (long k = 1; k <= std::min(A.rows, A.cols); ++k) {
    Int g(0);
    std::vector<long> rc, cc;
    subsets(A.rows, k, rc, [&](const std::vector<long>& rows) {
      std::vector<long> cur;
      subsets(A.cols, k, cur, [&](const std::vector<long>& cols) {
        g = int_gcd(g, minor_det(A, rows, cols));
      });
    });
    if (g == 0) break;
    divisors.push_back(g / prev);
    prev = g;
  }
  return divisors;
}

}  // namespace

TEST_CASE("smith normal form on a worked example") {
  IntMat A(2, 2);
  A.at(0, 0) = 2;
  A.at(0, 1) = 4;
  A.at(1, 0) = 6;
  A.at(1, 1) = 8;
  const SNFResult r = snf(A);
  REQUIRE(r.divisors.size() == 2);
  CHECK(r.divisors[0] == 2);
  CHECK(r.divisors[1] == 4);
}

TEST_CASE("smith divisors match the gcd-of-minors oracle") {
  testgen::Rng rng(21);
  for (int it = 0; it < 200; ++it) {
    const long rows = testgen::pick(rng, 1, 4), cols = testgen::pick(rng, 1, 4);
    const IntMat A = testgen::random_int_matrix(rng, rows, cols, 6);
    const SNFResult r = snf(A);
    CHECK(r.divisors == snf_oracle(A));
    for (size_t i = 0; i + 1 < r.divisors.size(); ++i) {
      CHECK(r.divisors[i] > 0);
      CHECK(r.divisors[i + 1] % r.divisors[i] == 0);
    }
    CHECK(rank_Z(A) == static_cast<long>(r.divisors.size()));
  }
}

TEST_CASE("determinant is multiplicative and detects singularity") {
  testgen::Rng rng(22);
  for (int it = 0; it < 60; ++it) {
    const long n = testgen::pick(rng, 1, 4);
    const IntMat A = testgen::random_int_matrix(rng, n, n, 4);
    const IntMat B = testgen::random_int_matrix(rng, n, n, 4);
    CHECK(det(int_mul(A, B)) == det(A) * det(B));
  }
  IntMat S(2, 2);
  S.at(0, 0) = 2;
  S.at(0, 1) = 4;
  S.at(1, 0) = 1;
  S.at(1, 1) = 2;
  CHECK(det(S) == 0);
  CHECK(det(int_identity(3)) == 1);
}

TEST_CASE("unimodular inverse round trips and rejects the rest") {
  testgen::Rng rng(23);
  for (int it = 0; it < 60; ++it) {
    // Build a unimodular matrix as a short product of elementary matrices.
    const long n = testgen::pick(rng, 1, 4);
    IntMat U = int_identity(n);
    for (int ops = 0; ops < 6; ++ops) {
      IntMat E = int_identity(n);
      if (n >= 2) {
        long i = testgen::pick(rng, 0, n - 1), j = testgen::pick(rng, 0, n - 1);
        if (i == j) {
          E.at(i, i) = testgen::pick(rng, 0, 1) ? 1 : -1;
        } else {
          E.at(i, j) = Int(testgen::pick(rng, -3, 3));
        }
      } else {
        E.at(0, 0) = testgen::pick(rng, 0, 1) ? 1 : -1;
      }
      U = int_mul(U, E);
    }
    const IntMat V = inv_unimodular(U);
    CHECK(int_mul(U, V) == int_identity(n));
    CHECK(int_mul(V, U) == int_identity(n));
  }
  IntMat D(2, 2);
  D.at(0, 0) = 2;
  D.at(1, 1) = 1;
  CHECK_THROWS_AS(inv_unimodular(D), CheckFailedError);
  CHECK_THROWS_AS(inv_unimodular(IntMat(2, 3)), InvalidInputError);
}

TEST_CASE("linear solver finds exact integer solutions") {
  testgen::Rng rng(24);
  for (int it = 0; it < 60; ++it) {
    const long m = testgen::pick(rng, 1, 4), n = testgen::pick(rng, 1, 4),
               k = testgen::pick(rng, 1, 2);
    const IntMat A = testgen::random_int_matrix(rng, m, n, 4);
    const IntMat X = testgen::random_int_matrix(rng, n, k, 4);
    const IntMat B = int_mul(A, X);
    const auto sol = solve_linear(A, B);
    REQUIRE(sol.has_value());
    CHECK(int_mul(A, *sol) == B);
  }
  IntMat A(1, 1), B(1, 1);
  A.at(0, 0) = 2;
  B.at(0, 0) = 1;
  CHECK_FALSE(solve_linear(A, B).has_value());
}

TEST_CASE("column operation scripts reduce unimodular matrices to identity") {
  testgen::Rng rng(25);
  for (int it = 0; it < 20; ++it) {
    const long n = testgen::pick(rng, 1, 3);
    IntMat U = int_identity(n);
    for (int ops = 0; ops < 5; ++ops) {
      IntMat E = int_identity(n);
      if (n >= 2) {
        long i = testgen::pick(rng, 0, n - 1), j = testgen::pick(rng, 0, n - 1);
        if (i != j) E.at(i, j) = Int(testgen::pick(rng, -2, 2));
      }
      U = int_mul(U, E);
    }
    IntMat W = U;
    for (const ColOp& op : gl_col_ops(U)) {
      switch (op.kind) {
        case ColOp::Kind::Add:
          for (long r = 0; r < W.rows; ++r) W.at(r, op.i) += op.c * W.at(r, op.j);
          break;
        case ColOp::Kind::Neg:
          for (long r = 0; r < W.rows; ++r) W.at(r, op.i) = -W.at(r, op.i);
          break;
        case ColOp::Kind::Swap:
          for (long r = 0; r < W.rows; ++r) std::swap(W.at(r, op.i), W.at(r, op.j));
          break;
      }
    }
    CHECK(W == int_identity(n));
    // Replaying each inverse op after its op is a no-op on any matrix.
    for (const ColOp& op : gl_col_ops(U)) {
      const ColOp inv = col_op_inverse(op);
      if (op.kind == ColOp::Kind::Add) CHECK(inv.c == -op.c);
    }
  }
  IntMat S(2, 2);
  S.at(0, 0) = 2;
  CHECK_THROWS_AS(gl_col_ops(S), CheckFailedError);
}

TEST_CASE("floor division rounds toward minus infinity") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(floor_div(Int(-7), Int(-2)) == 3);
  CHECK(floor_div(Int(6), Int(3)) == 2);
}
