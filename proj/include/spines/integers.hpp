#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace spines {

// Exact arbitrary-precision integers.  All linear algebra in this library is
// over Z or Z[pi] with Int coefficients; nothing is ever done in floating
// point.
using Int = boost::multiprecision::cpp_int;

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace spines
