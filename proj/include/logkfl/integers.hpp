// Exact integer scalar and the handful of number-theory helpers everything else leans on.
// Int is arbitrary precision; intermediate Smith-form entries can blow past 64 bits even
// for small inputs, so no fixed-width type appears in the elimination paths.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "logkfl/errors.hpp"

namespace logkfl {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// g = gcd(a,b) with g = x*a + y*b.
inline Int exgcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return abs_int(a);
  }
  Int x1, y1;
  Int g = exgcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Largest e with p^e | n (n != 0).
inline int valuation(Int n, const Int& p) {
  n = abs_int(n);
  if (n == 0) fail(errc::validation, "valuation of zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline Int pow_int(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int mod_pow(Int base, Int e, const Int& m) {
  base = mod_pos(base, m);
  Int r = 1;
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

// Inverse of a mod m; requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
  Int x, y;
  Int g = exgcd(mod_pos(a, m), m, x, y);
  if (g != 1) fail(errc::non_invertible_twist, "element not invertible modulo " + m.str());
  return mod_pos(x, m);
}

inline Int binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

// Trial-division factorization; inputs here are desk-scale moduli.
inline std::map<Int, int> factorize(Int n) {
  n = abs_int(n);
  if (n == 0) fail(errc::validation, "factorize(0)");
  std::map<Int, int> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline bool is_prime_int(const Int& n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f.begin()->second == 1;
}

// Largest divisor of n coprime to p.
inline Int prime_to_p_part(const Int& n, const Int& p) {
  Int m = abs_int(n);
  if (m == 0) fail(errc::validation, "prime-to-p part of 0");
  if (p <= 1) return m;  // char 0: nothing to strip
  while (m % p == 0) m /= p;
  return m;
}

inline Int p_primary_part(const Int& n, const Int& p) {
  return abs_int(n) / prime_to_p_part(n, p);
}

}  // namespace logkfl
