#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace tc {

// Exact unbounded integer. Everything in the library computes over Int;
// intermediate entries of Hermite/Smith reductions overflow machine words
// even for small inputs.
using Int = boost::multiprecision::cpp_int;

using ExpVec = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign_int(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

// Floor division; b must be positive. Remainder lands in [0, b).
inline Int fdiv_q(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int fdiv_r(const Int& a, const Int& b) { return a - b * fdiv_q(a, b); }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// g = gcd(a,b) with g = x*a + y*b.
struct Bezout {
  Int g, x, y;
};

inline Bezout ext_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

// A possibly-infinite count. Infinite is encoded explicitly, never as a
// sentinel value of Int.
struct Cardinality {
  bool infinite = false;
  Int value = 0;

  static Cardinality inf() { return {true, 0}; }
  static Cardinality of(Int v) { return {false, std::move(v)}; }

  bool operator==(const Cardinality& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }

  std::string str() const { return infinite ? "infinite" : value.str(); }
};

}  // namespace tc
