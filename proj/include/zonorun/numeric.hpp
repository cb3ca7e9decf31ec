#pragma once

// Exact scalar types: arbitrary-precision integers and rationals (GMP) and
// the quadratic extension Q(sqrt2). Eigen carries the dense matrices and
// vectors over these scalars; no floating point anywhere.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "zonorun/errors.hpp"

namespace zonorun {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionError("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline const Int num(const Rat& x) { return x.get_num(); }
inline const Int den(const Rat& x) { return x.get_den(); }

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }

inline Int rat_ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// a + b*sqrt(2); zero iff a = b = 0, which makes this a field.
struct QuadRat {
  Rat a;
  Rat b;

  QuadRat() : a(0), b(0) {}
  QuadRat(Rat ra) : a(std::move(ra)), b(0) {}  // NOLINT: implicit from Rat
  QuadRat(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}
  QuadRat(int x) : a(x), b(0) {}  // NOLINT: implicit from int

  bool is_zero() const { return a == 0 && b == 0; }

  QuadRat operator-() const { return {-a, -b}; }
  QuadRat operator+(const QuadRat& o) const { return {a + o.a, b + o.b}; }
  QuadRat operator-(const QuadRat& o) const { return {a - o.a, b - o.b}; }
  QuadRat operator*(const QuadRat& o) const {
    return {a * o.a + 2 * b * o.b, a * o.b + b * o.a};
  }
  QuadRat operator/(const QuadRat& o) const {
    if (o.is_zero()) throw PreconditionError("QuadRat: division by zero");
    Rat n = o.a * o.a - 2 * o.b * o.b;  // nonzero: sqrt2 is irrational
    return {(a * o.a - 2 * b * o.b) / n, (b * o.a - a * o.b) / n};
  }
  QuadRat& operator+=(const QuadRat& o) { return *this = *this + o; }
  QuadRat& operator-=(const QuadRat& o) { return *this = *this - o; }
  QuadRat& operator*=(const QuadRat& o) { return *this = *this * o; }

  bool operator==(const QuadRat& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QuadRat& o) const { return !(*this == o); }

  // Sign of the real number a + b*sqrt(2).
  int sgn() const {
    int sa = sign(a), sb = sign(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 2 b^2.
    int c = cmp(a * a, 2 * b * b);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
  }
};

inline int sign(const QuadRat& x) { return x.sgn(); }

std::string to_string(const Int& x);
std::string to_string(const Rat& x);      // "p/q", plain "p" when q = 1
std::string to_string(const QuadRat& x);  // "a+b*sqrt2"

Rat parse_rat(const std::string& s);           // accepts "p" and "p/q"
QuadRat parse_quadrat(const std::string& s);   // accepts "a" and "a:b"

}  // namespace zonorun

namespace Eigen {

template <>
struct NumTraits<zonorun::Int> : GenericNumTraits<zonorun::Int> {
  using Real = zonorun::Int;
  using NonInteger = zonorun::Rat;
  using Literal = zonorun::Int;
  using Nested = zonorun::Int;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

template <>
struct NumTraits<zonorun::Rat> : GenericNumTraits<zonorun::Rat> {
  using Real = zonorun::Rat;
  using NonInteger = zonorun::Rat;
  using Literal = zonorun::Rat;
  using Nested = zonorun::Rat;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 100
  };
};

}  // namespace Eigen
