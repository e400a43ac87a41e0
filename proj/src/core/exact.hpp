#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "core/errors.hpp"

namespace tame {

// Exact rational on int64, always normalized (den > 0, gcd = 1).
// Intermediate products run through __int128 and anything that cannot be
// normalized back into 64 bits raises Errc::overflow.  The quantities handled
// here (character exponents, Stickelberger coefficients) stay tiny in
// practice, so the guard is just a tripwire.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(Errc::invalid_argument, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

namespace detail {
inline long long narrow(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) fail(Errc::overflow, std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}
inline Rat make(__int128 n, __int128 d, const char* what) {
  if (d == 0) fail(Errc::invalid_argument, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  Rat r;
  r.num = narrow(n, what);
  r.den = narrow(d, what);
  return r;
}
}  // namespace detail

inline Rat operator+(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.num * b.den + (__int128)b.num * a.den,
                      (__int128)a.den * b.den, "add");
}
inline Rat operator-(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.num * b.den - (__int128)b.num * a.den,
                      (__int128)a.den * b.den, "sub");
}
inline Rat operator*(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.num * b.num, (__int128)a.den * b.den, "mul");
}
inline Rat operator-(const Rat& a) { return Rat(-a.num, a.den); }

// representative of a mod 1 in [0, 1)
inline Rat frac(const Rat& a) {
  long long m = a.num % a.den;
  if (m < 0) m += a.den;
  return Rat(m, a.den);
}

inline unsigned long long checked_mul_u64(unsigned long long a, unsigned long long b) {
  unsigned long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "index product exceeds 64 bits");
  return r;
}

// p^e with overflow guard
inline unsigned long long checked_pow_u64(unsigned long long p, unsigned e) {
  unsigned long long r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul_u64(r, p);
  return r;
}

}  // namespace tame
