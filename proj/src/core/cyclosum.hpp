#pragma once

#include <complex>
#include <vector>

#include "core/exact.hpp"

namespace tame::cyclosum {

// coefficients of the n-th cyclotomic polynomial, ascending degree
std::vector<long long> cyclotomic_poly(long long n);

// Integer combination of level-th roots of unity, stored as one coefficient
// per exponent.  Algebraic comparisons reduce modulo the level-th cyclotomic
// polynomial, so equal values compare equal whatever representatives the
// arithmetic produced.
class CycloSum {
 public:
  explicit CycloSum(long long level);
  static CycloSum root(long long level, const Rat& exponent);
  static CycloSum integer(long long level, long long value);

  long long level() const { return level_; }
  void add_root(const Rat& exponent, long long coeff = 1);
  void add(const CycloSum& other);
  void sub(const CycloSum& other);
  void scale(long long c);
  CycloSum rotated(const Rat& exponent) const;  // multiply by the root at the exponent

  std::vector<long long> reduced() const;  // remainder mod the cyclotomic polynomial
  bool is_zero() const;
  bool is_integer(long long value) const;
  std::complex<double> numeric() const;

  friend bool operator==(const CycloSum& x, const CycloSum& y);

 private:
  long long index_of(const Rat& exponent) const;

  long long level_;
  std::vector<long long> coef_;
};

}  // namespace tame::cyclosum
