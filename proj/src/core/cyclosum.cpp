#include "core/cyclosum.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tame::cyclosum {

namespace {

// quotient of an exact polynomial division by a monic divisor
std::vector<long long> divide_exact(std::vector<long long> num, const std::vector<long long>& den) {
  if (den.empty() || den.back() != 1) fail(Errc::internal, "cyclotomic divisor is not monic");
  if (num.size() < den.size()) fail(Errc::internal, "cyclotomic division underflow");
  std::vector<long long> quot(num.size() - den.size() + 1, 0);
  for (std::size_t q = quot.size(); q-- > 0;) {
    long long c = num[q + den.size() - 1];
    quot[q] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[q + j] -= c * den[j];
  }
  for (long long r : num)
    if (r != 0) fail(Errc::internal, "cyclotomic division left a remainder");
  return quot;
}

}  // namespace

std::vector<long long> cyclotomic_poly(long long n) {
  check_arg(n >= 1, "cyclotomic index must be positive");
  check_arg(n <= 100000, "cyclotomic index too large");
  std::vector<long long> poly((std::size_t)n + 1, 0);
  poly[0] = -1;
  poly[(std::size_t)n] = 1;
  for (long long d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_poly(d));
  return poly;
}

CycloSum::CycloSum(long long level) : level_(level) {
  check_arg(level >= 1, "level must be positive");
  check_arg(level <= 100000, "level too large");
  coef_.assign((std::size_t)level, 0);
}

CycloSum CycloSum::root(long long level, const Rat& exponent) {
  CycloSum s(level);
  s.add_root(exponent);
  return s;
}

CycloSum CycloSum::integer(long long level, long long value) {
  CycloSum s(level);
  s.coef_[0] = value;
  return s;
}

long long CycloSum::index_of(const Rat& exponent) const {
  Rat e = frac(exponent);
  check_arg(level_ % e.den == 0, "exponent denominator must divide the level");
  return e.num * (level_ / e.den);
}

void CycloSum::add_root(const Rat& exponent, long long coeff) {
  coef_[(std::size_t)index_of(exponent)] += coeff;
}

void CycloSum::add(const CycloSum& other) {
  check_arg(level_ == other.level_, "levels differ");
  for (std::size_t k = 0; k < coef_.size(); ++k) coef_[k] += other.coef_[k];
}

void CycloSum::sub(const CycloSum& other) {
  check_arg(level_ == other.level_, "levels differ");
  for (std::size_t k = 0; k < coef_.size(); ++k) coef_[k] -= other.coef_[k];
}

void CycloSum::scale(long long c) {
  for (long long& v : coef_) v *= c;
}

CycloSum CycloSum::rotated(const Rat& exponent) const {
  long long shift = index_of(exponent);
  CycloSum out(level_);
  for (long long k = 0; k < level_; ++k)
    out.coef_[(std::size_t)((k + shift) % level_)] = coef_[(std::size_t)k];
  return out;
}

std::vector<long long> CycloSum::reduced() const {
  std::vector<long long> phi = cyclotomic_poly(level_);
  std::size_t deg = phi.size() - 1;  // phi(level)
  std::vector<long long> rem = coef_;
  for (std::size_t k = rem.size(); k-- > deg;) {
    long long c = rem[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < phi.size(); ++j) rem[k - deg + j] -= c * phi[j];
  }
  rem.resize(deg);
  return rem;
}

bool CycloSum::is_zero() const {
  for (long long c : reduced())
    if (c != 0) return false;
  return true;
}

bool CycloSum::is_integer(long long value) const {
  std::vector<long long> r = reduced();
  if (r[0] != value) return false;
  for (std::size_t k = 1; k < r.size(); ++k)
    if (r[k] != 0) return false;
  return true;
}

std::complex<double> CycloSum::numeric() const {
  std::complex<double> z = 0;
  for (long long k = 0; k < level_; ++k)
    if (coef_[(std::size_t)k] != 0)
      z += (double)coef_[(std::size_t)k] *
           std::polar(1.0, 2.0 * M_PI * (double)k / (double)level_);
  return z;
}

bool operator==(const CycloSum& x, const CycloSum& y) {
  check_arg(x.level_ == y.level_, "levels differ");
  return x.reduced() == y.reduced();
}

}  // namespace tame::cyclosum
