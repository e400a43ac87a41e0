#include "core/specfun.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace tame::specfun {

namespace {

// B_2, B_4, ..., B_20
const double kBernoulli[] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,      -1.0 / 30,    5.0 / 66,
                             -691.0 / 2730, 7.0 / 6,      -3617.0 / 510, 43867.0 / 798,
                             -174611.0 / 330};

}  // namespace

double hurwitz_zeta(double s, double a) {
  check_arg(a > 0, "hurwitz zeta needs a positive shift");
  check_arg(s != 1.0, "hurwitz zeta has a pole at s = 1");
  // direct terms until the asymptotic tail is safe
  const int shift = a >= 12 ? 0 : (int)std::ceil(12 - a);
  double sum = 0;
  for (int k = 0; k < shift; ++k) sum += std::pow(a + k, -s);
  const double b = a + shift;
  // Euler-Maclaurin tail: integral, half term, Bernoulli corrections
  sum += std::pow(b, 1 - s) / (s - 1) + 0.5 * std::pow(b, -s);
  double poch = s;          // (s)(s+1)...(s+2j-2), starts at j = 1
  double bpow = std::pow(b, -s - 1);
  double fact = 2;          // (2j)!
  for (int j = 1; j <= 10; ++j) {
    sum += kBernoulli[j - 1] / fact * poch * bpow;
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    bpow /= b * b;
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

double zeta(double s) { return hurwitz_zeta(s, 1.0); }

double digamma(double x) {
  check_arg(x > 0, "digamma needs a positive argument");
  double shift = 0;
  while (x < 12) {
    shift -= 1 / x;
    x += 1;
  }
  double v = std::log(x) - 0.5 / x;
  double xpow = 1 / (x * x);
  double xband = xpow;
  for (int j = 1; j <= 10; ++j) {
    v -= kBernoulli[j - 1] / (2 * j) * xband;
    xband *= xpow;
  }
  return v + shift;
}

}  // namespace tame::specfun
