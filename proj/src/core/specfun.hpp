#pragma once

namespace tame::specfun {

// Hurwitz zeta(s, a) for real s != 1 and a > 0, by Euler-Maclaurin summation;
// covers the continuation to s < 1
double hurwitz_zeta(double s, double a);

// Riemann zeta on the real line, s != 1
double zeta(double s);

// digamma for x > 0
double digamma(double x);

}  // namespace tame::specfun
