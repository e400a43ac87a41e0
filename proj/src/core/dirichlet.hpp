#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "core/abelian.hpp"
#include "core/cyclo.hpp"
#include "core/cyclosum.hpp"
#include "core/fideals.hpp"

namespace tame::dirichlet {

enum class SeriesKind { D, L };

// Truncated Euler product together with a bound on the missing tail:
// |log(true) - log(value)| <= log_tail, infinite when the tail is not
// absolutely summable at this argument.
struct SeriesValue {
  std::complex<double> value;
  double log_tail = 0;
  unsigned long long p_max = 0;

  double relative_error() const { return std::isfinite(log_tail) ? std::expm1(log_tail) : log_tail; }
};

struct BoundCheck {
  double lhs = 0;
  double rhs = 0;
  double sigma0 = 0;
  bool holds = false;
};

// d[chi][n-1] = number of components with trivial character part and weight n,
// for 1 <= n <= max_n = 2 alpha - 1
struct PoleData {
  long long max_n = 0;
  std::vector<std::vector<long long>> d;

  long long order(long long chi, long long n) const;
};

struct ResidueEstimate {
  std::complex<double> value;
  double abs_tail = 0;      // absolute uncertainty from the truncated factors
  bool exact_zero = false;  // order deficit, no numerics involved
};

struct AsymptoticPrediction {
  double beta = 1;
  long long delta = 1;
  double tau = 0;
};

// tau/(beta Gamma(delta)) X^beta (log X)^(delta-1)
double tauberian_predict(const AsymptoticPrediction& pred, double X);

struct Witness {
  long long chi = 0;
  double magnitude = 0;
  double threshold = 0;
  double premise_min = -1;  // min |D_p(1/alpha, chi)| over the scanned primes, -1 when unscanned
};

struct Verdict {
  bool independent = true;
  bool vacuous = false;      // class-blind system, nothing to distinguish
  double threshold_used = 0; // 0 means automatic 10x tail per character
  std::vector<Witness> witnesses;
};

// Evaluation of the Euler products D(s,chi), L(s,chi), the correction
// psi = D/L, pole and residue data, and the equidistribution verdict, for one
// fixed (orbits, weight, ray class system) configuration.  References are
// kept, not copied; the configuration must outlive the evaluator.
class Evaluator {
 public:
  Evaluator(const abelian::OrbitTable& orbits, const fideals::Weight& w,
            const cyclo::RayClassSystem& sys);

  long long alpha() const { return w_.alpha(); }
  long long num_characters() const { return sys_.num_characters(); }

  std::complex<double> euler_factor_D(long long p, std::complex<double> s, long long chi) const;
  std::complex<double> euler_factor_L(long long p, std::complex<double> s, long long chi) const;

  SeriesValue evaluate_series(SeriesKind kind, std::complex<double> s, long long chi,
                              unsigned long long p_max) const;
  SeriesValue psi_correction(std::complex<double> s, long long chi, unsigned long long p_max) const;

  // sigma0 <= 0 picks the default alpha Re(s) / 2
  BoundCheck check_comp1_bound(long long p, std::complex<double> s, long long chi,
                               double sigma0 = 0) const;

  PoleData pole_data() const;

  // b_n(chi) as residue factors times component L values times psi(1/n, chi)
  ResidueEstimate residue_b(long long n, long long chi, unsigned long long p_max) const;

  // rightmost pole of D(s, 1): beta = 1/alpha, delta = d_alpha(1), tau = b_alpha(1)
  AsymptoticPrediction predict_total(unsigned long long p_max) const;

  // threshold <= 0 means automatic per-character 10x tail bound
  Verdict verdict(double threshold, unsigned long long p_max,
                  unsigned long long premise_p_max) const;

  // coefficient of m^{-s} in prod_{p <= M} D_p(s, chi) for every m <= M,
  // exact over roots of unity
  std::vector<cyclosum::CycloSum> exact_coefficients(long long chi, unsigned long long M) const;

  // members per weighted index and ray class, index up to M
  std::vector<std::vector<unsigned long long>> index_class_histogram(unsigned long long M) const;

 private:
  struct ComponentValue {
    std::complex<double> value;
    double log_tail = 0;
  };

  std::complex<double> character_of(long long chi, long long cls) const;
  ComponentValue component_L(std::size_t t, double u, long long chi,
                             unsigned long long p_max) const;
  double residue_factor(std::size_t t, long long n) const;
  std::vector<long long> excluded_primes(std::size_t t) const;
  double local_factor(std::size_t t, long long p, double u) const;
  long long invertible_primes_above(long long p) const;

  const abelian::OrbitTable& orbits_;
  const fideals::Weight& w_;
  const cyclo::RayClassSystem& sys_;
  long long n_bound_;  // sum of phi(|t|), the uniform bound on primes above p
};

}  // namespace tame::dirichlet
