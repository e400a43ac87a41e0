#include "core/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/errors.hpp"
#include "core/primes.hpp"
#include "core/specfun.hpp"

namespace tame::dirichlet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> power(double base, std::complex<double> exponent) {
  return std::exp(exponent * std::log(base));
}

// sum over integers m > P of m^-a, a > 1
double integer_tail(double P, double a) { return std::pow(P, 1 - a) / (a - 1); }

long long combined_identity(const cyclo::RayClassSystem& sys) {
  if (sys.class_blind()) return sys.identity();
  std::vector<long long> ids(sys.components());
  for (std::size_t t = 0; t < sys.components(); ++t)
    ids[t] = sys.component_group(t)->identity_class();
  return sys.combine(ids);
}

std::vector<long long> distinct_prime_divisors(long long n) {
  std::vector<long long> ps;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

long long PoleData::order(long long chi, long long n) const {
  check_arg(chi >= 0 && (std::size_t)chi < d.size(), "character index out of range");
  check_arg(n >= 1 && n <= max_n, "pole order index out of range");
  return d[(std::size_t)chi][(std::size_t)(n - 1)];
}

double tauberian_predict(const AsymptoticPrediction& pred, double X) {
  check_arg(pred.beta > 0, "pole abscissa must be positive");
  check_arg(pred.delta >= 1, "pole order must be at least one");
  check_arg(X >= 2, "prediction needs X >= 2");
  double lead = pred.tau / (pred.beta * std::tgamma((double)pred.delta));
  return lead * std::pow(X, pred.beta) * std::pow(std::log(X), (double)(pred.delta - 1));
}

Evaluator::Evaluator(const abelian::OrbitTable& orbits, const fideals::Weight& w,
                     const cyclo::RayClassSystem& sys)
    : orbits_(orbits), w_(w), sys_(sys) {
  check_arg(w.components() == orbits.components(), "weight does not match the orbits");
  check_arg(sys.components() == orbits.components(), "class system does not match the orbits");
  n_bound_ = 0;
  for (std::size_t t = 0; t < orbits.components(); ++t) n_bound_ += orbits.component(t).degree;
}

std::complex<double> Evaluator::character_of(long long chi, long long cls) const {
  return std::polar(1.0, 2 * M_PI * sys_.character_value(chi, cls).to_double());
}

std::complex<double> Evaluator::euler_factor_D(long long p, std::complex<double> s,
                                               long long chi) const {
  check_arg(p >= 2, "prime expected");
  check_arg(chi >= 0 && chi < sys_.num_characters(), "character index out of range");
  if (sys_.modulus() % p == 0) return 1.0;
  std::complex<double> sum = 1.0;
  for (std::size_t t = 0; t < orbits_.components(); ++t) {
    long long nt = orbits_.component(t).order;
    if (p % nt != 1) continue;
    std::complex<double> x = power((double)p, -(double)w_.at(t) * s);
    for (const auto& prime : cyclo::degree_one_primes(nt, p))
      sum += character_of(chi, sys_.class_of_prime(t, prime)) * x;
  }
  return sum;
}

std::complex<double> Evaluator::euler_factor_L(long long p, std::complex<double> s,
                                               long long chi) const {
  check_arg(p >= 2, "prime expected");
  check_arg(chi >= 0 && chi < sys_.num_characters(), "character index out of range");
  if (sys_.modulus() % p == 0) return 1.0;
  std::complex<double> inv = 1.0;
  for (std::size_t t = 0; t < orbits_.components(); ++t) {
    long long nt = orbits_.component(t).order;
    if (nt % p == 0) continue;  // not invertible in this component
    for (const auto& prime : cyclo::primes_above(nt, p)) {
      std::complex<double> y = power((double)p, -(double)(prime.f * w_.at(t)) * s);
      inv *= 1.0 - character_of(chi, sys_.class_of_prime(t, prime)) * y;
    }
  }
  if (!(std::abs(inv) > 0))
    fail(Errc::internal, "singular Euler factor");
  return 1.0 / inv;
}

SeriesValue Evaluator::evaluate_series(SeriesKind kind, std::complex<double> s, long long chi,
                                       unsigned long long p_max) const {
  check_arg(p_max >= 2, "truncation bound must be at least two");
  double a = (double)alpha() * s.real();
  if (kind == SeriesKind::D && chi == sys_.trivial_character() && a <= 1)
    fail(Errc::divergent, "series argument at or below the abscissa");

  SeriesValue out;
  out.p_max = p_max;
  out.value = 1.0;
  for (std::uint32_t p : primes_up_to(p_max))
    out.value *= kind == SeriesKind::D ? euler_factor_D(p, s, chi) : euler_factor_L(p, s, chi);

  if (a <= 1) {
    out.log_tail = kInf;
    return out;
  }
  double X = std::pow((double)p_max, -a);
  if (kind == SeriesKind::D) {
    double z = (double)n_bound_ * X;
    out.log_tail = z < 0.5 ? (double)n_bound_ / (1 - z) * integer_tail((double)p_max, a) : kInf;
  } else {
    out.log_tail = (double)n_bound_ / (1 - X) * integer_tail((double)p_max, a);
  }
  return out;
}

SeriesValue Evaluator::psi_correction(std::complex<double> s, long long chi,
                                      unsigned long long p_max) const {
  check_arg(p_max >= 2, "truncation bound must be at least two");
  double a = (double)alpha() * s.real();
  if (2 * a <= 1) fail(Errc::divergent, "psi argument at or below its abscissa");

  SeriesValue out;
  out.p_max = p_max;
  out.value = 1.0;
  for (std::uint32_t p : primes_up_to(p_max)) {
    std::complex<double> num = euler_factor_D(p, s, chi);
    std::complex<double> den = euler_factor_L(p, s, chi);
    out.value *= num / den;
  }
  double monomials = (double)(n_bound_ + 1) * std::pow(2.0, (double)n_bound_);
  double mu = monomials * std::pow((double)p_max, -2 * a);
  out.log_tail =
      mu < 0.5 ? monomials / (1 - mu) * integer_tail((double)p_max, 2 * a) : kInf;
  return out;
}

BoundCheck Evaluator::check_comp1_bound(long long p, std::complex<double> s, long long chi,
                                        double sigma0) const {
  check_arg(sys_.modulus() % p != 0, "comparison bound needs p coprime to the modulus");
  double ars = (double)alpha() * s.real();
  if (sigma0 <= 0) sigma0 = ars / 2;
  check_arg(sigma0 > 0 && sigma0 < ars, "sigma0 outside (0, alpha Re s)");

  BoundCheck out;
  out.sigma0 = sigma0;
  long long n = invertible_primes_above(p);
  out.lhs = std::abs(euler_factor_L(p, s, chi) - euler_factor_D(p, s, chi));
  double geom = 1 - std::pow(2.0, -sigma0);
  out.rhs = ((double)(n * (n + 1)) / std::pow(geom, (double)n + 2) + (double)n) *
            std::pow((double)p, -2 * ars);
  out.holds = out.lhs <= out.rhs * (1 + 1e-9) + 1e-12;
  return out;
}

long long Evaluator::invertible_primes_above(long long p) const {
  long long n = 0;
  for (std::size_t t = 0; t < orbits_.components(); ++t) {
    long long nt = orbits_.component(t).order;
    if (nt % p != 0) n += cyclo::splitting_type(nt, p).count;
  }
  return n;
}

PoleData Evaluator::pole_data() const {
  PoleData out;
  out.max_n = 2 * alpha() - 1;
  out.d.assign((std::size_t)sys_.num_characters(), std::vector<long long>((std::size_t)out.max_n, 0));
  for (long long chi = 0; chi < sys_.num_characters(); ++chi)
    for (std::size_t t = 0; t < orbits_.components(); ++t)
      if (sys_.character_component_trivial(chi, t) && w_.at(t) <= out.max_n)
        ++out.d[(std::size_t)chi][(std::size_t)(w_.at(t) - 1)];
  return out;
}

std::vector<long long> Evaluator::excluded_primes(std::size_t t) const {
  std::vector<long long> ps = distinct_prime_divisors(sys_.modulus());
  for (long long p : distinct_prime_divisors(orbits_.component(t).order))
    if (sys_.modulus() % p != 0) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

double Evaluator::local_factor(std::size_t t, long long p, double u) const {
  cyclo::Splitting sp = cyclo::splitting_type(orbits_.component(t).order, p);
  return std::pow(1 - std::pow((double)p, -(double)sp.f * u), (double)sp.count);
}

double Evaluator::residue_factor(std::size_t t, long long n) const {
  long long nt = orbits_.component(t).order;
  double rho;
  switch (cyclo::field_for_conductor(nt)) {
    case cyclo::FieldKind::rational:
      rho = 1;
      break;
    case cyclo::FieldKind::gaussian:
      rho = M_PI / 4;
      break;
    case cyclo::FieldKind::eisenstein:
      rho = M_PI / (3 * std::sqrt(3.0));
      break;
    default:
      fail(Errc::unsupported, "no residue data for this component field");
  }
  double val = rho / (double)n;
  for (long long p : excluded_primes(t)) val *= local_factor(t, p, 1.0);
  return val;
}

Evaluator::ComponentValue Evaluator::component_L(std::size_t t, double u, long long chi,
                                                 unsigned long long p_max) const {
  long long nt = orbits_.component(t).order;
  cyclo::FieldKind kind = cyclo::field_for_conductor(nt);
  bool trivial_part = sys_.character_component_trivial(chi, t);
  ComponentValue out;

  if (trivial_part) {
    check_arg(u != 1, "principal component evaluated at its pole");
    if (kind == cyclo::FieldKind::rational) {
      double v = specfun::zeta(u);
      for (long long p : excluded_primes(t)) v *= local_factor(t, p, u);
      out.value = v;
      return out;
    }
    if (kind == cyclo::FieldKind::gaussian || kind == cyclo::FieldKind::eisenstein) {
      long long q = kind == cyclo::FieldKind::gaussian ? 4 : 3;
      double Lq = std::pow((double)q, -u) *
                  (specfun::hurwitz_zeta(u, 1.0 / q) - specfun::hurwitz_zeta(u, (double)(q - 1) / q));
      double v = specfun::zeta(u) * Lq;
      for (long long p : excluded_primes(t)) v *= local_factor(t, p, u);
      out.value = v;
      return out;
    }
    // no closed form; fall through to the Euler product when it converges
  }

  if (kind == cyclo::FieldKind::rational) {
    // the component character read as a Dirichlet character mod M
    const cyclo::RayClassGroup* g = sys_.component_group(t);
    long long M = sys_.modulus();
    auto chi_residue = [&](long long r) -> std::complex<double> {
      long long cls = g->class_of_residue({r, 0});
      std::vector<long long> per(sys_.components(), 0);
      for (std::size_t k = 0; k < sys_.components(); ++k)
        per[k] = k == t ? cls : sys_.component_group(k)->identity_class();
      return character_of(chi, sys_.combine(per));
    };
    std::complex<double> v = 0;
    if (u == 1) {
      for (long long r = 1; r < M; ++r)
        if (std::gcd(r, M) == 1) v -= chi_residue(r) * specfun::digamma((double)r / M);
      v /= (double)M;
    } else {
      for (long long r = 1; r < M; ++r)
        if (std::gcd(r, M) == 1) v += chi_residue(r) * specfun::hurwitz_zeta(u, (double)r / M);
      v *= std::pow((double)M, -u);
    }
    for (long long p : distinct_prime_divisors(nt))
      if (M % p != 0) v *= 1.0 - chi_residue(p % M) * std::pow((double)p, -u);
    out.value = v;
    return out;
  }

  if (u <= 1) fail(Errc::unsupported, "component L-value not available at this argument");

  std::complex<double> v = 1;
  for (std::uint32_t p : primes_up_to(p_max)) {
    if (sys_.modulus() % p == 0 || nt % p == 0) continue;
    std::complex<double> inv = 1.0;
    for (const auto& prime : cyclo::primes_above(nt, p))
      inv *= 1.0 - character_of(chi, sys_.class_of_prime(t, prime)) *
                       std::pow((double)p, -(double)prime.f * u);
    v /= inv;
  }
  out.value = v;
  double X = std::pow((double)p_max, -u);
  out.log_tail = (double)orbits_.component(t).degree / (1 - X) * integer_tail((double)p_max, u);
  return out;
}

ResidueEstimate Evaluator::residue_b(long long n, long long chi, unsigned long long p_max) const {
  check_arg(n >= 1 && n < 2 * alpha(), "residue order outside [1, 2 alpha)");
  check_arg(chi >= 0 && chi < sys_.num_characters(), "character index out of range");

  long long d_full = w_.multiplicity(n);
  long long d_chi = 0;
  for (std::size_t t = 0; t < orbits_.components(); ++t)
    if (w_.at(t) == n && sys_.character_component_trivial(chi, t)) ++d_chi;
  if (d_chi < d_full) return {0.0, 0.0, true};

  ResidueEstimate out;
  out.value = 1.0;
  double log_tail = 0;
  for (std::size_t t = 0; t < orbits_.components(); ++t) {
    if (w_.at(t) == n) {
      out.value *= residue_factor(t, n);
    } else {
      ComponentValue cv = component_L(t, (double)w_.at(t) / (double)n, chi, p_max);
      out.value *= cv.value;
      log_tail += cv.log_tail;
    }
  }
  SeriesValue psi = psi_correction(1.0 / (double)n, chi, p_max);
  out.value *= psi.value;
  log_tail += psi.log_tail;
  out.abs_tail = std::isfinite(log_tail) ? std::abs(out.value) * std::expm1(log_tail) : kInf;
  return out;
}

AsymptoticPrediction Evaluator::predict_total(unsigned long long p_max) const {
  ResidueEstimate r = residue_b(alpha(), sys_.trivial_character(), p_max);
  AsymptoticPrediction out;
  out.beta = 1.0 / (double)alpha();
  out.delta = w_.multiplicity(alpha());
  out.tau = r.value.real();
  return out;
}

Verdict Evaluator::verdict(double threshold, unsigned long long p_max,
                           unsigned long long premise_p_max) const {
  Verdict out;
  out.threshold_used = threshold > 0 ? threshold : 0;
  if (sys_.num_characters() == 1) {
    out.vacuous = true;
    return out;
  }
  for (long long chi = 1; chi < sys_.num_characters(); ++chi) {
    ResidueEstimate b = residue_b(alpha(), chi, p_max);
    if (b.exact_zero) continue;
    double thr = threshold > 0 ? threshold : 10 * b.abs_tail;
    double mag = std::abs(b.value);
    if (mag <= thr) continue;
    Witness w{chi, mag, thr, -1};
    if (premise_p_max >= 2) {
      double mn = kInf;
      for (std::uint32_t p : primes_up_to(premise_p_max))
        mn = std::min(mn, std::abs(euler_factor_D(p, {1.0 / (double)alpha(), 0}, chi)));
      w.premise_min = mn;
    }
    out.witnesses.push_back(w);
  }
  out.independent = out.witnesses.empty();
  return out;
}

std::vector<cyclosum::CycloSum> Evaluator::exact_coefficients(long long chi,
                                                              unsigned long long M) const {
  check_arg(M >= 1, "coefficient bound must be positive");
  check_arg(chi >= 0 && chi < sys_.num_characters(), "character index out of range");
  long long level = sys_.character_exponent();
  std::vector<cyclosum::CycloSum> A(M + 1, cyclosum::CycloSum(level));
  A[1] = cyclosum::CycloSum::integer(level, 1);

  struct BranchE {
    unsigned long long q;
    Rat e;
  };
  for (std::uint32_t p : primes_up_to(M)) {
    if (sys_.modulus() % p == 0) continue;
    std::vector<BranchE> branches;
    for (std::size_t t = 0; t < orbits_.components(); ++t) {
      long long nt = orbits_.component(t).order;
      if (p % nt != 1) continue;
      unsigned long long q = 1;
      bool fits = true;
      for (long long i = 0; i < w_.at(t) && fits; ++i) {
        q *= p;
        fits = q <= M;
      }
      if (!fits) continue;
      for (const auto& prime : cyclo::degree_one_primes(nt, p))
        branches.push_back({q, sys_.character_value(chi, sys_.class_of_prime(t, prime))});
    }
    if (branches.empty()) continue;
    for (unsigned long long m = M; m >= 2; --m)
      for (const auto& b : branches)
        if (m % b.q == 0) A[m].add(A[m / b.q].rotated(b.e));
  }
  return A;
}

std::vector<std::vector<unsigned long long>> Evaluator::index_class_histogram(
    unsigned long long M) const {
  check_arg(M >= 1, "histogram bound must be positive");
  struct Obs : fideals::EnumObserver {
    const cyclo::RayClassSystem& sys;
    std::vector<std::vector<unsigned long long>>& H;
    std::vector<long long> cls;
    Obs(const cyclo::RayClassSystem& s, std::vector<std::vector<unsigned long long>>& h)
        : sys(s), H(h) {
      cls.push_back(combined_identity(s));
    }
    void push(std::size_t t, const cyclo::CycloPrime& prime) override {
      cls.push_back(sys.compose(cls.back(), sys.class_of_prime(t, prime)));
    }
    void pop() override { cls.pop_back(); }
    void node(const fideals::LambdaIdeal&, unsigned long long index) override {
      ++H[index][(std::size_t)cls.back()];
    }
  };
  std::vector<std::vector<unsigned long long>> H(
      M + 1, std::vector<unsigned long long>((std::size_t)sys_.num_classes(), 0));
  Obs obs(sys_, H);
  fideals::Enumerator(M, sys_.modulus(), w_, orbits_).run_all(obs);
  return H;
}

}  // namespace tame::dirichlet
