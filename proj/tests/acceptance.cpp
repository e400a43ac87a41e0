// acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any of them fail

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "core/abelian.hpp"
#include "core/counting.hpp"
#include "core/cyclo.hpp"
#include "core/cyclosum.hpp"
#include "core/dirichlet.hpp"
#include "core/errors.hpp"
#include "core/fideals.hpp"
#include "core/primes.hpp"

using namespace tame;
using abelian::FiniteAbelianGroup;
using abelian::OrbitTable;
using cyclo::RayClassSystem;
using dirichlet::Evaluator;
using fideals::Weight;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int worker_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 4 : static_cast<int>(std::min(h, 8u));
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// least squares slope of y against x
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

long long default_modulus(const FiniteAbelianGroup& g) {
  return std::lcm(g.order(), g.exponent() * g.exponent());
}

// counts shared between criteria 5 and 9
struct Shared {
  bool have_kappa2 = false;
  unsigned long long kappa2_total = 0;
};

// ---------------------------------------------------------------------------
// 1: Theta(alpha) integral iff alpha in the kernel subgroup, exhaustively over
//    all groups of order 2..8 and coefficients in {-2..2}.  The trivial group
//    has no invariant factor presentation here; both sides of its equivalence
//    hold for every alpha, so nothing is lost.
bool criterion1(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::vector<long long>> presentations = {
      {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2}};
  long long checked = 0, in_kernel = 0, mismatches = 0;
  for (const auto& f : presentations) {
    FiniteAbelianGroup g(f);
    long long n = g.order();
    std::vector<long long> c(static_cast<std::size_t>(n), -2);
    for (;;) {
      abelian::DualElement a{c};
      bool integral = abelian::all_integral(abelian::stickelberger_theta(g, a));
      bool kernel = abelian::in_A_hat(g, a);
      if (integral != kernel) ++mismatches;
      ++checked;
      if (kernel) ++in_kernel;
      std::size_t i = 0;
      while (i < c.size() && c[i] == 2) c[i++] = -2;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  double el = seconds_since(t0);
  detail = fmt("groups=%zu alphas=%lld mismatches=%lld in_kernel=%lld elapsed=%.1fs (budget 10s)",
               presentations.size(), checked, mismatches, in_kernel, el);
  return mismatches == 0 && in_kernel > 0 && el < 10.0;
}

// ---------------------------------------------------------------------------
// 2: enumeration counts per weighted index equal nu(m), and nu is
//    multiplicative on coprime pairs, for the four test groups and both
//    standard weights at the default modulus.
bool criterion2(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  const unsigned long long M = 10000;
  const std::vector<std::vector<long long>> groups = {{2}, {3}, {4}, {2, 2}};
  long long mismatches = 0, mult_failures = 0, pairs = 0;
  for (const auto& f : groups) {
    FiniteAbelianGroup g(f);
    OrbitTable orbits(g);
    for (int wk = 0; wk < 2; ++wk) {
      Weight w = wk == 0 ? fideals::weight_ram(orbits) : fideals::weight_disc(orbits);

      struct Obs : fideals::EnumObserver {
        std::vector<unsigned long long>& cnt;
        explicit Obs(std::vector<unsigned long long>& c) : cnt(c) {}
        void node(const fideals::LambdaIdeal&, unsigned long long index) override {
          ++cnt[index];
        }
      };
      std::vector<unsigned long long> cnt(M + 1, 0);
      Obs obs(cnt);
      fideals::Enumerator(M, default_modulus(g), w, orbits).run_all(obs);

      std::vector<unsigned long long> table(M + 1, 0);
      for (unsigned long long m = 1; m <= M; ++m) {
        table[m] = fideals::nu(m, w, orbits);
        if (table[m] != cnt[m]) ++mismatches;
      }
      for (unsigned long long a = 2; a * 2 <= M; ++a)
        for (unsigned long long b = a + 1; a * b <= M; ++b)
          if (std::gcd(a, b) == 1) {
            ++pairs;
            if (table[a * b] != table[a] * table[b]) ++mult_failures;
          }
    }
  }
  double el = seconds_since(t0);
  detail = fmt("configs=8 M=%llu index_mismatches=%lld coprime_pairs=%lld mult_failures=%lld "
               "elapsed=%.1fs (budget 30s)",
               M, mismatches, pairs, mult_failures, el);
  return mismatches == 0 && mult_failures == 0 && el < 30.0;
}

// ---------------------------------------------------------------------------
// 3: the character sum of the exact Euler coefficients recovers the per-class
//    histogram at every index m <= 10^4, in exact root-of-unity arithmetic.
bool criterion3(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  const unsigned long long M = 10000;
  long long failures = 0, cells = 0;

  auto run = [&](const std::vector<long long>& f, bool ram, long long modulus) {
    FiniteAbelianGroup g(f);
    OrbitTable orbits(g);
    Weight w = ram ? fideals::weight_ram(orbits) : fideals::weight_disc(orbits);
    RayClassSystem sys(orbits, modulus);
    Evaluator ev(orbits, w, sys);
    auto H = ev.index_class_histogram(M);
    std::vector<std::vector<cyclosum::CycloSum>> A;
    for (long long chi = 0; chi < sys.num_characters(); ++chi)
      A.push_back(ev.exact_coefficients(chi, M));
    long long level = sys.character_exponent();
    for (unsigned long long m = 1; m <= M; ++m)
      for (long long c = 0; c < sys.num_classes(); ++c) {
        cyclosum::CycloSum s(level);
        for (long long chi = 0; chi < sys.num_characters(); ++chi)
          s.add(A[static_cast<std::size_t>(chi)][m].rotated(
              frac(Rat(0) - sys.character_value(chi, c))));
        ++cells;
        if (!s.is_integer(sys.num_classes() * static_cast<long long>(H[m][static_cast<std::size_t>(c)])))
          ++failures;
      }
  };
  run({2}, true, 16);
  run({3}, false, 9);

  double el = seconds_since(t0);
  detail = fmt("cells=%lld failures=%lld elapsed=%.1fs (budget 60s)", cells, failures, el);
  return failures == 0 && el < 60.0;
}

// ---------------------------------------------------------------------------
// 4: the comparison bound between the D and L Euler factors holds at every
//    grid point for the four test systems.
bool criterion4(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> res = {0.6, 0.8, 1.0, 1.5, 2.0};
  long long points = 0, failures = 0;
  double worst = 0;

  auto run = [&](const std::vector<long long>& f, bool ram, long long modulus) {
    FiniteAbelianGroup g(f);
    OrbitTable orbits(g);
    Weight w = ram ? fideals::weight_ram(orbits) : fideals::weight_disc(orbits);
    RayClassSystem sys(orbits, modulus);
    Evaluator ev(orbits, w, sys);
    for (auto p : primes_up_to(1000)) {
      if (modulus % p == 0) continue;
      for (double s : res)
        for (long long chi = 0; chi < sys.num_characters(); ++chi) {
          auto bc = ev.check_comp1_bound(p, {s, 0}, chi);
          ++points;
          // the ratio is only meaningful above the float noise floor; below
          // it the check runs on its documented absolute slack
          if (bc.rhs > 1e-12) worst = std::max(worst, bc.lhs / bc.rhs);
          if (!bc.holds) ++failures;
        }
    }
  };
  run({2}, true, 16);
  run({3}, false, 9);
  run({4}, false, 16);
  run({2, 2}, true, 16);

  double el = seconds_since(t0);
  detail = fmt("points=%lld failures=%lld worst_ratio=%.3g elapsed=%.1fs (budget 60s)", points,
               failures, worst, el);
  return failures == 0 && el < 60.0;
}

// ---------------------------------------------------------------------------
// 5: classes of C2, W_ram, modulus 16 equidistribute at X = 10^7 and the
//    total tracks the residue constant.
bool criterion5(std::string& detail, Shared& shared) {
  auto t0 = std::chrono::steady_clock::now();
  const unsigned long long X = 10000000;
  FiniteAbelianGroup g({2});
  OrbitTable orbits(g);
  Weight w = fideals::weight_ram(orbits);
  RayClassSystem sys(orbits, 16);

  auto tally = counting::kappa_all(X, orbits, w, sys, worker_threads());
  shared.kappa2_total = tally.total;
  shared.have_kappa2 = true;

  double mean = static_cast<double>(tally.total) / static_cast<double>(tally.counts.size());
  double maxdev = 0;
  for (auto c : tally.counts)
    maxdev = std::max(maxdev, std::fabs(static_cast<double>(c) / mean - 1.0));

  Evaluator ev(orbits, w, sys);
  double tau = ev.predict_total(100000).tau;
  double density = static_cast<double>(tally.total) / static_cast<double>(X);
  double tau_err = std::fabs(density / tau - 1.0);

  double el = seconds_since(t0);
  detail = fmt("total=%llu max_class_dev=%.2e (tol 0.02) density/tau-1=%.2e (tol 0.03) "
               "elapsed=%.1fs",
               tally.total, maxdev, tau_err, el);
  return maxdev <= 0.02 && tau_err <= 0.03;
}

// ---------------------------------------------------------------------------
// 6: growth exponents over X = 10^4..10^8: C3/W_disc totals grow like X^(1/2);
//    C2xC2/W_ram totals grow like X (log X)^2.
bool criterion6(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<unsigned long long> schedule = {10000, 100000, 1000000, 10000000, 100000000};
  int threads = worker_threads();

  FiniteAbelianGroup g3({3});
  OrbitTable o3(g3);
  Weight d3 = fideals::weight_disc(o3);
  std::vector<double> lx, ly;
  for (auto X : schedule) {
    unsigned long long n = fideals::count_F(X, 9, d3, o3, threads);
    lx.push_back(std::log(static_cast<double>(X)));
    ly.push_back(std::log(static_cast<double>(n)));
  }
  double slope3 = lsq_slope(lx, ly);

  // the klein constant is pinned to the series prediction, as in criterion 9;
  // a free intercept cannot resolve the log power on a window where
  // log log X spans only 0.7
  FiniteAbelianGroup gk({2, 2});
  OrbitTable ok(gk);
  Weight rk = fideals::weight_ram(ok);
  RayClassSystem sk(ok, default_modulus(gk));
  Evaluator evk(ok, rk, sk);
  auto predk = evk.predict_total(100000);
  double pinned_level = std::log(predk.tau / std::tgamma(static_cast<double>(predk.delta)));

  std::vector<double> ux, fy;
  double num = 0, den = 0;
  for (auto X : schedule) {
    unsigned long long n = fideals::count_F(X, default_modulus(gk), rk, ok, threads);
    double u = std::log(std::log(static_cast<double>(X)));
    double y = std::log(static_cast<double>(n) / static_cast<double>(X));
    num += u * (y - pinned_level);
    den += u * u;
    ux.push_back(u);
    fy.push_back(y);
  }
  double log_power = num / den;
  double free_log_power = lsq_slope(ux, fy);

  double el = seconds_since(t0);
  detail = fmt("c3_exponent=%.4f (want 0.5 +- 0.05) klein_log_power=%.3f (want 2 +- 0.5; "
               "free-intercept fit gives %.3f) elapsed=%.1fs",
               slope3, log_power, free_log_power, el);
  return std::fabs(slope3 - 0.5) <= 0.05 && std::fabs(log_power - 2.0) <= 0.5;
}

// ---------------------------------------------------------------------------
// 7: the skew weight (1,1,2) on C2xC2 is caught: verdict false, witness past
//    ten times the tail bound, premise factors nonvanishing for all p <= 10^4.
bool criterion7(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  FiniteAbelianGroup g({2, 2});
  OrbitTable orbits(g);
  Weight w = fideals::weight_custom(orbits, {1, 1, 2});
  RayClassSystem sys(orbits, 16);
  Evaluator ev(orbits, w, sys);

  auto v = ev.verdict(0, 100000, 10000);
  bool witnessed = !v.witnesses.empty();
  bool strong = witnessed;
  bool premise = witnessed;
  double best = 0;
  for (const auto& wit : v.witnesses) {
    strong = strong && wit.magnitude > wit.threshold;  // threshold is 10x the tail bound
    premise = premise && wit.premise_min > 0;
    best = std::max(best, wit.magnitude / wit.threshold);
  }

  double el = seconds_since(t0);
  detail = fmt("independent=%s witnesses=%zu best_margin=%.1fx premise_ok=%s elapsed=%.1fs",
               v.independent ? "true" : "false", v.witnesses.size(), best,
               premise ? "true" : "false", el);
  return !v.independent && witnessed && strong && premise;
}

// ---------------------------------------------------------------------------
// 8: omit/all ratios fall with X for every component, and the subtraction
//    form all - sum_t omit is compared classwise against the direct
//    field-extension count at X = 10^4.  The subtraction removes ideals with
//    two or more trivial components more than once, so the identity as
//    stated cannot hold for three components; the corrected
//    inclusion-exclusion sum over component subsets is checked alongside.
bool criterion8(std::string& detail, Shared&) {
  auto t0 = std::chrono::steady_clock::now();
  FiniteAbelianGroup g({2, 2});
  OrbitTable orbits(g);
  Weight w = fideals::weight_ram(orbits);
  long long modulus = default_modulus(g);
  RayClassSystem sys(orbits, modulus);
  int threads = worker_threads();

  const std::vector<unsigned long long> schedule = {1000, 10000, 100000, 1000000};
  std::vector<std::vector<double>> ratios(orbits.components());
  counting::FullTally at1e4;
  for (auto X : schedule) {
    auto full = counting::kappa_full(X, orbits, w, sys, threads);
    for (std::size_t t = 0; t < orbits.components(); ++t)
      ratios[t].push_back(static_cast<double>(full.omit[t].total) /
                          static_cast<double>(full.all.total));
    if (X == 10000) at1e4 = std::move(full);
  }
  bool falling = true;
  for (const auto& r : ratios)
    for (std::size_t i = 1; i < r.size(); ++i) falling = falling && r[i] < r[i - 1];

  bool subtraction_exact = true;
  for (std::size_t c = 0; c < at1e4.direct.counts.size(); ++c)
    subtraction_exact = subtraction_exact &&
                        at1e4.subtraction[c] == static_cast<long long>(at1e4.direct.counts[c]);

  // one enumeration pass tallying, for every component subset S, the ideals
  // trivial on all of S; alternating sum gives the direct count
  struct SubsetObs : fideals::EnumObserver {
    std::vector<unsigned long long> bysubset;
    explicit SubsetObs(std::size_t components) : bysubset(1u << components, 0) {}
    void node(const fideals::LambdaIdeal& ideal, unsigned long long) override {
      unsigned trivial = 0;
      for (std::size_t t = 0; t < ideal.comp.size(); ++t)
        if (ideal.comp[t].empty()) trivial |= 1u << t;
      for (unsigned s = trivial;; s = (s - 1) & trivial) {
        ++bysubset[s];
        if (s == 0) break;
      }
    }
  };
  SubsetObs subsets(orbits.components());
  fideals::Enumerator(10000, modulus, w, orbits).run_all(subsets);
  long long alt = 0;
  for (unsigned s = 0; s < subsets.bysubset.size(); ++s)
    alt += (__builtin_popcount(s) % 2 ? -1 : 1) * static_cast<long long>(subsets.bysubset[s]);
  bool inclusion_exclusion_exact = alt == static_cast<long long>(at1e4.direct.total);

  double el = seconds_since(t0);
  detail = fmt("omit_ratios_falling=%s subtraction_classwise_exact=%s "
               "(direct_total=%llu all-sum_omit=%lld inclusion_exclusion_total=%lld matches=%s) "
               "elapsed=%.1fs",
               falling ? "true" : "false", subtraction_exact ? "true" : "false",
               at1e4.direct.total,
               std::accumulate(at1e4.subtraction.begin(), at1e4.subtraction.end(), 0LL), alt,
               inclusion_exclusion_exact ? "true" : "false", el);
  return falling && subtraction_exact;
}

// ---------------------------------------------------------------------------
// 9: the Tauberian prediction built purely from the series data lands within
//    5% of the exact count at X = 10^7 for C2, W_ram, modulus 16.
bool criterion9(std::string& detail, Shared& shared) {
  auto t0 = std::chrono::steady_clock::now();
  FiniteAbelianGroup g({2});
  OrbitTable orbits(g);
  Weight w = fideals::weight_ram(orbits);
  RayClassSystem sys(orbits, 16);
  const unsigned long long X = 10000000;

  unsigned long long total = shared.have_kappa2
                                 ? shared.kappa2_total
                                 : fideals::count_F(X, 16, w, orbits, worker_threads());
  Evaluator ev(orbits, w, sys);
  double predicted = dirichlet::tauberian_predict(ev.predict_total(100000), static_cast<double>(X));
  double rel = std::fabs(static_cast<double>(total) - predicted) / predicted;

  double el = seconds_since(t0);
  detail = fmt("count=%llu predicted=%.1f rel_err=%.4f (tol 0.05) elapsed=%.1fs", total, predicted,
               rel, el);
  return rel <= 0.05;
}

}  // namespace

int main() {
  using Fn = bool (*)(std::string&, Shared&);
  const std::vector<std::pair<const char*, Fn>> criteria = {
      {"stickelberger integrality equivalence", criterion1},
      {"nu against enumeration and multiplicativity", criterion2},
      {"exact Fourier inversion of Euler coefficients", criterion3},
      {"comparison bound on the evaluation grid", criterion4},
      {"class equidistribution at ten million", criterion5},
      {"growth exponents across five decades", criterion6},
      {"non-equidistribution witness for the skew weight", criterion7},
      {"omit ratios and subtraction identity", criterion8},
      {"tauberian prediction against the exact count", criterion9},
  };

  Shared shared;
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok;
    try {
      ok = criteria[i].second(detail, shared);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::printf("ACCEPTANCE %zu %s %s: %s\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first,
                detail.c_str());
    std::fflush(stdout);
    if (ok) ++passed;
  }
  std::printf("ACCEPTANCE SUMMARY %d/%zu passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
