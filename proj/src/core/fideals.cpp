#include "core/fideals.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "core/errors.hpp"
#include "core/primes.hpp"

namespace tame::fideals {

namespace {

// p^e clamped detection: returns 0 when the power exceeds limit
unsigned long long pow_within(unsigned long long p, long long e, unsigned long long limit) {
  unsigned long long r = 1;
  for (long long i = 0; i < e; ++i) {
    if (r > limit / p) return 0;
    r *= p;
  }
  return r;
}

unsigned long long root_floor(unsigned long long x, long long k) {
  if (k <= 1) return x;
  auto ok = [&](unsigned long long r) { return pow_within(r, k, x) != 0 || r <= 1; };
  unsigned long long r = (unsigned long long)std::pow((double)x, 1.0 / (double)k) + 1;
  while (!ok(r)) --r;
  while (pow_within(r + 1, k, x) != 0) ++r;
  return r;
}

}  // namespace

Weight::Weight(std::string name, std::vector<long long> values)
    : name_(std::move(name)), w_(std::move(values)) {
  check_arg(!w_.empty(), "weight needs at least one component");
  for (long long v : w_)
    if (v < 1) fail(Errc::invalid_argument, "weight must be positive on nonidentity orbits");
  alpha_ = *std::min_element(w_.begin(), w_.end());
  max_ = *std::max_element(w_.begin(), w_.end());
}

long long Weight::multiplicity(long long n) const {
  long long c = 0;
  for (long long v : w_)
    if (v == n) ++c;
  return c;
}

Weight weight_disc(const abelian::OrbitTable& orbits) {
  std::vector<long long> v;
  long long order = orbits.group().order();
  for (std::size_t t = 0; t < orbits.components(); ++t) {
    long long nt = orbits.component(t).order;
    v.push_back((nt - 1) * order / nt);
  }
  return Weight("disc", std::move(v));
}

Weight weight_ram(const abelian::OrbitTable& orbits) {
  return Weight("ram", std::vector<long long>(orbits.components(), 1));
}

Weight weight_custom(const abelian::OrbitTable& orbits, std::vector<long long> values) {
  check_arg(values.size() == orbits.components(),
            "custom weight needs one value per nonidentity orbit");
  return Weight("custom", std::move(values));
}

bool LambdaIdeal::trivial() const {
  for (const auto& c : comp)
    if (!c.empty()) return false;
  return true;
}

bool is_in_F(const LambdaIdeal& ideal, const abelian::OrbitTable& orbits) {
  check_arg(ideal.comp.size() == orbits.components(),
            "ideal has the wrong number of components");
  std::set<long long> below;
  for (std::size_t t = 0; t < ideal.comp.size(); ++t) {
    long long nt = orbits.component(t).order;
    for (const auto& P : ideal.comp[t]) {
      check_arg(P.conductor == nt, "component prime has the wrong conductor");
      if (P.f != 1) return false;
      if (std::gcd(P.p, nt) != 1) return false;
      if (!below.insert(P.p).second) return false;
    }
  }
  return true;
}

unsigned long long weighted_index(const LambdaIdeal& ideal, const Weight& w) {
  check_arg(ideal.comp.size() == w.components(), "ideal and weight component counts differ");
  unsigned long long r = 1;
  for (std::size_t t = 0; t < ideal.comp.size(); ++t)
    for (const auto& P : ideal.comp[t])
      for (long long i = 0; i < w.at(t); ++i) r = checked_mul_u64(r, P.norm());
  return r;
}

unsigned long long module_index(const LambdaIdeal& ideal) {
  unsigned long long r = 1;
  for (const auto& c : ideal.comp)
    for (const auto& P : c) r = checked_mul_u64(r, P.norm());
  return r;
}

unsigned long long nu(unsigned long long b, const Weight& w, const abelian::OrbitTable& orbits) {
  check_arg(b >= 1, "index must be positive");
  check_arg(w.components() == orbits.components(), "weight does not match the orbit table");
  unsigned long long result = 1;
  for (unsigned long long p = 2; p * p <= b; ++p) {
    if (b % p) continue;
    long long e = 0;
    while (b % p == 0) {
      b /= p;
      ++e;
    }
    unsigned long long local = 0;
    for (std::size_t t = 0; t < w.components(); ++t) {
      long long nt = orbits.component(t).order;
      if (w.at(t) == e && std::gcd((long long)p, nt) == 1 && p % nt == 1 % nt)
        local += orbits.component(t).degree;
    }
    if (local == 0) return 0;
    result = checked_mul_u64(result, local);
  }
  if (b > 1) {  // one remaining prime with exponent 1
    unsigned long long local = 0;
    for (std::size_t t = 0; t < w.components(); ++t) {
      long long nt = orbits.component(t).order;
      if (w.at(t) == 1 && std::gcd((long long)b, nt) == 1 && b % nt == 1 % nt)
        local += orbits.component(t).degree;
    }
    if (local == 0) return 0;
    result = checked_mul_u64(result, local);
  }
  return result;
}

Enumerator::Enumerator(unsigned long long X, long long modulus, const Weight& w,
                       const abelian::OrbitTable& orbits)
    : X_(X), components_(orbits.components()), alpha_(w.alpha()) {
  check_arg(X >= 1, "bound must be at least 1");
  check_arg(modulus >= 1, "modulus must be positive");
  check_arg(w.components() == orbits.components(), "weight does not match the orbit table");

  unsigned long long p_limit = root_floor(X, w.alpha());
  for (std::uint32_t p : primes_up_to(p_limit)) {
    if (modulus % p == 0) continue;
    PrimeRow row{p, 0, (std::uint32_t)branches_.size(), 0};
    for (std::size_t t = 0; t < components_; ++t) {
      long long nt = orbits.component(t).order;
      if (std::gcd((long long)p, nt) != 1 || p % nt != 1 % nt) continue;
      unsigned long long factor = pow_within(p, w.at(t), X);
      if (factor == 0) continue;
      for (const auto& P : cyclo::degree_one_primes(nt, p)) {
        branches_.push_back({t, P, factor});
        ++row.num_branches;
        row.min_factor = row.min_factor == 0 ? factor : std::min(row.min_factor, factor);
      }
    }
    if (row.num_branches) rows_.push_back(row);
  }
  tasks_ = rows_.size();
}

void Enumerator::walk(std::size_t row, unsigned long long v, LambdaIdeal& cur,
                      EnumObserver& obs) const {
  for (std::size_t i = row; i < rows_.size(); ++i) {
    const PrimeRow& r = rows_[i];
    if (pow_within(r.p, alpha_, X_ / v) == 0) break;  // even the lightest weight overshoots
    if (v > X_ / r.min_factor) continue;
    for (std::uint32_t b = r.first_branch; b < r.first_branch + r.num_branches; ++b) {
      const Branch& br = branches_[b];
      if (v > X_ / br.factor) continue;
      unsigned long long vb = v * br.factor;
      cur.comp[br.t].push_back(br.prime);
      obs.push(br.t, br.prime);
      obs.node(cur, vb);
      walk(i + 1, vb, cur, obs);
      obs.pop();
      cur.comp[br.t].pop_back();
    }
  }
}

void Enumerator::run_task(std::size_t task, EnumObserver& obs) const {
  check_arg(task < tasks_, "task index out of range");
  LambdaIdeal cur(components_);
  const PrimeRow& r = rows_[task];
  for (std::uint32_t b = r.first_branch; b < r.first_branch + r.num_branches; ++b) {
    const Branch& br = branches_[b];
    unsigned long long vb = br.factor;
    if (vb > X_) continue;
    cur.comp[br.t].push_back(br.prime);
    obs.push(br.t, br.prime);
    obs.node(cur, vb);
    walk(task + 1, vb, cur, obs);
    obs.pop();
    cur.comp[br.t].pop_back();
  }
}

void Enumerator::run_all(EnumObserver& obs) const {
  LambdaIdeal trivial(components_);
  obs.node(trivial, 1);
  for (std::size_t k = 0; k < tasks_; ++k) run_task(k, obs);
}

namespace {

// per-prime multiplicities of the weight classes, for the aggregated count
struct WeightClasses {
  std::vector<long long> values;                  // distinct weights, ascending
  std::vector<std::vector<std::size_t>> members;  // component indices per value
};

WeightClasses weight_classes(const Weight& w) {
  WeightClasses wc;
  for (std::size_t t = 0; t < w.components(); ++t) {
    auto it = std::find(wc.values.begin(), wc.values.end(), w.at(t));
    if (it == wc.values.end()) {
      wc.values.push_back(w.at(t));
      wc.members.push_back({t});
    } else {
      wc.members[it - wc.values.begin()].push_back(t);
    }
  }
  return wc;
}

struct AggregatedWalker {
  unsigned long long X;
  const std::vector<std::uint32_t>& primes;
  const WeightClasses& wc;
  std::vector<long long> conductor;  // per component
  std::vector<long long> degree;

  unsigned long long class_mult(unsigned long long p, std::size_t cls) const {
    unsigned long long m = 0;
    for (std::size_t t : wc.members[cls]) {
      long long nt = conductor[t];
      if (p % nt == 1 % nt && std::gcd((long long)p, nt) == 1) m += degree[t];
    }
    return m;
  }

  // sum of multiplicities over all supports using primes[i..], scaled by mult
  unsigned long long walk(std::size_t i, unsigned long long v, unsigned long long mult,
                          long long alpha) const {
    unsigned long long total = mult;
    for (; i < primes.size(); ++i) {
      unsigned long long p = primes[i];
      unsigned long long pa = pow_within(p, alpha, X / v);
      if (pa == 0) break;
      for (std::size_t c = 0; c < wc.values.size(); ++c) {
        unsigned long long pe = pow_within(p, wc.values[c], X / v);
        if (pe == 0) continue;
        unsigned long long m = class_mult(p, c);
        if (m == 0) continue;
        total += walk(i + 1, v * pe, mult * m, alpha);
      }
    }
    return total;
  }
};

}  // namespace

unsigned long long count_F(unsigned long long X, long long modulus, const Weight& w,
                           const abelian::OrbitTable& orbits, int threads) {
  check_arg(X >= 1, "bound must be at least 1");
  check_arg(modulus >= 1, "modulus must be positive");
  check_arg(w.components() == orbits.components(), "weight does not match the orbit table");

  WeightClasses wc = weight_classes(w);
  std::vector<std::uint32_t> usable;
  for (std::uint32_t p : primes_up_to(root_floor(X, w.alpha())))
    if (modulus % p != 0) usable.push_back(p);

  AggregatedWalker walker{X, usable, wc, {}, {}};
  for (std::size_t t = 0; t < orbits.components(); ++t) {
    walker.conductor.push_back(orbits.component(t).order);
    walker.degree.push_back(orbits.component(t).degree);
  }
  long long alpha = w.alpha();

  if (threads <= 1 || usable.size() < 64) return walker.walk(0, 1, 1, alpha);

  // one task per smallest prime; dynamic scheduling, exact integer merge
  std::atomic<std::size_t> next{0};
  std::vector<unsigned long long> partial((std::size_t)threads, 0);
  auto body = [&](std::size_t worker) {
    unsigned long long acc = 0;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= usable.size()) break;
      unsigned long long p = usable[i];
      for (std::size_t c = 0; c < wc.values.size(); ++c) {
        unsigned long long pe = pow_within(p, wc.values[c], X);
        if (pe == 0) continue;
        unsigned long long m = walker.class_mult(p, c);
        if (m == 0) continue;
        acc += walker.walk(i + 1, pe, m, alpha);
      }
    }
    partial[worker] = acc;
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < threads; ++k) pool.emplace_back(body, (std::size_t)k);
  for (auto& th : pool) th.join();
  unsigned long long total = 1;  // the trivial ideal
  for (unsigned long long v : partial) total += v;
  return total;
}

}  // namespace tame::fideals
