#include "core/abelian.hpp"

#include <algorithm>
#include <map>

#include "core/errors.hpp"

namespace tame::abelian {

namespace {

// rewrite an arbitrary factor list as an invariant-factor chain:
// split each factor into prime powers, then stack the largest power of every
// prime into the largest invariant factor, the second largest into the next
// one, and so on
std::vector<long long> normalize_factors(const std::vector<long long>& in) {
  std::map<long long, std::vector<long long>> powers;  // prime -> prime powers, descending
  for (long long d : in) {
    long long m = d;
    for (long long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      long long q = 1;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
    if (m > 1) powers[m].push_back(m);
  }
  std::size_t slots = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<>());
    slots = std::max(slots, v.size());
  }
  std::vector<long long> chain(slots, 1);  // chain[0] = largest factor
  for (auto& [p, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) chain[i] *= v[i];
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long long> factors) {
  if (factors.empty()) fail(Errc::invalid_argument, "invalid group: empty factor list");
  for (long long d : factors)
    if (d < 2) fail(Errc::invalid_argument, "invalid group: factor " + std::to_string(d) + " < 2");
  f_ = normalize_factors(factors);
  for (long long d : f_) {
    if (order_ > (1LL << 40) / d) fail(Errc::overflow, "group order too large");
    order_ *= d;
  }
}

long long FiniteAbelianGroup::index_of(const Exps& e) const {
  check_arg(e.size() == f_.size(), "exponent vector has wrong rank");
  long long idx = 0;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    long long c = e[i] % f_[i];
    if (c < 0) c += f_[i];
    idx = idx * f_[i] + c;
  }
  return idx;
}

Exps FiniteAbelianGroup::exps_of(long long index) const {
  check_arg(index >= 0 && index < order_, "element index out of range");
  Exps e(f_.size());
  for (std::size_t i = f_.size(); i-- > 0;) {
    e[i] = index % f_[i];
    index /= f_[i];
  }
  return e;
}

bool FiniteAbelianGroup::is_identity(const Exps& e) const {
  check_arg(e.size() == f_.size(), "exponent vector has wrong rank");
  for (std::size_t i = 0; i < f_.size(); ++i)
    if (e[i] % f_[i] != 0) return false;
  return true;
}

Exps FiniteAbelianGroup::mul(const Exps& a, const Exps& b) const {
  check_arg(a.size() == f_.size() && b.size() == f_.size(), "exponent vector has wrong rank");
  Exps r(f_.size());
  for (std::size_t i = 0; i < f_.size(); ++i) r[i] = (a[i] + b[i]) % f_[i];
  return r;
}

Exps FiniteAbelianGroup::pow(const Exps& a, long long k) const {
  check_arg(a.size() == f_.size(), "exponent vector has wrong rank");
  Exps r(f_.size());
  for (std::size_t i = 0; i < f_.size(); ++i) {
    __int128 v = (__int128)(a[i] % f_[i]) * k % f_[i];
    long long w = (long long)v;
    if (w < 0) w += f_[i];
    r[i] = w;
  }
  return r;
}

long long FiniteAbelianGroup::element_order(const Exps& a) const {
  check_arg(a.size() == f_.size(), "exponent vector has wrong rank");
  long long ord = 1;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    long long c = a[i] % f_[i];
    if (c < 0) c += f_[i];
    long long o = f_[i] / std::gcd(c, f_[i]);  // order of c in Z/f_i
    ord = std::lcm(ord, o);
  }
  return ord;
}

Rat stickelberger_pairing(const FiniteAbelianGroup& g, const Exps& chi, const Exps& elt) {
  const auto& f = g.invariant_factors();
  check_arg(chi.size() == f.size() && elt.size() == f.size(), "exponent vector has wrong rank");
  Rat s(0);
  for (std::size_t i = 0; i < f.size(); ++i) s = s + Rat(chi[i] * (elt[i] % f[i]), f[i]);
  return frac(s);
}

std::vector<Rat> stickelberger_theta(const FiniteAbelianGroup& g, const DualElement& alpha) {
  check_arg((long long)alpha.coeff.size() == g.order(), "alpha has wrong length");
  const auto& f = g.invariant_factors();
  long long n = g.order();
  // <alpha, g> accumulated over a common denominator exp(G): the pairing of
  // chi with g is (sum_i chi_i g_i exp/f_i) / exp mod 1
  long long ex = g.exponent();
  std::vector<Rat> out((std::size_t)n);
  for (long long gi = 0; gi < n; ++gi) {
    Exps ge = g.exps_of(gi);
    __int128 acc = 0;
    for (long long ci = 0; ci < n; ++ci) {
      long long a = alpha.coeff[(std::size_t)ci];
      if (a == 0) continue;
      Exps ce = g.exps_of(ci);
      long long num = 0;  // numerator of <chi,g> over denominator ex
      for (std::size_t i = 0; i < f.size(); ++i)
        num += (ce[i] * ge[i] % f[i]) * (ex / f[i]);
      num %= ex;
      acc += (__int128)a * (num % ex);
    }
    out[(std::size_t)gi] = detail::make(acc, ex, "theta");
  }
  return out;
}

bool in_A_hat(const FiniteAbelianGroup& g, const DualElement& alpha) {
  check_arg((long long)alpha.coeff.size() == g.order(), "alpha has wrong length");
  const auto& f = g.invariant_factors();
  Exps det(f.size(), 0);
  for (long long ci = 0; ci < g.order(); ++ci) {
    long long a = alpha.coeff[(std::size_t)ci];
    if (a == 0) continue;
    Exps ce = g.exps_of(ci);
    for (std::size_t i = 0; i < f.size(); ++i) {
      __int128 v = ((__int128)det[i] + (__int128)a * ce[i]) % f[i];
      long long w = (long long)v;
      if (w < 0) w += f[i];
      det[i] = w;
    }
  }
  return g.is_identity(det);
}

long long euler_phi(long long n) {
  long long r = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

OrbitTable::OrbitTable(const FiniteAbelianGroup& g) : g_(&g) {
  long long n = g.order();
  orbit_of_.assign((std::size_t)n, SIZE_MAX);
  std::vector<Orbit> found;
  for (long long idx = 0; idx < n; ++idx) {
    if (orbit_of_[(std::size_t)idx] != SIZE_MAX) continue;
    Exps t = g.exps_of(idx);
    long long ord = g.element_order(t);
    Orbit o;
    o.rep = t;
    o.order = ord;
    o.degree = euler_phi(ord);
    for (long long u = 1; u <= ord; ++u) {
      if (std::gcd(u, ord) != 1) continue;
      o.members.push_back(g.index_of(g.pow(t, u)));
    }
    std::sort(o.members.begin(), o.members.end());
    std::size_t slot = found.size();
    for (long long m : o.members) orbit_of_[(std::size_t)m] = slot;
    found.push_back(std::move(o));
  }
  // stable presentation order: identity first, then by (order, rep index);
  // reps are the smallest indices because elements were scanned ascending
  std::sort(found.begin(), found.end(), [&](const Orbit& a, const Orbit& b) {
    if (a.order != b.order) return a.order < b.order;
    return g.index_of(a.rep) < g.index_of(b.rep);
  });
  orbits_ = std::move(found);
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    for (long long m : orbits_[i].members) orbit_of_[(std::size_t)m] = i;
}

}  // namespace tame::abelian
