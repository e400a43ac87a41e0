#include "core/group_structure.hpp"

#include <algorithm>
#include <map>

#include "core/errors.hpp"

namespace tame {

namespace {

std::size_t pow_elt(const MulFn& mul, std::size_t id, std::size_t g, long long k) {
  std::size_t r = id;
  for (long long i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

}  // namespace

// Standard inductive construction: pick g of maximal order m (which equals the
// exponent in an abelian group), recurse on the quotient by <g>, then adjust
// each lifted generator by a power of g so that its order matches its order in
// the quotient.  Group sizes here are at most a few thousand, so the quadratic
// coset bookkeeping is fine.
AbelianStructure decompose_abelian(std::size_t n, const MulFn& mul, std::size_t id) {
  check_arg(n >= 1, "group must have at least one element");
  AbelianStructure out;
  out.dlog.assign(n, {});
  if (n == 1) return out;

  std::vector<long long> order(n, 0);
  long long m = 0;
  std::size_t g = 0;
  for (std::size_t x = 0; x < n; ++x) {
    long long k = 1;
    std::size_t y = x;
    while (y != id) {
      y = mul(y, x);
      ++k;
      if ((std::size_t)k > n) fail(Errc::internal, "element order exceeds group size");
    }
    order[x] = k;
    if (k > m) {
      m = k;
      g = x;
    }
  }

  std::vector<std::size_t> gpow((std::size_t)m);
  std::vector<long long> dlog_g(n, -1);
  gpow[0] = id;
  dlog_g[id] = 0;
  for (long long k = 1; k < m; ++k) {
    gpow[(std::size_t)k] = mul(gpow[(std::size_t)(k - 1)], g);
    dlog_g[gpow[(std::size_t)k]] = k;
  }

  if ((std::size_t)m == n) {
    out.basis = {g};
    out.orders = {m};
    for (std::size_t x = 0; x < n; ++x) {
      if (dlog_g[x] < 0) fail(Errc::internal, "cyclic dlog table incomplete");
      out.dlog[x] = {dlog_g[x]};
    }
    return out;
  }

  // quotient by <g>: canonical coset representative is the smallest index
  std::vector<std::size_t> coset_rep(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t best = x;
    for (long long k = 1; k < m; ++k) best = std::min(best, mul(x, gpow[(std::size_t)k]));
    coset_rep[x] = best;
  }
  std::map<std::size_t, std::size_t> q_index;
  std::vector<std::size_t> q_elems;
  for (std::size_t x = 0; x < n; ++x)
    if (coset_rep[x] == x) {
      q_index[x] = q_elems.size();
      q_elems.push_back(x);
    }
  std::vector<std::size_t> q_of(n);
  for (std::size_t x = 0; x < n; ++x) q_of[x] = q_index.at(coset_rep[x]);

  MulFn qmul = [&](std::size_t a, std::size_t b) { return q_of[mul(q_elems[a], q_elems[b])]; };
  AbelianStructure sub = decompose_abelian(q_elems.size(), qmul, q_of[id]);

  std::vector<std::size_t> lifted;
  for (std::size_t j = 0; j < sub.basis.size(); ++j) {
    long long mj = sub.orders[j];
    std::size_t y = q_elems[sub.basis[j]];
    std::size_t z = pow_elt(mul, id, y, mj);  // lands in <g>
    long long c = dlog_g[z];
    if (c < 0) fail(Errc::internal, "lift left the cyclic part");
    if (c % mj != 0) fail(Errc::internal, "lift exponent not divisible");
    std::size_t adj = gpow[(std::size_t)((m - c / mj) % m)];
    std::size_t y2 = mul(y, adj);
    if (pow_elt(mul, id, y2, mj) != id) fail(Errc::internal, "adjusted lift has wrong order");
    lifted.push_back(y2);
  }

  out.basis.push_back(g);
  out.orders.push_back(m);
  for (std::size_t j = 0; j < lifted.size(); ++j) {
    out.basis.push_back(lifted[j]);
    out.orders.push_back(sub.orders[j]);
    if (sub.orders[j] > m || m % sub.orders[j] != 0)
      fail(Errc::internal, "quotient order does not divide exponent");
  }

  // power tables for the lifted generators, for peeling exponents off
  std::vector<std::vector<std::size_t>> lp(lifted.size());
  for (std::size_t j = 0; j < lifted.size(); ++j) {
    lp[j].resize((std::size_t)sub.orders[j]);
    lp[j][0] = id;
    for (long long k = 1; k < sub.orders[j]; ++k) lp[j][(std::size_t)k] = mul(lp[j][(std::size_t)(k - 1)], lifted[j]);
  }

  for (std::size_t x = 0; x < n; ++x) {
    const auto& qe = sub.dlog[q_of[x]];
    std::size_t y = x;
    for (std::size_t j = 0; j < lifted.size(); ++j) {
      long long e = qe[j];
      long long inv = (sub.orders[j] - e) % sub.orders[j];
      y = mul(y, lp[j][(std::size_t)inv]);
    }
    long long e0 = dlog_g[y];
    if (e0 < 0) fail(Errc::internal, "dlog residual outside cyclic part");
    out.dlog[x].push_back(e0);
    for (long long e : qe) out.dlog[x].push_back(e);
  }

  // the basis must generate everything exactly once
  long long prod = 1;
  for (long long o : out.orders) prod *= o;
  if ((std::size_t)prod != n) fail(Errc::internal, "basis orders do not multiply to group size");
  std::map<std::vector<long long>, std::size_t> seen;
  for (std::size_t x = 0; x < n; ++x)
    if (!seen.emplace(out.dlog[x], x).second) fail(Errc::internal, "dlog collision");
  return out;
}

}  // namespace tame
