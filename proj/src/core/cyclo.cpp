#include "core/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "core/errors.hpp"

namespace tame::cyclo {

namespace {

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long mul_order_mod(long long p, long long n) {
  long long x = mod_floor(p, n);
  long long f = 1;
  long long cur = x;
  while (cur != 1 % n) {
    cur = (cur * x) % n;
    ++f;
    if (f > n) fail(Errc::internal, "order computation did not terminate");
  }
  return f;
}

// one 60 degree rotation is multiplication by 1 + omega, one 90 degree
// rotation is multiplication by i
QuadInt rotate_once(FieldKind k, const QuadInt& x) {
  if (k == FieldKind::gaussian) return {-x.b, x.a};
  return {x.a - x.b, x.a};
}

bool in_canonical_sector(FieldKind k, const QuadInt& x) {
  if (k == FieldKind::gaussian) return x.a > 0 && x.b >= 0;
  return x.b >= 0 && x.a > x.b;
}

QuadInt canonical_associate(FieldKind k, QuadInt x) {
  check_arg(!(x.a == 0 && x.b == 0), "zero has no canonical associate");
  if (k == FieldKind::rational) return {x.a < 0 ? -x.a : x.a, 0};
  int steps = k == FieldKind::gaussian ? 4 : 6;
  for (int i = 0; i < steps; ++i) {
    if (in_canonical_sector(k, x)) return x;
    x = rotate_once(k, x);
  }
  fail(Errc::internal, "no associate in the canonical sector");
}

}  // namespace

FieldKind field_for_conductor(long long n) {
  check_arg(n >= 1, "conductor must be positive");
  if (n <= 2) return FieldKind::rational;
  if (n == 3 || n == 6) return FieldKind::eisenstein;
  if (n == 4) return FieldKind::gaussian;
  return FieldKind::unsupported;
}

bool conductor_supported(long long n) {
  return field_for_conductor(n) != FieldKind::unsupported;
}

std::string field_name(long long conductor) {
  switch (field_for_conductor(conductor)) {
    case FieldKind::rational: return "Q";
    case FieldKind::gaussian: return "Q(i)";
    case FieldKind::eisenstein: return "Q(zeta3)";
    default: return "Q(zeta" + std::to_string(conductor) + ")";
  }
}

Splitting splitting_type(long long conductor, long long p) {
  check_arg(conductor >= 1, "conductor must be positive");
  check_arg(p >= 2, "prime must be at least 2");
  Splitting s;
  if (conductor == 1) {
    s.count = 1;
    return s;
  }
  if (std::gcd(p, conductor) != 1) {
    s.ramified = true;
    long long m = conductor;
    while (m % p == 0) m /= p;
    s.f = m == 1 ? 1 : mul_order_mod(p, m);
    s.count = abelian::euler_phi(m) / s.f;
    return s;
  }
  s.f = mul_order_mod(p, conductor);
  s.count = abelian::euler_phi(conductor) / s.f;
  return s;
}

QuadInt qmul(FieldKind k, const QuadInt& x, const QuadInt& y) {
  switch (k) {
    case FieldKind::rational:
      return {x.a * y.a, 0};
    case FieldKind::gaussian:
      return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    case FieldKind::eisenstein:
      return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    default:
      fail(Errc::unsupported, "no exact arithmetic for this field");
  }
}

QuadInt qconj(FieldKind k, const QuadInt& x) {
  switch (k) {
    case FieldKind::rational: return x;
    case FieldKind::gaussian: return {x.a, -x.b};
    case FieldKind::eisenstein: return {x.a - x.b, -x.b};
    default: fail(Errc::unsupported, "no exact arithmetic for this field");
  }
}

long long qnorm(FieldKind k, const QuadInt& x) {
  switch (k) {
    case FieldKind::rational: return x.a < 0 ? -x.a : x.a;
    case FieldKind::gaussian: return x.a * x.a + x.b * x.b;
    case FieldKind::eisenstein: return x.a * x.a - x.a * x.b + x.b * x.b;
    default: fail(Errc::unsupported, "no exact arithmetic for this field");
  }
}

std::string qstr(FieldKind k, const QuadInt& x) {
  if (k == FieldKind::rational || x.b == 0) return std::to_string(x.a);
  const char* unit = k == FieldKind::gaussian ? "i" : "w";
  std::string s;
  if (x.a != 0) s += std::to_string(x.a);
  if (x.b > 0 && x.a != 0) s += "+";
  if (x.b == -1) s += "-";
  else if (x.b != 1) s += std::to_string(x.b);
  s += unit;
  return s;
}

unsigned long long CycloPrime::norm() const {
  unsigned long long r = 1;
  for (long long i = 0; i < f; ++i) r = checked_mul_u64(r, (unsigned long long)p);
  return r;
}

std::vector<CycloPrime> degree_one_primes(long long conductor, long long p) {
  check_arg(conductor >= 1, "conductor must be positive");
  check_arg(p >= 2, "prime must be at least 2");
  check_arg(conductor == 1 || std::gcd(p, conductor) == 1,
            "prime divides the conductor");
  if (mod_floor(p, conductor) != 1 % conductor) return {};
  FieldKind k = field_for_conductor(conductor);
  std::vector<CycloPrime> out;
  if (k == FieldKind::rational) {
    out.push_back({conductor, p, 1, {p, 0}});
    return out;
  }
  if (k == FieldKind::unsupported) {
    // placeholder generators; these conductors only run class-blind, where
    // the multiplicity phi(n) is all that is used
    long long count = abelian::euler_phi(conductor);
    for (long long i = 0; i < count; ++i) out.push_back({conductor, p, 1, {p, 0}});
    return out;
  }
  // split prime in a quadratic field: find one solution of the norm form by
  // solving for b at each a, the two primes are the canonical associates of
  // the solution and its conjugate
  auto square_root = [](long long v) -> long long {
    if (v < 0) return -1;
    long long r = (long long)std::sqrt((double)v);
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v ? r : -1;
  };
  QuadInt found{0, 0};
  for (long long a = 1; found.a == 0 && found.b == 0; ++a) {
    if (k == FieldKind::gaussian) {
      if (a * a > p) break;
      long long b = square_root(p - a * a);
      if (b >= 0) found = {a, b};
    } else {
      // a^2 - ab + b^2 = p means 2b = a +- sqrt(4p - 3a^2)
      long long disc = 4 * p - 3 * a * a;
      if (disc < 0) break;
      long long r = square_root(disc);
      if (r >= 0 && (a + r) % 2 == 0) found = {a, (a + r) / 2};
    }
  }
  if (found.a == 0 && found.b == 0)
    fail(Errc::internal, "norm form missed a split prime");
  QuadInt g1 = canonical_associate(k, found);
  QuadInt g2 = canonical_associate(k, qconj(k, found));
  out.push_back({conductor, p, 1, g1});
  out.push_back({conductor, p, 1, g2});
  std::sort(out.begin(), out.end(), [](const CycloPrime& x, const CycloPrime& y) {
    return std::pair(x.gen.a, x.gen.b) < std::pair(y.gen.a, y.gen.b);
  });
  return out;
}

std::vector<CycloPrime> primes_above(long long conductor, long long p) {
  Splitting s = splitting_type(conductor, p);
  check_arg(!s.ramified, "prime divides the conductor");
  if (s.f == 1) return degree_one_primes(conductor, p);
  std::vector<CycloPrime> out;
  // in the supported quadratic fields f = 2 means p stays inert, so the one
  // prime above really is generated by p; elsewhere the generator is a
  // placeholder for class-blind use
  for (long long i = 0; i < s.count; ++i) out.push_back({conductor, p, s.f, {p, 0}});
  return out;
}

RayClassGroup::RayClassGroup(long long conductor, long long modulus)
    : conductor_(conductor), modulus_(modulus) {
  check_arg(modulus >= 1, "modulus must be positive");
  kind_ = field_for_conductor(conductor);
  if (kind_ == FieldKind::unsupported)
    fail(Errc::unsupported, "no ray class data for conductor " + std::to_string(conductor));
  const bool quadratic = kind_ != FieldKind::rational;
  if (quadratic && modulus > 1024)
    fail(Errc::unsupported, "modulus too large for quadratic residue tables");
  if (!quadratic && modulus > 1000000)
    fail(Errc::unsupported, "modulus too large for residue tables");

  const long long M = modulus;
  const long long num_residues = quadratic ? M * M : M;
  auto reduce = [&](QuadInt r) -> QuadInt {
    return {mod_floor(r.a, M), quadratic ? mod_floor(r.b, M) : 0};
  };
  auto index_of = [&](const QuadInt& r) -> long long {
    return quadratic ? r.a * M + r.b : r.a;
  };
  auto residue_at = [&](long long idx) -> QuadInt {
    return quadratic ? QuadInt{idx / M, idx % M} : QuadInt{idx, 0};
  };

  // torsion units of O_K reduced mod M, generated by a primitive root of unity
  QuadInt zeta{-1, 0};
  if (kind_ == FieldKind::gaussian) zeta = {0, 1};
  if (kind_ == FieldKind::eisenstein) zeta = {1, 1};
  std::vector<QuadInt> units;
  QuadInt u{1, 0};
  do {
    units.push_back(reduce(u));
    u = qmul(kind_, u, zeta);
  } while (!(u.a == 1 && u.b == 0));
  std::sort(units.begin(), units.end(), [&](const QuadInt& x, const QuadInt& y) {
    return index_of(x) < index_of(y);
  });
  units.erase(std::unique(units.begin(), units.end()), units.end());

  // a residue is invertible iff its norm is coprime to M; classes are unit
  // orbits, represented by the orbit's smallest residue index
  auto coprime = [&](const QuadInt& r) {
    return std::gcd(qnorm(kind_, r) % M, M) == 1;  // gcd(0, 1) == 1 covers M == 1
  };
  auto orbit_min = [&](const QuadInt& r) {
    long long best = index_of(r);
    for (const QuadInt& w : units)
      best = std::min(best, index_of(reduce(qmul(kind_, w, r))));
    return best;
  };
  residue_class_.assign(num_residues, -1);
  for (long long idx = 0; idx < num_residues; ++idx) {
    QuadInt r = residue_at(idx);
    if (!coprime(r) || orbit_min(r) != idx) continue;
    residue_class_.at(idx) = (long long)class_rep_.size();
    class_rep_.push_back(idx);
  }
  for (long long idx = 0; idx < num_residues; ++idx) {
    QuadInt r = residue_at(idx);
    if (coprime(r)) residue_class_.at(idx) = residue_class_.at(orbit_min(r));
  }

  const long long n = (long long)class_rep_.size();
  auto mul = [&](std::size_t x, std::size_t y) -> std::size_t {
    QuadInt rx = residue_at(class_rep_.at(x));
    QuadInt ry = residue_at(class_rep_.at(y));
    return (std::size_t)residue_class_.at(index_of(reduce(qmul(kind_, rx, ry))));
  };
  identity_ = residue_class_.at(index_of(reduce({1, 0})));
  AbelianStructure st = decompose_abelian((std::size_t)n, mul, (std::size_t)identity_);
  orders_ = st.orders;
  exps_.resize(n);
  for (long long c = 0; c < n; ++c) exps_[c] = st.dlog.at(c);

  exps_to_class_.assign(n, -1);
  for (long long c = 0; c < n; ++c) {
    long long key = 0;
    for (std::size_t k = 0; k < orders_.size(); ++k) key = key * orders_[k] + exps_[c][k];
    if (exps_to_class_.at(key) != -1) fail(Errc::internal, "dlog is not a bijection");
    exps_to_class_.at(key) = c;
  }
}

long long RayClassGroup::residue_index(const QuadInt& r) const {
  const long long M = modulus_;
  long long a = mod_floor(r.a, M);
  long long b = kind_ == FieldKind::rational ? 0 : mod_floor(r.b, M);
  if (kind_ == FieldKind::rational && r.b != 0)
    fail(Errc::invalid_argument, "rational residue with nonzero imaginary part");
  return kind_ == FieldKind::rational ? a : a * M + b;
}

long long RayClassGroup::class_of_residue(const QuadInt& r) const {
  long long cls = residue_class_.at(residue_index(r));
  if (cls < 0) fail(Errc::invalid_argument, "residue is not coprime to the modulus");
  return cls;
}

long long RayClassGroup::class_of_prime(const CycloPrime& prime) const {
  check_arg(field_for_conductor(prime.conductor) == kind_,
            "prime belongs to a different field");
  return class_of_residue(prime.gen);
}

long long RayClassGroup::compose(long long a, long long b) const {
  std::vector<long long> e(orders_.size());
  long long key = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    e[k] = (exps_.at(a)[k] + exps_.at(b)[k]) % orders_[k];
    key = key * orders_[k] + e[k];
  }
  return exps_to_class_.at(key);
}

long long RayClassGroup::inverse(long long a) const {
  long long key = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k)
    key = key * orders_[k] + (orders_[k] - exps_.at(a)[k]) % orders_[k];
  return exps_to_class_.at(key);
}

const std::vector<long long>& RayClassGroup::class_exps(long long cls) const {
  return exps_.at(cls);
}

std::string RayClassGroup::class_rep_string(long long cls) const {
  long long idx = class_rep_.at(cls);
  QuadInt r = kind_ == FieldKind::rational ? QuadInt{idx, 0}
                                           : QuadInt{idx / modulus_, idx % modulus_};
  return qstr(kind_, r);
}

Rat RayClassGroup::character_value(const std::vector<long long>& ce, long long cls) const {
  check_arg(ce.size() == orders_.size(), "character exponent vector has wrong length");
  Rat sum;
  for (std::size_t k = 0; k < orders_.size(); ++k)
    sum = sum + Rat(ce[k] * exps_.at(cls)[k], orders_[k]);
  return frac(sum);
}

std::vector<long long> RayClassGroup::character_exps(long long chi) const {
  check_arg(chi >= 0 && chi < order(), "character index out of range");
  std::vector<long long> ce(orders_.size());
  for (std::size_t k = orders_.size(); k-- > 0;) {
    ce[k] = chi % orders_[k];
    chi /= orders_[k];
  }
  return ce;
}

long long RayClassGroup::character_index(const std::vector<long long>& ce) const {
  check_arg(ce.size() == orders_.size(), "character exponent vector has wrong length");
  long long idx = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k)
    idx = idx * orders_[k] + mod_floor(ce[k], orders_[k]);
  return idx;
}

RayClassSystem::RayClassSystem(const abelian::OrbitTable& orbits, long long modulus)
    : modulus_(modulus) {
  check_arg(modulus >= 1, "modulus must be positive");
  for (std::size_t t = 0; t < orbits.components(); ++t)
    comp_conductor_.push_back(orbits.component(t).order);
  for (long long n : comp_conductor_)
    if (!conductor_supported(n)) class_blind_ = true;

  std::map<long long, std::shared_ptr<RayClassGroup>> by_conductor;
  for (long long n : comp_conductor_) {
    if (class_blind_) {
      comp_group_.push_back(nullptr);
      comp_order_.push_back(1);
      continue;
    }
    auto it = by_conductor.find(n);
    if (it == by_conductor.end())
      it = by_conductor.emplace(n, std::make_shared<RayClassGroup>(n, modulus)).first;
    comp_group_.push_back(it->second);
    comp_order_.push_back(it->second->order());
  }
  unsigned long long total = 1;
  for (long long m : comp_order_) total = checked_mul_u64(total, (unsigned long long)m);
  check_arg(total <= (1ull << 40), "combined class group too large");
  num_classes_ = (long long)total;
}

const RayClassGroup* RayClassSystem::component_group(std::size_t t) const {
  return comp_group_.at(t).get();
}

std::vector<long long> RayClassSystem::split(long long idx) const {
  check_arg(idx >= 0 && idx < num_classes_, "class index out of range");
  std::vector<long long> digits(comp_order_.size());
  for (std::size_t t = comp_order_.size(); t-- > 0;) {
    digits[t] = idx % comp_order_[t];
    idx /= comp_order_[t];
  }
  return digits;
}

long long RayClassSystem::combine(const std::vector<long long>& per_component) const {
  check_arg(per_component.size() == comp_order_.size(), "wrong number of components");
  long long idx = 0;
  for (std::size_t t = 0; t < comp_order_.size(); ++t) {
    check_arg(per_component[t] >= 0 && per_component[t] < comp_order_[t],
              "component class out of range");
    idx = idx * comp_order_[t] + per_component[t];
  }
  return idx;
}

long long RayClassSystem::compose(long long a, long long b) const {
  auto da = split(a), db = split(b);
  for (std::size_t t = 0; t < da.size(); ++t)
    da[t] = class_blind_ ? 0 : comp_group_[t]->compose(da[t], db[t]);
  return combine(da);
}

long long RayClassSystem::inverse(long long a) const {
  auto d = split(a);
  for (std::size_t t = 0; t < d.size(); ++t)
    d[t] = class_blind_ ? 0 : comp_group_[t]->inverse(d[t]);
  return combine(d);
}

long long RayClassSystem::component_class(long long cls, std::size_t t) const {
  return split(cls).at(t);
}

long long RayClassSystem::class_of_prime(std::size_t t, const CycloPrime& prime) const {
  check_arg(t < comp_conductor_.size(), "component index out of range");
  check_arg(prime.conductor == comp_conductor_[t], "prime conductor does not match");
  std::vector<long long> d(comp_order_.size(), 0);
  if (!class_blind_) d[t] = comp_group_[t]->class_of_prime(prime);
  return combine(d);
}

std::string RayClassSystem::class_label(long long cls) const {
  if (class_blind_) return "all";
  auto d = split(cls);
  std::string s;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (t) s += "|";
    s += comp_group_[t]->class_rep_string(d[t]);
  }
  return s;
}

std::string RayClassSystem::class_legend(long long cls) const {
  if (class_blind_) return "class-blind";
  auto d = split(cls);
  std::string s;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (t) s += "; ";
    s += "t" + std::to_string(t + 1) + "(" + field_name(comp_conductor_[t]) +
         "):" + comp_group_[t]->class_rep_string(d[t]);
  }
  return s;
}

Rat RayClassSystem::character_value(long long chi, long long cls) const {
  auto dchi = split(chi), dcls = split(cls);
  Rat sum;
  for (std::size_t t = 0; t < dchi.size(); ++t) {
    if (class_blind_) continue;
    sum = sum + comp_group_[t]->character_value(
                    comp_group_[t]->character_exps(dchi[t]), dcls[t]);
  }
  return frac(sum);
}

bool RayClassSystem::character_component_trivial(long long chi, std::size_t t) const {
  return split(chi).at(t) == 0;
}

long long RayClassSystem::conjugate_character(long long chi) const {
  auto d = split(chi);
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (class_blind_) continue;
    auto ce = comp_group_[t]->character_exps(d[t]);
    for (long long& c : ce) c = -c;
    d[t] = comp_group_[t]->character_index(ce);
  }
  return combine(d);
}

long long RayClassSystem::character_exponent() const {
  long long e = 1;
  for (std::size_t t = 0; t < comp_group_.size(); ++t) {
    if (class_blind_ || comp_group_[t]->basis_orders().empty()) continue;
    e = std::lcm(e, comp_group_[t]->basis_orders().front());
  }
  return e;
}

}  // namespace tame::cyclo
