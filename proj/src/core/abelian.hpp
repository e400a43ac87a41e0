#pragma once

#include <cstddef>
#include <vector>

#include "core/exact.hpp"

namespace tame::abelian {

// exponent vector, one entry per invariant factor, each reduced mod its factor
using Exps = std::vector<long long>;

// Finite abelian group presented by invariant factors d1 | d2 | ... | dk.
// Any list of factors >= 2 is accepted and renormalized into a divisor chain,
// so e.g. {2,3} and {6} build the same group.  Elements are exponent vectors
// or, interchangeably, mixed-radix indices with the last coordinate fastest
// (index order is lexicographic order on the vectors).  The character group
// uses the same factors; a character is just another exponent vector.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<long long> factors);

  const std::vector<long long>& invariant_factors() const { return f_; }
  long long order() const { return order_; }
  long long exponent() const { return f_.back(); }
  std::size_t rank() const { return f_.size(); }

  long long index_of(const Exps& e) const;
  Exps exps_of(long long index) const;

  Exps identity() const { return Exps(f_.size(), 0); }
  bool is_identity(const Exps& e) const;
  Exps mul(const Exps& a, const Exps& b) const;
  Exps pow(const Exps& a, long long k) const;  // k may be negative
  Exps inverse(const Exps& a) const { return pow(a, -1); }
  long long element_order(const Exps& a) const;

 private:
  std::vector<long long> f_;
  long long order_ = 1;
};

// Stickelberger pairing <chi, g> in [0,1) cap Q, defined through
// chi(g) = exp(2 pi i <chi, g>).  Exact; the reduced denominator divides
// the order of g.
Rat stickelberger_pairing(const FiniteAbelianGroup& g, const Exps& chi, const Exps& elt);

// integer group-ring element over the character group, dense by character index
struct DualElement {
  std::vector<long long> coeff;
};

// Theta(alpha) = sum_g <alpha, g> g, returned dense by element index.
// Coefficients are exact rationals.
std::vector<Rat> stickelberger_theta(const FiniteAbelianGroup& g, const DualElement& alpha);

// determinant test: alpha in A iff prod_chi chi^{a_chi} is the trivial character
bool in_A_hat(const FiniteAbelianGroup& g, const DualElement& alpha);

inline bool all_integral(const std::vector<Rat>& v) {
  for (const Rat& r : v)
    if (!r.is_integer()) return false;
  return true;
}

long long euler_phi(long long n);

// One orbit of the inverse-cyclotomic action on G.  Over the rationals the
// orbit of t is {t^u : gcd(u, |t|) = 1}, so it has exactly phi(|t|) members,
// and the component field attached to t is the cyclotomic field of conductor
// n(t) = |t|.
struct Orbit {
  Exps rep;                        // lexicographically smallest member
  long long order = 1;             // |t| = conductor of the component
  long long degree = 1;            // phi(|t|) = [K(t) : Q] = orbit size
  std::vector<long long> members;  // element indices, ascending
};

// all orbits, identity first, then sorted by (order, representative index)
class OrbitTable {
 public:
  explicit OrbitTable(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& group() const { return *g_; }
  std::size_t size() const { return orbits_.size(); }  // |T|
  const Orbit& orbit(std::size_t i) const { return orbits_.at(i); }
  std::size_t orbit_of(long long element_index) const { return orbit_of_.at(element_index); }

  // nonidentity orbits T', indexed 0 .. components()-1
  std::size_t components() const { return orbits_.size() - 1; }
  const Orbit& component(std::size_t t) const { return orbits_.at(t + 1); }

 private:
  const FiniteAbelianGroup* g_;
  std::vector<Orbit> orbits_;
  std::vector<std::size_t> orbit_of_;
};

}  // namespace tame::abelian
