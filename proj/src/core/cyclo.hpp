#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/abelian.hpp"
#include "core/exact.hpp"
#include "core/group_structure.hpp"

namespace tame::cyclo {

// Component fields are cyclotomic fields labelled by their conductor.  Exact
// prime generators and ray class data exist for conductors 1,2 (Q), 4 (Q(i))
// and 3,6 (Q(zeta3)); other conductors still get splitting data and run the
// counting layer class-blind.
enum class FieldKind { rational, gaussian, eisenstein, unsupported };

FieldKind field_for_conductor(long long n);
bool conductor_supported(long long n);
std::string field_name(long long conductor);

struct Splitting {
  long long f = 1;        // residue degree over p when p is coprime to the conductor
  bool ramified = false;  // p divides the conductor
  long long count = 0;    // number of primes over p, phi(n)/f, when unramified
};

// splitting of p in the cyclotomic field of conductor n, by the classical
// congruence rule: f = multiplicative order of p mod n
Splitting splitting_type(long long conductor, long long p);

// a + b*omega with omega = i (conductor 4) or omega = zeta3 (conductors 3, 6,
// with omega^2 + omega + 1 = 0, so the norm form is a^2 - a b + b^2);
// rational components keep b = 0
struct QuadInt {
  long long a = 0;
  long long b = 0;
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

QuadInt qmul(FieldKind k, const QuadInt& x, const QuadInt& y);
QuadInt qconj(FieldKind k, const QuadInt& x);
long long qnorm(FieldKind k, const QuadInt& x);
std::string qstr(FieldKind k, const QuadInt& x);

struct CycloPrime {
  long long conductor = 1;
  long long p = 0;  // rational prime below
  long long f = 1;  // residue degree
  QuadInt gen;      // generator; (p, 0) for rational components and for f > 1
  unsigned long long norm() const;
  friend bool operator==(const CycloPrime&, const CycloPrime&) = default;
};

// The phi(n) degree-one primes over p, empty when p is not 1 mod n.
// Requires p coprime to n.  Generators are canonical associates (argument in
// the first quarter resp. sextant of the plane) and the list is closed under
// conjugation.
std::vector<CycloPrime> degree_one_primes(long long conductor, long long p);

// all primes over p in the conductor-n component, any residue degree;
// still requires p coprime to n
std::vector<CycloPrime> primes_above(long long conductor, long long p);

// Ray class group of one component modulo M O_K, wide convention: because the
// three supported fields have class number one and finite unit groups, this
// is (O/M)^x divided by the image of the torsion units.
class RayClassGroup {
 public:
  RayClassGroup(long long conductor, long long modulus);

  long long conductor() const { return conductor_; }
  long long modulus() const { return modulus_; }
  FieldKind kind() const { return kind_; }
  long long order() const { return (long long)class_rep_.size(); }
  const std::vector<long long>& basis_orders() const { return orders_; }

  long long identity_class() const { return identity_; }
  long long class_of_residue(const QuadInt& r) const;  // error when not coprime to M
  long long class_of_prime(const CycloPrime& prime) const;
  long long compose(long long a, long long b) const;
  long long inverse(long long a) const;
  const std::vector<long long>& class_exps(long long cls) const;
  std::string class_rep_string(long long cls) const;

  // character with exponent vector ce, value exponent in [0,1)
  Rat character_value(const std::vector<long long>& ce, long long cls) const;
  // characters indexed like classes: mixed-radix digits over the basis orders
  std::vector<long long> character_exps(long long chi) const;
  long long character_index(const std::vector<long long>& ce) const;

 private:
  long long residue_index(const QuadInt& r) const;

  long long conductor_ = 1;
  long long modulus_ = 1;
  FieldKind kind_ = FieldKind::rational;
  long long identity_ = 0;
  std::vector<long long> residue_class_;          // residue index -> class, -1 off the units
  std::vector<long long> class_rep_;              // class -> smallest residue index
  std::vector<std::vector<long long>> exps_;      // class -> exponents over the basis
  std::vector<long long> orders_;                 // basis orders, divisor chain
  std::vector<long long> exps_to_class_;          // mixed-radix exponent index -> class
};

// Product of the component ray class groups over the nonidentity orbits.
// Combined classes and characters are mixed-radix indices over the component
// groups; characters evaluate to exact exponents of roots of unity.
class RayClassSystem {
 public:
  RayClassSystem(const abelian::OrbitTable& orbits, long long modulus);

  long long modulus() const { return modulus_; }
  bool class_blind() const { return class_blind_; }
  std::size_t components() const { return comp_conductor_.size(); }
  long long component_conductor(std::size_t t) const { return comp_conductor_.at(t); }
  // null in class-blind mode
  const RayClassGroup* component_group(std::size_t t) const;

  long long num_classes() const { return num_classes_; }
  long long identity() const { return 0; }
  long long compose(long long a, long long b) const;
  long long inverse(long long a) const;
  long long component_class(long long cls, std::size_t t) const;
  long long combine(const std::vector<long long>& per_component) const;
  long long class_of_prime(std::size_t t, const CycloPrime& prime) const;
  std::string class_label(long long cls) const;
  std::string class_legend(long long cls) const;

  long long num_characters() const { return num_classes_; }
  long long trivial_character() const { return 0; }
  Rat character_value(long long chi, long long cls) const;  // exponent in [0,1)
  bool character_component_trivial(long long chi, std::size_t t) const;
  long long conjugate_character(long long chi) const;
  long long character_exponent() const;  // lcm of value denominators

 private:
  long long modulus_ = 1;
  bool class_blind_ = false;
  std::vector<long long> comp_conductor_;
  std::vector<std::shared_ptr<RayClassGroup>> comp_group_;  // shared between equal conductors
  std::vector<long long> comp_order_;                       // |Cl_t|, 1 in blind mode
  long long num_classes_ = 1;

  std::vector<long long> split(long long idx) const;  // combined -> per-component indices
};

}  // namespace tame::cyclo
