#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/abelian.hpp"
#include "core/cyclo.hpp"

namespace tame::fideals {

// Weight on the nonidentity orbits T', by component index.  The identity
// orbit always has weight 0 and is not stored.
class Weight {
 public:
  Weight(std::string name, std::vector<long long> values);

  const std::string& name() const { return name_; }
  std::size_t components() const { return w_.size(); }
  long long at(std::size_t t) const { return w_.at(t); }
  long long alpha() const { return alpha_; }       // min over T'
  long long max_value() const { return max_; }
  bool constant() const { return alpha_ == max_; }
  long long multiplicity(long long n) const;       // #{t : W(t) = n}, the d_n of the trivial character

 private:
  std::string name_;
  std::vector<long long> w_;
  long long alpha_ = 1;
  long long max_ = 1;
};

Weight weight_disc(const abelian::OrbitTable& orbits);
Weight weight_ram(const abelian::OrbitTable& orbits);
Weight weight_custom(const abelian::OrbitTable& orbits, std::vector<long long> values);

// Ideal of Lambda = prod_t K(t): a list of primes per nonidentity component.
// The identity component is implicitly trivial.
struct LambdaIdeal {
  std::vector<std::vector<cyclo::CycloPrime>> comp;

  explicit LambdaIdeal(std::size_t components = 0) : comp(components) {}
  bool trivial() const;
};

// membership in F: degree-one primes only, distinct rational primes below
// (squarefree norm product), and every prime coprime to its component order
bool is_in_F(const LambdaIdeal& ideal, const abelian::OrbitTable& orbits);

// prod_t N(a_t)^{W(t)}
unsigned long long weighted_index(const LambdaIdeal& ideal, const Weight& w);

// prod_t N(a_t)
unsigned long long module_index(const LambdaIdeal& ideal);

// number of members of F with weighted index exactly b; multiplicative, with
// local counts nu(p^e) = sum of phi(|t|) over t with W(t) = e, p coprime to
// |t| and p = 1 mod |t|
unsigned long long nu(unsigned long long b, const Weight& w, const abelian::OrbitTable& orbits);

// Streaming consumer for the enumeration.  node() fires once per member, in
// depth-first order over increasing rational primes; push()/pop() bracket the
// component primes along the walk so that incremental state (ray classes,
// tallies) can follow without rescanning the ideal.
class EnumObserver {
 public:
  virtual ~EnumObserver() = default;
  virtual void push(std::size_t /*t*/, const cyclo::CycloPrime& /*prime*/) {}
  virtual void pop() {}
  virtual void node(const LambdaIdeal& ideal, unsigned long long index) = 0;
};

// Enumeration of all members of F with weighted index <= X whose module index
// is coprime to the modulus.  Primes over p | modulus are excluded when the
// branch tables are built.  Work splits into one task per admissible smallest
// rational prime; tasks may run concurrently on separate observers.
class Enumerator {
 public:
  Enumerator(unsigned long long X, long long modulus, const Weight& w,
             const abelian::OrbitTable& orbits);

  unsigned long long bound() const { return X_; }
  std::size_t num_tasks() const { return tasks_; }

  // all members whose smallest rational prime is the task'th admissible prime
  void run_task(std::size_t task, EnumObserver& obs) const;
  // trivial ideal plus every task, in order
  void run_all(EnumObserver& obs) const;

 private:
  struct Branch {
    std::size_t t;
    cyclo::CycloPrime prime;
    unsigned long long factor;  // p^{W(t)}
  };
  struct PrimeRow {
    unsigned long long p;
    unsigned long long min_factor;
    std::uint32_t first_branch;
    std::uint32_t num_branches;
  };

  void walk(std::size_t row, unsigned long long v, LambdaIdeal& cur, EnumObserver& obs) const;

  unsigned long long X_;
  std::size_t components_;
  long long alpha_;
  std::vector<PrimeRow> rows_;
  std::vector<Branch> branches_;
  std::size_t tasks_ = 0;
};

// Total |{a in F : weighted index <= X, module index coprime to modulus}|
// without materializing ideals: one pass over squarefree prime supports with
// multiplicities aggregated per weight value.  threads <= 0 means one thread.
unsigned long long count_F(unsigned long long X, long long modulus, const Weight& w,
                           const abelian::OrbitTable& orbits, int threads = 1);

}  // namespace tame::fideals
