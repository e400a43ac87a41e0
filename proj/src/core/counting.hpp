#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/cyclo.hpp"
#include "core/fideals.hpp"

namespace tame::counting {

// Exact per-class counts of F-members with weighted index <= bound, classes
// being combined ray classes of the system (a single class when class-blind).
struct ClassTally {
  long long modulus = 1;
  std::string weight_name;
  unsigned long long bound = 1;
  std::vector<unsigned long long> counts;
  unsigned long long total = 0;
};

ClassTally kappa_all(unsigned long long X, const abelian::OrbitTable& orbits,
                     const fideals::Weight& w, const cyclo::RayClassSystem& sys,
                     int threads = 1);

// only ideals whose component t is trivial
ClassTally kappa_omit(std::size_t t, unsigned long long X, const abelian::OrbitTable& orbits,
                      const fideals::Weight& w, const cyclo::RayClassSystem& sys,
                      int threads = 1);

// Ideals with every component nontrivial (the field-extension counts), by
// direct filtering.  The subtraction form all - sum_t omit(t) is carried
// along for comparison; it matches the direct count only when |T'| = 1,
// because subtracting the per-component omissions removes ideals with two or
// more trivial components more than once (the trivial ideal alone is removed
// |T'| times).  It may go negative; it is reported, not asserted on.
struct FullTally {
  ClassTally direct;
  ClassTally all;
  std::vector<ClassTally> omit;
  std::vector<long long> subtraction;  // all - sum omit, classwise, signed
};

FullTally kappa_full(unsigned long long X, const abelian::OrbitTable& orbits,
                     const fideals::Weight& w, const cyclo::RayClassSystem& sys,
                     int threads = 1);

// Partition of the system classes into labelled fibers with the two opaque
// cohomological constants.  Defaults describe the trivial partition.
struct FiberPartition {
  std::vector<std::string> labels;
  std::vector<std::vector<long long>> classes;
  long long kpsi = 1;
  long long kf = 1;
  bool equal_size = false;

  static FiberPartition trivial(long long num_classes);
};

// per-fiber N = kpsi * sum of kappa over the fiber's classes
std::vector<std::pair<std::string, unsigned long long>> assemble_N(
    const ClassTally& tally, const FiberPartition& fibers);

}  // namespace tame::counting
