#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tame {

// Cyclic decomposition of a finite abelian group that is only known through
// an explicit multiplication function on element indices 0..n-1.  Basis
// orders come out as a divisor chain, largest first, and every element gets
// an exponent vector with respect to the basis.  Used for unit groups of
// residue rings, where no presentation is known a priori.
struct AbelianStructure {
  std::vector<std::size_t> basis;             // element indices
  std::vector<long long> orders;              // orders[0] = exponent, orders[i+1] | orders[i]
  std::vector<std::vector<long long>> dlog;   // per element, one exponent per basis entry
};

using MulFn = std::function<std::size_t(std::size_t, std::size_t)>;

AbelianStructure decompose_abelian(std::size_t n, const MulFn& mul, std::size_t id);

}  // namespace tame
