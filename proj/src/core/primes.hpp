#pragma once

#include <cstdint>
#include <vector>

namespace tame {

// ascending primes <= n, odd-only sieve
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

}  // namespace tame
