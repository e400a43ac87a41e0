#include "core/primes.hpp"

namespace tame {

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  out.push_back(2);
  if (n < 3) return out;
  // bit k stands for the odd number 2k+3
  std::uint64_t bits = (n - 1) / 2;
  std::vector<std::uint64_t> sieve((bits + 63) / 64, 0);
  auto is_set = [&](std::uint64_t k) { return (sieve[k >> 6] >> (k & 63)) & 1; };
  for (std::uint64_t k = 0; k < bits; ++k) {
    if (is_set(k)) continue;
    std::uint64_t p = 2 * k + 3;
    out.push_back((std::uint32_t)p);
    for (std::uint64_t m = (p * p - 3) / 2; m < bits; m += p) sieve[m >> 6] |= 1ull << (m & 63);
  }
  return out;
}

}  // namespace tame
