#pragma once

// Independent reference implementations the tests check the library against.
// Nothing in here may call into the code under test.

#include <cstdint>
#include <vector>

namespace testsupport {

inline bool trial_division_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Plain full-array sieve, the cross-check for the segmented one.
class SimpleSieve {
 public:
  explicit SimpleSieve(std::uint64_t limit) : is_prime_(limit + 1, true) {
    is_prime_[0] = false;
    if (limit >= 1) is_prime_[1] = false;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
      if (is_prime_[i])
        for (std::uint64_t j = i * i; j <= limit; j += i) is_prime_[j] = false;
  }

  bool is_prime(std::uint64_t n) const { return is_prime_[n]; }

  std::uint64_t count_leq(std::uint64_t n) const {
    std::uint64_t c = 0;
    for (std::uint64_t k = 2; k <= n; ++k)
      if (is_prime_[k]) ++c;
    return c;
  }

  // primes strictly inside (lo, hi), real endpoints
  std::uint64_t count_open(double lo, double hi) const {
    std::uint64_t c = 0;
    for (std::uint64_t k = 2; k < is_prime_.size(); ++k) {
      const double kd = static_cast<double>(k);
      if (kd <= lo) continue;
      if (kd >= hi) break;
      if (is_prime_[k]) ++c;
    }
    return c;
  }

 private:
  std::vector<bool> is_prime_;
};

// splitmix64; deterministic draws for the property tests
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }

  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

}  // namespace testsupport
