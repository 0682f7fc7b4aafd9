#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace primegap {

/// Open interval (lo, hi) with real endpoints; prime counts over it exclude
/// both endpoints. Throws DomainError unless 0 <= lo < hi.
struct OpenInterval {
  double lo;
  double hi;
  OpenInterval(double lo_, double hi_);
};

/// Exact primality and prime-counting authority up to a fixed limit.
///
/// Backing store is a segmented odd-only Eratosthenes sieve (one bit per odd
/// integer) plus per-word prefix counts, so pi() and pi_open() are O(1) and
/// nth-prime scans touch only the words they cross. Construction memory is
/// the bitmap itself plus the primes below sqrt(limit); the sieve is filled
/// in cache-sized windows of `segment_size` odd elements.
///
/// Immutable after construction; all queries are const and safe to share
/// across threads.
class PrimeOracle {
 public:
  static constexpr std::uint64_t kDefaultSegmentSize = 1ull << 16;

  /// Builds the sieve. limit >= 2, segment_size >= 64.
  /// memory_budget_bytes == 0 means default_memory_budget(); construction
  /// refuses (ResourceError) if the estimate exceeds the budget.
  explicit PrimeOracle(std::uint64_t limit,
                       std::uint64_t segment_size = kDefaultSegmentSize,
                       std::uint64_t memory_budget_bytes = 0);

  std::uint64_t limit() const { return limit_; }
  std::uint64_t segment_size() const { return segment_size_; }

  /// True iff k is prime. k must be <= limit (RangeError otherwise).
  bool is_prime(std::uint64_t k) const;

  /// Number of primes p <= n. Real n counts p <= floor(n).
  /// Requires 0 <= n <= limit.
  std::uint64_t pi(double n) const;

  /// Number of primes strictly inside (lo, hi). Requires hi <= limit.
  std::uint64_t pi_open(const OpenInterval& iv) const;
  std::uint64_t pi_open(double lo, double hi) const;

  /// n-th prime p with p > a (n >= 1). RangeError if it would exceed limit.
  std::uint64_t nth_prime_after(double a, std::uint64_t n) const;

  /// n-th prime p with p < b, counting downward (n >= 1).
  /// DomainError if fewer than n primes lie below b.
  std::uint64_t nth_prime_before(double b, std::uint64_t n) const;

  /// Smallest prime > p, or nullopt if none exists <= limit.
  std::optional<std::uint64_t> next_prime(std::uint64_t p) const;

  /// Streams consecutive-prime pairs (p, q) with q <= pair_limit in
  /// increasing order, starting at (2, 3).
  class PairStream {
   public:
    PairStream(const PrimeOracle& oracle, std::uint64_t pair_limit);
    std::optional<std::pair<std::uint64_t, std::uint64_t>> next();

   private:
    const PrimeOracle& oracle_;
    std::uint64_t pair_limit_;
    std::uint64_t prev_;
  };

  PairStream consecutive_pairs(std::uint64_t pair_limit) const;

  /// Materialized pair list; intended for small limits (tests, reports).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> consecutive_pairs_vector(
      std::uint64_t pair_limit) const;

  /// PRIMEGAP_MEMORY_BUDGET (bytes) if set, otherwise 512 MiB.
  static std::uint64_t default_memory_budget();

  /// Bytes the sieve for `limit` will hold live (bitmap + prefix counts +
  /// base primes), used for the budget check.
  static std::uint64_t estimate_memory(std::uint64_t limit);

 private:
  std::uint64_t limit_;
  std::uint64_t segment_size_;
  std::uint64_t n_odds_;
  std::vector<std::uint64_t> bits_;  // bit per odd value 2i+1; set = prime
  std::vector<std::uint64_t> cum_;   // primes in words [0, w)

  void build();
  std::uint64_t count_odd_upto(std::uint64_t odd_index) const;
  std::uint64_t pi_uint(std::uint64_t m) const;  // primes <= m, m <= limit
  // 0 when fewer than n primes exist in the scanned direction.
  std::uint64_t scan_up(std::uint64_t from_value, std::uint64_t n) const;
  std::uint64_t scan_down(std::uint64_t from_value, std::uint64_t n) const;
};

}  // namespace primegap
