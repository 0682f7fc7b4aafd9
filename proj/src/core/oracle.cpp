#include "core/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

namespace primegap {

namespace {

std::uint64_t integer_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes <= top, ascending.
std::vector<std::uint64_t> simple_odd_sieve(std::uint64_t top) {
  std::vector<char> mark(top + 1, 1);
  for (std::uint64_t i = 3; i * i <= top; i += 2)
    if (mark[i])
      for (std::uint64_t j = i * i; j <= top; j += 2 * i) mark[j] = 0;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 3; i <= top; i += 2)
    if (mark[i]) primes.push_back(i);
  return primes;
}

}  // namespace

OpenInterval::OpenInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo >= 0.0) || !(lo < hi))
    throw DomainError("open interval requires 0 <= lo < hi");
}

std::uint64_t PrimeOracle::default_memory_budget() {
  if (const char* env = std::getenv("PRIMEGAP_MEMORY_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 512ull << 20;
}

std::uint64_t PrimeOracle::estimate_memory(std::uint64_t limit) {
  std::uint64_t n_odds = (limit + 1) / 2;
  std::uint64_t words = (n_odds + 63) / 64;
  std::uint64_t root = integer_sqrt(limit);
  // bitmap + prefix counts + base-prime sieve scratch and list
  return words * 16 + root + (root / 8 + 64) * 8;
}

PrimeOracle::PrimeOracle(std::uint64_t limit, std::uint64_t segment_size,
                         std::uint64_t memory_budget_bytes)
    : limit_(limit), segment_size_(segment_size) {
  if (limit < 2) throw DomainError("oracle limit must be >= 2");
  if (segment_size < 64) throw DomainError("segment size must be >= 64");
  std::uint64_t budget =
      memory_budget_bytes ? memory_budget_bytes : default_memory_budget();
  std::uint64_t need = estimate_memory(limit);
  if (need > budget)
    throw ResourceError("sieve to " + std::to_string(limit) + " needs ~" +
                        std::to_string(need) + " bytes, budget is " +
                        std::to_string(budget));
  n_odds_ = (limit_ + 1) / 2;
  build();
}

void PrimeOracle::build() {
  const std::uint64_t words = (n_odds_ + 63) / 64;
  bits_.assign(words, ~0ull);
  bits_[0] &= ~1ull;  // 1 is not prime
  // clear bits past the last represented odd value
  if (std::uint64_t tail = n_odds_ % 64; tail != 0)
    bits_[words - 1] &= (~0ull >> (64 - tail));

  const auto base = simple_odd_sieve(integer_sqrt(limit_));

  // Fill window by window so the marking stays cache-local.
  for (std::uint64_t seg_lo = 0; seg_lo < n_odds_; seg_lo += segment_size_) {
    const std::uint64_t seg_hi = std::min(seg_lo + segment_size_, n_odds_);
    const std::uint64_t lo_val = 2 * seg_lo + 1;
    const std::uint64_t hi_val = 2 * (seg_hi - 1) + 1;  // inclusive
    for (std::uint64_t p : base) {
      std::uint64_t start = p * p;
      if (start > hi_val) break;
      if (start < lo_val) {
        std::uint64_t m = (lo_val + p - 1) / p * p;
        if ((m & 1) == 0) m += p;
        start = std::max(start, m);
      }
      for (std::uint64_t v = start; v <= hi_val; v += 2 * p)
        bits_[(v >> 1) >> 6] &= ~(1ull << ((v >> 1) & 63));
    }
  }

  cum_.assign(words + 1, 0);
  for (std::uint64_t w = 0; w < words; ++w)
    cum_[w + 1] = cum_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w]));
}

std::uint64_t PrimeOracle::count_odd_upto(std::uint64_t odd_index) const {
  const std::uint64_t w = odd_index >> 6;
  const std::uint64_t r = odd_index & 63;
  const std::uint64_t mask = (r == 63) ? ~0ull : ((1ull << (r + 1)) - 1);
  return cum_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
}

std::uint64_t PrimeOracle::pi_uint(std::uint64_t m) const {
  if (m < 2) return 0;
  std::uint64_t count = 1;  // the prime 2
  if (m >= 3) count += count_odd_upto((m - 1) / 2);
  return count;
}

bool PrimeOracle::is_prime(std::uint64_t k) const {
  if (k > limit_) throw RangeError("is_prime query beyond sieve limit");
  if (k < 2) return false;
  if (k == 2) return true;
  if ((k & 1) == 0) return false;
  const std::uint64_t idx = (k - 1) / 2;
  return (bits_[idx >> 6] >> (idx & 63)) & 1;
}

std::uint64_t PrimeOracle::pi(double n) const {
  if (!(n >= 0.0)) throw DomainError("pi requires n >= 0");
  if (n > static_cast<double>(limit_))
    throw RangeError("pi query beyond sieve limit");
  return pi_uint(static_cast<std::uint64_t>(std::floor(n)));
}

std::uint64_t PrimeOracle::pi_open(const OpenInterval& iv) const {
  if (iv.hi > static_cast<double>(limit_))
    throw RangeError("pi_open window beyond sieve limit");
  // primes strictly below hi ...
  double hf = std::floor(iv.hi);
  std::uint64_t hi_int = static_cast<std::uint64_t>(hf);
  if (hf == iv.hi && hi_int > 0) hi_int -= 1;
  // ... minus primes <= lo
  std::uint64_t below_hi = pi_uint(hi_int);
  std::uint64_t upto_lo = pi_uint(static_cast<std::uint64_t>(std::floor(iv.lo)));
  return below_hi - std::min(below_hi, upto_lo);
}

std::uint64_t PrimeOracle::pi_open(double lo, double hi) const {
  return pi_open(OpenInterval(lo, hi));
}

std::uint64_t PrimeOracle::scan_up(std::uint64_t from_value,
                                   std::uint64_t n) const {
  std::uint64_t remaining = n;
  if (from_value <= 2) {
    if (2 <= limit_ && --remaining == 0) return 2;
    from_value = 3;
  }
  std::uint64_t v = from_value | 1;  // first odd >= from_value
  std::uint64_t idx = (v - 1) / 2;
  if (idx >= n_odds_) return 0;
  std::uint64_t w = idx >> 6;
  const std::uint64_t words = bits_.size();
  std::uint64_t word = bits_[w] & (~0ull << (idx & 63));
  for (;;) {
    while (word != 0) {
      const int b = std::countr_zero(word);
      if (--remaining == 0) return 2 * (w * 64 + static_cast<std::uint64_t>(b)) + 1;
      word &= word - 1;
    }
    if (++w >= words) return 0;
    word = bits_[w];
  }
}

std::uint64_t PrimeOracle::scan_down(std::uint64_t from_value,
                                     std::uint64_t n) const {
  std::uint64_t remaining = n;
  if (from_value >= 3) {
    const std::uint64_t v = (from_value & 1) ? from_value : from_value - 1;
    std::uint64_t idx = (v - 1) / 2;
    if (idx >= n_odds_) idx = n_odds_ - 1;
    std::uint64_t w = idx >> 6;
    const std::uint64_t r = idx & 63;
    std::uint64_t word =
        bits_[w] & ((r == 63) ? ~0ull : ((1ull << (r + 1)) - 1));
    for (;;) {
      while (word != 0) {
        const int b = 63 - std::countl_zero(word);
        if (--remaining == 0)
          return 2 * (w * 64 + static_cast<std::uint64_t>(b)) + 1;
        word &= ~(1ull << b);
      }
      if (w == 0) break;
      word = bits_[--w];
    }
  }
  if (from_value >= 2 && --remaining == 0) return 2;
  return 0;
}

std::uint64_t PrimeOracle::nth_prime_after(double a, std::uint64_t n) const {
  if (n < 1) throw DomainError("nth_prime_after requires n >= 1");
  // smallest integer > a
  std::uint64_t start = 0;
  if (a >= 0.0) {
    double f = std::floor(a);
    start = static_cast<std::uint64_t>(f) + 1;
  }
  std::uint64_t p = scan_up(start, n);
  if (p == 0)
    throw RangeError("not enough primes below the sieve limit after anchor");
  return p;
}

std::uint64_t PrimeOracle::nth_prime_before(double b, std::uint64_t n) const {
  if (n < 1) throw DomainError("nth_prime_before requires n >= 1");
  if (b > static_cast<double>(limit_) + 1.0)
    throw RangeError("nth_prime_before anchor beyond sieve coverage");
  if (!(b > 2.0)) throw DomainError("no primes below anchor");
  // largest integer < b
  double f = std::floor(b);
  std::uint64_t top = static_cast<std::uint64_t>(f);
  if (f == b) top -= 1;
  std::uint64_t p = scan_down(top, n);
  if (p == 0) throw DomainError("fewer than n primes below anchor");
  return p;
}

std::optional<std::uint64_t> PrimeOracle::next_prime(std::uint64_t p) const {
  const std::uint64_t q = scan_up(p + 1, 1);
  if (q == 0) return std::nullopt;
  return q;
}

PrimeOracle::PairStream::PairStream(const PrimeOracle& oracle,
                                    std::uint64_t pair_limit)
    : oracle_(oracle), pair_limit_(pair_limit), prev_(0) {}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
PrimeOracle::PairStream::next() {
  const std::uint64_t p = (prev_ == 0) ? 2 : prev_;
  const std::uint64_t q = oracle_.scan_up(p + 1, 1);
  if (q == 0 || q > pair_limit_) return std::nullopt;
  prev_ = q;
  return std::make_pair(p, q);
}

PrimeOracle::PairStream PrimeOracle::consecutive_pairs(
    std::uint64_t pair_limit) const {
  if (pair_limit > limit_)
    throw RangeError("pair limit beyond sieve limit");
  return PairStream(*this, pair_limit);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
PrimeOracle::consecutive_pairs_vector(std::uint64_t pair_limit) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  auto stream = consecutive_pairs(pair_limit);
  while (auto pq = stream.next()) out.push_back(*pq);
  return out;
}

}  // namespace primegap
