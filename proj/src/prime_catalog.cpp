#include "mrpgen/prime_catalog.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

namespace mrpgen {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t
mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t
pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) {
      result = mul_mod(result, base, m);
    }
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool
passes_filter(std::uint64_t q, const CatalogFilter& filter, PrimeRecord& out)
{
  const unsigned weight = hw_naf(q);
  if (weight > filter.hw_naf_max) {
    return false;
  }
  if (!is_prime(q)) {
    return false;
  }
  Rational p_r = sample_rejection_prob(q, filter.w);
  if (p_r > filter.p_r_max) {
    return false;
  }
  out = PrimeRecord{ q, log2_bucket(q, filter.buckets), weight, std::move(p_r) };
  return true;
}

} // namespace

std::vector<int>
naf(std::uint64_t n)
{
  // Reitwiesner recoding; u128 so that the +1 carry out of bit 63 is kept.
  std::vector<int> digits;
  u128 v = n;
  while (v != 0) {
    int d = 0;
    if (v & 1) {
      d = 2 - static_cast<int>(v & 3);
      if (d > 0) {
        v -= 1;
      } else {
        v += 1;
      }
    }
    digits.push_back(d);
    v >>= 1;
  }
  return digits;
}

unsigned
hw_naf(std::uint64_t n)
{
  // Nonzero NAF digits are the set bits of (3n xor n) above bit 0, halved.
  const u128 x = n;
  const u128 x3 = 3 * x;
  const u128 diff = (x3 ^ x) >> 1;
  return static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(diff)) +
                               std::popcount(static_cast<std::uint64_t>(diff >> 64)));
}

bool
is_prime(std::uint64_t n)
{
  if (n < 2) {
    return false;
  }
  static constexpr std::uint64_t kWitnesses[] = { 2,  3,  5,  7,  11, 13,
                                                  17, 19, 23, 29, 31, 37 };
  for (const auto p : kWitnesses) {
    if (n % p == 0) {
      return n == p;
    }
  }

  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  for (const auto a : kWitnesses) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) {
      continue;
    }
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) {
      return false;
    }
  }
  return true;
}

bool
is_power_of_two(std::uint64_t n)
{
  return std::has_single_bit(n);
}

bool
is_ntt_friendly(std::uint64_t q, std::uint64_t ring_dim)
{
  if (!is_power_of_two(ring_dim) || ring_dim > (1ULL << 62)) {
    throw std::invalid_argument("ring dimension must be a power of two");
  }
  return q % (2 * ring_dim) == 1 && is_prime(q);
}

Rational
sample_rejection_prob(std::uint64_t q, unsigned w)
{
  if (w == 0 || w > 63) {
    throw std::invalid_argument("word size must be in [1, 63]");
  }
  const std::uint64_t two_w = 1ULL << w;
  if (q <= 1 || q >= two_w) {
    throw std::invalid_argument("modulus " + std::to_string(q) +
                                " outside (1, 2^" + std::to_string(w) + ")");
  }
  return Rational(two_w % q, two_w);
}

const char*
to_string(BucketConvention convention)
{
  switch (convention) {
    case BucketConvention::nearest:
      return "nearest";
    case BucketConvention::ceiling:
      return "ceiling";
    case BucketConvention::floor:
      return "floor";
  }
  return "unknown";
}

BucketConvention
parse_bucket_convention(std::string_view name)
{
  if (name == "nearest") {
    return BucketConvention::nearest;
  }
  if (name == "ceiling") {
    return BucketConvention::ceiling;
  }
  if (name == "floor") {
    return BucketConvention::floor;
  }
  throw std::invalid_argument("unknown bucket convention '" + std::string(name) + "'");
}

unsigned
log2_bucket(std::uint64_t q, BucketConvention convention)
{
  if (q == 0) {
    throw std::invalid_argument("log2 bucket of zero");
  }
  const unsigned floor_log = static_cast<unsigned>(std::bit_width(q)) - 1;
  switch (convention) {
    case BucketConvention::floor:
      return floor_log;
    case BucketConvention::ceiling:
      return is_power_of_two(q) ? floor_log : floor_log + 1;
    case BucketConvention::nearest: {
      // round(log2 q) = floor_log + 1 iff q >= 2^(floor_log + 1/2) iff
      // q^2 >= 2^(2 floor_log + 1); equality is impossible for integers.
      const u128 sq = static_cast<u128>(q) * q;
      const u128 pivot = static_cast<u128>(1) << (2 * floor_log + 1);
      return sq >= pivot ? floor_log + 1 : floor_log;
    }
  }
  return floor_log;
}

void
CatalogFilter::validate() const
{
  if (!is_power_of_two(ring_dim) || ring_dim < 2) {
    throw std::invalid_argument("catalog ring dimension must be a power of two >= 2");
  }
  if (w == 0 || w > 62) {
    throw std::invalid_argument("catalog word size must be in [1, 62]");
  }
  if (2 * ring_dim >= (1ULL << w)) {
    throw std::invalid_argument("2N must be below 2^w");
  }
  if (p_r_max < 0) {
    throw std::invalid_argument("p_r_max must be non-negative");
  }
}

ModuliCatalog::ModuliCatalog(CatalogFilter filter, std::vector<PrimeRecord> records)
  : filter_(std::move(filter))
  , records_(std::move(records))
{
  std::sort(records_.begin(), records_.end(),
            [](const PrimeRecord& a, const PrimeRecord& b) { return a.q < b.q; });
  const auto dup = std::adjacent_find(
    records_.begin(), records_.end(),
    [](const PrimeRecord& a, const PrimeRecord& b) { return a.q == b.q; });
  if (dup != records_.end()) {
    throw std::invalid_argument("duplicate modulus " + std::to_string(dup->q));
  }
}

bool
ModuliCatalog::contains(std::uint64_t q) const
{
  const auto it = std::lower_bound(
    records_.begin(), records_.end(), q,
    [](const PrimeRecord& rec, std::uint64_t value) { return rec.q < value; });
  return it != records_.end() && it->q == q;
}

ModuliCatalog
enumerate_supported(const CatalogFilter& filter, unsigned threads)
{
  filter.validate();

  const std::uint64_t step = 2 * filter.ring_dim;
  const std::uint64_t upper = 1ULL << filter.w; // exclusive
  // first k with k*step + 1 > q_min_exclusive, k >= 1
  std::uint64_t k_first = filter.q_min_exclusive / step + 1;
  while (k_first > 1 && (k_first - 1) * step + 1 > filter.q_min_exclusive) {
    --k_first;
  }
  const std::uint64_t k_last = (upper - 2) / step; // largest k with k*step + 1 < 2^w

  std::vector<PrimeRecord> records;
  if (k_first <= k_last) {
    const std::uint64_t count = k_last - k_first + 1;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                          std::min<std::uint64_t>(count, 64))));
    std::vector<std::vector<PrimeRecord>> parts(threads);
    auto work = [&](unsigned part) {
      const std::uint64_t begin = k_first + count * part / threads;
      const std::uint64_t end = k_first + count * (part + 1) / threads;
      for (std::uint64_t k = begin; k < end; ++k) {
        PrimeRecord rec;
        if (passes_filter(k * step + 1, filter, rec)) {
          parts[part].push_back(std::move(rec));
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned p = 0; p < threads; ++p) {
        pool.emplace_back(work, p);
      }
    }
    for (auto& part : parts) {
      std::move(part.begin(), part.end(), std::back_inserter(records));
    }
  }
  return ModuliCatalog(filter, std::move(records));
}

Histogram
histogram(const ModuliCatalog& catalog, BucketConvention convention)
{
  Histogram h;
  for (const auto& rec : catalog.records()) {
    ++h[log2_bucket(rec.q, convention)];
  }
  return h;
}

Histogram
histogram(const ModuliCatalog& catalog)
{
  return histogram(catalog, catalog.filter().buckets);
}

} // namespace mrpgen
