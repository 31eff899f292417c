#pragma once
#include "mrpgen/numeric.hpp"

#include <cstdint>
#include <map>
#include <vector>

// Supported-moduli catalog: NTT-friendly primes below 2^w, filtered by the
// Hamming weight of their non-adjacent form and by the per-word rejection
// probability of the sampler.
namespace mrpgen {

// Canonical non-adjacent form, least significant digit first.
std::vector<int> naf(std::uint64_t n);
unsigned hw_naf(std::uint64_t n);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

bool is_power_of_two(std::uint64_t n);

// q prime and q mod 2N == 1.
bool is_ntt_friendly(std::uint64_t q, std::uint64_t ring_dim);

// (2^w mod q) / 2^w, exact. Requires 1 < q < 2^w and w <= 63.
Rational sample_rejection_prob(std::uint64_t q, unsigned w);

// How a modulus is assigned to a size column. `nearest` (round(log2 q)) is
// the convention under which the published histograms are reproduced;
// `ceiling` and `floor` are kept for comparison reports.
enum class BucketConvention
{
  nearest,
  ceiling,
  floor,
};

const char* to_string(BucketConvention convention);
BucketConvention parse_bucket_convention(std::string_view name);

unsigned log2_bucket(std::uint64_t q, BucketConvention convention);

struct PrimeRecord
{
  std::uint64_t q = 0;
  unsigned bucket = 0;
  unsigned hw_naf = 0;
  Rational p_r;
};

struct CatalogFilter
{
  std::uint64_t ring_dim = 1ULL << 16;
  unsigned w = 32;
  unsigned hw_naf_max = 5;
  Rational p_r_max = Rational(1, 2);
  std::uint64_t q_min_exclusive = 1ULL << 19;
  BucketConvention buckets = BucketConvention::nearest;

  // Throws std::invalid_argument describing the violated constraint.
  void validate() const;

  friend bool operator==(const CatalogFilter&, const CatalogFilter&) = default;
};

class ModuliCatalog
{
public:
  ModuliCatalog(CatalogFilter filter, std::vector<PrimeRecord> records);

  const CatalogFilter& filter() const { return filter_; }
  const std::vector<PrimeRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  bool contains(std::uint64_t q) const;

private:
  CatalogFilter filter_;
  std::vector<PrimeRecord> records_;
};

// Scans the candidates k*2N + 1 in (q_min_exclusive, 2^w). `threads` > 1
// splits the k range; the result is independent of the thread count.
ModuliCatalog enumerate_supported(const CatalogFilter& filter, unsigned threads = 1);

using Histogram = std::map<unsigned, std::size_t>;

Histogram histogram(const ModuliCatalog& catalog);
Histogram histogram(const ModuliCatalog& catalog, BucketConvention convention);

} // namespace mrpgen
