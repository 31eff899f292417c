#pragma once
#include "mrpgen/xof.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mrpgen {

// Coefficient layout applied to each limb after segment concatenation:
// output[i] = coeffs[mapping[i]].
class Permutation
{
public:
  enum class Kind
  {
    identity,
    reverse,
    custom,
  };

  Permutation() = default;

  static Permutation identity(std::size_t n);
  static Permutation reverse(std::size_t n);
  // Throws std::invalid_argument unless `mapping` is a bijection on [0, n).
  static Permutation from_mapping(std::vector<std::uint32_t> mapping);

  Kind kind() const { return kind_; }
  std::size_t size() const { return mapping_.size(); }
  const std::vector<std::uint32_t>& mapping() const { return mapping_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  Permutation(Kind kind, std::vector<std::uint32_t> mapping)
    : kind_(kind)
    , mapping_(std::move(mapping))
  {}

  Kind kind_ = Kind::identity;
  std::vector<std::uint32_t> mapping_;
};

std::vector<std::uint32_t>
permute(std::span<const std::uint32_t> coeffs, const Permutation& p);

struct GenParams
{
  std::uint32_t ring_dim = 1U << 16;
  unsigned w = 32;
  unsigned r = static_cast<unsigned>(kXofBlockBits);
  std::uint32_t len = 32;
  std::uint32_t n_seg = (1U << 16) / 32;
  std::vector<std::uint32_t> base;
  Permutation layout = Permutation::identity(1U << 16);
  XofBackend backend = XofBackend::shake128;

  // N = 2^16, w = 32, r = 1344, len = 32, identity layout.
  static GenParams default_profile(std::vector<std::uint32_t> base = {});
  // Desk-scale profile with the same word and block sizes.
  static GenParams small_profile(std::uint32_t ring_dim,
                                 std::uint32_t len,
                                 std::vector<std::uint32_t> base);

  std::size_t words_per_block() const;

  // Enforces every generation precondition; throws std::invalid_argument
  // naming the violated invariant (and the offending modulus, if any).
  void validate() const;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

struct Segment
{
  std::uint32_t q = 0;
  std::vector<std::uint32_t> values;

  bool complete(std::size_t len) const { return values.size() >= len; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Limb
{
  std::uint32_t q = 0;
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const Limb&, const Limb&) = default;
};

class MultiResiduePolynomial
{
public:
  MultiResiduePolynomial() = default;
  MultiResiduePolynomial(std::vector<std::uint32_t> base, std::vector<Limb> limbs);

  const std::vector<std::uint32_t>& base() const { return base_; }
  const std::vector<Limb>& limbs() const { return limbs_; }
  // Throws std::out_of_range if q is not in the base.
  const Limb& limb(std::uint32_t q) const;

  friend bool operator==(const MultiResiduePolynomial&,
                         const MultiResiduePolynomial&) = default;

private:
  std::vector<std::uint32_t> base_;
  std::vector<Limb> limbs_;
};

// First segment that came up short.
struct GenerationFailure
{
  std::uint32_t q = 0;
  std::uint32_t id_seg = 0;
  std::size_t accepted = 0;
  std::size_t required = 0;

  std::string describe() const;
  friend bool operator==(const GenerationFailure&, const GenerationFailure&) = default;
};

template<typename T, typename E = GenerationFailure>
class Outcome
{
public:
  Outcome(T value)
    : v_(std::move(value))
  {}
  Outcome(E error)
    : v_(std::move(error))
  {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(v_); }
  T&& value() && { return std::get<0>(std::move(v_)); }
  const E& error() const { return std::get<1>(v_); }

private:
  std::variant<T, E> v_;
};

// floor(2^w / q) * q. Requires 1 < q < 2^w, w <= 63.
std::uint64_t compute_threshold(std::uint64_t q, unsigned w);

// One XOF block, split into t words, scanned in index order; word s is kept
// iff s < compute_threshold(q, w), until `len` words are kept. A returned
// segment with fewer than `len` values is a failure the caller must handle.
// Kept values are not reduced mod q.
Segment gen_seg(std::span<const std::uint8_t> input,
                std::uint32_t q,
                std::size_t len,
                unsigned w,
                XofBackend backend = XofBackend::shake128);

Segment generate_segment(const Seed& seed,
                         std::uint32_t q,
                         std::uint16_t id_seg,
                         const GenParams& params);

Outcome<Limb> generate_limb(const Seed& seed, std::uint32_t q, const GenParams& params);

Outcome<MultiResiduePolynomial> generate_mrp(const Seed& seed, const GenParams& params);

std::vector<std::uint32_t> reduce_coeffs(const Limb& limb);

using SeedSource = std::function<Seed()>;

// Seeds drawn from std::mt19937_64: each seed is five consecutive 64-bit
// outputs, little-endian, truncated to 36 bytes.
class Mt19937SeedSource
{
public:
  explicit Mt19937SeedSource(std::uint64_t rng_seed)
    : engine_(rng_seed)
  {}

  Seed operator()();

private:
  std::mt19937_64 engine_;
};

struct RetryResult
{
  Seed seed;
  MultiResiduePolynomial mrp;
  std::size_t attempts = 0;
};

struct RetryExhausted
{
  std::size_t attempts = 0;
  GenerationFailure last_failure;
};

Outcome<RetryResult, RetryExhausted>
client_generate_with_retry(const SeedSource& seed_source,
                           const GenParams& params,
                           std::size_t max_attempts);

struct EquivalenceReport
{
  bool identical = false;
  std::size_t engine_count = 0;
  std::size_t work_items = 0;
  std::size_t mismatched_limbs = 0;
  std::vector<std::size_t> items_per_engine;
};

// Simulates `engine_count` independent generators: the (q, id_seg) work items
// are shuffled with `schedule_seed` and drained concurrently, each engine
// seeing only (seed, q, id_seg) and the profile constants. The assembled
// polynomial is compared against serial generate_mrp.
EquivalenceReport verify_distributed_equivalence(const Seed& seed,
                                                 const GenParams& params,
                                                 std::size_t engine_count,
                                                 std::uint64_t schedule_seed = 0);

} // namespace mrpgen
