#pragma once
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Domain-separated XOF expansion shared by the client and server paths.
//
// Every pseudorandom block is a pure function of (seed, q, id_seg): the input
// is the 42-byte string seed(36) || q(4, LE) || id_seg(2, LE), and exactly one
// 1344-bit block (one sponge rate, no further squeezing) is taken from it.
namespace mrpgen {

inline constexpr std::size_t kSeedBytes = 36;
inline constexpr std::size_t kCommonSeedBytes = 32;
inline constexpr std::size_t kDomainInputBytes = kSeedBytes + 4 + 2;
inline constexpr std::size_t kXofBlockBits = 1344;
inline constexpr std::size_t kXofBlockBytes = kXofBlockBits / 8;
inline constexpr std::size_t kMaxXofInputBytes = 64;

enum class XofBackend
{
  shake128,
  kangaroo_twelve,
};

std::string_view to_string(XofBackend backend);
XofBackend parse_backend(std::string_view name);

// 288-bit seed. Canonical text form is 72 lowercase hex characters.
class Seed
{
public:
  using Bytes = std::array<std::uint8_t, kSeedBytes>;

  Seed() = default;
  explicit Seed(const Bytes& bytes)
    : bytes_(bytes)
  {}

  static Seed from_hex(std::string_view hex);
  std::string to_hex() const;

  const Bytes& bytes() const { return bytes_; }

  friend bool operator==(const Seed&, const Seed&) = default;

private:
  Bytes bytes_{};
};

using DomainInput = std::array<std::uint8_t, kDomainInputBytes>;
using XofBlock = std::array<std::uint8_t, kXofBlockBytes>;

DomainInput
encode_domain_input(const Seed& seed, std::uint32_t q, std::uint16_t id_seg);

// First 1344 bits of the backend's extendable output. Inputs longer than
// kMaxXofInputBytes are rejected with std::invalid_argument.
XofBlock
xof_expand(std::span<const std::uint8_t> input,
           XofBackend backend = XofBackend::shake128);

// t = floor(r / w). Throws std::invalid_argument unless r is a positive
// multiple of w and w is one of 8, 16, 32.
std::size_t
words_per_block(unsigned w, std::size_t r_bits = kXofBlockBits);

// Word i is bytes [i*w/8, (i+1)*w/8) of the block, little-endian.
std::vector<std::uint32_t>
split_words(const XofBlock& block, unsigned w);

// common(32 bytes) || poly_id(4 bytes, LE)
Seed
derive_polynomial_seed(std::span<const std::uint8_t, kCommonSeedBytes> common,
                       std::uint32_t poly_id);

std::array<std::uint8_t, kCommonSeedBytes>
common_seed_from_hex(std::string_view hex);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

} // namespace mrpgen
