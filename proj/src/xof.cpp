#include "mrpgen/xof.hpp"

#include "mrpgen/keccak.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrpgen {

namespace {

constexpr std::uint8_t kShakeSuffix = 0x1F;
constexpr std::uint8_t kTurboShakeK12Suffix = 0x07;

int
hex_value(char c)
{
  if (c >= '0' && c <= '9') {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f') {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F') {
    return c - 'A' + 10;
  }
  return -1;
}

} // namespace

std::string_view
to_string(XofBackend backend)
{
  switch (backend) {
    case XofBackend::shake128:
      return "shake128";
    case XofBackend::kangaroo_twelve:
      return "k12";
  }
  return "unknown";
}

XofBackend
parse_backend(std::string_view name)
{
  if (name == "shake128") {
    return XofBackend::shake128;
  }
  if (name == "k12" || name == "kangarootwelve") {
    return XofBackend::kangaroo_twelve;
  }
  throw std::invalid_argument("unknown XOF backend '" + std::string(name) + "'");
}

std::string
to_hex(std::span<const std::uint8_t> bytes)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t>
from_hex(std::string_view hex)
{
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("hex string has odd length");
  }
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw std::invalid_argument("invalid hex digit in '" + std::string(hex) + "'");
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

Seed
Seed::from_hex(std::string_view hex)
{
  if (hex.size() != 2 * kSeedBytes) {
    throw std::invalid_argument("seed must be exactly 72 hex characters, got " +
                                std::to_string(hex.size()));
  }
  const auto raw = mrpgen::from_hex(hex);
  Bytes bytes{};
  std::copy(raw.begin(), raw.end(), bytes.begin());
  return Seed(bytes);
}

std::string
Seed::to_hex() const
{
  return mrpgen::to_hex(bytes_);
}

DomainInput
encode_domain_input(const Seed& seed, std::uint32_t q, std::uint16_t id_seg)
{
  DomainInput out{};
  std::copy(seed.bytes().begin(), seed.bytes().end(), out.begin());
  for (int i = 0; i < 4; ++i) {
    out[kSeedBytes + i] = static_cast<std::uint8_t>(q >> (8 * i));
  }
  out[kSeedBytes + 4] = static_cast<std::uint8_t>(id_seg);
  out[kSeedBytes + 5] = static_cast<std::uint8_t>(id_seg >> 8);
  return out;
}

XofBlock
xof_expand(std::span<const std::uint8_t> input, XofBackend backend)
{
  if (input.size() > kMaxXofInputBytes) {
    throw std::invalid_argument("XOF input exceeds " +
                                std::to_string(kMaxXofInputBytes) + " bytes");
  }

  XofBlock block{};
  switch (backend) {
    case XofBackend::shake128:
      keccak::sponge168(input, kShakeSuffix, 24, block);
      break;
    case XofBackend::kangaroo_twelve: {
      // Single-node KangarooTwelve with empty customization string:
      // TurboSHAKE128(M || length_encode(0), 0x07), length_encode(0) = 0x00.
      std::array<std::uint8_t, kMaxXofInputBytes + 1> msg{};
      std::copy(input.begin(), input.end(), msg.begin());
      msg[input.size()] = 0x00;
      keccak::sponge168(std::span(msg.data(), input.size() + 1),
                        kTurboShakeK12Suffix, 12, block);
      break;
    }
  }
  return block;
}

std::size_t
words_per_block(unsigned w, std::size_t r_bits)
{
  if (w != 8 && w != 16 && w != 32) {
    throw std::invalid_argument("word size must be 8, 16 or 32 bits, got " +
                                std::to_string(w));
  }
  if (r_bits == 0 || r_bits % w != 0) {
    throw std::invalid_argument("XOF output length " + std::to_string(r_bits) +
                                " is not a positive multiple of w = " +
                                std::to_string(w));
  }
  return r_bits / w;
}

std::vector<std::uint32_t>
split_words(const XofBlock& block, unsigned w)
{
  const std::size_t t = words_per_block(w, block.size() * 8);
  const std::size_t bytes_per_word = w / 8;
  std::vector<std::uint32_t> words(t);
  for (std::size_t i = 0; i < t; ++i) {
    std::uint32_t v = 0;
    for (std::size_t b = 0; b < bytes_per_word; ++b) {
      v |= static_cast<std::uint32_t>(block[i * bytes_per_word + b]) << (8 * b);
    }
    words[i] = v;
  }
  return words;
}

Seed
derive_polynomial_seed(std::span<const std::uint8_t, kCommonSeedBytes> common,
                       std::uint32_t poly_id)
{
  Seed::Bytes bytes{};
  std::copy(common.begin(), common.end(), bytes.begin());
  for (int i = 0; i < 4; ++i) {
    bytes[kCommonSeedBytes + i] = static_cast<std::uint8_t>(poly_id >> (8 * i));
  }
  return Seed(bytes);
}

std::array<std::uint8_t, kCommonSeedBytes>
common_seed_from_hex(std::string_view hex)
{
  if (hex.size() != 2 * kCommonSeedBytes) {
    throw std::invalid_argument("common seed part must be exactly 64 hex characters");
  }
  const auto raw = from_hex(hex);
  std::array<std::uint8_t, kCommonSeedBytes> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

} // namespace mrpgen
