#include "mrpgen/keccak.hpp"

#include <algorithm>
#include <bit>

namespace mrpgen::keccak {

namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants = {
  0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
  0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
  0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
  0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
  0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
  0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
  0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
  0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho offsets and pi lane order, walking the (x, y) -> (y, 2x + 3y) cycle
constexpr std::array<int, 24> kRho = { 1,  3,  6,  10, 15, 21, 28, 36,
                                       45, 55, 2,  14, 27, 41, 56, 8,
                                       25, 43, 62, 18, 39, 61, 20, 44 };
constexpr std::array<int, 24> kPi = { 10, 7,  11, 17, 18, 3, 5,  16,
                                      8,  21, 24, 4,  15, 23, 19, 13,
                                      12, 2,  20, 14, 22, 9, 6,  1 };

inline std::uint64_t
load_le64(const std::uint8_t* p)
{
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | p[i];
  }
  return v;
}

inline void
store_le64(std::uint64_t v, std::uint8_t* p)
{
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

void
xor_block(State& state, const std::uint8_t* block)
{
  for (std::size_t i = 0; i < kRate128 / 8; ++i) {
    state[i] ^= load_le64(block + 8 * i);
  }
}

} // namespace

void
permute(State& a, unsigned rounds)
{
  for (unsigned round = 24 - rounds; round < 24; ++round) {
    std::array<std::uint64_t, 5> c{};
    for (int x = 0; x < 5; ++x) {
      c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    }
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) {
        a[y + x] ^= d;
      }
    }

    std::uint64_t carry = a[1];
    for (int i = 0; i < 24; ++i) {
      const int j = kPi[i];
      const std::uint64_t tmp = a[j];
      a[j] = std::rotl(carry, kRho[i]);
      carry = tmp;
    }

    for (int y = 0; y < 25; y += 5) {
      std::array<std::uint64_t, 5> row{};
      std::copy_n(a.begin() + y, 5, row.begin());
      for (int x = 0; x < 5; ++x) {
        a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
      }
    }

    a[0] ^= kRoundConstants[round];
  }
}

void
sponge168(std::span<const std::uint8_t> input,
          std::uint8_t suffix,
          unsigned rounds,
          std::span<std::uint8_t> out)
{
  State state{};

  while (input.size() >= kRate128) {
    xor_block(state, input.data());
    permute(state, rounds);
    input = input.subspan(kRate128);
  }

  std::array<std::uint8_t, kRate128> last{};
  std::copy(input.begin(), input.end(), last.begin());
  last[input.size()] ^= suffix;
  last[kRate128 - 1] ^= 0x80;
  xor_block(state, last.data());
  permute(state, rounds);

  std::array<std::uint8_t, kRate128> block{};
  while (!out.empty()) {
    for (std::size_t i = 0; i < kRate128 / 8; ++i) {
      store_le64(state[i], block.data() + 8 * i);
    }
    const std::size_t n = std::min(out.size(), kRate128);
    std::copy_n(block.begin(), n, out.begin());
    out = out.subspan(n);
    if (!out.empty()) {
      permute(state, rounds);
    }
  }
}

} // namespace mrpgen::keccak
