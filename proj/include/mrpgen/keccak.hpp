#pragma once
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace mrpgen::keccak {

// Rate of the Keccak[256] sponge used by SHAKE128 and KangarooTwelve, in bytes.
inline constexpr std::size_t kRate128 = 168;

using State = std::array<std::uint64_t, 25>;

// Keccak-p[1600, rounds]: applies the last `rounds` rounds of Keccak-f[1600].
// rounds = 24 is the full permutation, 12 is the KangarooTwelve variant.
void permute(State& state, unsigned rounds = 24);

// One-shot sponge over the 168-byte rate: absorbs `input`, appends the domain
// suffix byte and the final 0x80 bit, then squeezes `out.size()` bytes.
void sponge168(std::span<const std::uint8_t> input,
               std::uint8_t suffix,
               unsigned rounds,
               std::span<std::uint8_t> out);

} // namespace mrpgen::keccak
