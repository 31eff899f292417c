#pragma once
#include "mrpgen/sampling.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

// Binary interchange format for generated polynomials. All integers are
// 4-byte little-endian:
//
//   "MRPB" | version (1) | N | w | L | base[L] | layout kind
//   | (layout kind 2 only) mapping[N] | L limbs of N coefficients, base order
//
// Layout kind: 0 identity, 1 reverse, 2 inline index vector.
namespace mrpgen {

inline constexpr std::uint32_t kMrpFormatVersion = 1;

class MrpFormatError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct MrpFile
{
  std::uint32_t ring_dim = 0;
  unsigned w = 32;
  Permutation layout;
  MultiResiduePolynomial mrp;
};

std::vector<std::uint8_t> encode_mrp(const MrpFile& file);
MrpFile decode_mrp(std::span<const std::uint8_t> bytes);

void write_mrp_file(const std::filesystem::path& path, const MrpFile& file);
MrpFile read_mrp_file(const std::filesystem::path& path);

} // namespace mrpgen
