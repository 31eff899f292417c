#include "mrpgen/mrp_io.hpp"

#include <fstream>
#include <iterator>

namespace mrpgen {

namespace {

constexpr std::uint8_t kMagic[4] = { 'M', 'R', 'P', 'B' };

void
put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

class Reader
{
public:
  explicit Reader(std::span<const std::uint8_t> bytes)
    : bytes_(bytes)
  {}

  std::uint32_t u32(const char* what)
  {
    if (bytes_.size() - pos_ < 4) {
      throw MrpFormatError(std::string("truncated MRP file while reading ") + what);
    }
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

} // namespace

std::vector<std::uint8_t>
encode_mrp(const MrpFile& file)
{
  const auto& base = file.mrp.base();
  if (file.layout.size() != file.ring_dim) {
    throw std::invalid_argument("layout length does not match N");
  }
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, kMrpFormatVersion);
  put_u32(out, file.ring_dim);
  put_u32(out, file.w);
  put_u32(out, static_cast<std::uint32_t>(base.size()));
  for (const auto q : base) {
    put_u32(out, q);
  }
  switch (file.layout.kind()) {
    case Permutation::Kind::identity:
      put_u32(out, 0);
      break;
    case Permutation::Kind::reverse:
      put_u32(out, 1);
      break;
    case Permutation::Kind::custom:
      put_u32(out, 2);
      for (const auto idx : file.layout.mapping()) {
        put_u32(out, idx);
      }
      break;
  }
  for (const auto& limb : file.mrp.limbs()) {
    if (limb.coeffs.size() != file.ring_dim) {
      throw std::invalid_argument("limb length does not match N");
    }
    for (const auto c : limb.coeffs) {
      put_u32(out, c);
    }
  }
  return out;
}

MrpFile
decode_mrp(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw MrpFormatError("not an MRP file (bad magic)");
  }
  Reader in(bytes.subspan(4));
  const auto version = in.u32("version");
  if (version != kMrpFormatVersion) {
    throw MrpFormatError("unsupported MRP format version " + std::to_string(version));
  }
  MrpFile file;
  file.ring_dim = in.u32("N");
  file.w = in.u32("w");
  const auto count = in.u32("base size");
  if (file.ring_dim == 0 || static_cast<std::uint64_t>(count) * 4 > in.remaining()) {
    throw MrpFormatError("implausible MRP header");
  }
  std::vector<std::uint32_t> base(count);
  for (auto& q : base) {
    q = in.u32("base");
  }
  switch (in.u32("layout kind")) {
    case 0:
      file.layout = Permutation::identity(file.ring_dim);
      break;
    case 1:
      file.layout = Permutation::reverse(file.ring_dim);
      break;
    case 2: {
      if (static_cast<std::uint64_t>(file.ring_dim) * 4 > in.remaining()) {
        throw MrpFormatError("truncated MRP file while reading layout");
      }
      std::vector<std::uint32_t> mapping(file.ring_dim);
      for (auto& idx : mapping) {
        idx = in.u32("layout");
      }
      try {
        file.layout = Permutation::from_mapping(std::move(mapping));
      } catch (const std::invalid_argument& e) {
        throw MrpFormatError(e.what());
      }
      break;
    }
    default:
      throw MrpFormatError("unknown layout kind");
  }
  if (in.remaining() != static_cast<std::uint64_t>(count) * file.ring_dim * 4) {
    throw MrpFormatError("MRP payload size does not match header");
  }
  std::vector<Limb> limbs;
  limbs.reserve(count);
  for (const auto q : base) {
    Limb limb{ q, std::vector<std::uint32_t>(file.ring_dim) };
    for (auto& c : limb.coeffs) {
      c = in.u32("coefficient");
    }
    limbs.push_back(std::move(limb));
  }
  file.mrp = MultiResiduePolynomial(std::move(base), std::move(limbs));
  return file;
}

void
write_mrp_file(const std::filesystem::path& path, const MrpFile& file)
{
  const auto bytes = encode_mrp(file);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

MrpFile
read_mrp_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MrpFormatError("cannot read '" + path.string() + "'");
  }
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_mrp(bytes);
}

} // namespace mrpgen
