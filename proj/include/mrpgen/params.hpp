#pragma once
#include "mrpgen/cost_model.hpp"
#include "mrpgen/prime_catalog.hpp"
#include "mrpgen/sampling.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

// Key-value parameter files:
//
//   # comment
//   N = 256
//   len = 32
//   n_seg = 8            (optional, defaults to N / len)
//   base = 7681, 12289
//   layout = identity    (or reverse, or file:<path of whitespace-separated indices>)
//   backend = shake128
//
//   [catalog]            (optional)
//   n_log2 = 16
//   ...
//   [cost]               (optional)
//   R = 16384
//   ...
namespace mrpgen {

class ParamsError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ParamsFile
{
  GenParams gen;
  std::string layout_spec = "identity";
  std::optional<CatalogFilter> catalog;
  std::optional<CostParams> cost;
};

// Parses and validates. Relative layout files resolve against `base_dir`.
// Throws ParamsError naming the offending key or violated invariant.
ParamsFile parse_params(std::string_view text, const std::filesystem::path& base_dir = {});
ParamsFile load_params_file(const std::filesystem::path& path);
GenParams load_params(const std::filesystem::path& path);

std::string serialize_params(const ParamsFile& params);

} // namespace mrpgen
