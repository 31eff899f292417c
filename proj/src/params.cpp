#include "mrpgen/params.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace mrpgen {

namespace {

std::string_view
trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template<typename T>
T
parse_uint(std::string_view key, std::string_view v)
{
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ParamsError("invalid value for '" + std::string(key) + "': '" +
                      std::string(v) + "'");
  }
  return out;
}

double
parse_double(std::string_view key, std::string_view v)
{
  const std::string s(v);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw ParamsError("invalid value for '" + std::string(key) + "': '" + s + "'");
  }
  return out;
}

std::vector<std::uint32_t>
parse_base(std::string_view v)
{
  std::vector<std::uint32_t> base;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) {
      throw ParamsError("empty entry in 'base'");
    }
    base.push_back(parse_uint<std::uint32_t>("base", item));
    v = comma == std::string_view::npos ? std::string_view{} : v.substr(comma + 1);
  }
  return base;
}

Permutation
load_layout(const std::string& spec, std::uint32_t ring_dim, const std::filesystem::path& base_dir)
{
  if (spec == "identity") {
    return Permutation::identity(ring_dim);
  }
  if (spec == "reverse") {
    return Permutation::reverse(ring_dim);
  }
  if (spec.rfind("file:", 0) == 0) {
    std::filesystem::path path = spec.substr(5);
    if (path.is_relative()) {
      path = base_dir / path;
    }
    std::ifstream in(path);
    if (!in) {
      throw ParamsError("cannot open layout file '" + path.string() + "'");
    }
    std::vector<std::uint32_t> mapping;
    std::uint64_t idx = 0;
    while (in >> idx) {
      mapping.push_back(static_cast<std::uint32_t>(idx));
    }
    if (!in.eof()) {
      throw ParamsError("layout file '" + path.string() + "' contains a non-index token");
    }
    try {
      return Permutation::from_mapping(std::move(mapping));
    } catch (const std::invalid_argument& e) {
      throw ParamsError(std::string("layout: ") + e.what());
    }
  }
  throw ParamsError("layout must be 'identity', 'reverse' or 'file:<path>', got '" +
                    spec + "'");
}

std::string
format_double(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string
format_rational(const Rational& r)
{
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

using Section = std::map<std::string, std::string, std::less<>>;

std::string
take(Section& s, std::string_view key)
{
  auto it = s.find(key);
  if (it == s.end()) {
    return {};
  }
  std::string v = it->second;
  s.erase(it);
  return v;
}

void
reject_leftovers(const Section& s, std::string_view section)
{
  if (!s.empty()) {
    throw ParamsError("unknown key '" + s.begin()->first + "' in section [" +
                      std::string(section) + "]");
  }
}

} // namespace

ParamsFile
parse_params(std::string_view text, const std::filesystem::path& base_dir)
{
  std::map<std::string, Section, std::less<>> sections;
  std::string current = "gen";
  sections[current];

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParamsError("line " + std::to_string(line_no) + ": malformed section header");
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current != "catalog" && current != "cost") {
        throw ParamsError("unknown section [" + current + "]");
      }
      if (sections.contains(current)) {
        throw ParamsError("duplicate section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParamsError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ParamsError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!sections[current].emplace(key, value).second) {
      throw ParamsError("duplicate key '" + key + "'");
    }
  }

  ParamsFile out;
  GenParams& g = out.gen;
  Section gen = sections["gen"];

  if (auto v = take(gen, "N"); !v.empty()) {
    g.ring_dim = parse_uint<std::uint32_t>("N", v);
  }
  if (auto v = take(gen, "w"); !v.empty()) {
    g.w = parse_uint<unsigned>("w", v);
  }
  if (auto v = take(gen, "r"); !v.empty()) {
    g.r = parse_uint<unsigned>("r", v);
  }
  if (auto v = take(gen, "len"); !v.empty()) {
    g.len = parse_uint<std::uint32_t>("len", v);
  }
  if (auto v = take(gen, "n_seg"); !v.empty()) {
    g.n_seg = parse_uint<std::uint32_t>("n_seg", v);
  } else {
    g.n_seg = g.len == 0 ? 0 : g.ring_dim / g.len;
  }
  const auto base = take(gen, "base");
  if (base.empty()) {
    throw ParamsError("missing required key 'base'");
  }
  g.base = parse_base(base);
  if (auto v = take(gen, "layout"); !v.empty()) {
    out.layout_spec = v;
  }
  if (auto v = take(gen, "backend"); !v.empty()) {
    try {
      g.backend = parse_backend(v);
    } catch (const std::invalid_argument& e) {
      throw ParamsError(e.what());
    }
  }
  reject_leftovers(gen, "gen");

  g.layout = load_layout(out.layout_spec, g.ring_dim, base_dir);
  try {
    g.validate();
  } catch (const ParamsError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParamsError(e.what());
  }

  if (sections.contains("catalog")) {
    Section s = sections["catalog"];
    CatalogFilter f;
    if (auto v = take(s, "n_log2"); !v.empty()) {
      const auto n_log2 = parse_uint<unsigned>("n_log2", v);
      if (n_log2 > 40) {
        throw ParamsError("n_log2 too large");
      }
      f.ring_dim = 1ULL << n_log2;
    }
    if (auto v = take(s, "w"); !v.empty()) {
      f.w = parse_uint<unsigned>("w", v);
    }
    if (auto v = take(s, "hw_naf_max"); !v.empty()) {
      f.hw_naf_max = parse_uint<unsigned>("hw_naf_max", v);
    }
    if (auto v = take(s, "p_r_max"); !v.empty()) {
      try {
        f.p_r_max = parse_decimal(v);
      } catch (const std::invalid_argument& e) {
        throw ParamsError(std::string("p_r_max: ") + e.what());
      }
    }
    if (auto v = take(s, "q_min_exclusive"); !v.empty()) {
      f.q_min_exclusive = parse_uint<std::uint64_t>("q_min_exclusive", v);
    }
    if (auto v = take(s, "buckets"); !v.empty()) {
      try {
        f.buckets = parse_bucket_convention(v);
      } catch (const std::invalid_argument& e) {
        throw ParamsError(e.what());
      }
    }
    reject_leftovers(s, "catalog");
    try {
      f.validate();
    } catch (const std::invalid_argument& e) {
      throw ParamsError(e.what());
    }
    out.catalog = f;
  }

  if (sections.contains("cost")) {
    Section s = sections["cost"];
    CostParams c;
    const std::pair<const char*, double*> fields[] = {
      { "R", &c.lanes },
      { "w", &c.word_bits },
      { "f_hz", &c.clock_hz },
      { "gamma", &c.occupancy },
      { "d_mm", &c.die_side_mm },
      { "E_j_per_bit_mm", &c.wire_energy_j_per_bit_mm },
      { "local_hop_mm", &c.local_hop_mm },
    };
    for (const auto& [key, dst] : fields) {
      if (auto v = take(s, key); !v.empty()) {
        *dst = parse_double(key, v);
      }
    }
    reject_leftovers(s, "cost");
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw ParamsError(e.what());
    }
    out.cost = c;
  }
  return out;
}

ParamsFile
load_params_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParamsError("cannot open params file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str(), path.parent_path());
}

GenParams
load_params(const std::filesystem::path& path)
{
  return load_params_file(path).gen;
}

std::string
serialize_params(const ParamsFile& p)
{
  std::ostringstream os;
  const GenParams& g = p.gen;
  os << "N = " << g.ring_dim << '\n'
     << "w = " << g.w << '\n'
     << "r = " << g.r << '\n'
     << "len = " << g.len << '\n'
     << "n_seg = " << g.n_seg << '\n'
     << "base = ";
  for (std::size_t i = 0; i < g.base.size(); ++i) {
    os << (i ? ", " : "") << g.base[i];
  }
  os << '\n'
     << "layout = " << p.layout_spec << '\n'
     << "backend = " << to_string(g.backend) << '\n';

  if (p.catalog) {
    const auto& f = *p.catalog;
    os << "\n[catalog]\n"
       << "n_log2 = " << (std::bit_width(f.ring_dim) - 1) << '\n'
       << "w = " << f.w << '\n'
       << "hw_naf_max = " << f.hw_naf_max << '\n'
       << "p_r_max = " << format_rational(f.p_r_max) << '\n'
       << "q_min_exclusive = " << f.q_min_exclusive << '\n'
       << "buckets = " << to_string(f.buckets) << '\n';
  }
  if (p.cost) {
    const auto& c = *p.cost;
    os << "\n[cost]\n"
       << "R = " << format_double(c.lanes) << '\n'
       << "w = " << format_double(c.word_bits) << '\n'
       << "f_hz = " << format_double(c.clock_hz) << '\n'
       << "gamma = " << format_double(c.occupancy) << '\n'
       << "d_mm = " << format_double(c.die_side_mm) << '\n'
       << "E_j_per_bit_mm = " << format_double(c.wire_energy_j_per_bit_mm) << '\n'
       << "local_hop_mm = " << format_double(c.local_hop_mm) << '\n';
  }
  return os.str();
}

} // namespace mrpgen
