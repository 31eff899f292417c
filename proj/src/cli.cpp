#include "mrpgen/cli.hpp"

#include "mrpgen/analytics.hpp"
#include "mrpgen/cost_model.hpp"
#include "mrpgen/keccak.hpp"
#include "mrpgen/mrp_io.hpp"
#include "mrpgen/params.hpp"
#include "mrpgen/prime_catalog.hpp"
#include "mrpgen/sampling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mrpgen::cli {

namespace {

using json = nlohmann::ordered_json;

// Expected outcome the tool reports as a failure (exit 1).
struct DomainError : std::runtime_error
{
  DomainError(std::string c, const std::string& msg, json r = nullptr)
    : std::runtime_error(msg)
    , code(std::move(c))
    , result(std::move(r))
  {}
  std::string code;
  json result;
};

struct Globals
{
  bool canonical = false;
  unsigned threads = 1;
  std::string format = "text";
};

std::string
digest_hex(std::span<const std::uint8_t> bytes)
{
  std::array<std::uint8_t, 16> out{};
  keccak::sponge168(bytes, 0x1F, 24, out);
  return to_hex(out);
}

std::string
coeff_digest(std::span<const std::uint32_t> coeffs)
{
  std::vector<std::uint8_t> bytes;
  bytes.reserve(coeffs.size() * 4);
  for (const auto c : coeffs) {
    for (int i = 0; i < 4; ++i) {
      bytes.push_back(static_cast<std::uint8_t>(c >> (8 * i)));
    }
  }
  return digest_hex(bytes);
}

std::vector<std::uint8_t>
read_file_bytes(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
}

// Digest of everything that determines the report: the non-global arguments
// and the contents of any input files they name.
std::string
input_digest(const std::vector<std::string>& args)
{
  std::vector<std::uint8_t> buf;
  auto append = [&](std::string_view s) {
    buf.insert(buf.end(), s.begin(), s.end());
    buf.push_back(0);
  };
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--canonical") {
      continue;
    }
    if (a == "--threads" || a == "--format") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0 || a.rfind("--format=", 0) == 0) {
      continue;
    }
    append(a);
    if ((a == "--params" || a == "--mrp") && i + 1 < args.size()) {
      const auto bytes = read_file_bytes(args[i + 1]);
      buf.insert(buf.end(), bytes.begin(), bytes.end());
      buf.push_back(0);
    }
  }
  return digest_hex(buf);
}

std::string
utc_now()
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void
flatten(const json& j, const std::string& prefix, std::ostream& out)
{
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array() &&
             std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); })) {
    out << prefix << ":";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? "," : " ") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    }
    out << '\n';
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

class Reporter
{
public:
  Reporter(const Globals& g, std::string command, std::string digest, std::ostream& out)
    : g_(g)
    , command_(std::move(command))
    , digest_(std::move(digest))
    , out_(out)
  {}

  // `text_body`, when given, replaces the flattened payload in text mode.
  void emit(const json& result, const std::string& text_body = {}) const
  {
    json env;
    env["command"] = command_;
    env["schema"] = kReportSchema;
    env["version"] = MRPGEN_VERSION;
    env["input_digest"] = digest_;
    if (!g_.canonical) {
      env["generated_at"] = utc_now();
    }
    if (g_.format == "json") {
      env["result"] = result;
      out_ << env.dump(2) << '\n';
      return;
    }
    flatten(env, "", out_);
    if (text_body.empty()) {
      flatten(result, "", out_);
    } else {
      out_ << text_body;
    }
  }

private:
  const Globals& g_;
  std::string command_;
  std::string digest_;
  std::ostream& out_;
};

std::string
rational_str(const Rational& r)
{
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

std::string
sci(const Real& v)
{
  return format_scientific(v, 12);
}

json
histogram_json(const Histogram& h)
{
  json j = json::object();
  for (const auto& [bucket, count] : h) {
    j[std::to_string(bucket)] = count;
  }
  return j;
}

GenParams
params_or_default(const std::string& path, std::uint32_t q)
{
  if (!path.empty()) {
    return load_params(path);
  }
  return GenParams::default_profile({ q });
}

Seed
parse_seed(const std::string& hex)
{
  return Seed::from_hex(hex);
}

// ---- generation -----------------------------------------------------------

json
failure_json(const GenerationFailure& f)
{
  return json{ { "q", f.q },
               { "id_seg", f.id_seg },
               { "accepted", f.accepted },
               { "required", f.required } };
}

void
cmd_gen_seg(const Reporter& rep,
            const std::string& seed_hex,
            std::uint32_t q,
            std::uint32_t id,
            const std::string& params_path)
{
  const GenParams params = params_or_default(params_path, q);
  if (id >= params.n_seg) {
    throw std::invalid_argument("id_seg " + std::to_string(id) + " must be below n_seg = " +
                                std::to_string(params.n_seg));
  }
  const Seed seed = parse_seed(seed_hex);
  const auto seg = generate_segment(seed, q, static_cast<std::uint16_t>(id), params);
  json r;
  r["seed"] = seed.to_hex();
  r["q"] = q;
  r["id_seg"] = id;
  r["len"] = params.len;
  r["threshold"] = compute_threshold(q, params.w);
  r["accepted"] = seg.values.size();
  r["complete"] = seg.complete(params.len);
  r["values"] = seg.values;
  if (!seg.complete(params.len)) {
    throw DomainError("generation-failure",
                      GenerationFailure{ q, id, seg.values.size(), params.len }.describe(), r);
  }
  rep.emit(r);
}

void
cmd_gen_limb(const Reporter& rep,
             const std::string& seed_hex,
             std::uint32_t q,
             const std::string& params_path,
             const std::string& out_path)
{
  const GenParams params = params_or_default(params_path, q);
  const Seed seed = parse_seed(seed_hex);
  const auto limb = generate_limb(seed, q, params);
  if (!limb) {
    json r;
    r["seed"] = seed.to_hex();
    r["failure"] = failure_json(limb.error());
    throw DomainError("generation-failure", limb.error().describe(), r);
  }
  const auto& coeffs = limb.value().coeffs;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    for (const auto c : coeffs) {
      out << c << '\n';
    }
  }
  json r;
  r["seed"] = seed.to_hex();
  r["q"] = q;
  r["N"] = params.ring_dim;
  r["coeff_digest"] = coeff_digest(coeffs);
  r["head"] = std::vector<std::uint32_t>(coeffs.begin(),
                                         coeffs.begin() + std::min<std::size_t>(8, coeffs.size()));
  rep.emit(r);
}

json
mrp_summary(const Seed& seed, const MultiResiduePolynomial& mrp, std::uint32_t ring_dim)
{
  json r;
  r["seed"] = seed.to_hex();
  r["N"] = ring_dim;
  r["base"] = mrp.base();
  json limbs = json::array();
  for (const auto& l : mrp.limbs()) {
    limbs.push_back(json{ { "q", l.q }, { "coeff_digest", coeff_digest(l.coeffs) } });
  }
  r["limbs"] = limbs;
  return r;
}

void
write_mrp_if_requested(const std::string& out_path,
                       const GenParams& params,
                       const MultiResiduePolynomial& mrp,
                       json& r)
{
  if (out_path.empty()) {
    return;
  }
  const MrpFile file{ params.ring_dim, params.w, params.layout, mrp };
  write_mrp_file(out_path, file);
  r["file_digest"] = digest_hex(encode_mrp(file));
}

void
cmd_gen_mrp(const Reporter& rep,
            const std::string& seed_hex,
            const std::string& params_path,
            const std::string& out_path)
{
  const GenParams params = load_params(params_path);
  const Seed seed = parse_seed(seed_hex);
  auto mrp = generate_mrp(seed, params);
  if (!mrp) {
    json r;
    r["seed"] = seed.to_hex();
    r["failure"] = failure_json(mrp.error());
    throw DomainError("generation-failure", mrp.error().describe(), r);
  }
  json r = mrp_summary(seed, mrp.value(), params.ring_dim);
  write_mrp_if_requested(out_path, params, mrp.value(), r);
  rep.emit(r);
}

void
cmd_retry_gen(const Reporter& rep,
              const std::string& params_path,
              std::size_t max_attempts,
              std::uint64_t rng_seed,
              const std::string& out_path)
{
  const GenParams params = load_params(params_path);
  Mt19937SeedSource source(rng_seed);
  auto res = client_generate_with_retry(std::ref(source), params, max_attempts);
  if (!res) {
    json r;
    r["attempts"] = res.error().attempts;
    r["last_failure"] = failure_json(res.error().last_failure);
    throw DomainError("retry-exhausted",
                      "no valid seed after " + std::to_string(res.error().attempts) +
                        " attempts; last " + res.error().last_failure.describe(),
                      r);
  }
  json r = mrp_summary(res.value().seed, res.value().mrp, params.ring_dim);
  r["attempts"] = res.value().attempts;
  r["rng_seed"] = rng_seed;
  write_mrp_if_requested(out_path, params, res.value().mrp, r);
  rep.emit(r);
}

void
cmd_verify(const Reporter& rep,
           const std::string& mrp_path,
           const std::string& seed_hex,
           const std::string& params_path,
           std::uint32_t len)
{
  const MrpFile file = read_mrp_file(mrp_path);
  GenParams params;
  if (!params_path.empty()) {
    params = load_params(params_path);
  } else {
    params = GenParams::small_profile(file.ring_dim, len, file.mrp.base());
  }
  params.ring_dim = file.ring_dim;
  params.w = file.w;
  params.base = file.mrp.base();
  params.layout = file.layout;
  params.n_seg = params.len == 0 ? 0 : file.ring_dim / params.len;

  const Seed seed = parse_seed(seed_hex);
  auto regenerated = generate_mrp(seed, params);
  json r;
  r["seed"] = seed.to_hex();
  r["N"] = file.ring_dim;
  r["base"] = params.base;
  if (!regenerated) {
    r["match"] = false;
    r["failure"] = failure_json(regenerated.error());
    throw DomainError("verification-mismatch",
                      "seed does not regenerate: " + regenerated.error().describe(), r);
  }
  for (std::size_t li = 0; li < params.base.size(); ++li) {
    const auto& want = regenerated.value().limbs()[li].coeffs;
    const auto& got = file.mrp.limbs()[li].coeffs;
    const auto diff = std::mismatch(want.begin(), want.end(), got.begin());
    if (diff.first != want.end()) {
      const auto index = static_cast<std::size_t>(diff.first - want.begin());
      r["match"] = false;
      r["first_mismatch"] = json{ { "q", params.base[li] }, { "index", index } };
      throw DomainError("verification-mismatch",
                        "q=" + std::to_string(params.base[li]) +
                          " index=" + std::to_string(index),
                        r);
    }
  }
  r["match"] = true;
  rep.emit(r);
}

// ---- catalog --------------------------------------------------------------

void
cmd_enum_primes(const Reporter& rep,
                const Globals& g,
                unsigned n_log2,
                unsigned w,
                unsigned hw_max,
                const std::string& pr_max,
                unsigned qmin_bits,
                const std::string& buckets)
{
  if (n_log2 > 40 || qmin_bits > 63) {
    throw std::invalid_argument("--n and --qmin-bits out of range");
  }
  CatalogFilter f;
  f.ring_dim = 1ULL << n_log2;
  f.w = w;
  f.hw_naf_max = hw_max;
  f.p_r_max = parse_decimal(pr_max);
  f.q_min_exclusive = 1ULL << qmin_bits;
  f.buckets = parse_bucket_convention(buckets);
  const auto catalog = enumerate_supported(f, g.threads);
  const auto hist = histogram(catalog);

  json r;
  r["filter"] = json{ { "N", f.ring_dim },
                      { "w", f.w },
                      { "hw_naf_max", f.hw_naf_max },
                      { "p_r_max", rational_str(f.p_r_max) },
                      { "q_min_exclusive", f.q_min_exclusive },
                      { "buckets", to_string(f.buckets) } };
  r["count"] = catalog.size();
  r["histogram"] = histogram_json(hist);
  json records = json::array();
  std::ostringstream text;
  text << "q,bucket,hw_naf,p_r_num,p_r_den\n";
  for (const auto& rec : catalog.records()) {
    const auto num = boost::multiprecision::numerator(rec.p_r).str();
    const auto den = boost::multiprecision::denominator(rec.p_r).str();
    text << rec.q << ',' << rec.bucket << ',' << rec.hw_naf << ',' << num << ',' << den << '\n';
    records.push_back(json{ { "q", rec.q },
                            { "bucket", rec.bucket },
                            { "hw_naf", rec.hw_naf },
                            { "p_r_num", num },
                            { "p_r_den", den } });
  }
  text << "# count: " << catalog.size() << '\n';
  for (const auto& [bucket, count] : hist) {
    text << "# histogram " << bucket << ": " << count << '\n';
  }
  r["records"] = records;
  rep.emit(r, text.str());
}

json
table1_report(unsigned threads, bool& all_match)
{
  all_match = true;
  json rows = json::array();
  for (const auto& ref : reference_table()) {
    CatalogFilter f;
    f.p_r_max = parse_decimal(ref.p_r_max);
    const auto catalog = enumerate_supported(f, threads);

    json row;
    row["p_r_max"] = ref.p_r_max;
    row["len"] = ref.len;
    row["count"] = catalog.size();
    row["expected_count"] = ref.count;
    bool match = catalog.size() == ref.count;

    for (const auto conv :
         { BucketConvention::nearest, BucketConvention::ceiling, BucketConvention::floor }) {
      const auto h = histogram(catalog, conv);
      std::vector<std::size_t> counts;
      std::vector<long long> deltas;
      std::size_t outside = catalog.size();
      for (unsigned b = 0; b < ref.histogram.size(); ++b) {
        const auto it = h.find(kReferenceFirstBucket + b);
        const std::size_t c = it == h.end() ? 0 : it->second;
        counts.push_back(c);
        outside -= c;
        deltas.push_back(static_cast<long long>(c) - static_cast<long long>(ref.histogram[b]));
      }
      const bool hist_match =
        outside == 0 && std::all_of(deltas.begin(), deltas.end(), [](long long d) { return d == 0; });
      json hj;
      hj["histogram"] = counts;
      hj["delta"] = deltas;
      hj["outside_20_32"] = outside;
      hj["match"] = hist_match;
      row[to_string(conv)] = hj;
      if (conv == f.buckets) {
        match = match && hist_match;
      }
    }
    row["expected_histogram"] = std::vector<std::size_t>(ref.histogram.begin(), ref.histogram.end());
    row["match"] = match;
    all_match = all_match && match;
    rows.push_back(row);
  }
  json r;
  r["N"] = 1 << 16;
  r["w"] = 32;
  r["hw_naf_max"] = 5;
  r["q_min_exclusive"] = 1 << 19;
  r["buckets"] = "20..32";
  r["rows"] = rows;
  r["all_match"] = all_match;
  return r;
}

void
cmd_table1(const Reporter& rep, const Globals& g)
{
  bool all_match = false;
  const json r = table1_report(g.threads, all_match);
  if (!all_match) {
    throw DomainError("table1-mismatch", "catalog does not reproduce the reference table", r);
  }
  rep.emit(r);
}

// ---- analytics ------------------------------------------------------------

void
cmd_analyze(const Reporter& rep,
            unsigned t,
            unsigned len,
            std::uint64_t n_seg,
            std::uint64_t limbs,
            const std::string& pr)
{
  SuccessModel m{ t, len, n_seg, limbs, parse_decimal(pr) };
  const auto seg = m.segment();
  const auto limb = m.limb();
  const auto mrp = m.mrp_bound();
  json r;
  r["t"] = t;
  r["len"] = len;
  r["n_seg"] = n_seg;
  r["L"] = limbs;
  r["p_r"] = pr;
  r["p_seg"] = sci(seg.value);
  r["segment_failure"] = sci(seg.complement);
  r["p_limb"] = sci(limb.value);
  r["limb_failure"] = sci(limb.complement);
  r["p_mrp_lower_bound"] = sci(mrp.value);
  r["mrp_failure_upper_bound"] = sci(mrp.complement);
  r["seed_space_bits_288"] = format_real(seed_space_bits(288, mrp.value), 6);
  rep.emit(r);
}

void
cmd_fit_table1(const Reporter& rep,
               const Globals& g,
               const std::string& max_fail_text,
               const std::string& tolerance_text,
               std::uint64_t l_max)
{
  const Real max_fail = to_real(parse_decimal(max_fail_text));
  const Real tolerance = to_real(parse_decimal(tolerance_text));
  std::vector<FitRow> rows;
  for (const auto& ref : reference_table()) {
    if (std::string_view(ref.mrp_failure_percent) == "3.00") {
      rows.push_back({ ref.len, to_real(parse_decimal(ref.p_r_max)) });
    }
  }
  const auto fit = fit_limb_count(rows, 42, 1U << 16, max_fail, tolerance, l_max);

  json r;
  r["max_fail"] = max_fail_text;
  r["tolerance"] = tolerance_text;
  r["L"] = fit.limb_count;
  r["residual"] = sci(fit.residual);
  r["fits"] = fit.fits;
  json jr = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    jr.push_back(json{ { "len", rows[i].len },
                       { "published", format_real(rows[i].p_r_max, 5) },
                       { "solved", format_real(fit.solved[i], 8) } });
  }
  r["rows"] = jr;

  // Last row: every supported prime (p_r < 1/2), len = 4.
  CatalogFilter f;
  const auto catalog = enumerate_supported(f, g.threads);
  Rational worst = 0;
  for (const auto& rec : catalog.records()) {
    worst = std::max(worst, rec.p_r);
  }
  const unsigned len4 = reference_table().back().len;
  const SuccessModel m{ 42, len4, (1U << 16) / len4, fit.limb_count, worst };
  const auto bound = m.mrp_bound();
  r["len4_worst_p_r"] = format_real(to_real(worst), 8);
  r["len4_mrp_failure_percent"] = format_real(bound.complement * 100, 4);
  r["len4_published_percent"] = reference_table().back().mrp_failure_percent;

  if (!fit.fits) {
    throw DomainError("no-fit", "best L = " + std::to_string(fit.limb_count) +
                                  " has residual " + sci(fit.residual),
                      r);
  }
  rep.emit(r);
}

void
cmd_stats(const Reporter& rep, const std::string& mrp_path, unsigned bins)
{
  const MrpFile file = read_mrp_file(mrp_path);
  json limbs = json::array();
  for (const auto& limb : file.mrp.limbs()) {
    const auto u = chi_square_uniformity(limb, bins);
    limbs.push_back(json{ { "q", u.q },
                          { "samples", u.sample_count },
                          { "chi_square", u.statistic },
                          { "dof", u.degrees_of_freedom },
                          { "p_value", u.p_value } });
  }
  json r;
  r["N"] = file.ring_dim;
  r["bins"] = bins;
  r["limbs"] = limbs;
  rep.emit(r);
}

void
cmd_mc(const Reporter& rep,
       const Globals& g,
       const std::string& params_path,
       std::size_t trials,
       std::uint64_t rng_seed)
{
  const GenParams params = load_params(params_path);
  Mt19937SeedSource source(rng_seed);
  const auto res = empirical_failure_rate(params, trials, std::ref(source), g.threads);
  json r;
  r["trials"] = res.trials;
  r["failures"] = res.failures;
  r["empirical_rate"] = res.empirical_rate();
  r["analytic_failure"] = sci(res.analytic_failure);
  r["z_score"] = res.z_score();
  r["agrees_4_sigma"] = res.agrees();
  if (!res.agrees()) {
    throw DomainError("model-disagreement", "|z| = " + std::to_string(res.z_score()) + " > 4", r);
  }
  rep.emit(r);
}

// ---- cost -----------------------------------------------------------------

void
cmd_cost(const Reporter& rep, CostParams p, double f_ghz, double e_fj)
{
  p.clock_hz = f_ghz * 1e9;
  p.wire_energy_j_per_bit_mm = e_fj / 1e15;
  const auto c = evaluate_cost(p);
  json r;
  r["R"] = p.lanes;
  r["w"] = p.word_bits;
  r["f_hz"] = p.clock_hz;
  r["gamma"] = p.occupancy;
  r["d_mm"] = p.die_side_mm;
  r["E_j_per_bit_mm"] = p.wire_energy_j_per_bit_mm;
  r["local_hop_mm"] = p.local_hop_mm;
  r["throughput_bps"] = c.throughput_bps;
  r["throughput_tbps"] = c.throughput_bps / 1e12;
  r["central_power_w"] = c.central_power_w;
  r["density_bps_per_mm"] = c.density_bps_per_mm;
  r["density_tbps_per_mm"] = c.density_bps_per_mm / 1e12;
  r["distributed_power_w"] = c.distributed_power_w;
  r["saving_w"] = c.saving_w;
  rep.emit(r);
}

} // namespace

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Seed expansion into uniformly distributed multi-residue polynomials" };
  app.name("mrpgen");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--canonical", g.canonical, "Omit timestamps (byte-reproducible reports)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({ "text", "json" }));

  std::string seed, params, out_path, mrp_path;
  std::uint32_t q = 0, id = 0, len = 32;
  std::size_t max_attempts = 16, trials = 1000;
  std::uint64_t rng_seed = 0;

  auto* gen_mrp = app.add_subcommand("gen-mrp", "Generate a multi-residue polynomial");
  gen_mrp->add_option("--seed", seed, "72 hex characters")->required();
  gen_mrp->add_option("--params", params, "Params file")->required();
  gen_mrp->add_option("--out", out_path, "Write the binary MRP here");

  auto* gen_limb = app.add_subcommand("gen-limb", "Generate one limb directly");
  gen_limb->add_option("--seed", seed)->required();
  gen_limb->add_option("--q", q)->required();
  gen_limb->add_option("--params", params, "Params file (default profile with base {q})");
  gen_limb->add_option("--out", out_path, "Write coefficients, one per line");

  auto* gen_seg = app.add_subcommand("gen-seg", "Generate one segment");
  gen_seg->add_option("--seed", seed)->required();
  gen_seg->add_option("--q", q)->required();
  gen_seg->add_option("--id", id)->required();
  gen_seg->add_option("--params", params);

  auto* verify = app.add_subcommand("verify", "Regenerate from the seed and compare");
  verify->add_option("--mrp", mrp_path)->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--params", params, "Params file supplying len and backend");
  verify->add_option("--len", len, "Segment length when no params file is given");

  auto* retry = app.add_subcommand("retry-gen", "Draw seeds until one generates");
  retry->add_option("--params", params)->required();
  retry->add_option("--max-attempts", max_attempts)->check(CLI::PositiveNumber);
  retry->add_option("--rng-seed", rng_seed, "Seed of the mt19937_64 seed source");
  retry->add_option("--out", out_path);

  unsigned n_log2 = 16, w = 32, hw_max = 5, qmin_bits = 19;
  std::string pr_max = "0.5", buckets = "nearest";
  auto* enum_primes = app.add_subcommand("enum-primes", "Enumerate the supported moduli");
  enum_primes->add_option("--n", n_log2, "log2 N");
  enum_primes->add_option("--w", w, "Word bits");
  enum_primes->add_option("--hwnaf-max", hw_max);
  enum_primes->add_option("--pr-max", pr_max, "Decimal threshold");
  enum_primes->add_option("--qmin-bits", qmin_bits, "Exclusive lower bound 2^b");
  enum_primes->add_option("--buckets", buckets)->check(
    CLI::IsMember({ "nearest", "ceiling", "floor" }));

  auto* table1 = app.add_subcommand("table1", "Reproduce the supported-set statistics table");

  unsigned t = 42;
  std::uint64_t n_seg = 2048, limbs = 1;
  std::string pr = "0";
  auto* analyze = app.add_subcommand("analyze", "Success probabilities for one profile");
  analyze->add_option("--t", t);
  analyze->add_option("--len", len);
  analyze->add_option("--nseg", n_seg);
  analyze->add_option("--L", limbs);
  analyze->add_option("--pr", pr, "Worst per-word rejection probability")->required();

  std::string max_fail = "0.03", tolerance = "0.0005";
  std::uint64_t l_max = 200;
  auto* fit = app.add_subcommand("fit-table1", "Recover the limb count behind the thresholds");
  fit->add_option("--max-fail", max_fail);
  fit->add_option("--tolerance", tolerance);
  fit->add_option("--l-max", l_max);

  unsigned bins = 64;
  auto* stats = app.add_subcommand("stats", "Chi-square uniformity per limb");
  stats->add_option("--mrp", mrp_path)->required();
  stats->add_option("--bins", bins);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo failure rate against the model");
  mc->add_option("--params", params)->required();
  mc->add_option("--trials", trials)->check(CLI::PositiveNumber);
  mc->add_option("--rng-seed", rng_seed);

  CostParams cost;
  double f_ghz = 1.0, e_fj = 40.0;
  auto* cost_cmd = app.add_subcommand("cost", "Randomness-distribution wiring cost");
  cost_cmd->add_option("--R", cost.lanes);
  cost_cmd->add_option("--w", cost.word_bits);
  cost_cmd->add_option("--f", f_ghz, "GHz");
  cost_cmd->add_option("--gamma", cost.occupancy);
  cost_cmd->add_option("--d", cost.die_side_mm, "mm");
  cost_cmd->add_option("--E", e_fj, "fJ/bit/mm");
  cost_cmd->add_option("--local-hop", cost.local_hop_mm, "mm");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const Reporter rep(g, command, input_digest(args), out);

  try {
    if (gen_mrp->parsed()) {
      cmd_gen_mrp(rep, seed, params, out_path);
    } else if (gen_limb->parsed()) {
      cmd_gen_limb(rep, seed, q, params, out_path);
    } else if (gen_seg->parsed()) {
      cmd_gen_seg(rep, seed, q, id, params);
    } else if (verify->parsed()) {
      cmd_verify(rep, mrp_path, seed, params, len);
    } else if (retry->parsed()) {
      cmd_retry_gen(rep, params, max_attempts, rng_seed, out_path);
    } else if (enum_primes->parsed()) {
      cmd_enum_primes(rep, g, n_log2, w, hw_max, pr_max, qmin_bits, buckets);
    } else if (table1->parsed()) {
      cmd_table1(rep, g);
    } else if (analyze->parsed()) {
      cmd_analyze(rep, t, len, n_seg, limbs, pr);
    } else if (fit->parsed()) {
      cmd_fit_table1(rep, g, max_fail, tolerance, l_max);
    } else if (stats->parsed()) {
      cmd_stats(rep, mrp_path, bins);
    } else if (mc->parsed()) {
      cmd_mc(rep, g, params, trials, rng_seed);
    } else if (cost_cmd->parsed()) {
      cmd_cost(rep, cost, f_ghz, e_fj);
    }
  } catch (const DomainError& e) {
    if (!e.result.is_null()) {
      rep.emit(e.result);
    }
    err << "error[" << e.code << "]: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const ParamsError& e) {
    err << "error[invalid-params]: " << e.what() << '\n';
    return kUsageError;
  } catch (const MrpFormatError& e) {
    err << "error[invalid-mrp]: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error[invalid-argument]: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return kUsageError;
  }
  return kOk;
}

} // namespace mrpgen::cli
