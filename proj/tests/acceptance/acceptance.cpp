// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "mrpgen/analytics.hpp"
#include "mrpgen/cost_model.hpp"
#include "mrpgen/prime_catalog.hpp"
#include "mrpgen/sampling.hpp"
#include "mrpgen/xof.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace mrpgen;

struct Verdict
{
  bool pass = false;
  std::string detail;
};

std::string
join(const std::vector<std::size_t>& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s;
}

std::vector<std::size_t>
bucket_row(const Histogram& h)
{
  std::vector<std::size_t> row;
  for (unsigned b = kReferenceFirstBucket; b < kReferenceFirstBucket + 13; ++b) {
    const auto it = h.find(b);
    row.push_back(it == h.end() ? 0 : it->second);
  }
  return row;
}

ModuliCatalog
published_filter_catalog(const char* p_r_max)
{
  CatalogFilter f;
  f.p_r_max = parse_decimal(p_r_max);
  return enumerate_supported(f, std::max(1u, std::thread::hardware_concurrency()));
}

Verdict
criterion_set_sizes()
{
  Verdict v{ true, {} };
  for (const auto& row : reference_table()) {
    const auto cat = published_filter_catalog(row.p_r_max);
    v.detail += std::string(v.detail.empty() ? "" : " ") + row.p_r_max + "->" +
                std::to_string(cat.size()) + "/" + std::to_string(row.count);
    if (cat.size() != row.count) {
      v.pass = false;
      for (const auto conv : { BucketConvention::nearest, BucketConvention::ceiling,
                               BucketConvention::floor }) {
        v.detail += " [" + std::string(to_string(conv)) + ": " +
                    join(bucket_row(histogram(cat, conv))) + "]";
      }
    }
  }
  return v;
}

Verdict
criterion_histograms()
{
  Verdict v{ true, {} };
  for (const auto& row : reference_table()) {
    const auto cat = published_filter_catalog(row.p_r_max);
    const auto got = bucket_row(histogram(cat));
    const std::vector<std::size_t> want(row.histogram.begin(), row.histogram.end());
    std::size_t sum = 0;
    for (const auto c : got) {
      sum += c;
    }
    const bool ok = got == want && sum == cat.size() && sum == row.count;
    v.pass = v.pass && ok;
    if (!ok) {
      std::string d;
      for (std::size_t i = 0; i < got.size(); ++i) {
        d += (i ? "," : "") +
             std::to_string(static_cast<long long>(got[i]) - static_cast<long long>(want[i]));
      }
      v.detail += std::string(" ") + row.p_r_max + " delta=" + d;
    }
  }
  if (v.pass) {
    v.detail = "4 rows match over buckets 20..32 (nearest log2 bucket); row sums equal set sizes";
  }
  return v;
}

Verdict
criterion_threshold_fit()
{
  const auto& table = reference_table();
  std::vector<FitRow> rows;
  for (std::size_t i = 0; i < 3; ++i) {
    rows.push_back({ table[i].len, to_real(parse_decimal(table[i].p_r_max)) });
  }
  const auto fit = fit_limb_count(rows, 42, 1U << 16, Real("0.03"), Real("0.0005"), 200);

  const auto cat = published_filter_catalog(table[3].p_r_max);
  Rational worst = 0;
  for (const auto& r : cat.records()) {
    worst = std::max(worst, r.p_r);
  }
  SuccessModel m{ 42, table[3].len, (1U << 16) / table[3].len, fit.limb_count, worst };
  const Real fail = m.mrp_bound().complement;

  std::ostringstream os;
  os << "L*=" << fit.limb_count << " residual=" << format_scientific(fit.residual, 3)
     << " solved=";
  for (std::size_t i = 0; i < fit.solved.size(); ++i) {
    os << (i ? "," : "") << format_real(fit.solved[i], 8);
  }
  os << " len4 worst p_r=" << format_real(to_real(worst), 8)
     << " bound=" << format_real(fail * 100, 4) << "%";
  return { fit.fits && fail <= Real("0.003"), os.str() };
}

Verdict
criterion_cost()
{
  const CostParams p;
  const auto rep = evaluate_cost(p);
  const double tp = rep.throughput_bps / 1e12;
  const double power = rep.central_power_w;
  const double density = rep.density_bps_per_mm / 1e12;
  std::ostringstream os;
  os << "TP=" << tp << " Tbps, central=" << power << " W, density=" << density << " Tbps/mm";
  const bool ok = std::abs(tp - 65.5) <= 0.1 && std::abs(power - 19.7) <= 0.1 &&
                  std::abs(density - 2.2) <= 0.05 &&
                  rep.distributed_power_w <= rep.central_power_w;
  return { ok, os.str() };
}

Verdict
criterion_seed_space()
{
  const Real bits = seed_space_bits(288, Real("0.97"));
  return { bits > Real("287.95"), "log2 = " + format_real(bits, 10) };
}

Verdict
criterion_random_access()
{
  CatalogFilter f;
  f.ring_dim = 4096;
  f.p_r_max = Rational(1, 20);
  const auto cat = enumerate_supported(f);
  std::vector<std::uint32_t> pool;
  for (const auto& r : cat.records()) {
    pool.push_back(static_cast<std::uint32_t>(r.q));
  }

  std::mt19937_64 rng(0xacce55);
  std::size_t cases = 0, compared = 0, mismatches = 0;
  while (cases < 150) {
    const std::uint32_t n = 1U << (5 + rng() % 8); // 32 .. 4096
    const std::uint32_t len = std::min<std::uint32_t>(n, 1U << (rng() % 6));
    if (n / len > (1U << 16)) {
      continue;
    }
    std::vector<std::uint32_t> base = pool;
    std::shuffle(base.begin(), base.end(), rng);
    base.resize(1 + rng() % 4);
    GenParams params = GenParams::small_profile(n, len, base);
    if (rng() & 1) {
      params.layout = Permutation::reverse(n);
    }
    const Seed seed = Mt19937SeedSource(rng())();
    ++cases;

    const auto mrp = generate_mrp(seed, params);
    if (!mrp) {
      continue;
    }
    for (const auto q : base) {
      const auto limb = generate_limb(seed, q, params);
      ++compared;
      mismatches += !limb.ok() || !(limb.value() == mrp.value().limb(q));
    }

    // Segment output must not depend on which other moduli are in the base.
    std::vector<std::uint32_t> other = base;
    std::reverse(other.begin(), other.end());
    GenParams single = params;
    single.base = { other.front() };
    GenParams reordered = params;
    reordered.base = other;
    const std::uint32_t q = other.front();
    for (int probe = 0; probe < 4; ++probe) {
      const auto id = static_cast<std::uint16_t>(rng() % params.n_seg);
      const auto seg = generate_segment(seed, q, id, params);
      compared += 2;
      mismatches += !(seg == generate_segment(seed, q, id, single));
      mismatches += !(seg == generate_segment(seed, q, id, reordered));
    }
  }
  return { mismatches == 0 && cases >= 100,
           std::to_string(cases) + " cases, " + std::to_string(compared) + " comparisons, " +
             std::to_string(mismatches) + " mismatches" };
}

Verdict
criterion_distributed()
{
  GenParams params = GenParams::small_profile(1024, 16, { 40961, 65537, 786433 });
  params.layout = Permutation::reverse(1024);
  const Seed seed = Mt19937SeedSource(7)();
  const std::size_t items = params.base.size() * params.n_seg;
  std::size_t passed = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    passed += verify_distributed_equivalence(seed, params, items, s).identical;
  }
  return { passed == 100, std::to_string(passed) + "/100 schedules identical with " +
                            std::to_string(items) + " engines" };
}

Verdict
criterion_unbiased_w8()
{
  std::size_t moduli = 0, failures = 0;
  for (std::uint32_t q = 3; q < 256; q += 2) {
    ++moduli;
    const std::uint64_t th = compute_threshold(q, 8);
    std::vector<unsigned> count(q, 0);
    for (std::uint32_t word = 0; word < 256; ++word) {
      if (word < th) {
        ++count[word % q];
      }
    }
    for (const auto c : count) {
      failures += c != 256 / q;
    }
  }
  // Cross-check the threshold rule against gen_seg on real blocks.
  std::size_t scanned = 0;
  for (std::uint32_t q = 3; q < 256; q += 2) {
    const auto input = encode_domain_input(Mt19937SeedSource(q)(), q, 0);
    const auto words = split_words(xof_expand(input), 8);
    std::vector<std::uint32_t> expected;
    for (const auto wd : words) {
      if (wd < compute_threshold(q, 8)) {
        expected.push_back(wd);
      }
    }
    scanned += words.size();
    failures += gen_seg(input, q, words.size(), 8).values != expected;
  }
  return { failures == 0, std::to_string(moduli) + " odd moduli, 256 words each, " +
                            std::to_string(scanned) + " sampled words cross-checked, " +
                            std::to_string(failures) + " failures" };
}

Verdict
criterion_failure_model()
{
  const GenParams params = GenParams::small_profile(256, 32, { 3779579393U, 3736622081U });
  const auto model = analytic_mrp_success(params);
  const double p_fail = static_cast<double>(model.complement);
  const double p_ok = static_cast<double>(model.value);

  constexpr std::size_t kTrials = 20000;
  const auto mc = empirical_failure_rate(params, kTrials, Mt19937SeedSource(2024),
                                         std::max(1u, std::thread::hardware_concurrency()));

  constexpr std::size_t kRetries = 10000;
  std::mt19937_64 outer(99);
  double total_attempts = 0;
  std::size_t exhausted = 0;
  for (std::size_t i = 0; i < kRetries; ++i) {
    const auto r = client_generate_with_retry(Mt19937SeedSource(outer()), params, 1000);
    if (r) {
      total_attempts += static_cast<double>(r.value().attempts);
    } else {
      ++exhausted;
    }
  }
  const double mean = total_attempts / kRetries;
  const double expected = 1.0 / p_ok;
  const double se = std::sqrt(1.0 - p_ok) / p_ok / std::sqrt(static_cast<double>(kRetries));
  const double z_retry = (mean - expected) / se;

  std::ostringstream os;
  os.precision(5);
  os << "analytic fail=" << p_fail << " empirical=" << mc.empirical_rate() << " over "
     << mc.trials << " seeds (z=" << mc.z_score() << "); mean retries=" << mean
     << " vs 1/p=" << expected << " (z=" << z_retry << ")";
  const bool ok = p_fail >= 0.05 && p_fail <= 0.5 && mc.trials >= 10000 && mc.agrees(4.0) &&
                  exhausted == 0 && std::abs(z_retry) <= 4.0;
  return { ok, os.str() };
}

Verdict
criterion_uniformity()
{
  const std::vector<std::uint32_t> base = { 786433, 1073479681, 4293918721U };
  const GenParams params = GenParams::default_profile(base);
  const auto mrp = client_generate_with_retry(Mt19937SeedSource(10), params, 16);
  if (!mrp) {
    return { false, "no complete polynomial generated" };
  }
  bool ok = true;
  std::ostringstream os;
  os.precision(4);
  for (const auto& limb : mrp.value().mrp.limbs()) {
    const auto rep = chi_square_uniformity(limb, 64);
    ok = ok && rep.p_value > 0.001 && rep.sample_count == (1U << 16);
    os << "q=" << limb.q << " X2=" << rep.statistic << " p=" << rep.p_value << "; ";
  }
  return { ok, os.str() };
}

Verdict
criterion_golden_xof()
{
  std::ifstream in(std::string(MRPGEN_FIXTURE_DIR) + "/xof_shake128.txt");
  std::string line;
  std::size_t vectors = 0, mismatches = 0;
  bool saw_empty = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ss(line);
    std::string input_hex, output_hex;
    ss >> input_hex >> output_hex;
    const auto input = input_hex == "-" ? std::vector<std::uint8_t>{} : from_hex(input_hex);
    saw_empty = saw_empty || input.empty();
    const auto out = xof_expand(input, XofBackend::shake128);
    mismatches += to_hex(out) != output_hex;
    ++vectors;
  }
  return { vectors >= 4 && saw_empty && mismatches == 0,
           std::to_string(vectors) + " vectors, " + std::to_string(mismatches) + " mismatches" };
}

} // namespace

int
main()
{
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
    { "supported-set sizes", criterion_set_sizes },
    { "supported-set histograms", criterion_histograms },
    { "threshold fit", criterion_threshold_fit },
    { "cost model", criterion_cost },
    { "seed-space accounting", criterion_seed_space },
    { "random-access equivalence", criterion_random_access },
    { "distributed-engine equivalence", criterion_distributed },
    { "unbiasedness (w = 8)", criterion_unbiased_w8 },
    { "failure-model agreement", criterion_failure_model },
    { "uniformity (chi-square)", criterion_uniformity },
    { "golden XOF vectors", criterion_golden_xof },
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = { false, std::string("exception: ") + e.what() };
    }
    const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first
              << ": " << v.detail << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << "s)" << std::defaultfloat << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
