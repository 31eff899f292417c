#include "mrpgen/sampling.hpp"

#include "mrpgen/prime_catalog.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace mrpgen {

Permutation
Permutation::identity(std::size_t n)
{
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0U);
  return Permutation(Kind::identity, std::move(m));
}

Permutation
Permutation::reverse(std::size_t n)
{
  std::vector<std::uint32_t> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = static_cast<std::uint32_t>(n - 1 - i);
  }
  return Permutation(Kind::reverse, std::move(m));
}

Permutation
Permutation::from_mapping(std::vector<std::uint32_t> mapping)
{
  std::vector<bool> seen(mapping.size(), false);
  for (const auto idx : mapping) {
    if (idx >= mapping.size() || seen[idx]) {
      throw std::invalid_argument("layout is not a bijection on [0, " +
                                  std::to_string(mapping.size()) + ")");
    }
    seen[idx] = true;
  }
  return Permutation(Kind::custom, std::move(mapping));
}

Permutation
Permutation::inverse() const
{
  std::vector<std::uint32_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    inv[mapping_[i]] = static_cast<std::uint32_t>(i);
  }
  return Permutation(kind_, std::move(inv));
}

std::vector<std::uint32_t>
permute(std::span<const std::uint32_t> coeffs, const Permutation& p)
{
  if (coeffs.size() != p.size()) {
    throw std::invalid_argument("permutation length " + std::to_string(p.size()) +
                                " does not match " + std::to_string(coeffs.size()) +
                                " coefficients");
  }
  std::vector<std::uint32_t> out(coeffs.size());
  const auto& m = p.mapping();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = coeffs[m[i]];
  }
  return out;
}

GenParams
GenParams::default_profile(std::vector<std::uint32_t> base)
{
  GenParams p;
  p.base = std::move(base);
  return p;
}

GenParams
GenParams::small_profile(std::uint32_t ring_dim,
                         std::uint32_t len,
                         std::vector<std::uint32_t> base)
{
  GenParams p;
  p.ring_dim = ring_dim;
  p.len = len;
  p.n_seg = len == 0 ? 0 : ring_dim / len;
  p.base = std::move(base);
  p.layout = Permutation::identity(ring_dim);
  return p;
}

std::size_t
GenParams::words_per_block() const
{
  return mrpgen::words_per_block(w, r);
}

void
GenParams::validate() const
{
  if (!is_power_of_two(ring_dim)) {
    throw std::invalid_argument("N must be a power of two, got " +
                                std::to_string(ring_dim));
  }
  if (r != kXofBlockBits) {
    throw std::invalid_argument("r must be " + std::to_string(kXofBlockBits) +
                                " bits (one sponge block), got " + std::to_string(r));
  }
  const std::size_t t = words_per_block();
  if (len == 0 || len > t) {
    throw std::invalid_argument("len must be in [1, t = " + std::to_string(t) +
                                "], got " + std::to_string(len));
  }
  if (static_cast<std::uint64_t>(len) * n_seg != ring_dim) {
    throw std::invalid_argument("len * n_seg must equal N (" + std::to_string(len) +
                                " * " + std::to_string(n_seg) +
                                " != " + std::to_string(ring_dim) + ")");
  }
  if (n_seg > (1U << 16)) {
    throw std::invalid_argument("n_seg must not exceed 2^16 (16-bit segment index)");
  }
  if (base.empty()) {
    throw std::invalid_argument("RNS base must not be empty");
  }
  std::set<std::uint32_t> seen;
  for (const auto q : base) {
    if (!seen.insert(q).second) {
      throw std::invalid_argument("modulus " + std::to_string(q) +
                                  " appears twice in the base");
    }
    if (w < 32 && q >= (1U << w)) {
      throw std::invalid_argument("modulus " + std::to_string(q) +
                                  " does not fit in w = " + std::to_string(w) + " bits");
    }
    if (!is_ntt_friendly(q, ring_dim)) {
      throw std::invalid_argument("modulus " + std::to_string(q) +
                                  " is not an NTT-friendly prime for N = " +
                                  std::to_string(ring_dim));
    }
  }
  if (layout.size() != ring_dim) {
    throw std::invalid_argument("layout permutation length " +
                                std::to_string(layout.size()) + " does not match N");
  }
}

MultiResiduePolynomial::MultiResiduePolynomial(std::vector<std::uint32_t> base,
                                               std::vector<Limb> limbs)
  : base_(std::move(base))
  , limbs_(std::move(limbs))
{
  if (base_.size() != limbs_.size()) {
    throw std::invalid_argument("limb count does not match base size");
  }
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (limbs_[i].q != base_[i]) {
      throw std::invalid_argument("limb order does not match base order");
    }
  }
}

const Limb&
MultiResiduePolynomial::limb(std::uint32_t q) const
{
  for (const auto& l : limbs_) {
    if (l.q == q) {
      return l;
    }
  }
  throw std::out_of_range("modulus " + std::to_string(q) + " not in base");
}

std::string
GenerationFailure::describe() const
{
  return "q=" + std::to_string(q) + " id_seg=" + std::to_string(id_seg) +
         " accepted=" + std::to_string(accepted) + "/" + std::to_string(required);
}

std::uint64_t
compute_threshold(std::uint64_t q, unsigned w)
{
  if (w == 0 || w > 63) {
    throw std::invalid_argument("word size must be in [1, 63]");
  }
  const std::uint64_t two_w = 1ULL << w;
  if (q <= 1 || q >= two_w) {
    throw std::invalid_argument("modulus " + std::to_string(q) +
                                " outside (1, 2^" + std::to_string(w) + ")");
  }
  return two_w / q * q;
}

Segment
gen_seg(std::span<const std::uint8_t> input,
        std::uint32_t q,
        std::size_t len,
        unsigned w,
        XofBackend backend)
{
  Segment seg{ q, {} };
  if (len == 0) {
    return seg;
  }
  const std::uint64_t thresh = compute_threshold(q, w);
  const auto words = split_words(xof_expand(input, backend), w);
  seg.values.reserve(len);
  for (const auto s : words) {
    if (s < thresh) {
      seg.values.push_back(s);
      if (seg.values.size() == len) {
        break;
      }
    }
  }
  return seg;
}

Segment
generate_segment(const Seed& seed,
                 std::uint32_t q,
                 std::uint16_t id_seg,
                 const GenParams& params)
{
  const auto input = encode_domain_input(seed, q, id_seg);
  return gen_seg(input, q, params.len, params.w, params.backend);
}

namespace {

Outcome<Limb>
generate_limb_unchecked(const Seed& seed, std::uint32_t q, const GenParams& params)
{
  std::vector<std::uint32_t> coeffs;
  coeffs.reserve(params.ring_dim);
  for (std::uint32_t id = 0; id < params.n_seg; ++id) {
    auto seg = generate_segment(seed, q, static_cast<std::uint16_t>(id), params);
    if (!seg.complete(params.len)) {
      return GenerationFailure{ q, id, seg.values.size(), params.len };
    }
    coeffs.insert(coeffs.end(), seg.values.begin(), seg.values.end());
  }
  return Limb{ q, permute(coeffs, params.layout) };
}

} // namespace

Outcome<Limb>
generate_limb(const Seed& seed, std::uint32_t q, const GenParams& params)
{
  params.validate();
  if (std::find(params.base.begin(), params.base.end(), q) == params.base.end()) {
    throw std::invalid_argument("modulus " + std::to_string(q) + " is not in the base");
  }
  return generate_limb_unchecked(seed, q, params);
}

Outcome<MultiResiduePolynomial>
generate_mrp(const Seed& seed, const GenParams& params)
{
  params.validate();
  std::vector<Limb> limbs;
  limbs.reserve(params.base.size());
  for (const auto q : params.base) {
    auto limb = generate_limb_unchecked(seed, q, params);
    if (!limb) {
      return limb.error();
    }
    limbs.push_back(std::move(limb).value());
  }
  return MultiResiduePolynomial(params.base, std::move(limbs));
}

std::vector<std::uint32_t>
reduce_coeffs(const Limb& limb)
{
  std::vector<std::uint32_t> out(limb.coeffs.size());
  std::transform(limb.coeffs.begin(), limb.coeffs.end(), out.begin(),
                 [q = limb.q](std::uint32_t c) { return c % q; });
  return out;
}

Seed
Mt19937SeedSource::operator()()
{
  Seed::Bytes bytes{};
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    const std::uint64_t v = engine_();
    for (std::size_t b = 0; b < 8 && i + b < bytes.size(); ++b) {
      bytes[i + b] = static_cast<std::uint8_t>(v >> (8 * b));
    }
  }
  return Seed(bytes);
}

Outcome<RetryResult, RetryExhausted>
client_generate_with_retry(const SeedSource& seed_source,
                           const GenParams& params,
                           std::size_t max_attempts)
{
  if (max_attempts == 0) {
    throw std::invalid_argument("max_attempts must be at least 1");
  }
  params.validate();
  GenerationFailure last;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    const Seed seed = seed_source();
    auto mrp = generate_mrp(seed, params);
    if (mrp) {
      return RetryResult{ seed, std::move(mrp).value(), attempt };
    }
    last = mrp.error();
  }
  return RetryExhausted{ max_attempts, last };
}

namespace {

struct WorkItem
{
  std::uint32_t q;
  std::uint16_t id_seg;
  std::size_t limb_index;
};

// Everything one hardware engine is wired to: the broadcast seed and profile
// constants. Nothing here is shared mutable state.
struct EngineConfig
{
  Seed seed;
  std::uint32_t len;
  unsigned w;
  XofBackend backend;
};

Segment
run_engine(const EngineConfig& cfg, std::uint32_t q, std::uint16_t id_seg)
{
  const auto input = encode_domain_input(cfg.seed, q, id_seg);
  return gen_seg(input, q, cfg.len, cfg.w, cfg.backend);
}

} // namespace

EquivalenceReport
verify_distributed_equivalence(const Seed& seed,
                               const GenParams& params,
                               std::size_t engine_count,
                               std::uint64_t schedule_seed)
{
  params.validate();
  if (engine_count == 0) {
    throw std::invalid_argument("engine_count must be at least 1");
  }

  auto serial = generate_mrp(seed, params);
  if (!serial) {
    throw std::invalid_argument("seed does not generate a complete polynomial: " +
                                serial.error().describe());
  }

  std::vector<WorkItem> items;
  items.reserve(params.base.size() * params.n_seg);
  for (std::size_t li = 0; li < params.base.size(); ++li) {
    for (std::uint32_t id = 0; id < params.n_seg; ++id) {
      items.push_back({ params.base[li], static_cast<std::uint16_t>(id), li });
    }
  }

  std::mt19937_64 sched(schedule_seed);
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  std::shuffle(order.begin(), order.end(), sched);
  const bool work_stealing = (sched() & 1) != 0;

  const EngineConfig cfg{ seed, params.len, params.w, params.backend };
  std::vector<Segment> results(items.size());
  std::vector<std::size_t> per_engine(engine_count, 0);
  std::atomic<std::size_t> next{ 0 };

  auto engine = [&](std::size_t e) {
    const EngineConfig local = cfg;
    std::size_t done = 0;
    if (work_stealing) {
      for (std::size_t k = next.fetch_add(1); k < order.size(); k = next.fetch_add(1)) {
        const auto& item = items[order[k]];
        results[order[k]] = run_engine(local, item.q, item.id_seg);
        ++done;
      }
    } else {
      for (std::size_t k = e; k < order.size(); k += engine_count) {
        const auto& item = items[order[k]];
        results[order[k]] = run_engine(local, item.q, item.id_seg);
        ++done;
      }
    }
    per_engine[e] = done;
  };

  {
    std::vector<std::jthread> engines;
    engines.reserve(engine_count);
    for (std::size_t e = 0; e < engine_count; ++e) {
      engines.emplace_back(engine, e);
    }
  }

  std::vector<std::vector<std::uint32_t>> assembled(params.base.size());
  for (auto& a : assembled) {
    a.reserve(params.ring_dim);
  }
  bool all_complete = true;
  // items are stored limb-major, id-minor, so a linear pass concatenates in order
  for (std::size_t i = 0; i < items.size(); ++i) {
    all_complete = all_complete && results[i].complete(params.len);
    auto& dst = assembled[items[i].limb_index];
    dst.insert(dst.end(), results[i].values.begin(), results[i].values.end());
  }

  EquivalenceReport report;
  report.engine_count = engine_count;
  report.work_items = items.size();
  report.items_per_engine = std::move(per_engine);
  for (std::size_t li = 0; li < params.base.size(); ++li) {
    const bool same = all_complete && assembled[li].size() == params.ring_dim &&
                      permute(assembled[li], params.layout) ==
                        serial.value().limbs()[li].coeffs;
    if (!same) {
      ++report.mismatched_limbs;
    }
  }
  report.identical = report.mismatched_limbs == 0;
  return report;
}

} // namespace mrpgen
