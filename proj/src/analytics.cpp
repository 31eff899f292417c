#include "mrpgen/analytics.hpp"

#include "mrpgen/prime_catalog.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mrpgen {

namespace {

using boost::multiprecision::expm1;
using boost::multiprecision::log1p;

// C(t, 0..t)
std::vector<Real>
binomial_row(unsigned t)
{
  std::vector<Real> row(t + 1);
  BigInt c = 1;
  for (unsigned i = 0; i <= t; ++i) {
    row[i] = Real(c);
    c = c * (t - i) / (i + 1);
  }
  return row;
}

// Lower tail P[accepted < len] and upper tail P[accepted >= len], each summed
// term by term.
std::pair<Real, Real>
segment_tails(const Real& p_r, unsigned t, unsigned len)
{
  const auto binom = binomial_row(t);
  std::vector<Real> rej(t + 1), acc(t + 1);
  rej[0] = 1;
  acc[0] = 1;
  const Real p_acc = Real(1) - p_r;
  for (unsigned i = 1; i <= t; ++i) {
    rej[i] = rej[i - 1] * p_r;
    acc[i] = acc[i - 1] * p_acc;
  }
  Real lower = 0, upper = 0;
  for (unsigned i = 0; i <= t; ++i) {
    const Real term = binom[i] * acc[i] * rej[t - i];
    (i < len ? lower : upper) += term;
  }
  return { lower, upper };
}

Probability
power(const Probability& p, std::uint64_t n)
{
  if (n == 0 || p.complement == 0) {
    return Probability::certain();
  }
  if (p.complement >= 1) {
    return { Real(0), Real(1) };
  }
  const Real log_value = Real(n) * log1p(-p.complement);
  return { exp(log_value), -expm1(log_value) };
}

} // namespace

Probability
p_seg(const Real& p_r, unsigned t, unsigned len)
{
  if (p_r < 0 || p_r > 1) {
    throw std::invalid_argument("p_r must lie in [0, 1]");
  }
  if (len > t) {
    return { Real(0), Real(1) };
  }
  const auto [lower, upper] = segment_tails(p_r, t, len);
  return { upper, lower };
}

Probability
p_seg(const Rational& p_r, unsigned t, unsigned len)
{
  return p_seg(to_real(p_r), t, len);
}

Probability
p_limb(const Probability& seg, std::uint64_t n_seg)
{
  return power(seg, n_seg);
}

Probability
p_mrp_lower_bound(const Probability& limb_worst, std::uint64_t limb_count)
{
  if (limb_count == 0) {
    throw std::invalid_argument("limb count must be at least 1");
  }
  return power(limb_worst, limb_count);
}

Probability
p_mrp_exact(std::span<const Probability> limbs)
{
  Real log_value = 0;
  for (const auto& l : limbs) {
    if (l.complement >= 1) {
      return { Real(0), Real(1) };
    }
    log_value += log1p(-l.complement);
  }
  return { exp(log_value), -expm1(log_value) };
}

void
SuccessModel::validate() const
{
  if (t == 0 || len == 0 || n_seg == 0 || limb_count == 0) {
    throw std::invalid_argument("success model counts must be positive");
  }
  if (len > t) {
    throw std::invalid_argument("len must not exceed t");
  }
  if (p_r_worst < 0 || p_r_worst >= 1) {
    throw std::invalid_argument("p_r_worst must lie in [0, 1)");
  }
}

Probability
SuccessModel::segment() const
{
  validate();
  return p_seg(p_r_worst, t, len);
}

Probability
SuccessModel::limb() const
{
  return p_limb(segment(), n_seg);
}

Probability
SuccessModel::mrp_bound() const
{
  return p_mrp_lower_bound(limb(), limb_count);
}

Probability
analytic_mrp_success(const GenParams& params)
{
  params.validate();
  const unsigned t = static_cast<unsigned>(params.words_per_block());
  std::vector<Probability> limbs;
  limbs.reserve(params.base.size());
  for (const auto q : params.base) {
    limbs.push_back(p_limb(p_seg(sample_rejection_prob(q, params.w), t, params.len),
                           params.n_seg));
  }
  return p_mrp_exact(limbs);
}

Rational
solve_p_r_max(unsigned t,
              unsigned len,
              std::uint64_t n_seg,
              std::uint64_t limb_count,
              const Real& max_fail)
{
  if (n_seg == 0 || limb_count == 0) {
    throw std::invalid_argument("n_seg and L must be positive");
  }
  if (max_fail >= 1) {
    return Rational(1);
  }
  if (max_fail < 0 || len > t) {
    throw std::domain_error("no p_r satisfies the failure bound");
  }

  // 1 - (1 - f)^(n_seg L) <= max_fail  <=>  f <= 1 - (1 - max_fail)^(1 / (n_seg L)),
  // f being the segment failure probability, which increases with p_r.
  const Real exponent = Real(n_seg) * Real(limb_count);
  const Real seg_fail_max = -expm1(log1p(-max_fail) / exponent);

  constexpr unsigned kBits = 64;
  const BigInt scale = BigInt(1) << kBits;
  BigInt lo = 0;
  BigInt hi = scale;
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    const Real p_r = Real(mid) / Real(scale);
    if (segment_tails(p_r, t, len).first <= seg_fail_max) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Rational(lo, scale);
}

const std::array<ReferenceTableRow, 4>&
reference_table()
{
  static const std::array<ReferenceTableRow, 4> rows = { {
    { "0.03655", 277, { 2, 1, 1, 8, 15, 18, 26, 51, 39, 37, 20, 27, 32 }, 32, "3.00" },
    { "0.25305", 526, { 2, 1, 1, 8, 15, 18, 26, 52, 57, 87, 114, 68, 77 }, 16, "3.00" },
    { "0.42359", 562, { 2, 1, 1, 8, 15, 18, 26, 52, 57, 87, 115, 98, 82 }, 8, "3.00" },
    { "0.5", 625, { 2, 1, 1, 8, 15, 18, 26, 52, 57, 87, 115, 161, 82 }, 4, "0.29" },
  } };
  return rows;
}

FitResult
fit_limb_count(std::span<const FitRow> rows,
               unsigned t,
               std::uint64_t ring_dim,
               const Real& max_fail,
               const Real& tolerance,
               std::uint64_t l_max)
{
  if (rows.empty()) {
    throw std::invalid_argument("fit needs at least one row");
  }
  for (const auto& row : rows) {
    if (row.len == 0 || ring_dim % row.len != 0) {
      throw std::invalid_argument("row len must divide N");
    }
  }

  FitResult best;
  for (std::uint64_t L = 1; L <= l_max; ++L) {
    std::vector<Real> solved;
    Real worst = 0;
    for (const auto& row : rows) {
      const Real v = to_real(solve_p_r_max(t, row.len, ring_dim / row.len, L, max_fail));
      worst = std::max(worst, Real(abs(v - row.p_r_max)));
      solved.push_back(v);
    }
    if (best.limb_count == 0 || worst < best.residual) {
      best.limb_count = L;
      best.residual = worst;
      best.solved = std::move(solved);
    }
  }
  best.fits = best.residual <= tolerance;
  return best;
}

Real
seed_space_bits(unsigned seed_len, const Real& p_mrp)
{
  if (p_mrp <= 0 || p_mrp > 1) {
    throw std::invalid_argument("p_MRP must lie in (0, 1]");
  }
  return Real(seed_len) + log(p_mrp) / log(Real(2));
}

Rational
rejection_prob_extra_bits(std::uint64_t q, unsigned m, unsigned x)
{
  if (m == 0 || m + x > 63) {
    throw std::invalid_argument("m + x must lie in [1, 63]");
  }
  if (q <= 1 || q >= (1ULL << m)) {
    throw std::invalid_argument("modulus " + std::to_string(q) +
                                " must lie in (1, 2^" + std::to_string(m) + ")");
  }
  Rational p_r = sample_rejection_prob(q, m + x);
  if (!(p_r < Rational(q, BigInt(1) << (m + x)) && p_r < Rational(1, BigInt(1) << x))) {
    throw std::logic_error("rejection bound violated");
  }
  return p_r;
}

double
MonteCarloResult::empirical_rate() const
{
  return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
}

double
MonteCarloResult::sigma() const
{
  const double p = analytic_failure.convert_to<double>();
  return std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
}

double
MonteCarloResult::z_score() const
{
  const double expected = static_cast<double>(trials) * analytic_failure.convert_to<double>();
  const double s = sigma();
  const double diff = static_cast<double>(failures) - expected;
  if (s == 0.0) {
    return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  }
  return diff / s;
}

bool
MonteCarloResult::agrees(double sigmas) const
{
  return std::abs(z_score()) <= sigmas;
}

MonteCarloResult
empirical_failure_rate(const GenParams& params,
                       std::size_t trials,
                       const SeedSource& seed_source,
                       unsigned threads)
{
  if (trials == 0) {
    throw std::invalid_argument("trials must be at least 1");
  }
  params.validate();

  std::vector<Seed> seeds(trials);
  for (auto& s : seeds) {
    s = seed_source();
  }

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<std::size_t> failures(threads, 0);
  auto work = [&](unsigned part) {
    for (std::size_t i = part; i < trials; i += threads) {
      if (!generate_mrp(seeds[i], params)) {
        ++failures[part];
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned p = 0; p < threads; ++p) {
      pool.emplace_back(work, p);
    }
  }

  MonteCarloResult result;
  result.trials = trials;
  for (const auto f : failures) {
    result.failures += f;
  }
  result.analytic_failure = analytic_mrp_success(params).complement;
  return result;
}

UniformityReport
chi_square_residues(std::span<const std::uint32_t> residues, std::uint32_t q, unsigned bins)
{
  if (bins < 2) {
    throw std::invalid_argument("chi-square needs at least 2 bins");
  }
  if (q < bins) {
    throw std::invalid_argument("modulus smaller than bin count");
  }
  if (residues.size() < 5ULL * bins) {
    throw std::invalid_argument("chi-square needs at least 5 samples per bin (" +
                                std::to_string(5ULL * bins) + "), got " +
                                std::to_string(residues.size()));
  }

  // Bin b holds residues r with floor(r * bins / q) == b; its width is
  // ceil((b + 1) q / bins) - ceil(b q / bins).
  auto ceil_div = [](std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; };
  std::vector<std::size_t> observed(bins, 0);
  for (const auto r : residues) {
    if (r >= q) {
      throw std::invalid_argument("residue out of range");
    }
    ++observed[static_cast<std::uint64_t>(r) * bins / q];
  }

  const double n = static_cast<double>(residues.size());
  double stat = 0.0;
  for (unsigned b = 0; b < bins; ++b) {
    const std::uint64_t width = ceil_div(static_cast<std::uint64_t>(b + 1) * q, bins) -
                                ceil_div(static_cast<std::uint64_t>(b) * q, bins);
    const double expected = n * static_cast<double>(width) / static_cast<double>(q);
    const double d = static_cast<double>(observed[b]) - expected;
    stat += d * d / expected;
  }

  UniformityReport report;
  report.q = q;
  report.sample_count = residues.size();
  report.statistic = stat;
  report.degrees_of_freedom = bins - 1;
  report.p_value = boost::math::gamma_q(report.degrees_of_freedom / 2.0, stat / 2.0);
  return report;
}

UniformityReport
chi_square_uniformity(const Limb& limb, unsigned bins)
{
  const auto residues = reduce_coeffs(limb);
  return chi_square_residues(residues, limb.q, bins);
}

} // namespace mrpgen
