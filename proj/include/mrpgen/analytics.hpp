#pragma once
#include "mrpgen/numeric.hpp"
#include "mrpgen/sampling.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Success-probability model of segment, limb and polynomial generation, and
// statistical checks of generated output.
namespace mrpgen {

// A probability carried together with its complement. Both are computed
// directly (never as 1 - x of a value near 1), so tiny failure rates keep
// their significant digits.
struct Probability
{
  Real value;
  Real complement;

  static Probability certain() { return { Real(1), Real(0) }; }
};

// P[at least len of t words accepted], per-word rejection probability p_r.
// len > t gives 0.
Probability p_seg(const Real& p_r, unsigned t, unsigned len);
Probability p_seg(const Rational& p_r, unsigned t, unsigned len);

// p_seg^n_seg
Probability p_limb(const Probability& seg, std::uint64_t n_seg);

// p_limb_worst^L
Probability p_mrp_lower_bound(const Probability& limb_worst, std::uint64_t limb_count);

// Product of per-limb success probabilities.
Probability p_mrp_exact(std::span<const Probability> limbs);

struct SuccessModel
{
  unsigned t = 42;
  unsigned len = 32;
  std::uint64_t n_seg = 2048;
  std::uint64_t limb_count = 1;
  Rational p_r_worst;

  void validate() const;
  Probability segment() const;
  Probability limb() const;
  Probability mrp_bound() const;
};

// Exact success probability of generate_mrp for `params`, with each modulus
// contributing its own rejection probability.
Probability analytic_mrp_success(const GenParams& params);

// Largest p_r (to 2^-64) such that the bound failure 1 - p_limb_worst^L stays
// within max_fail. Throws std::domain_error when even p_r = 0 is infeasible.
Rational solve_p_r_max(unsigned t,
                       unsigned len,
                       std::uint64_t n_seg,
                       std::uint64_t limb_count,
                       const Real& max_fail);

// One published row of the supported-set statistics for N = 2^16, w = 32,
// HW_NAF <= 5: threshold, set size, per-bucket counts for buckets 20..32,
// segment length, and the stated MRP failure bound (percent).
struct ReferenceTableRow
{
  const char* p_r_max;
  std::size_t count;
  std::array<std::size_t, 13> histogram;
  unsigned len;
  const char* mrp_failure_percent;
};

inline constexpr unsigned kReferenceFirstBucket = 20;
const std::array<ReferenceTableRow, 4>& reference_table();

struct FitRow
{
  unsigned len = 0;
  Real p_r_max;
};

struct FitResult
{
  bool fits = false;
  std::uint64_t limb_count = 0;
  Real residual;
  std::vector<Real> solved;
};

// Searches L in [1, l_max] for the best max-abs agreement between
// solve_p_r_max(t, len, N / len, L, max_fail) and the given rows.
FitResult fit_limb_count(std::span<const FitRow> rows,
                         unsigned t,
                         std::uint64_t ring_dim,
                         const Real& max_fail,
                         const Real& tolerance,
                         std::uint64_t l_max = 200);

// seed_len + log2(p_mrp)
Real seed_space_bits(unsigned seed_len, const Real& p_mrp);

// (2^(m+x) mod q) / 2^(m+x) for q < 2^m; always below 2^-x.
Rational rejection_prob_extra_bits(std::uint64_t q, unsigned m, unsigned x);

struct MonteCarloResult
{
  std::size_t failures = 0;
  std::size_t trials = 0;
  Real analytic_failure;

  double empirical_rate() const;
  double sigma() const;
  double z_score() const;
  bool agrees(double sigmas = 4.0) const;
};

// Runs generate_mrp on `trials` seeds drawn from `seed_source` (drawn serially
// so the outcome does not depend on `threads`).
MonteCarloResult empirical_failure_rate(const GenParams& params,
                                        std::size_t trials,
                                        const SeedSource& seed_source,
                                        unsigned threads = 1);

struct UniformityReport
{
  std::uint32_t q = 0;
  std::size_t sample_count = 0;
  double statistic = 0.0;
  unsigned degrees_of_freedom = 0;
  double p_value = 0.0;
};

// Pearson chi-square of residues against the uniform law on [0, q), with
// residues grouped into `bins` equal-width classes.
UniformityReport chi_square_residues(std::span<const std::uint32_t> residues,
                                     std::uint32_t q,
                                     unsigned bins);
UniformityReport chi_square_uniformity(const Limb& limb, unsigned bins);

} // namespace mrpgen
