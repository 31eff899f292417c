#include "mrpgen/cost_model.hpp"

#include <cmath>
#include <stdexcept>

namespace mrpgen {

void
CostParams::validate() const
{
  auto positive = [](double v) { return std::isfinite(v) && v > 0; };
  auto non_negative = [](double v) { return std::isfinite(v) && v >= 0; };
  if (!positive(lanes) || !positive(word_bits) || !positive(clock_hz) ||
      !positive(die_side_mm)) {
    throw std::invalid_argument("R, w, f and d must be positive");
  }
  if (!positive(occupancy) || occupancy > 1) {
    throw std::invalid_argument("gamma must lie in (0, 1]");
  }
  if (!non_negative(wire_energy_j_per_bit_mm) || !non_negative(local_hop_mm)) {
    throw std::invalid_argument("E and the local hop must be non-negative");
  }
  if (local_hop_mm > die_side_mm / 2) {
    throw std::invalid_argument("local hop must not exceed d / 2");
  }
}

double
required_throughput(const CostParams& p)
{
  p.validate();
  return p.occupancy * p.lanes * p.word_bits * p.clock_hz;
}

double
central_wiring_power(const CostParams& p)
{
  return required_throughput(p) * (p.die_side_mm / 2.0) * p.wire_energy_j_per_bit_mm;
}

double
per_axis_bandwidth_density(const CostParams& p)
{
  return required_throughput(p) / (2.0 * p.die_side_mm);
}

double
distributed_wiring_power(const CostParams& p)
{
  return required_throughput(p) * p.local_hop_mm * p.wire_energy_j_per_bit_mm;
}

CostReport
evaluate_cost(const CostParams& p)
{
  CostReport r;
  r.throughput_bps = required_throughput(p);
  r.central_power_w = central_wiring_power(p);
  r.density_bps_per_mm = per_axis_bandwidth_density(p);
  r.distributed_power_w = distributed_wiring_power(p);
  r.saving_w = r.central_power_w - r.distributed_power_w;
  return r;
}

} // namespace mrpgen
