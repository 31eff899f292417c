#pragma once

// First-order model of randomness-distribution cost in an accelerator with
// R parallel lanes: required generator throughput, and the wiring power and
// bandwidth density of serving it from one central unit versus from engines
// placed next to the lanes. Rates are bit/s and powers W; lengths stay in mm
// to match the energy unit J/(bit*mm).
namespace mrpgen {

struct CostParams
{
  double lanes = 16384;                 // R
  double word_bits = 32;                // w
  double clock_hz = 1e9;                // f
  double occupancy = 1.0 / 8.0;         // gamma, in (0, 1]
  double die_side_mm = 15.0;            // d
  double wire_energy_j_per_bit_mm = 40e-15; // E
  double local_hop_mm = 0.0;            // distributed engine to lane distance

  // Throws std::invalid_argument unless everything is positive (E and the
  // local hop may be zero), gamma <= 1 and the local hop is at most d / 2.
  void validate() const;

  friend bool operator==(const CostParams&, const CostParams&) = default;
};

// gamma * R * w * f [bit/s]
double required_throughput(const CostParams& p);

// TP * (d / 2) * E [W]: average Manhattan distance from a central unit.
double central_wiring_power(const CostParams& p);

// TP / (2 d) [bit/s per mm]: traffic split over both axes of the full die
// cross-section.
double per_axis_bandwidth_density(const CostParams& p);

// TP * local_hop * E [W]; zero with the default hop.
double distributed_wiring_power(const CostParams& p);

struct CostReport
{
  double throughput_bps = 0;
  double central_power_w = 0;
  double density_bps_per_mm = 0;
  double distributed_power_w = 0;
  double saving_w = 0;
};

CostReport evaluate_cost(const CostParams& p);

} // namespace mrpgen
