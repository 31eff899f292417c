#include "mrpgen/cost_model.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mrpgen {
namespace {

TEST(CostModel, DefaultDesignPoint)
{
  const CostParams p;
  EXPECT_DOUBLE_EQ(required_throughput(p), 65.536e12);
  EXPECT_NEAR(central_wiring_power(p), 19.6608, 1e-9);
  EXPECT_NEAR(per_axis_bandwidth_density(p), 65.536e12 / 30.0, 1e-3);
  EXPECT_EQ(distributed_wiring_power(p), 0.0);
  const auto rep = evaluate_cost(p);
  EXPECT_EQ(rep.throughput_bps, required_throughput(p));
  EXPECT_EQ(rep.saving_w, rep.central_power_w - rep.distributed_power_w);
}

TEST(CostModel, HandComputedExample)
{
  CostParams p;
  p.lanes = 100;
  p.word_bits = 10;
  p.clock_hz = 2;
  p.occupancy = 0.5;
  p.die_side_mm = 4;
  p.wire_energy_j_per_bit_mm = 3;
  p.local_hop_mm = 1;
  EXPECT_DOUBLE_EQ(required_throughput(p), 1000.0);
  EXPECT_DOUBLE_EQ(central_wiring_power(p), 6000.0);
  EXPECT_DOUBLE_EQ(per_axis_bandwidth_density(p), 125.0);
  EXPECT_DOUBLE_EQ(distributed_wiring_power(p), 3000.0);
  EXPECT_DOUBLE_EQ(evaluate_cost(p).saving_w, 3000.0);
}

TEST(CostModel, LinearScaling)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const CostParams base;
  for (int i = 0; i < 100; ++i) {
    const double k = u(rng);
    CostParams p = base;
    p.lanes *= k;
    EXPECT_NEAR(required_throughput(p) / required_throughput(base), k, 1e-12);
    EXPECT_NEAR(central_wiring_power(p) / central_wiring_power(base), k, 1e-12);
    p = base;
    p.die_side_mm *= k;
    EXPECT_NEAR(central_wiring_power(p) / central_wiring_power(base), k, 1e-12);
    EXPECT_NEAR(per_axis_bandwidth_density(p) / per_axis_bandwidth_density(base), 1 / k, 1e-12);
  }
}

TEST(CostModel, DistributedNeverExceedsCentral)
{
  CostParams p;
  for (double hop = 0; hop <= p.die_side_mm / 2; hop += 0.5) {
    p.local_hop_mm = hop;
    EXPECT_LE(distributed_wiring_power(p), central_wiring_power(p) + 1e-12);
  }
}

TEST(CostModel, Validation)
{
  EXPECT_NO_THROW(CostParams{}.validate());
  const auto bad = [](auto mutate) {
    CostParams p;
    mutate(p);
    return p;
  };
  EXPECT_THROW(bad([](CostParams& p) { p.lanes = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](CostParams& p) { p.occupancy = 1.5; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](CostParams& p) { p.occupancy = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](CostParams& p) { p.die_side_mm = -1; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](CostParams& p) { p.wire_energy_j_per_bit_mm = -1; }).validate(),
               std::invalid_argument);
  EXPECT_THROW(bad([](CostParams& p) { p.local_hop_mm = 8; }).validate(), std::invalid_argument);
  EXPECT_THROW(evaluate_cost(bad([](CostParams& p) { p.clock_hz = 0; })), std::invalid_argument);
}

} // namespace
} // namespace mrpgen
