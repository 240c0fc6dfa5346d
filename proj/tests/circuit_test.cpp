#include "qsat/circuit.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "qsat/angles.hpp"
#include "qsat/error.hpp"
#include "qsat/sat.hpp"
#include "qsat/synthesis.hpp"
#include "test_util.hpp"

namespace qsat {
namespace {

TEST(AngleScheduleTest, Validation) {
  EXPECT_THROW(AngleSchedule({}, {}), Error);
  EXPECT_THROW(AngleSchedule({0.1, 0.2}, {0.1}), Error);
  EXPECT_THROW(AngleSchedule({std::nan("")}, {0.1}), Error);
  const AngleSchedule s({0.1, 0.2}, {0.3, 0.4});
  EXPECT_EQ(s.rounds(), 2u);
  EXPECT_EQ(s.flatten(), (std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(AngleSchedule::unflatten(s.flatten()), s);
  EXPECT_EQ(AngleSchedule::zeros(3).gammas, (std::vector<double>{0, 0, 0}));
}

TEST(GateTest, NamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(GateKind::kReset); ++k) {
    const auto kind = static_cast<GateKind>(k);
    EXPECT_EQ(gate_from_name(gate_name(kind)), kind);
  }
  EXPECT_FALSE(gate_from_name("ccx").has_value());
  EXPECT_TRUE(is_two_qubit(GateKind::kRzz));
  EXPECT_FALSE(is_two_qubit(GateKind::kMeasure));
}

TEST(CircuitTest, AppendValidates) {
  Circuit c(3, 2);
  EXPECT_THROW(c.append(GateOp::h(3)), Error);
  EXPECT_THROW(c.append(GateOp::cx(1, 1)), Error);
  EXPECT_THROW(c.append(GateOp::measure(0, 2)), Error);
  EXPECT_THROW(c.append(GateOp::z(0).if_bit(0)), Error);  // bit 0 never written
  c.append(GateOp::measure(0, 0));
  EXPECT_NO_THROW(c.append(GateOp::z(1).if_bit(0)));
  EXPECT_THROW(c.append(GateOp::z(1).if_bit(5)), Error);
  EXPECT_THROW(Circuit(2, 1, 2), Error);
}

TEST(CensusTest, EmptyCircuit) {
  EXPECT_EQ(census(Circuit(4, 0)), GateCensus{});
}

TEST(CensusTest, CountsAndDepth) {
  Circuit c(3, 3, 3);
  c.append(GateOp::h(0));
  c.append(GateOp::h(1));
  c.append(GateOp::cx(0, 1));
  c.append(GateOp::rzz(1, 2, 0.3));
  c.append(GateOp::rz(0, 0.1));
  c.append(GateOp::measure(0, 0));
  c.append(GateOp::reset(0));
  c.append(GateOp::cz(1, 2).if_bit(0));
  const GateCensus g = census(c);
  EXPECT_EQ(g.one_qubit_count, 3u);
  EXPECT_EQ(g.two_qubit_count, 3u);
  EXPECT_EQ(g.measure_count, 1u);
  EXPECT_EQ(g.reset_count, 1u);
  // Longest chains: h cx rz measure reset, and h cx rz measure cz (cz reads bit 0).
  EXPECT_EQ(g.depth, 5u);
  EXPECT_LE(g.depth, c.size());
}

TEST(CensusTest, DepthCountsParallelLayersOnce) {
  Circuit c(4, 0);
  for (std::uint32_t q = 0; q < 4; ++q) c.append(GateOp::h(q));
  c.append(GateOp::cx(0, 1));
  c.append(GateOp::cx(2, 3));
  EXPECT_EQ(census(c).depth, 2u);
}

TEST(CensusTest, TwoQubitCountScalesWithRounds) {
  const KSatInstance inst = generate_random_ksat(8, 3, 4.0, 2);
  for (std::size_t p = 1; p <= 10; ++p) {
    const Circuit c = build_qaoa_circuit(inst, AngleSchedule::zeros(p));
    EXPECT_EQ(census(c).two_qubit_count, 160 * p);
  }
}

TEST(CensusTest, DepthStaysInABandAcrossSizes) {
  std::vector<double> mean_depths;
  for (std::uint32_t n = 6; n <= 20; ++n) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const KSatInstance inst = generate_random_ksat(n, 3, 4.0, seed);
      sum += static_cast<double>(census(build_qaoa_circuit(inst, AngleSchedule({0.3}, {0.2}))).depth);
    }
    mean_depths.push_back(sum / 5.0);
  }
  const auto [lo, hi] = std::minmax_element(mean_depths.begin(), mean_depths.end());
  EXPECT_LT(*hi / *lo, 1.25) << "min " << *lo << " max " << *hi;
}

TEST(CircuitJsonTest, RoundTrip) {
  Circuit c(3, 4, 2);
  c.append(GateOp::h(0));
  c.append(GateOp::rzz(0, 2, -0.25));
  c.append(GateOp::measure(2, 3));
  c.append(GateOp::reset(2));
  c.append(GateOp::cz(0, 1).if_bit(3));
  c.append(GateOp::measure(0, 0));
  c.metadata().instance_id = "abc";
  c.metadata().rounds = 2;
  c.metadata().schedule_id = "abc:p2";
  const Circuit back = circuit_from_json(circuit_to_json(c));
  EXPECT_EQ(back, c);
}

TEST(CircuitJsonTest, RejectsGarbage) {
  EXPECT_THROW(circuit_from_json("{}"), Error);
  EXPECT_THROW(circuit_from_json("[1,2"), Error);
}

TEST(CircuitTest, TerminalMeasurementBlock) {
  const Circuit c = build_qaoa_circuit(testing::worked_example(), AngleSchedule({0.1}, {0.2}));
  EXPECT_EQ(c.terminal_measurement_begin(), c.size() - 3);
  EXPECT_FALSE(c.has_mid_circuit_measurement());
  const Circuit k4 = build_qaoa_circuit(generate_random_ksat(4, 4, 1.0, 0), AngleSchedule({0.1}, {0.2}));
  EXPECT_TRUE(k4.has_mid_circuit_measurement());
}

}  // namespace
}  // namespace qsat
