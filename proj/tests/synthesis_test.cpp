#include "qsat/synthesis.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "clause_harness.hpp"
#include "oracles/dense_oracle.hpp"
#include "qsat/error.hpp"
#include "qsat/fastsim.hpp"
#include "qsat/simulator.hpp"
#include "test_util.hpp"

namespace qsat {
namespace {

constexpr double kTol = 1e-10;

std::size_t two_qubit_count(const std::vector<GateOp>& ops) {
  return static_cast<std::size_t>(std::count_if(ops.begin(), ops.end(), [](const GateOp& g) { return is_two_qubit(g.kind); }));
}

Circuit as_circuit(std::uint32_t w, const std::vector<GateOp>& ops) {
  Circuit c(w, 0);
  c.append(ops);
  return c;
}

TEST(CCPhaseTest, PhasesOnlyAllOnes) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const double gamma = 2 * std::numbers::pi * rng.uniform01();
    const auto u = oracle::circuit_matrix(as_circuit(3, ccphase(0, 1, 2, gamma)));
    std::vector<oracle::cd> diag(8, 1.0);
    diag[7] = std::exp(oracle::cd{0.0, gamma});
    EXPECT_LT(oracle::distance_to_diagonal(u.a, 8, diag), kTol);
  }
  EXPECT_EQ(two_qubit_count(ccphase(0, 1, 2, 0.3)), 5u);
}

TEST(RelativePhaseAndTest, WritesExactAndForCleanAncilla) {
  const auto u = oracle::circuit_matrix(as_circuit(3, relative_phase_and(0, 1, 2)));
  for (std::size_t x = 0; x < 4; ++x) {
    const std::size_t expected = x | (((x & 1) && (x & 2)) ? 4 : 0);
    for (std::size_t r = 0; r < 8; ++r) {
      EXPECT_NEAR(std::abs(u(r, x) - (r == expected ? 1.0 : 0.0)), 0.0, kTol) << x << "->" << r;
    }
  }
  EXPECT_EQ(two_qubit_count(relative_phase_and(0, 1, 2)), 3u);
}

TEST(ClauseTest, ThreeSatBlockMatchesDiagonalOracle) {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.uniform_below(3));
    const Clause clause = testing::random_clause(rng, n, 3);
    for (int g = 0; g < 20; ++g) {
      const double gamma = 2 * std::numbers::pi * rng.uniform01();
      const auto ops = build_clause_ps(clause, gamma, {});
      const auto u = circuit_unitary(as_circuit(n, ops));
      EXPECT_LT(oracle::distance_to_diagonal(u, std::size_t{1} << n, oracle::clause_diagonal(clause, gamma, n)), kTol);
    }
  }
}

TEST(ClauseTest, SimulatorUnitaryMatchesDenseProduct) {
  Rng rng(3);
  const Clause clause = testing::random_clause(rng, 4, 3);
  const Circuit c = as_circuit(4, build_clause_ps(clause, 1.234, {}));
  const auto mine = circuit_unitary(c);
  const auto ref = oracle::circuit_matrix(c);
  for (std::size_t i = 0; i < mine.size(); ++i) EXPECT_LT(std::abs(mine[i] - ref.a[i]), 1e-12);
}

TEST(ClauseTest, ZeroGammaIsIdentity) {
  Rng rng(4);
  for (std::uint32_t k : {3u, 4u, 5u}) {
    const Clause clause = testing::random_clause(rng, k + 1, k);
    const auto psi = testing::random_data_state(rng, k + 1);
    const auto r = testing::run_clause_block(clause, 0.0, k + 1, psi, {1});
    EXPECT_LT(oracle::phase_aligned_distance(r.data, psi), kTol);
  }
}

TEST(ClauseTest, GateCounts) {
  Rng rng(5);
  EXPECT_EQ(two_qubit_count(build_clause_ps(testing::random_clause(rng, 6, 3), 0.4, {})), 5u);
  for (std::uint32_t k = 4; k <= 7; ++k) {
    const Clause clause = testing::random_clause(rng, 8, k);
    const auto ops = build_clause_ps(clause, 0.4, AncillaBank{8, 0, k - 3});
    EXPECT_EQ(two_qubit_count(ops), 4 * k - 8) << "k=" << k;
    EXPECT_EQ(two_qubit_gates_per_clause(k), 4 * k - 8);
    EXPECT_EQ(ancillas_for_width(k), k - 3);
  }
  EXPECT_EQ(two_qubit_gates_per_clause(3), 5u);
}

TEST(ClauseTest, Errors) {
  Rng rng(6);
  const Clause c2({{0, false}, {1, true}});
  try {
    build_clause_ps(c2, 0.1, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
  try {
    build_clause_ps(testing::random_clause(rng, 6, 5), 0.1, AncillaBank{6, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBuilderError);
  }
}

// Every branch of the measurement-based uncomputation lands on the oracle
// state with the ancillas back in |0>.
TEST(ClauseTest, FeedForwardBranchesMatchOracle) {
  Rng rng(7);
  for (std::uint32_t k = 4; k <= 6; ++k) {
    for (int t = 0; t < 10; ++t) {
      const std::uint32_t n = k + static_cast<std::uint32_t>(rng.uniform_below(2));
      const Clause clause = testing::random_clause(rng, n, k);
      const double gamma = 2 * std::numbers::pi * rng.uniform01();
      const auto psi = testing::random_data_state(rng, n);
      const auto expected = testing::oracle_phased(clause, gamma, n, psi);
      const std::uint32_t mids = k - 3;
      for (std::uint32_t pattern = 0; pattern < (1u << mids); ++pattern) {
        std::vector<std::uint8_t> forced;
        for (std::uint32_t i = 0; i < mids; ++i) forced.push_back((pattern >> i) & 1);
        const auto r = testing::run_clause_block(clause, gamma, n, psi, forced);
        EXPECT_EQ(r.outcomes, forced);
        EXPECT_LT(r.ancilla_leakage, 1e-20);
        EXPECT_LT(oracle::phase_aligned_distance(r.data, expected), kTol) << "k=" << k << " pattern=" << pattern;
      }
    }
  }
}

TEST(ClauseTest, BornRuleBranchesMatchOracle) {
  Rng rng(8);
  const Clause clause = testing::random_clause(rng, 5, 4);
  const auto psi = testing::random_data_state(rng, 5);
  const auto expected = testing::oracle_phased(clause, 0.77, 5, psi);
  std::set<std::uint8_t> seen;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    std::vector<Amplitude> full(64);
    std::copy(psi.begin(), psi.end(), full.begin());
    Statevector state = Statevector::from_amplitudes(full, 1);
    ExecutionContext ctx(seed);
    for (const GateOp& g : build_clause_ps(clause, 0.77, AncillaBank{5, 0, 1})) apply_gate(state, g, ctx);
    seen.insert(ctx.mid_circuit_outcomes()[0]);
    std::vector<Amplitude> data(state.amplitudes().begin(), state.amplitudes().begin() + 32);
    EXPECT_LT(oracle::phase_aligned_distance(data, expected), kTol);
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(QaoaCircuitTest, TwentyNPTwoQubitGates) {
  const KSatInstance inst = generate_random_ksat(6, 3, 4.0, 17);
  const Circuit c = build_qaoa_circuit(inst, AngleSchedule({0.2}, {0.1}));
  EXPECT_EQ(census(c).two_qubit_count, 120u);
  EXPECT_EQ(c.num_qubits(), 6u);
  EXPECT_EQ(c.result_bits(), 6u);
  EXPECT_EQ(c.metadata().instance_id, inst.id());
  EXPECT_EQ(c.metadata().rounds, 1u);
}

TEST(QaoaCircuitTest, FourSatUsesOneSharedAncilla) {
  const KSatInstance inst = generate_random_ksat(4, 4, 1.0, 3);
  const Circuit c = build_qaoa_circuit(inst, AngleSchedule({0.2}, {0.1}));
  EXPECT_EQ(census(c).two_qubit_count, 32u);
  EXPECT_EQ(c.num_qubits(), 5u);
  EXPECT_EQ(census(c).reset_count, 4u);
}

TEST(QaoaCircuitTest, ZeroAnglesGiveUniformOutput) {
  for (std::uint32_t k : {3u, 4u}) {
    const KSatInstance inst = generate_random_ksat(5, k, 2.0, 9);
    const Statevector s = prepare_state(build_qaoa_circuit(inst, AngleSchedule::zeros(1)), 0);
    const auto probs = s.probabilities();
    for (std::size_t x = 0; x < 32; ++x) EXPECT_NEAR(probs[x], 1.0 / 32, 1e-12);
  }
}

TEST(QaoaCircuitTest, LayoutHadamardsRoundsThenMeasure) {
  const KSatInstance inst = testing::worked_example();
  const Circuit c = build_qaoa_circuit(inst, AngleSchedule({0.2, 0.3}, {0.1, 0.4}));
  for (std::uint32_t q = 0; q < 3; ++q) EXPECT_EQ(c.ops()[q], GateOp::h(q));
  const auto ops = c.ops();
  for (std::uint32_t q = 0; q < 3; ++q) {
    EXPECT_EQ(ops[ops.size() - 3 + q], GateOp::measure(q, q));
    EXPECT_EQ(ops[ops.size() - 6 + q], GateOp::rx(q, 0.8));
  }
  QaoaCircuitOptions no_measure;
  no_measure.terminal_measurement = false;
  EXPECT_EQ(build_qaoa_circuit(inst, AngleSchedule({0.2}, {0.1}), no_measure).ops().back().kind, GateKind::kRx);
}

TEST(QaoaCircuitTest, RejectsNarrowClauses) {
  const KSatInstance inst(3, 2, {Clause({{0, false}, {1, false}})});
  EXPECT_THROW(build_qaoa_circuit(inst, AngleSchedule({0.1}, {0.1})), Error);
}

// Clause phase separators commute, so reordering clauses changes the state
// by at most a global phase.
TEST(QaoaCircuitTest, ClauseOrderIsIrrelevant) {
  Rng rng(10);
  for (std::uint32_t k : {3u, 4u}) {
    for (int t = 0; t < 5; ++t) {
      const KSatInstance inst = generate_random_ksat(6, k, 2.0, rng.next_u64());
      std::vector<Clause> shuffled(inst.clauses().begin(), inst.clauses().end());
      for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.uniform_below(i)]);
      const KSatInstance other(inst.num_variables(), k, shuffled);
      const AngleSchedule angles({rng.uniform01() * 3, rng.uniform01() * 3}, {rng.uniform01(), rng.uniform01()});
      SimulatorOptions forced;
      forced.forcing = BranchForcing::all(0);
      const Statevector a = prepare_state(build_qaoa_circuit(inst, angles), 0, forced);
      const Statevector b = prepare_state(build_qaoa_circuit(other, angles), 0, forced);
      const auto pa = a.probabilities();
      const auto pb = b.probabilities();
      for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_NEAR(pa[i], pb[i], kTol);
      EXPECT_LT(oracle::phase_aligned_distance(a.amplitudes(), b.amplitudes()), kTol);
    }
  }
}

}  // namespace
}  // namespace qsat
