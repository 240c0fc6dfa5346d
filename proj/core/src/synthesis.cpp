#include "qsat/synthesis.hpp"

#include "qsat/error.hpp"

namespace qsat {

std::vector<GateOp> ccphase(std::uint32_t a, std::uint32_t b, std::uint32_t t, double gamma) {
  const double q = gamma / 4.0;
  return {
      GateOp::rz(a, q),      GateOp::rz(b, q),  GateOp::rz(t, q),
      GateOp::cx(a, t),      GateOp::rz(t, -q),
      GateOp::cx(b, t),      GateOp::rz(t, q),
      GateOp::cx(a, t),      GateOp::rz(t, -q),
      GateOp::cx(b, t),
      GateOp::rzz(a, b, -q),
  };
}

std::vector<GateOp> relative_phase_and(std::uint32_t a, std::uint32_t b, std::uint32_t anc) {
  return {
      GateOp::h(anc),   GateOp::t(anc),   GateOp::cx(b, anc), GateOp::tdg(anc),
      GateOp::cx(a, anc), GateOp::t(anc), GateOp::cx(b, anc), GateOp::tdg(anc),
      GateOp::h(anc),   GateOp::sdg(anc),
  };
}

std::vector<GateOp> build_measurement_uncompute(std::uint32_t anc,
                                                std::array<std::uint32_t, 2> and_inputs,
                                                std::array<std::uint32_t, 2> phase_controls,
                                                double gamma, std::uint32_t clbit) {
  const auto [c0, c1] = phase_controls;
  const double q = gamma / 4.0;
  return {
      GateOp::rz(c0, q),   GateOp::rz(c1, q), GateOp::rz(anc, q),
      GateOp::cx(c0, anc), GateOp::rz(anc, -q),
      GateOp::cx(c1, anc), GateOp::rz(anc, q),
      GateOp::cx(c0, anc), GateOp::rz(anc, -q),
      GateOp::rzz(c0, c1, -q),
      GateOp::h(anc),
      GateOp::measure(anc, clbit),
      GateOp::reset(anc),
      GateOp::z(c1).if_bit(clbit),
      GateOp::cz(and_inputs[0], and_inputs[1]).if_bit(clbit),
  };
}

std::vector<GateOp> build_and_uncompute(std::uint32_t anc, std::array<std::uint32_t, 2> and_inputs,
                                        std::uint32_t clbit) {
  return {
      GateOp::h(anc),
      GateOp::measure(anc, clbit),
      GateOp::reset(anc),
      GateOp::cz(and_inputs[0], and_inputs[1]).if_bit(clbit),
  };
}

std::vector<GateOp> build_clause_ps(const Clause& clause, double gamma, const AncillaBank& bank) {
  const auto k = static_cast<std::uint32_t>(clause.width());
  if (k < 3) throw Error(ErrorCode::kUnsupported, "clause phase separators need k >= 3");
  const std::uint32_t needed = ancillas_for_width(k);
  if (bank.size < needed) {
    throw Error(ErrorCode::kBuilderError, "clause of width " + std::to_string(k) + " needs " +
                                              std::to_string(needed) + " ancillas, bank has " +
                                              std::to_string(bank.size));
  }

  std::vector<std::uint32_t> ctl;
  for (const Literal& lit : clause.literals()) ctl.push_back(lit.variable);

  std::vector<GateOp> ops;
  auto emit = [&ops](const std::vector<GateOp>& block) {
    ops.insert(ops.end(), block.begin(), block.end());
  };
  auto flip_positive = [&] {
    for (const Literal& lit : clause.literals()) {
      if (!lit.negated) ops.push_back(GateOp::x(lit.variable));
    }
  };

  flip_positive();
  if (k == 3) {
    emit(ccphase(ctl[0], ctl[1], ctl[2], gamma));
  } else {
    // Level i ANDs (previous result, next control) into ancilla i; the
    // innermost ancilla becomes the CCPhase target.
    const std::uint32_t levels = needed;
    std::vector<std::array<std::uint32_t, 2>> inputs(levels);
    for (std::uint32_t i = 0; i < levels; ++i) {
      const std::uint32_t anc = bank.first_qubit + i;
      inputs[i] = i == 0 ? std::array{ctl[0], ctl[1]} : std::array{bank.first_qubit + i - 1, ctl[i + 1]};
      emit(relative_phase_and(inputs[i][0], inputs[i][1], anc));
    }
    const std::uint32_t inner = levels - 1;
    emit(build_measurement_uncompute(bank.first_qubit + inner, inputs[inner],
                                     {ctl[k - 2], ctl[k - 1]}, gamma, bank.first_clbit + inner));
    for (std::uint32_t i = inner; i-- > 0;) {
      emit(build_and_uncompute(bank.first_qubit + i, inputs[i], bank.first_clbit + i));
    }
  }
  flip_positive();
  return ops;
}

Circuit build_qaoa_circuit(const KSatInstance& instance, const AngleSchedule& angles,
                           const QaoaCircuitOptions& options) {
  angles.validate();
  const std::uint32_t k = instance.clause_width();
  if (k < 3) throw Error(ErrorCode::kUnsupported, "QAOA circuit synthesis needs k >= 3");
  const std::uint32_t n = instance.num_variables();
  const std::uint32_t anc = ancillas_for_width(k);

  Circuit circuit(n + anc, n + anc, n);
  circuit.metadata().instance_id = instance.id();
  circuit.metadata().rounds = static_cast<std::uint32_t>(angles.rounds());

  const AncillaBank bank{n, n, anc};
  for (std::uint32_t q = 0; q < n; ++q) circuit.append(GateOp::h(q));
  for (std::size_t r = 0; r < angles.rounds(); ++r) {
    for (const Clause& clause : instance.clauses()) {
      circuit.append(build_clause_ps(clause, angles.gammas[r], bank));
    }
    for (std::uint32_t q = 0; q < n; ++q) circuit.append(GateOp::rx(q, 2.0 * angles.betas[r]));
  }
  if (options.terminal_measurement) {
    for (std::uint32_t q = 0; q < n; ++q) circuit.append(GateOp::measure(q, q));
  }
  return circuit;
}

}  // namespace qsat
