#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsat/angles.hpp"
#include "qsat/circuit.hpp"
#include "qsat/sat.hpp"

namespace qsat {

/// Ancilla qubits needed per clause phase separator: k - 3 for k > 3.
inline std::uint32_t ancillas_for_width(std::uint32_t k) { return k > 3 ? k - 3 : 0; }

/// Two-qubit gates per clause phase separator: 5 for k = 3, 4k - 8 above.
inline std::uint32_t two_qubit_gates_per_clause(std::uint32_t k) { return k == 3 ? 5 : 4 * k - 8; }

/// Where a clause block may place its ancillas and their measurement bits.
struct AncillaBank {
  std::uint32_t first_qubit = 0;
  std::uint32_t first_clbit = 0;
  std::uint32_t size = 0;
};

/// exp(+i gamma x_a x_b x_t) on three qubits: Rz(+-gamma/4) rotations around
/// four CX onto `target` and one Rzz(-gamma/4) between the controls.
std::vector<GateOp> ccphase(std::uint32_t control_a, std::uint32_t control_b, std::uint32_t target,
                            double gamma);

/// Relative-phase Toffoli (Margolus) followed by S-dagger. With the ancilla
/// in |0> this writes exactly a AND b into it.
std::vector<GateOp> relative_phase_and(std::uint32_t a, std::uint32_t b, std::uint32_t ancilla);

/// Innermost block of a k > 3 clause, entered with `ancilla` holding the AND
/// of `and_inputs`. Applies exp(+i gamma * ancilla * c0 * c1) for
/// phase_controls = (c0, c1) using three CX and one Rzz; the last CX of the
/// CCPhase ladder is left out, so the ancilla ends holding AND ^ c1. The
/// ancilla is then measured in the X basis (H, Measure into `clbit`) and
/// reset; outcome 1 triggers Z on c1 and CZ on the AND inputs, which removes
/// the (-1)^(m * (AND ^ c1)) kickback so the data qubits do not depend on
/// the outcome.
std::vector<GateOp> build_measurement_uncompute(std::uint32_t ancilla,
                                                std::array<std::uint32_t, 2> and_inputs,
                                                std::array<std::uint32_t, 2> phase_controls,
                                                double gamma, std::uint32_t clbit);

/// Measurement-based AND-dagger for an intermediate ancilla: H, Measure,
/// Reset, then CZ on the AND inputs conditioned on the outcome.
std::vector<GateOp> build_and_uncompute(std::uint32_t ancilla,
                                        std::array<std::uint32_t, 2> and_inputs,
                                        std::uint32_t clbit);

/// exp(-i gamma H_Cj) up to the global phase exp(-i gamma): X on every
/// positive-literal qubit, a (k-1)-controlled phase on the unique
/// unsatisfying pattern, X again. k = 3 uses ccphase directly; larger k
/// nests relative_phase_and into the bank ancillas and unwinds with
/// measurement-based uncomputation. Throws kBuilderError when the bank holds
/// fewer than k - 3 ancillas and kUnsupported for k < 3.
std::vector<GateOp> build_clause_ps(const Clause& clause, double gamma, const AncillaBank& bank);

struct QaoaCircuitOptions {
  bool terminal_measurement = true;
};

/// Full QAOA circuit: H on every variable qubit, then per round every
/// clause phase separator in instance order followed by Rx(2 beta) on every
/// variable, and finally Measure q_i -> c_i. Variables occupy qubits
/// [0, n); k > 3 appends a shared bank of k - 3 ancillas (reset after each
/// clause) whose outcomes land in clbits [n, n + k - 3).
Circuit build_qaoa_circuit(const KSatInstance& instance, const AngleSchedule& angles,
                           const QaoaCircuitOptions& options = {});

}  // namespace qsat
