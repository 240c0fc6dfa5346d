#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsat/circuit.hpp"
#include "qsat/rng.hpp"
#include "qsat/sat.hpp"

namespace qsat {

using Amplitude = std::complex<double>;

/// 2^w amplitudes plus the classical register. Qubit q is bit q of the
/// basis index.
class Statevector {
 public:
  /// |0...0> with all classical bits cleared.
  explicit Statevector(std::uint32_t num_qubits, std::uint32_t num_clbits = 0);
  static Statevector from_amplitudes(std::vector<Amplitude> amplitudes, std::uint32_t num_clbits = 0);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  std::span<const std::uint8_t> clbits() const { return clbits_; }
  std::span<std::uint8_t> clbits() { return clbits_; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  std::uint32_t num_qubits_ = 0;
  std::vector<Amplitude> amps_;
  std::vector<std::uint8_t> clbits_;
};

struct ShotRecord {
  Assignment bitstring;                       // result bits, x_0 first
  std::vector<std::uint8_t> ancilla_outcomes;  // every mid-circuit outcome, in order
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> rounds;  // QAOA round count the shot belongs to, if known

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// Outcome overrides for mid-circuit measurements. Measurement i returns
/// outcomes[i % outcomes.size()]; an empty list means Born-rule sampling.
/// Terminal measurements and the implicit measurement inside Reset are
/// never forced.
struct BranchForcing {
  std::vector<std::uint8_t> outcomes;

  static BranchForcing all(std::uint8_t outcome) { return BranchForcing{{outcome}}; }
  bool active() const { return !outcomes.empty(); }
};

inline constexpr std::uint32_t kDefaultMaxQubits = 24;

struct SimulatorOptions {
  std::uint32_t max_qubits = kDefaultMaxQubits;
  BranchForcing forcing;
};

/// Per-run mutable state: the RNG, forcing cursor, and outcome log.
class ExecutionContext {
 public:
  explicit ExecutionContext(std::uint64_t seed, BranchForcing forcing = {});

  Rng& rng() { return rng_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const std::uint8_t> mid_circuit_outcomes() const { return outcomes_; }

  /// Measurements applied while this is set count as terminal (never forced,
  /// never logged as mid-circuit).
  void set_terminal(bool terminal) { terminal_ = terminal; }

 private:
  friend void apply_gate(Statevector&, const GateOp&, ExecutionContext&);
  Rng rng_;
  std::uint64_t seed_;
  BranchForcing forcing_;
  std::size_t next_forced_ = 0;
  std::vector<std::uint8_t> outcomes_;
  bool terminal_ = false;
};

/// Applies one instruction in place. Unitary gates act as usual; Measure
/// collapses by the Born rule (or the forced outcome) and writes its bit;
/// Reset measures and flips to |0>; a conditioned gate applies iff its bit
/// is 1. Throws kNumericalFailure if the norm drifts by more than 1e-9, or
/// when a forced outcome has zero probability.
void apply_gate(Statevector& state, const GateOp& gate, ExecutionContext& ctx);

struct RunResult {
  Statevector state;  // after terminal measurement (collapsed)
  ShotRecord shot;
};

/// Executes the whole circuit once.
RunResult run(const Circuit& circuit, std::uint64_t seed, const SimulatorOptions& options = {});

/// Executes everything before the trailing terminal-measurement block and
/// returns that state (the exact pre-measurement state for k = 3 circuits;
/// for circuits with feed-forward, the state of one branch).
Statevector prepare_state(const Circuit& circuit, std::uint64_t seed,
                          const SimulatorOptions& options = {});

/// Independent shots; shot i runs with seed mix_seed(seed, i). Circuits
/// without mid-circuit measurement are simulated once and their terminal
/// distribution is sampled per shot.
std::vector<ShotRecord> sample(const Circuit& circuit, std::size_t shots, std::uint64_t seed,
                               const SimulatorOptions& options = {});

/// sum_x |amp(x)|^2 C(x) where x is read from the instance's n low qubits.
double expectation_of(const Statevector& state, const KSatInstance& instance);

/// <H_C> from the gate-level simulation of `circuit` with its terminal
/// measurement stripped. Circuits with feed-forward use `options.forcing`
/// if given, otherwise Born-rule branches drawn from `seed`.
double exact_expectation_gate_level(const Circuit& circuit, const KSatInstance& instance,
                                    std::uint64_t seed = 0, const SimulatorOptions& options = {});

/// Dense unitary of a measurement-free, condition-free circuit, column j
/// being the image of basis state j (row-major storage: U[row * dim + col]).
std::vector<Amplitude> circuit_unitary(const Circuit& circuit);

/// {"bitstring":"0101","ancilla_outcomes":[..],"seed":N[,"p":P]}
std::string shot_to_json_line(const ShotRecord& shot);
ShotRecord shot_from_json_line(std::string_view line);
std::vector<ShotRecord> read_shots_jsonl(std::istream& in);

/// Raw little-endian (re, im) doubles, 2^w entries.
void write_state_dump(std::ostream& out, const Statevector& state);
Statevector read_state_dump(std::istream& in);

}  // namespace qsat
