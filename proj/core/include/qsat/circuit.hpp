#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsat {

enum class GateKind : std::uint8_t {
  kH,
  kX,
  kZ,
  kS,
  kSdg,
  kT,
  kTdg,
  kRx,
  kRy,
  kRz,
  kRzz,
  kCX,
  kCZ,
  kMeasure,
  kReset,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
bool is_two_qubit(GateKind kind);
bool is_rotation(GateKind kind);
inline bool is_unitary(GateKind kind) {
  return kind != GateKind::kMeasure && kind != GateKind::kReset;
}

/// One instruction. Rotation conventions: Rx/Ry/Rz(t) = exp(-i t/2 P) and
/// Rzz(t) = exp(-i t/2 Z(x)Z). For CX, qubits[0] is the control.
struct GateOp {
  GateKind kind = GateKind::kH;
  std::array<std::uint32_t, 2> qubits{0, 0};
  double angle = 0.0;
  std::uint32_t clbit = 0;                // Measure destination
  std::optional<std::uint32_t> condition;  // apply iff this bit reads 1

  std::size_t arity() const { return is_two_qubit(kind) ? 2 : 1; }
  std::span<const std::uint32_t> targets() const { return {qubits.data(), arity()}; }

  GateOp if_bit(std::uint32_t bit) const {
    GateOp g = *this;
    g.condition = bit;
    return g;
  }

  static GateOp one(GateKind kind, std::uint32_t q, double angle = 0.0) {
    GateOp g;
    g.kind = kind;
    g.qubits = {q, q};
    g.angle = angle;
    return g;
  }
  static GateOp two(GateKind kind, std::uint32_t a, std::uint32_t b, double angle = 0.0) {
    GateOp g;
    g.kind = kind;
    g.qubits = {a, b};
    g.angle = angle;
    return g;
  }
  static GateOp h(std::uint32_t q) { return one(GateKind::kH, q); }
  static GateOp x(std::uint32_t q) { return one(GateKind::kX, q); }
  static GateOp z(std::uint32_t q) { return one(GateKind::kZ, q); }
  static GateOp s(std::uint32_t q) { return one(GateKind::kS, q); }
  static GateOp sdg(std::uint32_t q) { return one(GateKind::kSdg, q); }
  static GateOp t(std::uint32_t q) { return one(GateKind::kT, q); }
  static GateOp tdg(std::uint32_t q) { return one(GateKind::kTdg, q); }
  static GateOp rx(std::uint32_t q, double a) { return one(GateKind::kRx, q, a); }
  static GateOp ry(std::uint32_t q, double a) { return one(GateKind::kRy, q, a); }
  static GateOp rz(std::uint32_t q, double a) { return one(GateKind::kRz, q, a); }
  static GateOp rzz(std::uint32_t a, std::uint32_t b, double t) { return two(GateKind::kRzz, a, b, t); }
  static GateOp cx(std::uint32_t c, std::uint32_t t) { return two(GateKind::kCX, c, t); }
  static GateOp cz(std::uint32_t a, std::uint32_t b) { return two(GateKind::kCZ, a, b); }
  static GateOp measure(std::uint32_t q, std::uint32_t bit) {
    GateOp g = one(GateKind::kMeasure, q);
    g.clbit = bit;
    return g;
  }
  static GateOp reset(std::uint32_t q) { return one(GateKind::kReset, q); }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct CircuitMetadata {
  std::string instance_id;
  std::uint32_t rounds = 0;
  std::string schedule_id;

  friend bool operator==(const CircuitMetadata&, const CircuitMetadata&) = default;
};

/// Ordered instruction list over num_qubits qubits and num_clbits classical
/// bits. The first result_bits classical bits hold the shot bitstring; any
/// others record mid-circuit measurements.
class Circuit {
 public:
  Circuit(std::uint32_t num_qubits, std::uint32_t num_clbits, std::uint32_t result_bits = 0);

  /// Validates qubit/clbit ranges, distinct operands, and that a condition
  /// reads a bit some earlier Measure has written.
  void append(const GateOp& op);
  void append(std::span<const GateOp> ops);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::uint32_t num_clbits() const { return num_clbits_; }
  std::uint32_t result_bits() const { return result_bits_; }
  std::span<const GateOp> ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  bool has_mid_circuit_measurement() const;
  /// Index of the first instruction of the trailing Measure block (ops().size()
  /// when the circuit does not end in measurements).
  std::size_t terminal_measurement_begin() const;

  CircuitMetadata& metadata() { return metadata_; }
  const CircuitMetadata& metadata() const { return metadata_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::uint32_t num_qubits_;
  std::uint32_t num_clbits_;
  std::uint32_t result_bits_;
  std::vector<GateOp> ops_;
  std::vector<bool> written_;
  CircuitMetadata metadata_;
};

struct GateCensus {
  std::size_t one_qubit_count = 0;  // unitary single-qubit gates
  std::size_t two_qubit_count = 0;  // CX, CZ, Rzz (conditioned or not)
  std::size_t measure_count = 0;
  std::size_t reset_count = 0;
  std::size_t depth = 0;

  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

/// Depth is the longest dependency chain where every instruction occupies
/// its qubits plus any classical bit it writes (Measure) or reads
/// (condition). Measure and Reset are depth-1 events like single-qubit gates.
GateCensus census(const Circuit& circuit);

/// JSON mirror of the IR (used for fixtures and the `build --format json`
/// output).
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view text);

}  // namespace qsat
