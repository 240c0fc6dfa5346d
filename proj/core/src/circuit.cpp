#include "qsat/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "qsat/angles.hpp"
#include "qsat/error.hpp"

namespace qsat {

AngleSchedule::AngleSchedule(std::vector<double> g, std::vector<double> b)
    : gammas(std::move(g)), betas(std::move(b)) {
  validate();
}

void AngleSchedule::validate() const {
  if (gammas.empty()) throw Error(ErrorCode::kInvalidParameters, "angle schedule needs p >= 1");
  if (gammas.size() != betas.size()) {
    throw Error(ErrorCode::kInvalidParameters, "gamma and beta vectors differ in length");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(gammas.begin(), gammas.end(), finite) ||
      !std::all_of(betas.begin(), betas.end(), finite)) {
    throw Error(ErrorCode::kInvalidParameters, "angles must be finite");
  }
}

AngleSchedule AngleSchedule::zeros(std::size_t p) {
  return AngleSchedule(std::vector<double>(p, 0.0), std::vector<double>(p, 0.0));
}

std::vector<double> AngleSchedule::flatten() const {
  std::vector<double> x(gammas);
  x.insert(x.end(), betas.begin(), betas.end());
  return x;
}

AngleSchedule AngleSchedule::unflatten(const std::vector<double>& x) {
  if (x.size() % 2 != 0) throw Error(ErrorCode::kInvalidParameters, "odd flattened angle vector");
  const auto p = static_cast<std::ptrdiff_t>(x.size() / 2);
  return AngleSchedule(std::vector<double>(x.begin(), x.begin() + p),
                       std::vector<double>(x.begin() + p, x.end()));
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "h";
    case GateKind::kX: return "x";
    case GateKind::kZ: return "z";
    case GateKind::kS: return "s";
    case GateKind::kSdg: return "sdg";
    case GateKind::kT: return "t";
    case GateKind::kTdg: return "tdg";
    case GateKind::kRx: return "rx";
    case GateKind::kRy: return "ry";
    case GateKind::kRz: return "rz";
    case GateKind::kRzz: return "rzz";
    case GateKind::kCX: return "cx";
    case GateKind::kCZ: return "cz";
    case GateKind::kMeasure: return "measure";
    case GateKind::kReset: return "reset";
  }
  return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  static constexpr GateKind kAll[] = {
      GateKind::kH,  GateKind::kX,  GateKind::kZ,   GateKind::kS,   GateKind::kSdg,
      GateKind::kT,  GateKind::kTdg, GateKind::kRx, GateKind::kRy,  GateKind::kRz,
      GateKind::kRzz, GateKind::kCX, GateKind::kCZ, GateKind::kMeasure, GateKind::kReset};
  for (GateKind k : kAll) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::kRzz || kind == GateKind::kCX || kind == GateKind::kCZ;
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::kRx || kind == GateKind::kRy || kind == GateKind::kRz ||
         kind == GateKind::kRzz;
}

Circuit::Circuit(std::uint32_t num_qubits, std::uint32_t num_clbits, std::uint32_t result_bits)
    : num_qubits_(num_qubits),
      num_clbits_(num_clbits),
      result_bits_(result_bits),
      written_(num_clbits, false) {
  if (result_bits_ > num_clbits_) {
    throw Error(ErrorCode::kInvalidCircuit, "result bits exceed classical register");
  }
}

void Circuit::append(const GateOp& op) {
  for (std::uint32_t q : op.targets()) {
    if (q >= num_qubits_) {
      throw Error(ErrorCode::kInvalidCircuit, std::string(gate_name(op.kind)) + " on qubit " +
                                                  std::to_string(q) + " outside width " +
                                                  std::to_string(num_qubits_));
    }
  }
  if (op.arity() == 2 && op.qubits[0] == op.qubits[1]) {
    throw Error(ErrorCode::kInvalidCircuit, "two-qubit gate with repeated operand");
  }
  if (op.condition) {
    if (*op.condition >= num_clbits_ || !written_[*op.condition]) {
      throw Error(ErrorCode::kInvalidCircuit,
                  "condition reads clbit " + std::to_string(*op.condition) +
                      " before any measurement wrote it");
    }
  }
  if (op.kind == GateKind::kMeasure) {
    if (op.clbit >= num_clbits_) throw Error(ErrorCode::kInvalidCircuit, "measure target out of range");
    written_[op.clbit] = true;
  }
  ops_.push_back(op);
}

void Circuit::append(std::span<const GateOp> ops) {
  for (const GateOp& op : ops) append(op);
}

std::size_t Circuit::terminal_measurement_begin() const {
  std::size_t i = ops_.size();
  while (i > 0 && ops_[i - 1].kind == GateKind::kMeasure && !ops_[i - 1].condition) --i;
  return i;
}

bool Circuit::has_mid_circuit_measurement() const {
  const std::size_t end = terminal_measurement_begin();
  for (std::size_t i = 0; i < end; ++i) {
    if (ops_[i].kind == GateKind::kMeasure || ops_[i].kind == GateKind::kReset) return true;
  }
  return false;
}

GateCensus census(const Circuit& circuit) {
  GateCensus c;
  std::vector<std::size_t> qubit_level(circuit.num_qubits(), 0);
  std::vector<std::size_t> clbit_level(circuit.num_clbits(), 0);
  for (const GateOp& op : circuit.ops()) {
    if (op.kind == GateKind::kMeasure) {
      ++c.measure_count;
    } else if (op.kind == GateKind::kReset) {
      ++c.reset_count;
    } else if (is_two_qubit(op.kind)) {
      ++c.two_qubit_count;
    } else {
      ++c.one_qubit_count;
    }
    std::size_t level = 0;
    for (std::uint32_t q : op.targets()) level = std::max(level, qubit_level[q]);
    if (op.condition) level = std::max(level, clbit_level[*op.condition]);
    if (op.kind == GateKind::kMeasure) level = std::max(level, clbit_level[op.clbit]);
    ++level;
    for (std::uint32_t q : op.targets()) qubit_level[q] = level;
    if (op.condition) clbit_level[*op.condition] = level;
    if (op.kind == GateKind::kMeasure) clbit_level[op.clbit] = level;
    c.depth = std::max(c.depth, level);
  }
  return c;
}

}  // namespace qsat
