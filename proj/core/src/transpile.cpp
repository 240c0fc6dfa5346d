#include "qsat/transpile.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qsat/error.hpp"

namespace qsat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFuseTolerance = 1e-12;

// Wraps into (-pi, pi]; rotations differing by 2*pi agree up to a sign.
double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

void lower_gate(const GateOp& op, Gateset target, std::vector<GateOp>& out) {
  const auto emit = [&](GateOp g) {
    g.condition = op.condition;
    out.push_back(g);
  };
  const std::uint32_t a = op.qubits[0];
  const std::uint32_t b = op.qubits[1];
  switch (op.kind) {
    case GateKind::kH:
      emit(GateOp::rz(a, kPi));
      emit(GateOp::ry(a, kPi / 2));
      return;
    case GateKind::kX: emit(GateOp::rx(a, kPi)); return;
    case GateKind::kZ: emit(GateOp::rz(a, kPi)); return;
    case GateKind::kS: emit(GateOp::rz(a, kPi / 2)); return;
    case GateKind::kSdg: emit(GateOp::rz(a, -kPi / 2)); return;
    case GateKind::kT: emit(GateOp::rz(a, kPi / 4)); return;
    case GateKind::kTdg: emit(GateOp::rz(a, -kPi / 4)); return;
    case GateKind::kRx:
    case GateKind::kRy:
    case GateKind::kRz:
    case GateKind::kMeasure:
    case GateKind::kReset:
      out.push_back(op);
      return;
    case GateKind::kCZ:
      if (target == Gateset::kRzz) {
        emit(GateOp::rzz(a, b, kPi / 2));
        emit(GateOp::rz(a, -kPi / 2));
        emit(GateOp::rz(b, -kPi / 2));
      } else {
        emit(GateOp::ry(b, kPi / 2));
        emit(GateOp::cx(a, b));
        emit(GateOp::ry(b, -kPi / 2));
      }
      return;
    case GateKind::kCX:
      if (target == Gateset::kRzz) {
        // CX = Ry_t(pi/2) CZ Ry_t(-pi/2)
        emit(GateOp::ry(b, -kPi / 2));
        emit(GateOp::rzz(a, b, kPi / 2));
        emit(GateOp::rz(a, -kPi / 2));
        emit(GateOp::rz(b, -kPi / 2));
        emit(GateOp::ry(b, kPi / 2));
      } else {
        out.push_back(op);
      }
      return;
    case GateKind::kRzz:
      if (target == Gateset::kCx) {
        emit(GateOp::cx(a, b));
        emit(GateOp::rz(b, op.angle));
        emit(GateOp::cx(a, b));
      } else {
        out.push_back(op);
      }
      return;
  }
  throw Error(ErrorCode::kUnsupported, "transpile: unknown gate");
}

bool is_single_rotation(const GateOp& g) {
  return g.kind == GateKind::kRx || g.kind == GateKind::kRy || g.kind == GateKind::kRz;
}

}  // namespace

std::string_view to_string(Gateset gs) {
  switch (gs) {
    case Gateset::kRzz: return "rzz";
    case Gateset::kCx: return "cx";
  }
  return "?";
}

std::optional<Gateset> gateset_from_string(std::string_view name) {
  if (name == "rzz" || name == "RZZ_SET") return Gateset::kRzz;
  if (name == "cx" || name == "CX_SET") return Gateset::kCx;
  return std::nullopt;
}

Circuit fuse_rotations(const Circuit& circuit) {
  std::vector<GateOp> ops(circuit.ops().begin(), circuit.ops().end());
  std::vector<bool> dropped(ops.size(), false);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pending(circuit.num_qubits(), kNone);

  for (std::size_t i = 0; i < ops.size(); ++i) {
    GateOp& g = ops[i];
    if (is_single_rotation(g) && !g.condition) {
      const std::uint32_t q = g.qubits[0];
      const std::size_t prev = pending[q];
      if (prev != kNone && ops[prev].kind == g.kind) {
        ops[prev].angle = wrap_angle(ops[prev].angle + g.angle);
        dropped[i] = true;
        if (std::abs(ops[prev].angle) < kFuseTolerance) {
          dropped[prev] = true;
          pending[q] = kNone;
        }
        continue;
      }
      g.angle = wrap_angle(g.angle);
      if (std::abs(g.angle) < kFuseTolerance) {
        dropped[i] = true;
        pending[q] = kNone;
        continue;
      }
      pending[q] = i;
      continue;
    }
    for (std::uint32_t q : g.targets()) pending[q] = kNone;
  }

  Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.result_bits());
  out.metadata() = circuit.metadata();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!dropped[i]) out.append(ops[i]);
  }
  return out;
}

Circuit transpile(const Circuit& circuit, Gateset target) {
  Circuit lowered(circuit.num_qubits(), circuit.num_clbits(), circuit.result_bits());
  lowered.metadata() = circuit.metadata();
  std::vector<GateOp> buffer;
  for (const GateOp& op : circuit.ops()) {
    buffer.clear();
    lower_gate(op, target, buffer);
    lowered.append(buffer);
  }
  return fuse_rotations(lowered);
}

Circuit expand_rzz(const Circuit& circuit) {
  Circuit out(circuit.num_qubits(), circuit.num_clbits(), circuit.result_bits());
  out.metadata() = circuit.metadata();
  for (const GateOp& op : circuit.ops()) {
    if (op.kind != GateKind::kRzz) {
      out.append(op);
      continue;
    }
    GateOp first = GateOp::cx(op.qubits[0], op.qubits[1]);
    GateOp mid = GateOp::rz(op.qubits[1], op.angle);
    first.condition = mid.condition = op.condition;
    out.append(first);
    out.append(mid);
    out.append(first);
  }
  return out;
}

}  // namespace qsat
