#include "json.hpp"
#include "qsat/circuit.hpp"
#include "qsat/error.hpp"

namespace qsat {

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::ordered_json j;
  j["num_qubits"] = circuit.num_qubits();
  j["num_clbits"] = circuit.num_clbits();
  j["result_bits"] = circuit.result_bits();
  j["metadata"] = {{"instance_id", circuit.metadata().instance_id},
                   {"rounds", circuit.metadata().rounds},
                   {"schedule_id", circuit.metadata().schedule_id}};
  auto ops = nlohmann::ordered_json::array();
  for (const GateOp& op : circuit.ops()) {
    nlohmann::ordered_json g;
    g["gate"] = gate_name(op.kind);
    g["qubits"] = op.arity() == 2 ? nlohmann::ordered_json::array({op.qubits[0], op.qubits[1]})
                                  : nlohmann::ordered_json::array({op.qubits[0]});
    if (is_rotation(op.kind)) g["angle"] = op.angle;
    if (op.kind == GateKind::kMeasure) g["clbit"] = op.clbit;
    if (op.condition) g["condition"] = *op.condition;
    ops.push_back(std::move(g));
  }
  j["ops"] = std::move(ops);
  return j.dump(1) + "\n";
}

Circuit circuit_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Circuit circuit(j.at("num_qubits").get<std::uint32_t>(), j.at("num_clbits").get<std::uint32_t>(),
                    j.value("result_bits", 0U));
    if (j.contains("metadata")) {
      const auto& m = j["metadata"];
      circuit.metadata().instance_id = m.value("instance_id", "");
      circuit.metadata().rounds = m.value("rounds", 0U);
      circuit.metadata().schedule_id = m.value("schedule_id", "");
    }
    for (const auto& g : j.at("ops")) {
      const auto name = g.at("gate").get<std::string>();
      const auto kind = gate_from_name(name);
      if (!kind) throw Error(ErrorCode::kParseError, "circuit JSON: unknown gate " + name);
      const auto& qs = g.at("qubits");
      if (qs.size() != (is_two_qubit(*kind) ? 2U : 1U)) {
        throw Error(ErrorCode::kParseError, "circuit JSON: wrong operand count for " + name);
      }
      GateOp op = is_two_qubit(*kind)
                      ? GateOp::two(*kind, qs[0].get<std::uint32_t>(), qs[1].get<std::uint32_t>())
                      : GateOp::one(*kind, qs[0].get<std::uint32_t>());
      op.angle = g.value("angle", 0.0);
      op.clbit = g.value("clbit", 0U);
      if (g.contains("condition")) op.condition = g["condition"].get<std::uint32_t>();
      circuit.append(op);
    }
    return circuit;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace qsat
