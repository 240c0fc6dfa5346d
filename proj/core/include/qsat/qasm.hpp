#pragma once

#include <string>
#include <string_view>

#include "qsat/circuit.hpp"

namespace qsat {

/// OpenQASM 2.0 over qelib1.inc plus a local rzz gate defined as cx-rz-cx.
/// Circuits with classical conditions are rejected (kUnsupported).
std::string export_qasm2(const Circuit& circuit);

/// OpenQASM 3.0 with a declared rzz gate, mid-circuit measure, reset, and
/// `if (c[i])` feed-forward.
std::string export_qasm3(const Circuit& circuit);

/// Reads the subset the exporters emit (either version). Angles may be
/// numeric literals or simple pi expressions.
Circuit parse_qasm(std::string_view text);

}  // namespace qsat
