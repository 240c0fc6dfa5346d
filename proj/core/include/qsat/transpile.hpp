#pragma once

#include <optional>
#include <string_view>

#include "qsat/circuit.hpp"

namespace qsat {

enum class Gateset {
  kRzz,  // rzz, rz, ry, rx
  kCx,   // cx, rz, ry, rx
};

std::string_view to_string(Gateset gs);
std::optional<Gateset> gateset_from_string(std::string_view name);

/// Rewrites every unitary into the target gateset (all-to-all connectivity
/// assumed) and fuses runs of same-axis rotations on one qubit, dropping
/// those that reduce to a multiple of 2*pi. Equivalent to the source up to a
/// global phase. Measure, Reset, and conditions pass through; conditioned
/// gates are never fused.
Circuit transpile(const Circuit& circuit, Gateset target);

/// Same-axis rotation fusion only.
Circuit fuse_rotations(const Circuit& circuit);

/// Replaces every Rzz(t) on (a, b) with CX(a,b) Rz_b(t) CX(a,b).
Circuit expand_rzz(const Circuit& circuit);

}  // namespace qsat
