#pragma once

#include <cstddef>
#include <vector>

namespace qsat {

/// QAOA round angles. Round r applies the phase separator with gammas[r] and
/// then the mixer Rx(2 * betas[r]) = exp(-i betas[r] X) on every variable.
struct AngleSchedule {
  std::vector<double> gammas;
  std::vector<double> betas;

  AngleSchedule() = default;
  AngleSchedule(std::vector<double> g, std::vector<double> b);

  std::size_t rounds() const { return gammas.size(); }

  /// Throws kInvalidParameters unless p >= 1, lengths match, entries finite.
  void validate() const;

  /// All-zero schedule (the identity QAOA, uniform output) with p rounds.
  static AngleSchedule zeros(std::size_t p);

  /// Flattened [gamma_1..gamma_p, beta_1..beta_p].
  std::vector<double> flatten() const;
  static AngleSchedule unflatten(const std::vector<double>& x);

  friend bool operator==(const AngleSchedule&, const AngleSchedule&) = default;
};

}  // namespace qsat
