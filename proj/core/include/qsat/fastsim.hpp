#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsat/angles.hpp"
#include "qsat/sat.hpp"
#include "qsat/simulator.hpp"

namespace qsat {

/// values[x] = C(x) for every basis index x.
class CostTable {
 public:
  explicit CostTable(const KSatInstance& instance, std::uint32_t max_variables = kDefaultMaxQubits);

  std::uint32_t num_variables() const { return n_; }
  std::uint32_t num_clauses() const { return m_; }
  std::span<const std::uint16_t> values() const { return values_; }
  std::uint16_t operator[](std::size_t x) const { return values_[x]; }
  std::uint16_t max() const;

 private:
  std::uint32_t n_;
  std::uint32_t m_;
  std::vector<std::uint16_t> values_;
};

inline CostTable cost_table(const KSatInstance& instance) { return CostTable(instance); }

struct ValueAndGradient {
  double value = 0.0;
  std::vector<double> gradient;  // [d/dgamma_1..d/dgamma_p, d/dbeta_1..d/dbeta_p]
};

/// Exact QAOA evolution on the full 2^n amplitude vector: the phase
/// separator is an elementwise multiply by exp(-i gamma C(x)) (looked up per
/// cost value), the mixer is n butterfly passes of exp(-i beta X). Holds
/// scratch buffers, so one evaluator should not be shared between threads.
class QaoaEvaluator {
 public:
  explicit QaoaEvaluator(const KSatInstance& instance);
  explicit QaoaEvaluator(CostTable table);

  const CostTable& table() const { return table_; }

  Statevector state(const AngleSchedule& angles);
  double expectation(const AngleSchedule& angles);

  /// Value plus analytic gradient from one forward pass and one reverse
  /// (adjoint) sweep.
  ValueAndGradient value_and_gradient(const AngleSchedule& angles);

 private:
  void forward(const AngleSchedule& angles, std::vector<Amplitude>& psi);
  void apply_phase(std::vector<Amplitude>& v, double gamma);
  void apply_mixer(std::vector<Amplitude>& v, double beta);
  double weighted_norm(const std::vector<Amplitude>& v) const;

  CostTable table_;
  std::vector<Amplitude> psi_;
  std::vector<Amplitude> lambda_;
  std::vector<Amplitude> scratch_;
  std::vector<Amplitude> phase_lut_;
};

Statevector qaoa_state(const KSatInstance& instance, const AngleSchedule& angles);
double expectation(const KSatInstance& instance, const AngleSchedule& angles);
std::vector<double> gradient(const KSatInstance& instance, const AngleSchedule& angles);

/// Central differences with step h; the reference the analytic gradient is
/// checked against.
std::vector<double> finite_difference_gradient(const KSatInstance& instance,
                                               const AngleSchedule& angles, double h = 1e-5);

/// Output distribution over the n variable bits, |amp(x)|^2.
std::vector<double> qaoa_distribution(const KSatInstance& instance, const AngleSchedule& angles);

}  // namespace qsat
