#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsat/angles.hpp"
#include "qsat/fastsim.hpp"
#include "qsat/sat.hpp"

namespace qsat {

struct LocalDescentOptions {
  double gradient_tolerance = 1e-7;  // stop when the gradient inf-norm drops below
  std::size_t max_iterations = 500;
  double armijo = 1e-4;              // sufficient-increase constant
  std::size_t max_backtracks = 60;
};

struct LocalDescentResult {
  AngleSchedule angles;
  double expectation = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;  // objective after every accepted step, starting at init
};

/// Maximizes <H_C> from `init` with quasi-Newton (BFGS) ascent directions
/// and a backtracking Armijo line search; falls back to the plain gradient
/// whenever the BFGS direction is not an ascent direction. Accepted steps
/// never decrease the objective.
LocalDescentResult local_descent(QaoaEvaluator& evaluator, const AngleSchedule& init,
                                 const LocalDescentOptions& options = {});
LocalDescentResult local_descent(const KSatInstance& instance, const AngleSchedule& init,
                                 const LocalDescentOptions& options = {});

struct BasinHoppingOptions {
  std::size_t hops = 10;
  double step_sigma = 0.3;  // radians, Gaussian perturbation per coordinate
  LocalDescentOptions local;
};

struct OptimizationResult {
  AngleSchedule angles;
  double expectation = 0.0;
  double ideal_ratio = 0.0;  // expectation / C_opt
  std::size_t iterations = 0;  // local-descent iterations over all hops
  std::uint64_t seed = 0;
  std::vector<double> trace;  // incumbent after the initial descent and each hop
};

/// gamma into [0, 2*pi), beta into [0, pi); both are exact periods of the
/// expectation.
AngleSchedule wrap_angles(const AngleSchedule& angles);

/// Starting point used when no warm start is supplied: every round at
/// (0.1, 0.1).
AngleSchedule default_initial_angles(std::size_t p);

/// Basin-hopping around local_descent with monotone acceptance. `c_opt` is
/// the brute-force optimum used for ideal_ratio.
OptimizationResult basin_hopping(const KSatInstance& instance, std::uint32_t c_opt, std::size_t p,
                                 std::uint64_t seed, const BasinHoppingOptions& options = {},
                                 const std::optional<AngleSchedule>& init = std::nullopt);

/// Appends the identity round (0, 0).
AngleSchedule warm_start(const OptimizationResult& previous);

struct SweepOptions {
  std::size_t p_min = 1;
  std::size_t p_max = 12;
  double stop_ratio = 0.999;  // halt once ideal_ratio exceeds this (<= 0 disables)
  BasinHoppingOptions hopping;
};

/// Warm-started basin-hopping over p_min..p_max. Round count p uses seed
/// mix_seed(seed, p).
std::vector<OptimizationResult> optimize_sweep(const KSatInstance& instance, std::uint32_t c_opt,
                                               std::uint64_t seed, const SweepOptions& options = {});

/// {"instance_id","p","gammas","betas","expectation","ideal_ratio","seed"}
std::string schedule_to_json(const OptimizationResult& result, const std::string& instance_id);
struct ScheduleRecord {
  std::string instance_id;
  AngleSchedule angles;
  double expectation = 0.0;
  double ideal_ratio = 0.0;
  std::uint64_t seed = 0;
};
/// Accepts one schedule object, an array of them, or {"schedules":[...]}.
std::vector<ScheduleRecord> schedules_from_json(const std::string& text);

}  // namespace qsat
