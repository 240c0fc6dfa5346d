#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsat/optimizer.hpp"
#include "qsat/sat.hpp"
#include "qsat/simulator.hpp"

namespace qsat {

/// C(x) / C_opt.
double approximation_ratio(const KSatInstance& instance, std::uint32_t c_opt, const Assignment& x);
double approximation_ratio_index(const KSatInstance& instance, std::uint32_t c_opt, std::uint64_t x);

/// Nearest-rank percentile: the value at 1-based rank ceil(P/100 * N) of the
/// sorted sample (rank clamped to [1, N]). Does not require sorted input.
double percentile_nearest_rank(std::span<const double> values, double percent);

/// Weighted counterpart for exact distributions: the smallest value whose
/// cumulative probability reaches P/100.
double weighted_percentile(std::span<const double> values, std::span<const double> weights,
                           double percent);

struct Baseline {
  double mean_ratio = 0.0;
  double pct40 = 0.0;
  double pct60 = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  double stddev = 0.0;  // sample standard deviation of the ratios
};

inline constexpr std::size_t kDefaultBaselineSamples = 100000;

/// Ratios of `samples` uniformly random assignments.
Baseline random_baseline(const KSatInstance& instance, std::uint32_t c_opt,
                         std::size_t samples = kDefaultBaselineSamples, std::uint64_t seed = 0);

enum class CurveSource { kIdeal, kShots, kExternal };
std::string to_string(CurveSource source);
CurveSource curve_source_from_string(const std::string& text);

struct CurvePoint {
  std::size_t p = 0;
  double mean_ratio = 0.0;
  double pct40 = 0.0;
  double pct60 = 0.0;
  std::vector<double> sample_ratios;  // empty for ideal points
  std::size_t n_shots = 0;
  CurveSource source = CurveSource::kIdeal;
};

struct BenchmarkCurve {
  std::string instance_id;
  std::uint32_t n = 0;
  std::vector<CurvePoint> points;

  /// Throws kInvalidParameters unless p is strictly increasing and every
  /// ratio lies in [0, 1].
  void validate() const;
  bool empty() const { return points.empty(); }
};

/// Groups shots by their round count. Shots without a round count go to
/// `default_p` (throws kInvalidParameters if that is also unset).
std::map<std::size_t, std::vector<Assignment>> group_shots_by_p(
    std::span<const ShotRecord> shots, std::optional<std::size_t> default_p = std::nullopt);

/// Per-p mean and nearest-rank 40th/60th percentiles of the shot ratios.
/// Throws kInvalidAssignment on a bitstring of the wrong length.
BenchmarkCurve curve_from_shots(const KSatInstance& instance, std::uint32_t c_opt,
                                const std::map<std::size_t, std::vector<Assignment>>& shots_by_p,
                                CurveSource source = CurveSource::kShots);

/// Exact point from an output distribution over the n variable bits.
CurvePoint ideal_point(const KSatInstance& instance, std::uint32_t c_opt, std::size_t p,
                       std::span<const double> distribution);

/// Ideal curve from optimized schedules (one point per schedule).
BenchmarkCurve ideal_curve(const KSatInstance& instance, std::uint32_t c_opt,
                           std::span<const AngleSchedule> schedules);

/// Draws basis indices from a probability vector.
std::vector<std::uint64_t> sample_distribution(std::span<const double> distribution,
                                               std::size_t shots, std::uint64_t seed);

/// Smallest p attaining the maximum mean ratio. Throws on an empty curve.
std::size_t extract_p_max(const BenchmarkCurve& curve);

/// Smallest p >= p_max whose mean ratio is at or below the baseline's 60th
/// percentile; nullopt if the curve never gets there.
std::optional<std::size_t> extract_p_noise(const BenchmarkCurve& curve, const Baseline& baseline);

std::uint64_t qaoa_volume(std::uint64_t n, std::uint64_t p);

/// Header p,mean,pct40,pct60,n_shots,source and, with a baseline,
/// baseline_mean,baseline_pct40,baseline_pct60.
std::string curve_to_csv(const BenchmarkCurve& curve, const std::optional<Baseline>& baseline = std::nullopt);

std::string baseline_to_json(const Baseline& baseline);

struct ChartInput {
  std::optional<BenchmarkCurve> ideal;
  std::optional<BenchmarkCurve> measured;
  std::optional<Baseline> baseline;
  std::string title;
};

/// Line chart of approximation ratio against p: ideal curve, measured means
/// with individual sample ratios, and the baseline 40-60 band.
std::string render_svg(const ChartInput& input);

}  // namespace qsat
