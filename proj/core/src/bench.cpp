#include "qsat/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qsat/error.hpp"
#include "qsat/fastsim.hpp"
#include "qsat/rng.hpp"

namespace qsat {

namespace {

void require_c_opt(std::uint32_t c_opt) {
  if (c_opt == 0) throw Error(ErrorCode::kInvalidParameters, "C_opt must be positive");
}

std::size_t nearest_rank(double percent, std::size_t n) {
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(rank, 1, n);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void summarize(CurvePoint& point) {
  const auto& r = point.sample_ratios;
  point.n_shots = r.size();
  point.mean_ratio = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  point.pct40 = percentile_nearest_rank(r, 40.0);
  point.pct60 = percentile_nearest_rank(r, 60.0);
}

}  // namespace

double approximation_ratio(const KSatInstance& instance, std::uint32_t c_opt, const Assignment& x) {
  require_c_opt(c_opt);
  return static_cast<double>(evaluate(instance, x)) / static_cast<double>(c_opt);
}

double approximation_ratio_index(const KSatInstance& instance, std::uint32_t c_opt, std::uint64_t x) {
  require_c_opt(c_opt);
  return static_cast<double>(instance.evaluate_index(x)) / static_cast<double>(c_opt);
}

double percentile_nearest_rank(std::span<const double> values, double percent) {
  if (values.empty()) throw Error(ErrorCode::kInvalidParameters, "percentile of an empty sample");
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw Error(ErrorCode::kInvalidParameters, "percentile must lie in [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  const std::size_t rank = nearest_rank(percent, sorted.size());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  return sorted[rank - 1];
}

double weighted_percentile(std::span<const double> values, std::span<const double> weights,
                           double percent) {
  if (values.empty() || values.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidParameters, "weighted percentile needs matching non-empty inputs");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = percent / 100.0 * total;
  double cumulative = 0.0;
  for (std::size_t i : order) {
    cumulative += weights[i];
    if (weights[i] > 0.0 && cumulative >= target - 1e-12 * total) return values[i];
  }
  return values[order.back()];
}

Baseline random_baseline(const KSatInstance& instance, std::uint32_t c_opt, std::size_t samples,
                         std::uint64_t seed) {
  require_c_opt(c_opt);
  if (samples == 0) throw Error(ErrorCode::kInvalidParameters, "baseline needs at least one sample");
  const std::uint32_t n = instance.num_variables();
  Rng rng(seed);
  std::vector<double> ratios(samples);
  for (double& r : ratios) {
    const std::uint64_t x = n >= 64 ? rng.next_u64() : rng.uniform_below(std::uint64_t{1} << n);
    r = static_cast<double>(instance.evaluate_index(x)) / static_cast<double>(c_opt);
  }
  Baseline b;
  b.sample_count = samples;
  b.seed = seed;
  b.mean_ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0.0;
    for (double r : ratios) ss += (r - b.mean_ratio) * (r - b.mean_ratio);
    b.stddev = std::sqrt(ss / static_cast<double>(samples - 1));
  }
  b.pct40 = percentile_nearest_rank(ratios, 40.0);
  b.pct60 = percentile_nearest_rank(ratios, 60.0);
  return b;
}

std::string to_string(CurveSource source) {
  switch (source) {
    case CurveSource::kIdeal: return "ideal";
    case CurveSource::kShots: return "shots";
    case CurveSource::kExternal: return "external";
  }
  return "?";
}

CurveSource curve_source_from_string(const std::string& text) {
  if (text == "ideal") return CurveSource::kIdeal;
  if (text == "shots") return CurveSource::kShots;
  if (text == "external") return CurveSource::kExternal;
  throw Error(ErrorCode::kInvalidParameters, "unknown curve source '" + text + "'");
}

void BenchmarkCurve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const CurvePoint& pt = points[i];
    if (i > 0 && pt.p <= points[i - 1].p) {
      throw Error(ErrorCode::kInvalidParameters, "curve p values must be strictly increasing");
    }
    auto bad = [](double r) { return !(r >= 0.0 && r <= 1.0 + 1e-12); };
    if (bad(pt.mean_ratio) || bad(pt.pct40) || bad(pt.pct60) ||
        std::any_of(pt.sample_ratios.begin(), pt.sample_ratios.end(), bad)) {
      throw Error(ErrorCode::kInvalidParameters, "curve ratio outside [0, 1]");
    }
  }
}

std::map<std::size_t, std::vector<Assignment>> group_shots_by_p(std::span<const ShotRecord> shots,
                                                                std::optional<std::size_t> default_p) {
  std::map<std::size_t, std::vector<Assignment>> out;
  for (const ShotRecord& s : shots) {
    std::size_t p = 0;
    if (s.rounds) {
      p = *s.rounds;
    } else if (default_p) {
      p = *default_p;
    } else {
      throw Error(ErrorCode::kInvalidParameters, "shot has no round count and no default p was given");
    }
    out[p].push_back(s.bitstring);
  }
  return out;
}

BenchmarkCurve curve_from_shots(const KSatInstance& instance, std::uint32_t c_opt,
                                const std::map<std::size_t, std::vector<Assignment>>& shots_by_p,
                                CurveSource source) {
  require_c_opt(c_opt);
  BenchmarkCurve curve;
  curve.instance_id = instance.id();
  curve.n = instance.num_variables();
  for (const auto& [p, shots] : shots_by_p) {
    if (shots.empty()) continue;
    CurvePoint pt;
    pt.p = p;
    pt.source = source;
    pt.sample_ratios.reserve(shots.size());
    for (const Assignment& x : shots) {
      if (x.size() != instance.num_variables()) {
        throw Error(ErrorCode::kInvalidAssignment, "shot bitstring length " + std::to_string(x.size()) +
                                                       " does not match n=" +
                                                       std::to_string(instance.num_variables()));
      }
      pt.sample_ratios.push_back(approximation_ratio(instance, c_opt, x));
    }
    summarize(pt);
    curve.points.push_back(std::move(pt));
  }
  curve.validate();
  return curve;
}

CurvePoint ideal_point(const KSatInstance& instance, std::uint32_t c_opt, std::size_t p,
                       std::span<const double> distribution) {
  require_c_opt(c_opt);
  const std::uint32_t n = instance.num_variables();
  if (distribution.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::kInvalidParameters, "distribution size does not match 2^n");
  }
  std::vector<double> ratios(distribution.size());
  double mean = 0.0;
  for (std::size_t x = 0; x < ratios.size(); ++x) {
    ratios[x] = static_cast<double>(instance.evaluate_index(x)) / static_cast<double>(c_opt);
    mean += distribution[x] * ratios[x];
  }
  CurvePoint pt;
  pt.p = p;
  pt.source = CurveSource::kIdeal;
  pt.mean_ratio = mean;
  pt.pct40 = weighted_percentile(ratios, distribution, 40.0);
  pt.pct60 = weighted_percentile(ratios, distribution, 60.0);
  return pt;
}

BenchmarkCurve ideal_curve(const KSatInstance& instance, std::uint32_t c_opt,
                           std::span<const AngleSchedule> schedules) {
  BenchmarkCurve curve;
  curve.instance_id = instance.id();
  curve.n = instance.num_variables();
  for (const AngleSchedule& s : schedules) {
    curve.points.push_back(ideal_point(instance, c_opt, s.rounds(), qaoa_distribution(instance, s)));
  }
  curve.validate();
  return curve;
}

std::vector<std::uint64_t> sample_distribution(std::span<const double> distribution, std::size_t shots,
                                               std::uint64_t seed) {
  if (distribution.empty()) throw Error(ErrorCode::kInvalidParameters, "empty distribution");
  std::vector<double> cdf(distribution.size());
  std::partial_sum(distribution.begin(), distribution.end(), cdf.begin());
  const double total = cdf.back();
  Rng rng(seed);
  std::vector<std::uint64_t> out(shots);
  for (auto& x : out) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    x = static_cast<std::uint64_t>(it - cdf.begin());
  }
  return out;
}

std::size_t extract_p_max(const BenchmarkCurve& curve) {
  if (curve.points.empty()) throw Error(ErrorCode::kInvalidParameters, "empty curve");
  const CurvePoint* best = &curve.points.front();
  for (const CurvePoint& pt : curve.points) {
    if (pt.mean_ratio > best->mean_ratio) best = &pt;
  }
  return best->p;
}

std::optional<std::size_t> extract_p_noise(const BenchmarkCurve& curve, const Baseline& baseline) {
  const std::size_t p_max = extract_p_max(curve);
  for (const CurvePoint& pt : curve.points) {
    if (pt.p >= p_max && pt.mean_ratio <= baseline.pct60) return pt.p;
  }
  return std::nullopt;
}

std::uint64_t qaoa_volume(std::uint64_t n, std::uint64_t p) { return n * p; }

std::string curve_to_csv(const BenchmarkCurve& curve, const std::optional<Baseline>& baseline) {
  std::ostringstream out;
  out << "p,mean,pct40,pct60,n_shots,source";
  if (baseline) out << ",baseline_mean,baseline_pct40,baseline_pct60";
  out << '\n';
  for (const CurvePoint& pt : curve.points) {
    out << pt.p << ',' << fmt(pt.mean_ratio) << ',' << fmt(pt.pct40) << ',' << fmt(pt.pct60) << ','
        << pt.n_shots << ',' << to_string(pt.source);
    if (baseline) {
      out << ',' << fmt(baseline->mean_ratio) << ',' << fmt(baseline->pct40) << ','
          << fmt(baseline->pct60);
    }
    out << '\n';
  }
  return out.str();
}

std::string baseline_to_json(const Baseline& baseline) {
  nlohmann::ordered_json j;
  j["mean_ratio"] = baseline.mean_ratio;
  j["pct40"] = baseline.pct40;
  j["pct60"] = baseline.pct60;
  j["sample_count"] = baseline.sample_count;
  j["seed"] = baseline.seed;
  return j.dump();
}

}  // namespace qsat
