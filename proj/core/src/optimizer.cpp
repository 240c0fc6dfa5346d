#include "qsat/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "qsat/error.hpp"
#include "qsat/rng.hpp"

namespace qsat {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double wrap_into(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace

LocalDescentResult local_descent(QaoaEvaluator& evaluator, const AngleSchedule& init,
                                 const LocalDescentOptions& options) {
  init.validate();
  std::vector<double> x = init.flatten();
  const std::size_t dim = x.size();
  ValueAndGradient cur = evaluator.value_and_gradient(init);

  LocalDescentResult result;
  result.trace.push_back(cur.value);

  // Inverse-Hessian approximation for maximization (acts on +gradient).
  std::vector<double> hinv(dim * dim, 0.0);
  auto reset_hinv = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = 1.0;
  };
  reset_hinv();

  std::vector<double> dir(dim), trial(dim), s(dim), y(dim), hy(dim);
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    if (inf_norm(cur.gradient) < options.gradient_tolerance) break;

    for (std::size_t i = 0; i < dim; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j) acc += hinv[i * dim + j] * cur.gradient[j];
      dir[i] = acc;
    }
    double slope = dot(dir, cur.gradient);
    if (!(slope > 0.0)) {
      reset_hinv();
      dir = cur.gradient;
      slope = dot(dir, cur.gradient);
    }

    double step = 1.0;
    bool accepted = false;
    ValueAndGradient next;
    for (std::size_t bt = 0; bt < options.max_backtracks; ++bt, step *= 0.5) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] + step * dir[i];
      next = evaluator.value_and_gradient(AngleSchedule::unflatten(trial));
      if (next.value >= cur.value + options.armijo * step * slope && next.value > cur.value) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // The quasi-Newton direction failed; retry once along the gradient
      // before declaring convergence.
      bool was_identity = true;
      for (std::size_t i = 0; i < dim && was_identity; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          if (hinv[i * dim + j] != (i == j ? 1.0 : 0.0)) {
            was_identity = false;
            break;
          }
        }
      }
      if (was_identity) break;
      reset_hinv();
      continue;
    }

    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = trial[i] - x[i];
      // Maximizing f is minimizing -f: y is the change in -gradient.
      y[i] = cur.gradient[i] - next.gradient[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += hinv[i * dim + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          hinv[i * dim + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
      }
    }
    x = trial;
    cur = std::move(next);
    result.trace.push_back(cur.value);
  }

  result.angles = AngleSchedule::unflatten(x);
  result.expectation = cur.value;
  result.iterations = it;
  return result;
}

LocalDescentResult local_descent(const KSatInstance& instance, const AngleSchedule& init,
                                 const LocalDescentOptions& options) {
  QaoaEvaluator evaluator(instance);
  return local_descent(evaluator, init, options);
}

AngleSchedule wrap_angles(const AngleSchedule& angles) {
  AngleSchedule out = angles;
  for (double& g : out.gammas) g = wrap_into(g, 2.0 * std::numbers::pi);
  for (double& b : out.betas) b = wrap_into(b, std::numbers::pi);
  return out;
}

AngleSchedule default_initial_angles(std::size_t p) {
  return AngleSchedule(std::vector<double>(p, 0.1), std::vector<double>(p, 0.1));
}

OptimizationResult basin_hopping(const KSatInstance& instance, std::uint32_t c_opt, std::size_t p,
                                 std::uint64_t seed, const BasinHoppingOptions& options,
                                 const std::optional<AngleSchedule>& init) {
  if (p == 0) throw Error(ErrorCode::kInvalidParameters, "basin hopping needs p >= 1");
  if (c_opt == 0) throw Error(ErrorCode::kInvalidParameters, "C_opt must be positive");
  const AngleSchedule start = init ? *init : default_initial_angles(p);
  if (start.rounds() != p) throw Error(ErrorCode::kInvalidParameters, "initial schedule has wrong p");

  QaoaEvaluator evaluator(instance);
  Rng rng(seed);

  OptimizationResult best;
  best.seed = seed;
  {
    const LocalDescentResult local = local_descent(evaluator, start, options.local);
    best.angles = wrap_angles(local.angles);
    best.expectation = evaluator.expectation(best.angles);
    best.iterations = local.iterations;
  }
  best.trace.push_back(best.expectation);

  for (std::size_t hop = 0; hop < options.hops; ++hop) {
    AngleSchedule candidate = best.angles;
    for (double& g : candidate.gammas) g += rng.normal(0.0, options.step_sigma);
    for (double& b : candidate.betas) b += rng.normal(0.0, options.step_sigma);
    candidate = wrap_angles(candidate);

    const LocalDescentResult local = local_descent(evaluator, candidate, options.local);
    best.iterations += local.iterations;
    const AngleSchedule wrapped = wrap_angles(local.angles);
    const double value = evaluator.expectation(wrapped);
    if (value > best.expectation) {
      best.angles = wrapped;
      best.expectation = value;
    }
    best.trace.push_back(best.expectation);
  }
  best.ideal_ratio = best.expectation / static_cast<double>(c_opt);
  return best;
}

AngleSchedule warm_start(const OptimizationResult& previous) {
  AngleSchedule next = previous.angles;
  next.gammas.push_back(0.0);
  next.betas.push_back(0.0);
  return next;
}

std::vector<OptimizationResult> optimize_sweep(const KSatInstance& instance, std::uint32_t c_opt,
                                               std::uint64_t seed, const SweepOptions& options) {
  if (options.p_min == 0 || options.p_max < options.p_min) {
    throw Error(ErrorCode::kInvalidParameters, "invalid round range");
  }
  std::vector<OptimizationResult> results;
  std::optional<AngleSchedule> init;
  for (std::size_t p = options.p_min; p <= options.p_max; ++p) {
    if (!results.empty()) init = warm_start(results.back());
    results.push_back(basin_hopping(instance, c_opt, p, mix_seed(seed, p), options.hopping, init));
    if (options.stop_ratio > 0.0 && results.back().ideal_ratio > options.stop_ratio) break;
  }
  return results;
}

std::string schedule_to_json(const OptimizationResult& result, const std::string& instance_id) {
  nlohmann::ordered_json j;
  j["instance_id"] = instance_id;
  j["p"] = result.angles.rounds();
  j["gammas"] = result.angles.gammas;
  j["betas"] = result.angles.betas;
  j["expectation"] = result.expectation;
  j["ideal_ratio"] = result.ideal_ratio;
  j["seed"] = result.seed;
  return j.dump();
}

std::vector<ScheduleRecord> schedules_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    if (j.is_object() && j.contains("schedules")) j = j["schedules"];
    if (j.is_object()) j = nlohmann::json::array({j});
    std::vector<ScheduleRecord> out;
    for (const auto& s : j) {
      ScheduleRecord r;
      r.instance_id = s.value("instance_id", "");
      r.angles = AngleSchedule(s.at("gammas").get<std::vector<double>>(),
                               s.at("betas").get<std::vector<double>>());
      if (s.contains("p") && s["p"].get<std::size_t>() != r.angles.rounds()) {
        throw Error(ErrorCode::kParseError, "schedule p disagrees with its angle vectors");
      }
      r.expectation = s.value("expectation", 0.0);
      r.ideal_ratio = s.value("ideal_ratio", 0.0);
      r.seed = s.value("seed", std::uint64_t{0});
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("angle schedule JSON: ") + e.what());
  }
}

}  // namespace qsat
