#include "qsat/fastsim.hpp"

#include <algorithm>
#include <cmath>

#include "qsat/error.hpp"

namespace qsat {

CostTable::CostTable(const KSatInstance& instance, std::uint32_t max_variables)
    : n_(instance.num_variables()), m_(static_cast<std::uint32_t>(instance.num_clauses())) {
  if (n_ > max_variables) {
    throw Error(ErrorCode::kTooLarge, "cost table limited to n <= " + std::to_string(max_variables));
  }
  if (m_ > UINT16_MAX) throw Error(ErrorCode::kTooLarge, "more than 65535 clauses");
  const std::size_t dim = std::size_t{1} << n_;
  values_.assign(dim, static_cast<std::uint16_t>(m_));
  // Subtract one per clause on exactly the 2^(n-k) indices matching its
  // unsatisfying pattern, enumerated as submasks of the free variables.
  const std::uint64_t all = dim - 1;
  for (const Clause& c : instance.clauses()) {
    const std::uint64_t free = all & ~c.mask();
    std::uint64_t sub = 0;
    do {
      --values_[sub | c.unsat_pattern()];
      sub = (sub - free) & free;
    } while (sub != 0);
  }
}

std::uint16_t CostTable::max() const { return *std::max_element(values_.begin(), values_.end()); }

QaoaEvaluator::QaoaEvaluator(const KSatInstance& instance) : QaoaEvaluator(CostTable(instance)) {}

QaoaEvaluator::QaoaEvaluator(CostTable table) : table_(std::move(table)) {
  phase_lut_.resize(table_.num_clauses() + 1);
}

void QaoaEvaluator::apply_phase(std::vector<Amplitude>& v, double gamma) {
  for (std::size_t c = 0; c < phase_lut_.size(); ++c) {
    phase_lut_[c] = std::polar(1.0, -gamma * static_cast<double>(c));
  }
  const auto values = table_.values();
  for (std::size_t x = 0; x < v.size(); ++x) v[x] *= phase_lut_[values[x]];
}

void QaoaEvaluator::apply_mixer(std::vector<Amplitude>& v, double beta) {
  const double c = std::cos(beta);
  const Amplitude s{0.0, -std::sin(beta)};
  const std::size_t dim = v.size();
  for (std::uint32_t q = 0; q < table_.num_variables(); ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t j = base; j < base + stride; ++j) {
        const Amplitude a0 = v[j];
        const Amplitude a1 = v[j + stride];
        v[j] = c * a0 + s * a1;
        v[j + stride] = s * a0 + c * a1;
      }
    }
  }
}

double QaoaEvaluator::weighted_norm(const std::vector<Amplitude>& v) const {
  const auto values = table_.values();
  double total = 0.0;
  for (std::size_t x = 0; x < v.size(); ++x) total += std::norm(v[x]) * values[x];
  return total;
}

void QaoaEvaluator::forward(const AngleSchedule& angles, std::vector<Amplitude>& psi) {
  angles.validate();
  const std::size_t dim = table_.values().size();
  psi.assign(dim, Amplitude{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  for (std::size_t r = 0; r < angles.rounds(); ++r) {
    apply_phase(psi, angles.gammas[r]);
    apply_mixer(psi, angles.betas[r]);
  }
}

Statevector QaoaEvaluator::state(const AngleSchedule& angles) {
  forward(angles, psi_);
  return Statevector::from_amplitudes(psi_);
}

double QaoaEvaluator::expectation(const AngleSchedule& angles) {
  forward(angles, psi_);
  const double value = weighted_norm(psi_);
  if (!std::isfinite(value)) throw Error(ErrorCode::kNumericalFailure, "non-finite expectation");
  return value;
}

ValueAndGradient QaoaEvaluator::value_and_gradient(const AngleSchedule& angles) {
  forward(angles, psi_);
  const std::size_t p = angles.rounds();
  const std::size_t dim = psi_.size();
  const auto values = table_.values();
  const std::uint32_t n = table_.num_variables();

  ValueAndGradient out;
  out.value = weighted_norm(psi_);
  out.gradient.assign(2 * p, 0.0);

  // lambda = C psi, then both vectors are walked back through the rounds.
  // dE/dtheta = 2 Im <lambda | G | psi> for a step exp(-i theta G).
  lambda_.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) lambda_[x] = psi_[x] * static_cast<double>(values[x]);
  scratch_.resize(dim);

  for (std::size_t r = p; r-- > 0;) {
    // H_M psi = sum_q X_q psi
    std::fill(scratch_.begin(), scratch_.end(), Amplitude{});
    for (std::uint32_t q = 0; q < n; ++q) {
      const std::size_t mask = std::size_t{1} << q;
      for (std::size_t x = 0; x < dim; ++x) scratch_[x] += psi_[x ^ mask];
    }
    Amplitude overlap{};
    for (std::size_t x = 0; x < dim; ++x) overlap += std::conj(lambda_[x]) * scratch_[x];
    out.gradient[p + r] = 2.0 * overlap.imag();

    apply_mixer(psi_, -angles.betas[r]);
    apply_mixer(lambda_, -angles.betas[r]);

    overlap = {};
    for (std::size_t x = 0; x < dim; ++x) {
      overlap += std::conj(lambda_[x]) * psi_[x] * static_cast<double>(values[x]);
    }
    out.gradient[r] = 2.0 * overlap.imag();

    apply_phase(psi_, -angles.gammas[r]);
    apply_phase(lambda_, -angles.gammas[r]);
  }

  if (!std::isfinite(out.value) ||
      !std::all_of(out.gradient.begin(), out.gradient.end(), [](double g) { return std::isfinite(g); })) {
    throw Error(ErrorCode::kNumericalFailure, "non-finite expectation or gradient");
  }
  return out;
}

Statevector qaoa_state(const KSatInstance& instance, const AngleSchedule& angles) {
  return QaoaEvaluator(instance).state(angles);
}

double expectation(const KSatInstance& instance, const AngleSchedule& angles) {
  return QaoaEvaluator(instance).expectation(angles);
}

std::vector<double> gradient(const KSatInstance& instance, const AngleSchedule& angles) {
  return QaoaEvaluator(instance).value_and_gradient(angles).gradient;
}

std::vector<double> finite_difference_gradient(const KSatInstance& instance,
                                               const AngleSchedule& angles, double h) {
  QaoaEvaluator eval(instance);
  std::vector<double> x = angles.flatten();
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = eval.expectation(AngleSchedule::unflatten(x));
    x[i] = saved - h;
    const double down = eval.expectation(AngleSchedule::unflatten(x));
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> qaoa_distribution(const KSatInstance& instance, const AngleSchedule& angles) {
  return qaoa_state(instance, angles).probabilities();
}

}  // namespace qsat
