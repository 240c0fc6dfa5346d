#include "qsat/rng.hpp"

#include <cmath>
#include <numbers>

#include "qsat/error.hpp"

namespace qsat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameters: return "invalid-parameters";
    case ErrorCode::kInvalidAssignment: return "invalid-assignment";
    case ErrorCode::kTooLarge: return "too-large";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kUnsupportedWidth: return "unsupported-width";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kBuilderError: return "builder-error";
    case ErrorCode::kNumericalFailure: return "numerical-failure";
    case ErrorCode::kInvalidCircuit: return "invalid-circuit";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::kInvalidParameters, "uniform_below: bound must be positive");
  }
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % bound;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qsat
