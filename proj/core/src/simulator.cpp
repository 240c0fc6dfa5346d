#include "qsat/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "qsat/error.hpp"
#include "qsat/parallel.hpp"

namespace qsat {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kZeroProbability = 1e-14;

using Mat2 = std::array<Amplitude, 4>;  // row-major [a b; c d]

void apply_matrix(std::span<Amplitude> amps, std::uint32_t q, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const Amplitude a0 = amps[j];
      const Amplitude a1 = amps[j + stride];
      amps[j] = m[0] * a0 + m[1] * a1;
      amps[j + stride] = m[2] * a0 + m[3] * a1;
    }
  }
}

void apply_diagonal(std::span<Amplitude> amps, std::uint32_t q, Amplitude d0, Amplitude d1) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & mask) ? d1 : d0;
}

void apply_x(std::span<Amplitude> amps, std::uint32_t q) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) std::swap(amps[j], amps[j + stride]);
  }
}

Amplitude phase(double theta) { return std::polar(1.0, theta); }

struct BranchMass {
  double zero = 0.0;
  double one = 0.0;
  double p1() const { return one / (zero + one); }
  double of(int outcome) const { return outcome ? one : zero; }
};

BranchMass branch_mass(std::span<const Amplitude> amps, std::uint32_t q) {
  const std::size_t mask = std::size_t{1} << q;
  BranchMass m;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    (i & mask ? m.one : m.zero) += std::norm(amps[i]);
  }
  return m;
}

void collapse(std::span<Amplitude> amps, std::uint32_t q, int outcome, double prob) {
  const std::size_t mask = std::size_t{1} << q;
  const double scale = 1.0 / std::sqrt(prob);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool one = (i & mask) != 0;
    amps[i] = one == (outcome == 1) ? amps[i] * scale : Amplitude{};
  }
}

void apply_unitary(std::span<Amplitude> amps, const GateOp& g) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const std::uint32_t a = g.qubits[0];
  const std::uint32_t b = g.qubits[1];
  switch (g.kind) {
    case GateKind::kH:
      apply_matrix(amps, a, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
      return;
    case GateKind::kX: apply_x(amps, a); return;
    case GateKind::kZ: apply_diagonal(amps, a, 1.0, -1.0); return;
    case GateKind::kS: apply_diagonal(amps, a, 1.0, Amplitude{0.0, 1.0}); return;
    case GateKind::kSdg: apply_diagonal(amps, a, 1.0, Amplitude{0.0, -1.0}); return;
    case GateKind::kT: apply_diagonal(amps, a, 1.0, phase(std::numbers::pi / 4)); return;
    case GateKind::kTdg: apply_diagonal(amps, a, 1.0, phase(-std::numbers::pi / 4)); return;
    case GateKind::kRx: {
      const double c = std::cos(g.angle / 2);
      const Amplitude s{0.0, -std::sin(g.angle / 2)};
      apply_matrix(amps, a, {c, s, s, c});
      return;
    }
    case GateKind::kRy: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      apply_matrix(amps, a, {c, -s, s, c});
      return;
    }
    case GateKind::kRz:
      apply_diagonal(amps, a, phase(-g.angle / 2), phase(g.angle / 2));
      return;
    case GateKind::kRzz: {
      const std::size_t ma = std::size_t{1} << a;
      const std::size_t mb = std::size_t{1} << b;
      const Amplitude even = phase(-g.angle / 2);
      const Amplitude odd = phase(g.angle / 2);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool parity = ((i & ma) != 0) != ((i & mb) != 0);
        amps[i] *= parity ? odd : even;
      }
      return;
    }
    case GateKind::kCX: {
      const std::size_t mc = std::size_t{1} << a;
      const std::size_t mt = std::size_t{1} << b;
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mc) && !(i & mt)) std::swap(amps[i], amps[i | mt]);
      }
      return;
    }
    case GateKind::kCZ: {
      const std::size_t both = (std::size_t{1} << a) | (std::size_t{1} << b);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) amps[i] = -amps[i];
      }
      return;
    }
    case GateKind::kMeasure:
    case GateKind::kReset:
      break;
  }
  throw Error(ErrorCode::kInvalidCircuit, "apply_unitary: not a unitary gate");
}

void check_norm(const Statevector& state, const GateOp& g) {
  const double drift = std::abs(state.norm_squared() - 1.0);
  if (!(drift <= kNormTolerance)) {
    throw Error(ErrorCode::kNumericalFailure,
                std::string("norm drift ") + std::to_string(drift) + " after " +
                    std::string(gate_name(g.kind)));
  }
}

void check_width(const Circuit& circuit, const SimulatorOptions& options) {
  if (circuit.num_qubits() > options.max_qubits) {
    throw Error(ErrorCode::kTooLarge, "circuit width " + std::to_string(circuit.num_qubits()) +
                                          " exceeds simulator cap " +
                                          std::to_string(options.max_qubits));
  }
}

ShotRecord make_shot(const Circuit& circuit, const Statevector& state, const ExecutionContext& ctx) {
  ShotRecord shot;
  std::vector<std::uint8_t> bits(state.clbits().begin(),
                                 state.clbits().begin() + circuit.result_bits());
  shot.bitstring = Assignment(std::move(bits));
  shot.ancilla_outcomes.assign(ctx.mid_circuit_outcomes().begin(), ctx.mid_circuit_outcomes().end());
  shot.seed = ctx.seed();
  if (circuit.metadata().rounds > 0) shot.rounds = circuit.metadata().rounds;
  return shot;
}

}  // namespace

Statevector::Statevector(std::uint32_t num_qubits, std::uint32_t num_clbits)
    : num_qubits_(num_qubits), clbits_(num_clbits, 0) {
  if (num_qubits > 40) throw Error(ErrorCode::kTooLarge, "statevector wider than 40 qubits");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes, std::uint32_t num_clbits) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
    throw Error(ErrorCode::kInvalidParameters, "amplitude count must be a power of two");
  }
  Statevector s(0, num_clbits);
  s.num_qubits_ = static_cast<std::uint32_t>(std::countr_zero(amplitudes.size()));
  s.amps_ = std::move(amplitudes);
  return s;
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
  return p;
}

ExecutionContext::ExecutionContext(std::uint64_t seed, BranchForcing forcing)
    : rng_(seed), seed_(seed), forcing_(std::move(forcing)) {}

void apply_gate(Statevector& state, const GateOp& gate, ExecutionContext& ctx) {
  for (std::uint32_t q : gate.targets()) {
    if (q >= state.num_qubits()) throw Error(ErrorCode::kInvalidCircuit, "gate qubit outside state");
  }
  if (gate.condition) {
    if (*gate.condition >= state.clbits().size()) {
      throw Error(ErrorCode::kInvalidCircuit, "condition bit outside classical register");
    }
    if (!state.clbits()[*gate.condition]) return;
  }
  auto amps = state.amplitudes();
  const std::uint32_t q = gate.qubits[0];
  switch (gate.kind) {
    case GateKind::kMeasure: {
      if (gate.clbit >= state.clbits().size()) {
        throw Error(ErrorCode::kInvalidCircuit, "measure target outside classical register");
      }
      check_norm(state, gate);
      const BranchMass mass = branch_mass(amps, q);
      int outcome;
      if (!ctx.terminal_ && ctx.forcing_.active()) {
        outcome = ctx.forcing_.outcomes[ctx.next_forced_++ % ctx.forcing_.outcomes.size()] ? 1 : 0;
      } else {
        outcome = ctx.rng_.uniform01() < mass.p1() ? 1 : 0;
      }
      const double p = mass.of(outcome);
      if (p < kZeroProbability) {
        throw Error(ErrorCode::kNumericalFailure, "forced measurement outcome has zero probability");
      }
      collapse(amps, q, outcome, p);
      state.clbits()[gate.clbit] = static_cast<std::uint8_t>(outcome);
      if (!ctx.terminal_) ctx.outcomes_.push_back(static_cast<std::uint8_t>(outcome));
      check_norm(state, gate);
      return;
    }
    case GateKind::kReset: {
      check_norm(state, gate);
      const BranchMass mass = branch_mass(amps, q);
      const int outcome = ctx.rng_.uniform01() < mass.p1() ? 1 : 0;
      collapse(amps, q, outcome, mass.of(outcome));
      if (outcome) apply_x(amps, q);
      check_norm(state, gate);
      return;
    }
    default:
      apply_unitary(amps, gate);
      check_norm(state, gate);
  }
}

RunResult run(const Circuit& circuit, std::uint64_t seed, const SimulatorOptions& options) {
  check_width(circuit, options);
  Statevector state(circuit.num_qubits(), circuit.num_clbits());
  ExecutionContext ctx(seed, options.forcing);
  const std::size_t terminal = circuit.terminal_measurement_begin();
  const auto ops = circuit.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    ctx.set_terminal(i >= terminal);
    apply_gate(state, ops[i], ctx);
  }
  ShotRecord shot = make_shot(circuit, state, ctx);
  return RunResult{std::move(state), std::move(shot)};
}

Statevector prepare_state(const Circuit& circuit, std::uint64_t seed, const SimulatorOptions& options) {
  check_width(circuit, options);
  Statevector state(circuit.num_qubits(), circuit.num_clbits());
  ExecutionContext ctx(seed, options.forcing);
  const std::size_t terminal = circuit.terminal_measurement_begin();
  const auto ops = circuit.ops();
  for (std::size_t i = 0; i < terminal; ++i) apply_gate(state, ops[i], ctx);
  return state;
}

std::vector<ShotRecord> sample(const Circuit& circuit, std::size_t shots, std::uint64_t seed,
                               const SimulatorOptions& options) {
  check_width(circuit, options);
  std::vector<ShotRecord> records(shots);
  if (shots == 0) return records;

  if (!circuit.has_mid_circuit_measurement()) {
    // One simulation, then per-shot categorical draws over the result bits.
    const Statevector state = prepare_state(circuit, seed, options);
    const std::uint32_t rbits = circuit.result_bits();
    const auto ops = circuit.ops();
    std::vector<std::pair<std::size_t, std::uint32_t>> wiring;  // qubit mask -> result bit
    for (std::size_t i = circuit.terminal_measurement_begin(); i < ops.size(); ++i) {
      if (ops[i].clbit < rbits) wiring.emplace_back(std::size_t{1} << ops[i].qubits[0], ops[i].clbit);
    }
    std::vector<double> cumulative(std::size_t{1} << rbits, 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t x = 0; x < amps.size(); ++x) {
      std::size_t r = 0;
      for (const auto& [mask, bit] : wiring) {
        if (x & mask) r |= std::size_t{1} << bit;
      }
      cumulative[r] += std::norm(amps[x]);
    }
    for (std::size_t r = 1; r < cumulative.size(); ++r) cumulative[r] += cumulative[r - 1];
    const double total = cumulative.back();
    parallel_for(shots, [&](std::size_t i) {
      const std::uint64_t shot_seed = mix_seed(seed, i);
      Rng rng(shot_seed);
      const double u = rng.uniform01() * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      ShotRecord& rec = records[i];
      rec.bitstring = Assignment::from_index(static_cast<std::uint64_t>(it - cumulative.begin()), rbits);
      rec.seed = shot_seed;
      if (circuit.metadata().rounds > 0) rec.rounds = circuit.metadata().rounds;
    });
    return records;
  }

  parallel_for(shots, [&](std::size_t i) {
    records[i] = run(circuit, mix_seed(seed, i), options).shot;
  });
  return records;
}

double expectation_of(const Statevector& state, const KSatInstance& instance) {
  const std::uint32_t n = instance.num_variables();
  if (n > state.num_qubits()) {
    throw Error(ErrorCode::kInvalidParameters, "state narrower than the instance");
  }
  const std::uint64_t data_mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t x = 0; x < amps.size(); ++x) {
    const double p = std::norm(amps[x]);
    if (p != 0.0) total += p * instance.evaluate_index(x & data_mask);
  }
  return total;
}

double exact_expectation_gate_level(const Circuit& circuit, const KSatInstance& instance,
                                    std::uint64_t seed, const SimulatorOptions& options) {
  return expectation_of(prepare_state(circuit, seed, options), instance);
}

std::vector<Amplitude> circuit_unitary(const Circuit& circuit) {
  for (const GateOp& op : circuit.ops()) {
    if (!is_unitary(op.kind) || op.condition) {
      throw Error(ErrorCode::kUnsupported, "circuit_unitary needs a measurement-free circuit");
    }
  }
  const std::size_t dim = std::size_t{1} << circuit.num_qubits();
  std::vector<Amplitude> u(dim * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Amplitude> basis(dim);
    basis[col] = 1.0;
    Statevector state = Statevector::from_amplitudes(std::move(basis));
    for (const GateOp& op : circuit.ops()) apply_unitary(state.amplitudes(), op);
    for (std::size_t row = 0; row < dim; ++row) u[row * dim + col] = state[row];
  }
  return u;
}

std::string shot_to_json_line(const ShotRecord& shot) {
  nlohmann::ordered_json j;
  j["bitstring"] = shot.bitstring.to_string();
  j["ancilla_outcomes"] = shot.ancilla_outcomes;
  j["seed"] = shot.seed;
  if (shot.rounds) j["p"] = *shot.rounds;
  return j.dump();
}

ShotRecord shot_from_json_line(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    ShotRecord shot;
    shot.bitstring = Assignment::from_string(j.at("bitstring").get<std::string>());
    if (j.contains("ancilla_outcomes")) {
      shot.ancilla_outcomes = j["ancilla_outcomes"].get<std::vector<std::uint8_t>>();
    }
    shot.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("p") && !j["p"].is_null()) shot.rounds = j["p"].get<std::uint32_t>();
    return shot;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("shot line: ") + e.what());
  }
}

std::vector<ShotRecord> read_shots_jsonl(std::istream& in) {
  std::vector<ShotRecord> shots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    shots.push_back(shot_from_json_line(line));
  }
  return shots;
}

void write_state_dump(std::ostream& out, const Statevector& state) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  for (const Amplitude& a : state.amplitudes()) {
    for (double part : {a.real(), a.imag()}) {
      auto bits = std::bit_cast<std::uint64_t>(part);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char buf[8];
      std::memcpy(buf, &bits, 8);
      out.write(buf, 8);
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing state dump");
}

Statevector read_state_dump(std::istream& in) {
  std::vector<Amplitude> amps;
  char buf[16];
  while (in.read(buf, 16)) {
    std::uint64_t re_bits, im_bits;
    std::memcpy(&re_bits, buf, 8);
    std::memcpy(&im_bits, buf + 8, 8);
    if constexpr (std::endian::native == std::endian::big) {
      re_bits = __builtin_bswap64(re_bits);
      im_bits = __builtin_bswap64(im_bits);
    }
    amps.emplace_back(std::bit_cast<double>(re_bits), std::bit_cast<double>(im_bits));
  }
  if (in.gcount() != 0) throw Error(ErrorCode::kParseError, "state dump has a truncated entry");
  return Statevector::from_amplitudes(std::move(amps));
}

}  // namespace qsat
