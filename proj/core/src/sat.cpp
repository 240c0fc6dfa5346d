#include "qsat/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qsat/error.hpp"
#include "qsat/rng.hpp"

namespace qsat {

namespace {
constexpr std::uint32_t kMaxVariables = 64;
}

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  if (literals_.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "clause must contain at least one literal");
  }
  for (const Literal& lit : literals_) {
    if (lit.variable >= kMaxVariables) {
      throw Error(ErrorCode::kTooLarge, "variable index exceeds 63");
    }
    const std::uint64_t bit = std::uint64_t{1} << lit.variable;
    if (mask_ & bit) {
      throw Error(ErrorCode::kInvalidParameters,
                  "variable " + std::to_string(lit.variable) + " appears twice in one clause");
    }
    mask_ |= bit;
    if (lit.negated) unsat_pattern_ |= bit;
  }
}

Assignment::Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Assignment Assignment::from_index(std::uint64_t index, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return Assignment(std::move(bits));
}

Assignment Assignment::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kInvalidAssignment, "bitstring may only contain '0' and '1'");
    }
    bits.push_back(c == '1');
  }
  return Assignment(std::move(bits));
}

std::uint64_t Assignment::to_index() const {
  if (bits_.size() > 64) throw Error(ErrorCode::kTooLarge, "assignment wider than 64 bits");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) index |= std::uint64_t{bits_[i]} << i;
  return index;
}

std::string Assignment::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

KSatInstance::KSatInstance(std::uint32_t n, std::uint32_t k, std::vector<Clause> clauses,
                           std::optional<std::uint64_t> seed)
    : n_(n), k_(k), clauses_(std::move(clauses)), seed_(seed) {
  if (n_ == 0 || k_ == 0) throw Error(ErrorCode::kInvalidParameters, "n and k must be positive");
  if (n_ > kMaxVariables) throw Error(ErrorCode::kTooLarge, "at most 64 variables are supported");
  if (clauses_.empty()) throw Error(ErrorCode::kInvalidParameters, "instance needs at least one clause");
  for (const Clause& c : clauses_) {
    if (c.width() != k_) {
      throw Error(ErrorCode::kUnsupportedWidth, "clause width differs from k");
    }
    for (const Literal& lit : c.literals()) {
      if (lit.variable >= n_) {
        throw Error(ErrorCode::kInvalidParameters, "literal references variable outside [0, n)");
      }
    }
  }
}

std::uint32_t KSatInstance::evaluate_index(std::uint64_t x) const {
  std::uint32_t count = 0;
  for (const Clause& c : clauses_) count += c.satisfied_by(x) ? 1 : 0;
  return count;
}

std::string KSatInstance::id() const {
  // FNV-1a over (n, k, signed literals).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(n_);
  mix(k_);
  for (const Clause& c : clauses_) {
    for (const Literal& lit : c.literals()) {
      const std::int64_t v = static_cast<std::int64_t>(lit.variable) + 1;
      mix(lit.negated ? -v : v);
    }
    mix(0);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

KSatInstance generate_random_ksat(std::uint32_t n, std::uint32_t k, double density,
                                  std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::kInvalidParameters, "k must be positive");
  if (n < k) throw Error(ErrorCode::kInvalidParameters, "n < k");
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw Error(ErrorCode::kInvalidParameters, "density must be positive");
  }
  const double m_real = std::round(density * static_cast<double>(n));
  if (m_real < 1.0) throw Error(ErrorCode::kInvalidParameters, "round(density * n) must be >= 1");
  const auto m = static_cast<std::size_t>(m_real);

  Rng rng(seed);
  std::vector<std::uint32_t> pool(n);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset in
    // uniformly random order.
    std::iota(pool.begin(), pool.end(), 0U);
    std::vector<Literal> lits;
    lits.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto pick = i + static_cast<std::uint32_t>(rng.uniform_below(n - i));
      std::swap(pool[i], pool[pick]);
      lits.push_back(Literal{pool[i], rng.coin()});
    }
    clauses.emplace_back(std::move(lits));
  }
  return KSatInstance(n, k, pack_clause_layers(std::move(clauses), n), seed);
}

std::vector<Clause> pack_clause_layers(std::vector<Clause> clauses, std::uint32_t n) {
  for (const Clause& c : clauses) {
    for (const Literal& l : c.literals()) {
      if (l.variable >= n) throw Error(ErrorCode::kInvalidParameters, "clause variable out of range");
    }
  }
  std::vector<Clause> out;
  out.reserve(clauses.size());
  std::vector<std::size_t> layer_of(n, 0);
  std::size_t layer = 0;
  while (!clauses.empty()) {
    ++layer;
    std::vector<Clause> rest;
    for (Clause& c : clauses) {
      const bool free = std::none_of(c.literals().begin(), c.literals().end(),
                                     [&](const Literal& l) { return layer_of[l.variable] == layer; });
      if (!free) {
        rest.push_back(std::move(c));
        continue;
      }
      for (const Literal& l : c.literals()) layer_of[l.variable] = layer;
      out.push_back(std::move(c));
    }
    clauses = std::move(rest);
  }
  return out;
}

std::uint32_t evaluate(const KSatInstance& instance, const Assignment& x) {
  if (x.size() != instance.num_variables()) {
    throw Error(ErrorCode::kInvalidAssignment,
                "assignment length " + std::to_string(x.size()) + " != n = " +
                    std::to_string(instance.num_variables()));
  }
  std::uint32_t count = 0;
  for (const Clause& c : instance.clauses()) {
    const bool sat = std::any_of(c.literals().begin(), c.literals().end(),
                                 [&](const Literal& l) { return x[l.variable] != l.negated; });
    count += sat ? 1 : 0;
  }
  return count;
}

OptimumSet brute_force_optimum(const KSatInstance& instance, std::uint32_t max_variables) {
  const std::uint32_t n = instance.num_variables();
  if (n > max_variables) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to n <= " + std::to_string(max_variables));
  }
  OptimumSet result;
  std::vector<std::uint64_t> argmax;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < total; ++x) {
    const std::uint32_t c = instance.evaluate_index(x);
    if (c > result.c_opt) {
      result.c_opt = c;
      argmax.clear();
    }
    if (c == result.c_opt) argmax.push_back(x);
  }
  result.optima.reserve(argmax.size());
  for (std::uint64_t x : argmax) result.optima.push_back(Assignment::from_index(x, n));
  return result;
}

std::vector<std::uint8_t> clause_unsat_pattern(const Clause& clause) {
  std::vector<std::uint8_t> pattern;
  pattern.reserve(clause.width());
  for (const Literal& lit : clause.literals()) pattern.push_back(lit.negated ? 1 : 0);
  return pattern;
}

std::string instance_to_json(const KSatInstance& instance) {
  nlohmann::ordered_json j;
  j["n"] = instance.num_variables();
  j["k"] = instance.clause_width();
  if (instance.seed()) {
    j["seed"] = *instance.seed();
  } else {
    j["seed"] = nullptr;
  }
  auto clauses = nlohmann::ordered_json::array();
  for (const Clause& c : instance.clauses()) {
    auto row = nlohmann::ordered_json::array();
    for (const Literal& lit : c.literals()) {
      const auto v = static_cast<std::int64_t>(lit.variable) + 1;
      row.push_back(lit.negated ? -v : v);
    }
    clauses.push_back(std::move(row));
  }
  j["clauses"] = std::move(clauses);
  return j.dump(2) + "\n";
}

KSatInstance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("instance JSON: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::uint32_t>();
    const auto k = j.at("k").get<std::uint32_t>();
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j["seed"].is_null()) seed = j["seed"].get<std::uint64_t>();
    std::vector<Clause> clauses;
    for (const auto& row : j.at("clauses")) {
      std::vector<Literal> lits;
      for (const auto& v : row) {
        const auto lit = v.get<std::int64_t>();
        if (lit == 0) throw Error(ErrorCode::kParseError, "literal 0 in instance JSON");
        lits.push_back(Literal{static_cast<std::uint32_t>(std::llabs(lit) - 1), lit < 0});
      }
      clauses.emplace_back(std::move(lits));
    }
    return KSatInstance(n, k, std::move(clauses), seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("instance JSON: ") + e.what());
  }
}

KSatInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return instance_from_json(text);
  return parse_dimacs(text);
}

}  // namespace qsat
