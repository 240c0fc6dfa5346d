#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsat {

struct Literal {
  std::uint32_t variable = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A disjunction of k literals over k distinct variables.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t width() const { return literals_.size(); }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }

  /// Truth value of the clause given the full assignment as a basis index
  /// (bit i of x is variable i).
  bool satisfied_by(std::uint64_t x) const { return (x & mask_) != unsat_pattern_; }

  /// Bit mask over the clause variables.
  std::uint64_t mask() const { return mask_; }
  /// The only masked pattern leaving the clause unsatisfied.
  std::uint64_t unsat_pattern() const { return unsat_pattern_; }

  friend bool operator==(const Clause& a, const Clause& b) { return a.literals_ == b.literals_; }

 private:
  std::vector<Literal> literals_;
  std::uint64_t mask_ = 0;
  std::uint64_t unsat_pattern_ = 0;
};

/// Truth assignment x_0..x_{n-1}. Converts to/from the basis-state index
/// where variable i is bit i (qubit 0 is the least significant bit).
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::uint8_t> bits);
  static Assignment from_index(std::uint64_t index, std::size_t n);
  /// Parses "0101..." with x_0 as the leftmost character.
  static Assignment from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint64_t to_index() const;
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class KSatInstance {
 public:
  /// Validates the instance invariants: m >= 1, uniform width k, every
  /// variable index < n.
  KSatInstance(std::uint32_t n, std::uint32_t k, std::vector<Clause> clauses,
               std::optional<std::uint64_t> seed = std::nullopt);

  std::uint32_t num_variables() const { return n_; }
  std::uint32_t clause_width() const { return k_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::span<const Clause> clauses() const { return clauses_; }
  const Clause& clause(std::size_t j) const { return clauses_[j]; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  /// Satisfied-clause count for a basis index (no length check).
  std::uint32_t evaluate_index(std::uint64_t x) const;

  /// Stable content hash of the clause list, used as the instance id in
  /// every artifact.
  std::string id() const;

  friend bool operator==(const KSatInstance& a, const KSatInstance& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.clauses_ == b.clauses_;
  }

 private:
  std::uint32_t n_;
  std::uint32_t k_;
  std::vector<Clause> clauses_;
  std::optional<std::uint64_t> seed_;
};

/// Random MAX k-SAT with m = round(density * n) clauses; each clause picks k
/// distinct variables uniformly without replacement with fair-coin polarities.
/// The draws are then ordered by pack_clause_layers.
KSatInstance generate_random_ksat(std::uint32_t n, std::uint32_t k, double density,
                                  std::uint64_t seed);

/// Stable first-fit grouping: the first layer takes every clause that shares
/// no variable with an earlier pick, the next layer repeats on what is left.
/// Clauses in one layer act on disjoint qubits, which keeps the circuit depth
/// per round roughly independent of n at fixed density.
std::vector<Clause> pack_clause_layers(std::vector<Clause> clauses, std::uint32_t n);

/// C(x): number of satisfied clauses.
std::uint32_t evaluate(const KSatInstance& instance, const Assignment& x);

struct OptimumSet {
  std::uint32_t c_opt = 0;
  std::vector<Assignment> optima;  // ascending basis-index order
};

inline constexpr std::uint32_t kDefaultEnumerationLimit = 30;

/// Exhaustive maximum of C over all 2^n assignments with the complete argmax.
OptimumSet brute_force_optimum(const KSatInstance& instance,
                               std::uint32_t max_variables = kDefaultEnumerationLimit);

/// Values of the clause variables (in literal order) that make every literal
/// false: 1 for negated literals, 0 for positive ones.
std::vector<std::uint8_t> clause_unsat_pattern(const Clause& clause);

/// DIMACS CNF. Variables are 1-indexed in text, 0-indexed in memory. A
/// "c seed <u64>" comment carries the generator seed.
KSatInstance parse_dimacs(std::string_view text);
std::string emit_dimacs(const KSatInstance& instance);

/// {"n","k","seed","clauses":[[signed 1-indexed ints]]}
std::string instance_to_json(const KSatInstance& instance);
KSatInstance instance_from_json(std::string_view text);

/// Reads a .cnf or .json instance file (sniffed by content).
KSatInstance load_instance(const std::string& path);

}  // namespace qsat
