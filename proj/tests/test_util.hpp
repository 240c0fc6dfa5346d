#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsat/rng.hpp"
#include "qsat/sat.hpp"

namespace qsat::testing {

// (~x0 | x1 | x2) (~x0 | ~x1 | x2) (~x0 | ~x1 | ~x2) (x0 | x1 | x2)
inline KSatInstance worked_example() {
  auto lit = [](std::uint32_t v, bool neg) { return Literal{v, neg}; };
  return KSatInstance(3, 3,
                      {Clause({lit(0, true), lit(1, false), lit(2, false)}),
                       Clause({lit(0, true), lit(1, true), lit(2, false)}),
                       Clause({lit(0, true), lit(1, true), lit(2, true)}),
                       Clause({lit(0, false), lit(1, false), lit(2, false)})});
}

/// Single clause of width k over a random subset of n variables.
inline Clause random_clause(Rng& rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> vars(n);
  for (std::uint32_t i = 0; i < n; ++i) vars[i] = i;
  std::vector<Literal> lits;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + rng.uniform_below(n - i);
    std::swap(vars[i], vars[j]);
    lits.push_back(Literal{vars[i], rng.coin()});
  }
  return Clause(lits);
}

inline std::string data_path(const std::string& name) { return std::string(QSAT_TEST_DATA_DIR) + "/" + name; }

}  // namespace qsat::testing
