#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsat/error.hpp"
#include "qsat/sat.hpp"

namespace qsat {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::kParseError, "DIMACS line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

KSatInstance parse_dimacs(std::string_view text) {
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t declared_m = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::vector<Literal>> raw;
  std::vector<Literal> current;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "c") {
      std::uint64_t s;
      if (tokens.size() == 3 && tokens[1] == "seed" && parse_number(tokens[2], s)) seed = s;
      continue;
    }
    if (tokens[0] == "%") break;  // SATLIB trailer
    if (tokens[0] == "p") {
      if (have_header) fail(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_number(tokens[2], n) ||
          !parse_number(tokens[3], declared_m) || n <= 0 || declared_m <= 0) {
        fail(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) fail(line_no, "clause before header");
    for (std::string_view tok : tokens) {
      std::int64_t lit;
      if (!parse_number(tok, lit)) fail(line_no, "bad literal '" + std::string(tok) + "'");
      if (lit == 0) {
        if (current.empty()) fail(line_no, "empty clause");
        raw.push_back(std::move(current));
        current.clear();
        continue;
      }
      const std::int64_t var = lit < 0 ? -lit : lit;
      if (var > n) fail(line_no, "literal exceeds declared variable count");
      current.push_back(Literal{static_cast<std::uint32_t>(var - 1), lit < 0});
    }
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "DIMACS: missing 'p cnf' header");
  if (!current.empty()) throw Error(ErrorCode::kParseError, "DIMACS: last clause not 0-terminated");
  if (static_cast<std::int64_t>(raw.size()) != declared_m) {
    throw Error(ErrorCode::kParseError, "DIMACS: header declares " + std::to_string(declared_m) +
                                            " clauses, found " + std::to_string(raw.size()));
  }
  const std::size_t k = raw.front().size();
  std::vector<Clause> clauses;
  clauses.reserve(raw.size());
  for (auto& lits : raw) {
    if (lits.size() != k) {
      throw Error(ErrorCode::kUnsupportedWidth, "DIMACS: mixed clause widths are not supported");
    }
    try {
      clauses.emplace_back(std::move(lits));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, std::string("DIMACS: ") + e.what());
    }
  }
  return KSatInstance(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k),
                      std::move(clauses), seed);
}

std::string emit_dimacs(const KSatInstance& instance) {
  std::ostringstream out;
  if (instance.seed()) out << "c seed " << *instance.seed() << "\n";
  out << "p cnf " << instance.num_variables() << " " << instance.num_clauses() << "\n";
  for (const Clause& c : instance.clauses()) {
    for (const Literal& lit : c.literals()) {
      out << (lit.negated ? "-" : "") << (lit.variable + 1) << " ";
    }
    out << "0\n";
  }
  return out.str();
}

}  // namespace qsat
