#include "qsat/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "qsat/error.hpp"

namespace qsat {

namespace {

std::string fmt_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

std::string qref(std::uint32_t q) { return "q[" + std::to_string(q) + "]"; }

std::string meta_comment(const Circuit& c) {
  const auto& m = c.metadata();
  return "// qsat instance=" + (m.instance_id.empty() ? std::string("-") : m.instance_id) +
         " rounds=" + std::to_string(m.rounds) +
         " schedule=" + (m.schedule_id.empty() ? std::string("-") : m.schedule_id) + "\n";
}

std::string gate_stmt(const GateOp& op) {
  std::string s(gate_name(op.kind));
  if (is_rotation(op.kind)) s += "(" + fmt_angle(op.angle) + ")";
  s += " " + qref(op.qubits[0]);
  if (op.arity() == 2) s += ", " + qref(op.qubits[1]);
  return s + ";";
}

}  // namespace

std::string export_qasm2(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n" << meta_comment(circuit);
  out << "gate rzz(theta) a, b { cx a, b; rz(theta) b; cx a, b; }\n";
  out << "qreg q[" << circuit.num_qubits() << "];\n";
  if (circuit.num_clbits() > 0) out << "creg c[" << circuit.num_clbits() << "];\n";
  for (const GateOp& op : circuit.ops()) {
    if (op.condition) {
      throw Error(ErrorCode::kUnsupported, "feed-forward requires QASM3");
    }
    switch (op.kind) {
      case GateKind::kMeasure:
        out << "measure " << qref(op.qubits[0]) << " -> c[" << op.clbit << "];\n";
        break;
      case GateKind::kReset:
        out << "reset " << qref(op.qubits[0]) << ";\n";
        break;
      default:
        out << gate_stmt(op) << "\n";
    }
  }
  return out.str();
}

std::string export_qasm3(const Circuit& circuit) {
  const std::uint32_t results = circuit.result_bits();
  const std::uint32_t mids = circuit.num_clbits() - results;
  auto bit = [&](std::uint32_t b) {
    return b < results ? "c[" + std::to_string(b) + "]" : "m[" + std::to_string(b - results) + "]";
  };

  std::ostringstream out;
  out << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n" << meta_comment(circuit);
  out << "gate rzz(theta) a, b { cx a, b; rz(theta) b; cx a, b; }\n";
  out << "qubit[" << circuit.num_qubits() << "] q;\n";
  if (results > 0) out << "bit[" << results << "] c;\n";
  if (mids > 0) out << "bit[" << mids << "] m;\n";
  for (const GateOp& op : circuit.ops()) {
    std::string stmt;
    switch (op.kind) {
      case GateKind::kMeasure:
        stmt = bit(op.clbit) + " = measure " + qref(op.qubits[0]) + ";";
        break;
      case GateKind::kReset:
        stmt = "reset " + qref(op.qubits[0]) + ";";
        break;
      default:
        stmt = gate_stmt(op);
    }
    if (op.condition) stmt = "if (" + bit(*op.condition) + ") " + stmt;
    out << stmt << "\n";
  }
  return out.str();
}

namespace {

class QasmReader {
 public:
  explicit QasmReader(std::string_view text) : text_(text) {}

  Circuit read() {
    strip_comments();
    std::vector<std::string> stmts = split_statements();
    for (const std::string& s : stmts) declare(s);
    Circuit circuit(num_qubits_, clbit_total_, result_bits_);
    circuit.metadata() = meta_;
    for (const std::string& s : stmts) {
      if (auto op = instruction(s)) circuit.append(*op);
    }
    return circuit;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kParseError, "QASM: " + msg);
  }

  void strip_comments() {
    std::string out;
    std::size_t pos = 0;
    while (pos < text_.size()) {
      const std::size_t eol = std::min(text_.find('\n', pos), text_.size());
      std::string_view line = text_.substr(pos, eol - pos);
      pos = eol + 1;
      const std::size_t c = line.find("//");
      if (c != std::string_view::npos) {
        read_meta(line.substr(c + 2));
        line = line.substr(0, c);
      }
      out.append(line);
      out.push_back('\n');
    }
    clean_ = std::move(out);
  }

  void read_meta(std::string_view comment) {
    std::istringstream in{std::string(comment)};
    std::string word;
    in >> word;
    if (word != "qsat") return;
    while (in >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = word.substr(0, eq);
      std::string value = word.substr(eq + 1);
      if (value == "-") value.clear();
      if (key == "instance") meta_.instance_id = value;
      if (key == "schedule") meta_.schedule_id = value;
      if (key == "rounds") meta_.rounds = static_cast<std::uint32_t>(std::stoul(value));
    }
  }

  std::vector<std::string> split_statements() const {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : clean_) {
      if (ch == '{') ++depth;
      if (ch == '}') {
        --depth;
        if (depth == 0) {
          cur.push_back(ch);
          out.push_back(trim(cur));
          cur.clear();
          continue;
        }
      }
      if (ch == ';' && depth == 0) {
        out.push_back(trim(cur));
        cur.clear();
        continue;
      }
      cur.push_back(ch == '\n' || ch == '\t' || ch == '\r' ? ' ' : ch);
    }
    if (!trim(cur).empty()) fail("trailing text without ';'");
    std::erase_if(out, [](const std::string& s) { return s.empty(); });
    return out;
  }

  static std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(' ');
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(' ');
    return std::string(s.substr(b, e - b + 1));
  }

  static bool starts_with_word(std::string_view s, std::string_view w) {
    return s.substr(0, w.size()) == w && (s.size() == w.size() || !std::isalnum(static_cast<unsigned char>(s[w.size()])));
  }

  // qreg q[N] / qubit[N] q / creg c[N] / bit[N] name
  void declare(const std::string& s) {
    std::string name;
    std::uint32_t size = 0;
    bool quantum = false;
    if (starts_with_word(s, "qreg") || starts_with_word(s, "creg")) {
      quantum = s[0] == 'q';
      const auto lb = s.find('[');
      const auto rb = s.find(']');
      if (lb == std::string::npos || rb == std::string::npos) fail("bad register: " + s);
      name = trim(s.substr(4, lb - 4));
      size = static_cast<std::uint32_t>(std::stoul(s.substr(lb + 1, rb - lb - 1)));
    } else if (s.rfind("qubit[", 0) == 0 || s.rfind("bit[", 0) == 0) {
      quantum = s[0] == 'q';
      const auto lb = s.find('[');
      const auto rb = s.find(']');
      if (rb == std::string::npos) fail("bad register: " + s);
      size = static_cast<std::uint32_t>(std::stoul(s.substr(lb + 1, rb - lb - 1)));
      name = trim(s.substr(rb + 1));
    } else {
      return;
    }
    if (quantum) {
      if (num_qubits_ != 0) fail("only one quantum register is supported");
      qreg_ = name;
      num_qubits_ = size;
    } else {
      creg_offset_[name] = clbit_total_;
      if (clbit_total_ == 0) result_bits_ = size;
      clbit_total_ += size;
    }
  }

  std::uint32_t index_of(std::string_view ref, bool quantum) const {
    const std::string r = trim(ref);
    const auto lb = r.find('[');
    const auto rb = r.find(']');
    if (lb == std::string::npos || rb == std::string::npos) fail("expected indexed operand: " + r);
    const std::string name = trim(r.substr(0, lb));
    const auto idx = static_cast<std::uint32_t>(std::stoul(r.substr(lb + 1, rb - lb - 1)));
    if (quantum) {
      if (name != qreg_) fail("unknown qubit register " + name);
      return idx;
    }
    const auto it = creg_offset_.find(name);
    if (it == creg_offset_.end()) fail("unknown bit register " + name);
    return it->second + idx;
  }

  std::optional<GateOp> instruction(std::string s) const {
    if (starts_with_word(s, "OPENQASM") || starts_with_word(s, "include") ||
        starts_with_word(s, "gate") || starts_with_word(s, "qreg") || starts_with_word(s, "creg") ||
        s.rfind("qubit[", 0) == 0 || s.rfind("bit[", 0) == 0) {
      return std::nullopt;
    }
    std::optional<std::uint32_t> condition;
    if (starts_with_word(s, "if")) {
      const auto open = s.find('(');
      const auto close = s.find(')');
      if (open == std::string::npos || close == std::string::npos) fail("bad if: " + s);
      const std::string cond = trim(s.substr(open + 1, close - open - 1));
      if (cond.find("==") != std::string::npos) fail("only single-bit conditions are supported");
      condition = index_of(cond, false);
      s = trim(s.substr(close + 1));
    }
    GateOp op;
    if (const auto eq = s.find("= measure"); eq != std::string::npos) {
      op = GateOp::measure(index_of(s.substr(eq + 9), true), index_of(s.substr(0, eq), false));
    } else if (starts_with_word(s, "measure")) {
      const auto arrow = s.find("->");
      if (arrow == std::string::npos) fail("bad measure: " + s);
      op = GateOp::measure(index_of(s.substr(7, arrow - 7), true), index_of(s.substr(arrow + 2), false));
    } else if (starts_with_word(s, "reset")) {
      op = GateOp::reset(index_of(s.substr(5), true));
    } else {
      std::size_t i = 0;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      const std::string name = s.substr(0, i);
      const auto kind = gate_from_name(name);
      if (!kind || !is_unitary(*kind)) fail("unsupported gate '" + name + "'");
      double angle = 0.0;
      std::string rest = trim(s.substr(i));
      if (!rest.empty() && rest[0] == '(') {
        std::size_t close = 0;
        for (int depth = 0; close < rest.size(); ++close) {
          if (rest[close] == '(') ++depth;
          if (rest[close] == ')' && --depth == 0) break;
        }
        if (close == rest.size()) fail("unbalanced parameter list: " + s);
        angle = evaluate(rest.substr(1, close - 1));
        rest = trim(rest.substr(close + 1));
      } else if (is_rotation(*kind)) {
        fail("rotation without angle: " + s);
      }
      const auto comma = rest.find(',');
      if (is_two_qubit(*kind)) {
        if (comma == std::string::npos) fail("two-qubit gate needs two operands: " + s);
        op = GateOp::two(*kind, index_of(rest.substr(0, comma), true),
                         index_of(rest.substr(comma + 1), true), angle);
      } else {
        if (comma != std::string::npos) fail("too many operands: " + s);
        op = GateOp::one(*kind, index_of(rest, true), angle);
      }
    }
    op.condition = condition;
    return op;
  }

  // number | pi | (expr) | -factor, combined with + - * /
  double evaluate(const std::string& expr) const {
    std::size_t pos = 0;
    const double v = parse_sum(expr, pos);
    skip_ws(expr, pos);
    if (pos != expr.size()) fail("bad angle expression '" + expr + "'");
    return v;
  }
  static void skip_ws(const std::string& e, std::size_t& p) {
    while (p < e.size() && e[p] == ' ') ++p;
  }
  double parse_sum(const std::string& e, std::size_t& p) const {
    double v = parse_product(e, p);
    for (;;) {
      skip_ws(e, p);
      if (p < e.size() && (e[p] == '+' || e[p] == '-')) {
        const char op = e[p++];
        const double r = parse_product(e, p);
        v = op == '+' ? v + r : v - r;
      } else {
        return v;
      }
    }
  }
  double parse_product(const std::string& e, std::size_t& p) const {
    double v = parse_factor(e, p);
    for (;;) {
      skip_ws(e, p);
      if (p < e.size() && (e[p] == '*' || e[p] == '/')) {
        const char op = e[p++];
        const double r = parse_factor(e, p);
        v = op == '*' ? v * r : v / r;
      } else {
        return v;
      }
    }
  }
  double parse_factor(const std::string& e, std::size_t& p) const {
    skip_ws(e, p);
    if (p >= e.size()) fail("truncated angle expression");
    if (e[p] == '-') return -parse_factor(e, ++p);
    if (e[p] == '+') return parse_factor(e, ++p);
    if (e[p] == '(') {
      const double v = parse_sum(e, ++p);
      skip_ws(e, p);
      if (p >= e.size() || e[p] != ')') fail("missing ')' in angle");
      ++p;
      return v;
    }
    if (e.compare(p, 2, "pi") == 0) {
      p += 2;
      return std::numbers::pi;
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(e.substr(p), &used);
    } catch (const std::exception&) {
      fail("bad number in angle '" + e + "'");
    }
    p += used;
    return v;
  }

  std::string_view text_;
  std::string clean_;
  std::string qreg_;
  std::uint32_t num_qubits_ = 0;
  std::uint32_t clbit_total_ = 0;
  std::uint32_t result_bits_ = 0;
  std::map<std::string, std::uint32_t> creg_offset_;
  CircuitMetadata meta_;
};

}  // namespace

Circuit parse_qasm(std::string_view text) { return QasmReader(text).read(); }

}  // namespace qsat
