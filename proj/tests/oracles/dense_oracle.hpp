#pragma once

// Reference models used only by tests. Everything here is written from the
// textbook definitions with dense matrices and does not call the library's
// simulation kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qsat/angles.hpp"
#include "qsat/circuit.hpp"
#include "qsat/sat.hpp"

namespace oracle {

using cd = std::complex<double>;

struct Matrix {
  std::size_t dim = 0;
  std::vector<cd> a;  // row-major

  explicit Matrix(std::size_t d = 0) : dim(d), a(d * d) {}
  static Matrix identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
  cd& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const cd& operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  Matrix out(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) {
      const cd v = x(i, k);
      if (v == cd{}) continue;
      for (std::size_t j = 0; j < x.dim; ++j) out(i, j) += v * y(k, j);
    }
  return out;
}

inline std::vector<cd> operator*(const Matrix& m, const std::vector<cd>& v) {
  std::vector<cd> out(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// Kronecker product x (x) y, with y on the low bits.
inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.dim * y.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l) out(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return out;
}

inline Matrix mat2(cd a, cd b, cd c, cd d) {
  Matrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline Matrix single_qubit(qsat::GateKind kind, double t) {
  using qsat::GateKind;
  const cd i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  const double pi = std::numbers::pi;
  switch (kind) {
    case GateKind::kH: return mat2(r, r, r, -r);
    case GateKind::kX: return mat2(0, 1, 1, 0);
    case GateKind::kZ: return mat2(1, 0, 0, -1);
    case GateKind::kS: return mat2(1, 0, 0, i);
    case GateKind::kSdg: return mat2(1, 0, 0, -i);
    case GateKind::kT: return mat2(1, 0, 0, std::exp(i * (pi / 4)));
    case GateKind::kTdg: return mat2(1, 0, 0, std::exp(-i * (pi / 4)));
    case GateKind::kRx: return mat2(std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2));
    case GateKind::kRy: return mat2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2));
    case GateKind::kRz: return mat2(std::exp(-i * (t / 2)), 0, 0, std::exp(i * (t / 2)));
    default: return Matrix::identity(2);
  }
}

/// U acting on qubit q of a w-qubit register (qubit 0 = least significant).
inline Matrix embed1(const Matrix& u, std::uint32_t q, std::uint32_t w) {
  Matrix out = Matrix::identity(1);
  for (std::uint32_t j = w; j-- > 0;) out = kron(out, j == q ? u : Matrix::identity(2));
  return out;
}

/// Two-qubit gates built from their action on basis states.
inline Matrix two_qubit(const qsat::GateOp& g, std::uint32_t w) {
  using qsat::GateKind;
  const std::size_t dim = std::size_t{1} << w;
  Matrix m(dim);
  const std::uint32_t a = g.qubits[0];
  const std::uint32_t b = g.qubits[1];
  for (std::size_t x = 0; x < dim; ++x) {
    const int xa = static_cast<int>((x >> a) & 1);
    const int xb = static_cast<int>((x >> b) & 1);
    switch (g.kind) {
      case GateKind::kCX: m(xa ? x ^ (std::size_t{1} << b) : x, x) = 1.0; break;
      case GateKind::kCZ: m(x, x) = (xa && xb) ? -1.0 : 1.0; break;
      case GateKind::kRzz: {
        const double zz = (xa == xb) ? 1.0 : -1.0;
        m(x, x) = std::exp(cd{0.0, -g.angle / 2 * zz});
        break;
      }
      default: break;
    }
  }
  return m;
}

inline Matrix gate_matrix(const qsat::GateOp& g, std::uint32_t w) {
  if (qsat::is_two_qubit(g.kind)) return two_qubit(g, w);
  return embed1(single_qubit(g.kind, g.angle), g.qubits[0], w);
}

/// Product of the gate matrices of a unitary, unconditioned circuit.
inline Matrix circuit_matrix(const qsat::Circuit& c) {
  Matrix u = Matrix::identity(std::size_t{1} << c.num_qubits());
  for (const auto& g : c.ops()) u = gate_matrix(g, c.num_qubits()) * u;
  return u;
}

/// C_j(x) from the literal definition.
inline int clause_value(const qsat::Clause& clause, std::uint64_t x) {
  for (const auto& lit : clause.literals()) {
    const bool v = ((x >> lit.variable) & 1) != 0;
    if (v != lit.negated) return 1;
  }
  return 0;
}

inline int cost(const qsat::KSatInstance& inst, std::uint64_t x) {
  int c = 0;
  for (const auto& cl : inst.clauses()) c += clause_value(cl, x);
  return c;
}

/// diag(exp(-i gamma C_j(x))) over a w-qubit register (variables on the low
/// qubits; ancilla bits are ignored).
inline std::vector<cd> clause_diagonal(const qsat::Clause& clause, double gamma, std::uint32_t w) {
  std::vector<cd> d(std::size_t{1} << w);
  for (std::size_t x = 0; x < d.size(); ++x) d[x] = std::exp(cd{0.0, -gamma * clause_value(clause, x)});
  return d;
}

/// Dense QAOA: e^{-i beta sum X} is the Kronecker power of Rx(2 beta).
inline std::vector<cd> qaoa_state(const qsat::KSatInstance& inst, const qsat::AngleSchedule& angles) {
  const std::uint32_t n = inst.num_variables();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cd> psi(dim, cd{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  for (std::size_t r = 0; r < angles.rounds(); ++r) {
    for (std::size_t x = 0; x < dim; ++x) psi[x] *= std::exp(cd{0.0, -angles.gammas[r] * cost(inst, x)});
    const Matrix rx = single_qubit(qsat::GateKind::kRx, 2 * angles.betas[r]);
    Matrix mixer = Matrix::identity(1);
    for (std::uint32_t q = 0; q < n; ++q) mixer = kron(mixer, rx);
    psi = mixer * psi;
  }
  return psi;
}

inline double expectation(const qsat::KSatInstance& inst, const std::vector<cd>& psi) {
  double e = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x) e += std::norm(psi[x]) * cost(inst, x);
  return e;
}

/// max_i |a_i * e^{i phi} - b_i| with phi chosen from the largest entry of a.
template <class A, class B>
double phase_aligned_distance(const A& a, const B& b) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i]) > std::abs(a[best])) best = i;
  cd phase{1.0, 0.0};
  if (std::abs(a[best]) > 1e-14 && std::abs(b[best]) > 1e-14) {
    phase = b[best] / a[best];
    phase /= std::abs(phase);
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] * phase - b[i]));
  return d;
}

/// Distance between a dense matrix and a diagonal, up to one global phase.
template <class M>
double distance_to_diagonal(const M& u, std::size_t dim, const std::vector<cd>& diag) {
  std::vector<cd> flat_u(dim * dim), flat_d(dim * dim);
  for (std::size_t i = 0; i < dim * dim; ++i) flat_u[i] = u[i];
  for (std::size_t i = 0; i < dim; ++i) flat_d[i * dim + i] = diag[i];
  return phase_aligned_distance(flat_u, flat_d);
}

}  // namespace oracle
