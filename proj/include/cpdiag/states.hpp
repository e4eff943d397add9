// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit density operators. Basis order |00>, |01>, |10>, |11>; the first
// tensor factor (qubit A) is the one local channels act on.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "linalg.hpp"

namespace cpdiag {

enum class Subsystem { A, B };

/// A 4x4 density operator. Validity is checked with validate(), not on
/// construction, so malformed matrices can still be represented.
class TwoQubitState {
 public:
  TwoQubitState() = default;
  explicit TwoQubitState(const Matrix4& rho) : rho_(rho) {}

  const Matrix4& matrix() const { return rho_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }

 private:
  Matrix4 rho_;
};

/// Names the first violated state predicate, if any.
struct StateDefect {
  enum class Kind { NonHermitian, TraceNotOne, NotPositive } kind;
  double amount;

  std::string describe() const {
    switch (kind) {
      case Kind::NonHermitian: return "not Hermitian (defect " + std::to_string(amount) + ")";
      case Kind::TraceNotOne: return "trace is not 1 (deviation " + std::to_string(amount) + ")";
      case Kind::NotPositive:
        return "not positive semidefinite (min eigenvalue " + std::to_string(amount) + ")";
    }
    return "invalid state";
  }
};

inline std::optional<StateDefect> validate(const TwoQubitState& s, double tol = kDefaultTol) {
  const double h = hermiticity_defect(s.matrix());
  if (!(h <= tol)) return StateDefect{StateDefect::Kind::NonHermitian, h};
  const double tr = std::abs(trace(s.matrix()) - 1.0);
  if (!(tr <= tol)) return StateDefect{StateDefect::Kind::TraceNotOne, tr};
  const double lo = hermitian_eigen(s.matrix(), tol).values.back();
  if (lo < -tol) return StateDefect{StateDefect::Kind::NotPositive, lo};
  return std::nullopt;
}

inline bool is_valid(const TwoQubitState& s, double tol = kDefaultTol) {
  return !validate(s, tol).has_value();
}

inline void require_valid(const TwoQubitState& s, double tol, const char* who) {
  if (auto d = validate(s, tol)) throw NumericError(std::string(who) + ": state " + d->describe());
}

/// r[i][j] = Tr[rho (sigma_i (x) sigma_j)], sigma_0 = I.
using PauliCoefficients = std::array<std::array<double, 4>, 4>;

namespace detail {

inline const std::array<Matrix4, 16>& pauli_products() {
  static const std::array<Matrix4, 16> table = [] {
    std::array<Matrix4, 16> t;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) t[4 * i + j] = kron(pauli::sigma(i), pauli::sigma(j));
    return t;
  }();
  return table;
}

}  // namespace detail

inline PauliCoefficients to_pauli(const TwoQubitState& s) {
  PauliCoefficients r{};
  const auto& prod = detail::pauli_products();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      // Tr[rho P] = sum_{a,b} rho(a,b) P(b,a)
      const Matrix4& p = prod[4 * i + j];
      double acc = 0.0;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) acc += (s(a, b) * p(b, a)).real();
      r[i][j] = acc;
    }
  return r;
}

inline TwoQubitState from_pauli(const PauliCoefficients& r) {
  Matrix4 rho;
  const auto& prod = detail::pauli_products();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (r[i][j] != 0.0) rho += prod[4 * i + j] * complex{0.25 * r[i][j]};
  return TwoQubitState(rho);
}

inline TwoQubitState pure_state(const std::array<complex, 4>& psi) {
  double norm = 0.0;
  for (const auto& a : psi) norm += std::norm(a);
  if (!(norm > 0.0)) throw std::invalid_argument("pure_state: zero vector");
  Matrix4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm;
  return TwoQubitState(rho);
}

inline TwoQubitState maximally_mixed() {
  return TwoQubitState(Matrix4::identity() * complex{0.25});
}

/// (|01> - |10>)/sqrt(2).
inline TwoQubitState singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return pure_state({0.0, h, -h, 0.0});
}

/// (|00> + |11>)/sqrt(2).
inline TwoQubitState phi_plus() {
  const double h = 1.0 / std::sqrt(2.0);
  return pure_state({h, 0.0, 0.0, h});
}

/// (sigma_k (x) I) singlet (sigma_k (x) I) for k = 0..3.
inline std::array<TwoQubitState, 4> bell_basis() {
  std::array<TwoQubitState, 4> out;
  const Matrix4 psi = singlet().matrix();
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix4 u = kron(pauli::sigma(k), pauli::id());
    out[k] = TwoQubitState(u * psi * adjoint(u));
  }
  return out;
}

/// q singlet + (1 - q) I/4, positive for q in [-1/3, 1].
inline TwoQubitState werner(double q) {
  if (!(q >= -1.0 / 3.0 && q <= 1.0))
    throw std::invalid_argument("werner: q must lie in [-1/3, 1]");
  return TwoQubitState(singlet().matrix() * complex{q} +
                       Matrix4::identity() * complex{0.25 * (1.0 - q)});
}

/// Maximally entangled mixed states (up to local unitaries), p in [0, 1]:
///   p >= 2/3: p|phi+><phi+| + (1-p)|01><01|
///   p <= 2/3: p|phi+><phi+| + 1/3|01><01| + (1/3 - p/2)(|00><00| + |11><11|)
inline TwoQubitState mems(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mems: p must lie in [0, 1]");
  Matrix4 rho = phi_plus().matrix() * complex{p};
  if (p >= 2.0 / 3.0) {
    rho(1, 1) += 1.0 - p;
  } else {
    rho(1, 1) += 1.0 / 3.0;
    rho(0, 0) += 1.0 / 3.0 - p / 2.0;
    rho(3, 3) += 1.0 / 3.0 - p / 2.0;
  }
  return TwoQubitState(rho);
}

/// Tr[rho^2].
inline double purity(const TwoQubitState& s) {
  // rho Hermitian: Tr[rho^2] = sum |rho_ij|^2
  double p = 0.0;
  for (const auto& x : s.matrix().data()) p += std::norm(x);
  return p;
}

/// Traces out `over`; partial_trace(s, A) is the state of qubit B.
inline Matrix2 partial_trace(const TwoQubitState& s, Subsystem over) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (over == Subsystem::A)
          out(i, j) += s(2 * k + i, 2 * k + j);
        else
          out(i, j) += s(2 * i + k, 2 * j + k);
      }
  return out;
}

/// Max-norm distance of the reduced state on `kept` from I/2.
inline double reduced_distance_from_mixed(const TwoQubitState& s, Subsystem kept) {
  const Matrix2 red = partial_trace(s, kept == Subsystem::A ? Subsystem::B : Subsystem::A);
  return distance(red, Matrix2::identity() * complex{0.5});
}

/// 2[1 - P(Tr_B psi)] for a pure state; equals the tangle.
inline double linear_entropy_pure(const TwoQubitState& s, double tol = kDefaultTol) {
  if (purity(s) < 1.0 - tol) throw NumericError("linear_entropy_pure: state is not pure");
  const Matrix2 red = partial_trace(s, Subsystem::B);
  double p = 0.0;
  for (const auto& x : red.data()) p += std::norm(x);
  return 2.0 * (1.0 - p);
}

/// Random full-support state: a normalized complex-Gaussian pure state mixed
/// with I/4 at a uniform weight. Test helper, not a canonical measure.
template <class Rng>
TwoQubitState random_state(Rng& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<complex, 4> psi;
  for (auto& a : psi) a = complex{g(rng), g(rng)};
  const double w = u(rng);
  return TwoQubitState(pure_state(psi).matrix() * complex{w} +
                       Matrix4::identity() * complex{0.25 * (1.0 - w)});
}

}  // namespace cpdiag
