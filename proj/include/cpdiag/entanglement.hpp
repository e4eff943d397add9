// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit concurrence. concurrence_wootters() is the general algorithm and
// serves as the reference for the closed forms below it.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "linalg.hpp"
#include "channels.hpp"
#include "states.hpp"

namespace cpdiag {

struct ConcurrenceResult {
  double concurrence;          // max(0, signed)
  double signed_value;         // 2 mu[0] - sum(mu), may be negative
  std::array<double, 4> mu;    // descending, >= 0
};

namespace detail {

// (sigma_y (x) sigma_y) conj(m) (sigma_y (x) sigma_y). sigma_y (x) sigma_y is
// real antidiagonal (-1, 1, 1, -1), so this is a signed index reversal.
inline Matrix4 spin_flip_matrix(const Matrix4& m) {
  static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = sign[i] * sign[j] * std::conj(m(3 - i, 3 - j));
  return out;
}

}  // namespace detail

/// rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
inline Matrix4 spin_flip(const TwoQubitState& s) { return detail::spin_flip_matrix(s.matrix()); }

/// Wootters concurrence. The mu_j (square roots of the eigenvalues of
/// rho rho~) are obtained as the singular values of sqrt(rho) sqrt(rho~),
/// which avoids squaring and re-rooting small eigenvalues.
inline ConcurrenceResult concurrence_wootters(const TwoQubitState& s, double tol = kDefaultTol) {
  require_valid(s, tol, "concurrence_wootters");
  const Matrix4 root = sqrt_psd(s.matrix(), tol);
  const Matrix4 root_flipped = detail::spin_flip_matrix(root);
  const auto mu = singular_values(multiply(root, root_flipped));
  const double sum = mu[0] + mu[1] + mu[2] + mu[3];
  const double signed_value = 2.0 * mu[0] - sum;
  return {std::clamp(signed_value, 0.0, 1.0), signed_value, mu};
}

inline double concurrence(const TwoQubitState& s, double tol = kDefaultTol) {
  return concurrence_wootters(s, tol).concurrence;
}

/// Square of the concurrence.
inline double tangle(const TwoQubitState& s, double tol = kDefaultTol) {
  const double c = concurrence(s, tol);
  return c * c;
}

/// Concurrence of the image of the singlet under a unital diagonal channel:
/// 1/2 max{lx+ly+lz-1, lx-ly-lz-1, -lx+ly-lz-1, -lx-ly+lz-1, 0}.
inline double concurrence_bell_diagonal(const std::array<double, 3>& l, double tol = kDefaultTol) {
  if (!is_cp_unital(l, tol))
    throw NumericError("concurrence_bell_diagonal: lambda violates complete positivity");
  const double v = std::max({l[0] + l[1] + l[2] - 1.0, l[0] - l[1] - l[2] - 1.0,
                             -l[0] + l[1] - l[2] - 1.0, -l[0] - l[1] + l[2] - 1.0, 0.0});
  return 0.5 * v;
}

/// Concurrence for (lambda, tau = (0, 0, tau_z)):
/// 1/2 max{0, |ly-lx| - sqrt((1+lz)^2 - tz^2), |lx+ly| - sqrt((1-lz)^2 - tz^2)}.
inline double concurrence_shifted(const std::array<double, 3>& l, double tau_z,
                                  double tol = kDefaultTol) {
  const auto ev = shifted_eigenvalues(l, tau_z);
  if (*std::min_element(ev.begin(), ev.end()) < -tol)
    throw NumericError("concurrence_shifted: parameters violate complete positivity");
  auto root = [tol](double radicand) {
    if (radicand < -tol) throw NumericError("concurrence_shifted: negative radicand");
    return std::sqrt(std::max(radicand, 0.0));
  };
  const double rp = root((1.0 + l[2]) * (1.0 + l[2]) - tau_z * tau_z);
  const double rm = root((1.0 - l[2]) * (1.0 - l[2]) - tau_z * tau_z);
  return 0.5 * std::max({0.0, std::abs(l[1] - l[0]) - rp, std::abs(l[0] + l[1]) - rm});
}

}  // namespace cpdiag
