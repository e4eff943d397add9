// SPDX-License-Identifier: Apache-2.0
//
// Markovian semigroups acting on one qubit of the singlet: decoherence,
// depolarization and homogenization, in their solved (explicit) form.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "channels.hpp"
#include "entanglement.hpp"
#include "states.hpp"

namespace cpdiag {

enum class ProcessKind { Decoherence, Depolarization, Homogenization };

inline const char* to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::Decoherence: return "decoherence";
    case ProcessKind::Depolarization: return "depolarization";
    case ProcessKind::Homogenization: return "homogenization";
  }
  return "?";
}

struct SemigroupProcess {
  ProcessKind kind = ProcessKind::Decoherence;
  double T = 1.0;      // decoherence / depolarization time constant
  double T1 = 1.0;     // homogenization decay time
  double T2 = 1.0;     // homogenization decoherence time
  double omega = 0.0;  // rad per unit time
  double w = 0.0;      // fixed-point Bloch vector length, homogenization only

  static SemigroupProcess decoherence(double T, double omega = 0.0) {
    SemigroupProcess p;
    p.kind = ProcessKind::Decoherence;
    p.T = T;
    p.omega = omega;
    return p;
  }

  static SemigroupProcess depolarization(double T) {
    SemigroupProcess p;
    p.kind = ProcessKind::Depolarization;
    p.T = T;
    return p;
  }

  static SemigroupProcess homogenization(double T1, double T2, double w, double omega = 0.0) {
    SemigroupProcess p;
    p.kind = ProcessKind::Homogenization;
    p.T1 = T1;
    p.T2 = T2;
    p.w = w;
    p.omega = omega;
    return p;
  }

  /// Characteristic time used to size grids and cutoffs; T1 for
  /// homogenization.
  double time_scale() const { return kind == ProcessKind::Homogenization ? T1 : T; }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    };
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    if (kind == ProcessKind::Homogenization) {
      positive(T1, "T1");
      positive(T2, "T2");
      if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("w must lie in [0, 1]");
    } else {
      positive(T, "T");
    }
  }
};

/// Bloch-picture channel of the process at time t >= 0.
inline AffineChannel channel_at(const SemigroupProcess& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("channel_at: t must be non-negative");
  p.validate();
  AffineChannel ch;
  const double c = std::cos(p.omega * t);
  const double s = std::sin(p.omega * t);
  switch (p.kind) {
    case ProcessKind::Decoherence: {
      const double e = std::exp(-t / p.T);
      ch.T = {{{e * c, e * s, 0.0}, {-e * s, e * c, 0.0}, {0.0, 0.0, 1.0}}};
      break;
    }
    case ProcessKind::Depolarization: {
      const double e = std::exp(-t / p.T);
      ch.T = {{{e, 0.0, 0.0}, {0.0, e, 0.0}, {0.0, 0.0, e}}};
      break;
    }
    case ProcessKind::Homogenization: {
      const double e1 = std::exp(-t / p.T1);
      const double e2 = std::exp(-t / p.T2);
      ch.T = {{{e2 * c, e2 * s, 0.0}, {-e2 * s, e2 * c, 0.0}, {0.0, 0.0, e1}}};
      ch.t = {0.0, 0.0, p.w * (1.0 - e1)};
      break;
    }
  }
  return ch;
}

struct TrajectoryPoint {
  double t;
  double purity;
  double concurrence;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
};

/// Purity and Wootters concurrence of (E_t (x) I)[singlet] on each grid time.
/// Throws NumericError if a channel on the grid is not CP.
inline Trajectory trajectory(const SemigroupProcess& p, const std::vector<double>& t_grid,
                             double tol = kDefaultTol) {
  p.validate();
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] >= 0.0)) throw std::invalid_argument("trajectory: negative time");
    if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
      throw std::invalid_argument("trajectory: grid must be strictly increasing");
  }
  const TwoQubitState psi = singlet();
  Trajectory out;
  out.points.reserve(t_grid.size());
  for (double t : t_grid) {
    const TwoQubitState rho = apply(channel_at(p, t), psi, tol);
    out.points.push_back({t, purity(rho), concurrence(rho, tol)});
  }
  return out;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("linear_grid: need n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("log_grid: need n >= 2 and 0 < lo < hi");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Signed Wootters value 2 mu_max - sum(mu) at time t; zero crossing marks
/// entanglement breaking.
inline double signed_concurrence_at(const SemigroupProcess& p, double t, double tol = kDefaultTol) {
  return concurrence_wootters(apply(channel_at(p, t), singlet(), tol), tol).signed_value;
}

/// First time the concurrence reaches zero, or +infinity.
///
/// The signed Wootters value is scanned on a uniform grid up to
/// 50 * max(T, T1, T2). A finite breaking time requires the value to drop below
/// -1e-9 (a genuine sign change, not round-off around an asymptotic zero);
/// the crossing is then refined by bisection to 1e-9 * time_scale.
inline double entanglement_breaking_time(const SemigroupProcess& p, double tol = kDefaultTol) {
  p.validate();
  constexpr double kNegativeFloor = 1e-9;
  constexpr int kScanPoints = 5000;
  const double scale = p.kind == ProcessKind::Homogenization ? std::max(p.T1, p.T2) : p.T;
  const double t_max = 50.0 * scale;

  double prev_t = 0.0;  // last time with a positive value
  for (int k = 1; k <= kScanPoints; ++k) {
    const double t = t_max * k / kScanPoints;
    const double v = signed_concurrence_at(p, t, tol);
    if (v < -kNegativeFloor) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 200 && hi - lo > 1e-9 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        (signed_concurrence_at(p, mid, tol) > 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    if (v > 0.0) prev_t = t;
  }
  return std::numeric_limits<double>::infinity();
}

/// Checks E_t E_s = E_{t+s} entrywise on the affine representation.
inline bool verify_semigroup(const SemigroupProcess& p, double t, double s, double tol = kDefaultTol) {
  if (!(t >= 0.0 && s >= 0.0)) throw std::invalid_argument("verify_semigroup: negative time");
  const AffineChannel lhs = compose(channel_at(p, t), channel_at(p, s));
  const AffineChannel rhs = channel_at(p, t + s);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(lhs.t[i] - rhs.t[i]) > tol) return false;
    for (int j = 0; j < 3; ++j)
      if (std::abs(lhs.T[i][j] - rhs.T[i][j]) > tol) return false;
  }
  return true;
}

}  // namespace cpdiag
