// SPDX-License-Identifier: Apache-2.0
//
// Single-qubit channels in the Bloch picture, r -> T r + t, acting on the
// first qubit of a two-qubit state.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

#include "linalg.hpp"
#include "states.hpp"

namespace cpdiag {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Vec3 matvec(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] += a[i][k] * v[k];
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

inline double det(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

/// r -> T r + t.
struct AffineChannel {
  Mat3 T = identity3();
  Vec3 t{};

  static AffineChannel identity() { return {}; }
};

/// Apply `second` after `first`: T = T2 T1, t = T2 t1 + t2.
inline AffineChannel compose(const AffineChannel& second, const AffineChannel& first) {
  AffineChannel out;
  out.T = matmul(second.T, first.T);
  const Vec3 moved = matvec(second.T, first.t);
  for (int i = 0; i < 3; ++i) out.t[i] = moved[i] + second.t[i];
  return out;
}

/// Diagonal form r -> diag(lambda) r + tau. lambda carries signs.
struct CanonicalChannel {
  Vec3 lambda{1.0, 1.0, 1.0};
  Vec3 tau{};

  bool is_unital(double tol = kDefaultTol) const { return norm(tau) <= tol; }

  AffineChannel affine() const {
    AffineChannel a;
    a.T = {{{lambda[0], 0, 0}, {0, lambda[1], 0}, {0, 0, lambda[2]}}};
    a.t = tau;
    return a;
  }
};

struct Canonicalization {
  CanonicalChannel canon;
  Mat3 u_rot;  // T = u_rot diag(lambda) v_rot^T
  Mat3 v_rot;
};

namespace detail {

// One-sided Jacobi SVD of a real 3x3 matrix: a = u diag(s) v^T with s >= 0
// sorted descending; u, v orthogonal (not yet proper).
inline void svd3(const Mat3& a, Mat3& u, Vec3& s, Mat3& v) {
  Mat3 w = a;  // columns get orthogonalised in place
  v = identity3();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (int i = 0; i < 3; ++i) {
          alpha += w[i][p] * w[i][p];
          beta += w[i][q] * w[i][q];
          gamma += w[i][p] * w[i][q];
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (int i = 0; i < 3; ++i) {
          const double wp = w[i][p], wq = w[i][q];
          w[i][p] = c * wp - sn * wq;
          w[i][q] = sn * wp + c * wq;
          const double vp = v[i][p], vq = v[i][q];
          v[i][p] = c * vp - sn * vq;
          v[i][q] = sn * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  Vec3 sv{};
  for (int j = 0; j < 3; ++j) sv[j] = std::sqrt(w[0][j] * w[0][j] + w[1][j] * w[1][j] + w[2][j] * w[2][j]);
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sv[i] > sv[j]; });

  Mat3 vv{};
  u = Mat3{};
  const double small = 1e-300 + eps * std::max(sv[order[0]], 1e-300);
  std::array<bool, 3> filled{};
  for (int k = 0; k < 3; ++k) {
    const int j = order[k];
    s[k] = sv[j];
    for (int i = 0; i < 3; ++i) vv[i][k] = v[i][j];
    if (sv[j] > small) {
      for (int i = 0; i < 3; ++i) u[i][k] = w[i][j] / sv[j];
      filled[k] = true;
    }
  }
  v = vv;
  // Complete u to an orthonormal basis where singular values vanish.
  for (int k = 0; k < 3; ++k) {
    if (filled[k]) continue;
    for (int e = 0; e < 3 && !filled[k]; ++e) {
      Vec3 cand{};
      cand[e] = 1.0;
      for (int m = 0; m < 3; ++m) {
        if (!filled[m]) continue;
        double d = 0;
        for (int i = 0; i < 3; ++i) d += u[i][m] * cand[i];
        for (int i = 0; i < 3; ++i) cand[i] -= d * u[i][m];
      }
      const double n = norm(cand);
      if (n > 0.5) {
        for (int i = 0; i < 3; ++i) u[i][k] = cand[i] / n;
        filled[k] = true;
      }
    }
  }
}

}  // namespace detail

/// Signed singular value decomposition T = u diag(lambda) v^T with proper
/// rotations u, v, and tau = u^T t. Any reflection is absorbed into the
/// lambda entry of smallest magnitude (the last one; |lambda| descends).
inline Canonicalization canonicalize(const AffineChannel& ch) {
  Mat3 u, v;
  Vec3 s;
  detail::svd3(ch.T, u, s, v);
  if (det(u) < 0) {
    for (int i = 0; i < 3; ++i) u[i][2] = -u[i][2];
    s[2] = -s[2];
  }
  if (det(v) < 0) {
    for (int i = 0; i < 3; ++i) v[i][2] = -v[i][2];
    s[2] = -s[2];
  }
  Canonicalization out;
  out.canon.lambda = s;
  out.canon.tau = matvec(transpose(u), ch.t);
  out.u_rot = u;
  out.v_rot = v;
  return out;
}

/// Pauli coefficients under the channel on qubit A:
/// r[i][j] -> sum_k T[i][k] r[k][j] + t[i] r[0][j] for i >= 1.
inline PauliCoefficients transform(const AffineChannel& ch, const PauliCoefficients& r) {
  PauliCoefficients out = r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = ch.t[i] * r[0][j];
      for (int k = 0; k < 3; ++k) acc += ch.T[i][k] * r[k + 1][j];
      out[i + 1][j] = acc;
    }
  return out;
}

/// (E (x) I)[singlet] without any validity check. Its spectrum is that of
/// the Choi operator of E.
inline TwoQubitState singlet_image(const AffineChannel& ch) {
  PauliCoefficients r{};
  r[0][0] = 1.0;
  for (int i = 0; i < 3; ++i) {
    r[i + 1][0] = ch.t[i];
    for (int j = 0; j < 3; ++j) r[i + 1][j + 1] = -ch.T[i][j];
  }
  return from_pauli(r);
}

inline TwoQubitState singlet_image(const CanonicalChannel& ch) { return singlet_image(ch.affine()); }

/// The four closed-form eigenvalues of the singlet image under the channel
/// (lambda, tau = (0, 0, tau_z)), in the order
/// 1/4(1 - lz +- sqrt((lx-ly)^2 + tz^2)), 1/4(1 + lz +- sqrt((lx+ly)^2 + tz^2)).
/// Values may be negative; that signals a non-CP parameter set.
inline std::array<double, 4> shifted_eigenvalues(const Vec3& l, double tau_z) {
  const double rm = std::hypot(l[0] - l[1], tau_z);
  const double rp = std::hypot(l[0] + l[1], tau_z);
  return {0.25 * (1.0 - l[2] + rm), 0.25 * (1.0 - l[2] - rm), 0.25 * (1.0 + l[2] + rp),
          0.25 * (1.0 + l[2] - rp)};
}

/// Unital CP test on the diagonal parameters (tetrahedron membership).
inline bool is_cp_unital(const Vec3& l, double tol = kDefaultTol) {
  return 1.0 + l[0] - l[1] - l[2] >= -tol && 1.0 - l[0] + l[1] - l[2] >= -tol &&
         1.0 - l[0] - l[1] + l[2] >= -tol && 1.0 + l[0] + l[1] + l[2] >= -tol;
}

/// Smallest eigenvalue of the Choi operator (computed as the singlet image).
inline double choi_min_eigenvalue(const AffineChannel& ch) {
  return hermitian_eigen(singlet_image(ch).matrix()).values.back();
}

inline bool is_cp(const AffineChannel& ch, double tol = kDefaultTol) {
  return choi_min_eigenvalue(ch) >= -tol;
}

inline bool is_cp(const CanonicalChannel& ch, double tol = kDefaultTol) {
  if (ch.tau[0] == 0.0 && ch.tau[1] == 0.0) {
    const auto ev = shifted_eigenvalues(ch.lambda, ch.tau[2]);
    return *std::min_element(ev.begin(), ev.end()) >= -tol;
  }
  return is_cp(ch.affine(), tol);
}

/// (E (x) I)[s]. Throws NumericError for a non-CP channel or invalid state.
inline TwoQubitState apply(const AffineChannel& ch, const TwoQubitState& s,
                           double tol = kDefaultTol) {
  if (!is_cp(ch, tol)) throw NumericError("apply: channel is not completely positive");
  require_valid(s, tol, "apply");
  return from_pauli(transform(ch, to_pauli(s)));
}

inline TwoQubitState apply(const CanonicalChannel& ch, const TwoQubitState& s,
                           double tol = kDefaultTol) {
  if (!is_cp(ch, tol)) throw NumericError("apply: channel is not completely positive");
  require_valid(s, tol, "apply");
  return from_pauli(transform(ch.affine(), to_pauli(s)));
}

/// Purity of the singlet image: 1/4 (1 + |lambda|^2 + |tau|^2).
inline double purity_of_image(const CanonicalChannel& ch, double tol = kDefaultTol) {
  if (!is_cp(ch, tol)) throw NumericError("purity_of_image: channel is not completely positive");
  double s = 1.0;
  for (int i = 0; i < 3; ++i) s += ch.lambda[i] * ch.lambda[i] + ch.tau[i] * ch.tau[i];
  return 0.25 * s;
}

// ---------------------------------------------------------------------------
// Sampling

using SeededRng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(SeededRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(SeededRng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Vertices of the unital tetrahedron: I, sigma_x, sigma_y, sigma_z conjugations.
inline constexpr std::array<Vec3, 4> kTetrahedron{
    {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

/// lambda uniform over the tetrahedron: flat Dirichlet barycentric weights
/// from the spacings of three sorted uniforms.
inline CanonicalChannel sample_unital(SeededRng& rng) {
  std::array<double, 3> u{uniform01(rng), uniform01(rng), uniform01(rng)};
  std::sort(u.begin(), u.end());
  const std::array<double, 4> w{u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]};
  CanonicalChannel ch;
  ch.lambda = {0, 0, 0};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i) ch.lambda[i] += w[k] * kTetrahedron[k][i];
  return ch;
}

inline constexpr long kMaxRejectionAttempts = 1'000'000;

struct SamplerStats {
  long proposed = 0;
  long accepted = 0;

  double acceptance_rate() const {
    return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  }
};

/// Rejection sampler: lambda uniform in [-1,1]^3, tau uniform in the unit
/// ball (tau != 0), accepted iff the channel is CP.
inline CanonicalChannel sample_nonunital(SeededRng& rng, SamplerStats& stats,
                                         double tol = kDefaultTol) {
  for (long attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    CanonicalChannel ch;
    for (auto& l : ch.lambda) l = uniform(rng, -1.0, 1.0);
    do {
      for (auto& t : ch.tau) t = uniform(rng, -1.0, 1.0);
    } while (norm(ch.tau) > 1.0 || norm(ch.tau) == 0.0);
    ++stats.proposed;
    if (is_cp(ch, tol)) {
      ++stats.accepted;
      return ch;
    }
  }
  throw NumericError("sample_nonunital: rejection attempts exhausted");
}

inline CanonicalChannel sample_nonunital(SeededRng& rng, double tol = kDefaultTol) {
  SamplerStats stats;
  return sample_nonunital(rng, stats, tol);
}

/// Rejection sampler restricted to tau = (0, 0, tau_z): lambda uniform in
/// [-1,1]^3, tau_z uniform in [-1,1], accepted iff CP.
inline CanonicalChannel sample_axial_nonunital(SeededRng& rng, double tol = kDefaultTol) {
  for (long attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    CanonicalChannel ch;
    for (auto& l : ch.lambda) l = uniform(rng, -1.0, 1.0);
    ch.tau = {0.0, 0.0, uniform(rng, -1.0, 1.0)};
    if (is_cp(ch, tol)) return ch;
  }
  throw NumericError("sample_axial_nonunital: rejection attempts exhausted");
}

}  // namespace cpdiag
