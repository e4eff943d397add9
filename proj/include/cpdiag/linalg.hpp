// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex matrices (2x2, 4x4 and the occasional 8x8 dilation)
// with a cyclic Jacobi eigensolver for Hermitian input.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cpdiag {

using complex = std::complex<double>;

/// Default absolute tolerance on matrix entries.
inline constexpr double kDefaultTol = 1e-10;

/// Raised when an input violates a numeric precondition (non-Hermitian
/// input, negative spectrum, invalid state, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major dense N x N complex matrix. Dimension mismatches are compile
/// errors rather than runtime failures.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() : a_{} {}

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  const std::array<complex, N * N>& data() const { return a_; }
  std::array<complex, N * N>& data() { return a_; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(complex s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, complex s) { return a *= s; }
  friend Matrix operator*(complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<complex, N * N> a_;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

/// Entrywise complex conjugate (not the adjoint).
template <std::size_t N>
Matrix<N> conjugate(const Matrix<N>& m) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.data()[i] = std::conj(m.data()[i]);
  return out;
}

template <std::size_t N>
complex trace(const Matrix<N>& m) {
  complex t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Max-abs entry norm.
template <std::size_t N>
double max_abs(const Matrix<N>& m) {
  double r = 0.0;
  for (const auto& x : m.data()) r = std::max(r, std::abs(x));
  return r;
}

template <std::size_t N>
double distance(const Matrix<N>& a, const Matrix<N>& b) {
  return max_abs(a - b);
}

template <std::size_t N>
double hermiticity_defect(const Matrix<N>& m) {
  return distance(m, adjoint(m));
}

/// Kronecker product a (x) b; `a` indexes the first (most significant) factor.
template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N>& a, const Matrix<M>& b) {
  Matrix<N * M> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = a(i, j) * b(k, l);
  return out;
}

namespace pauli {

inline Matrix2 id() { return Matrix2::identity(); }

inline Matrix2 x() {
  Matrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix2 y() {
  Matrix2 m;
  m(0, 1) = complex{0.0, -1.0};
  m(1, 0) = complex{0.0, 1.0};
  return m;
}

inline Matrix2 z() {
  Matrix2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// sigma_0 = I, sigma_1..3 = x, y, z.
inline Matrix2 sigma(std::size_t k) {
  switch (k) {
    case 0: return id();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw std::out_of_range("pauli index must be 0..3");
  }
}

}  // namespace pauli

template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values;  // descending
  Matrix<N> vectors;             // column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws NumericError if ||m - m^dagger||_inf > tol.
template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N>& m, double tol = kDefaultTol) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol))
    throw NumericError("hermitian_eigen: matrix is not Hermitian (defect " +
                       std::to_string(defect) + ")");

  // Work on the exactly Hermitian part.
  Matrix<N> a;
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < N; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  Matrix<N> v = Matrix<N>::identity();

  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= eps * eps * scale) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible relative to both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const complex phase = a(p, q) / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = [[c, s*phase], [-s*conj(phase), c]] on (p, q); A <- J^dagger A J.
        const complex jpq = s * phase;
        const complex jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < N; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        for (std::size_t k = 0; k < N; ++k) {
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenDecomposition<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// Eigenvalues at or below this are indistinguishable from zero after a
/// Jacobi solve of a matrix with entries of magnitude `scale`.
inline double roundoff_floor(double scale) {
  return 32.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
}

/// Square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in [-tol, 0] (and positive round-off below
/// `roundoff_floor`) are snapped to zero; anything below -tol means the
/// input is not PSD and raises NumericError.
template <std::size_t N>
Matrix<N> sqrt_psd(const Matrix<N>& m, double tol = kDefaultTol) {
  const auto eig = hermitian_eigen(m, tol);
  const double floor = roundoff_floor(std::abs(eig.values.front()));
  std::array<double, N> roots{};
  for (std::size_t k = 0; k < N; ++k) {
    const double e = eig.values[k];
    if (e < -tol)
      throw NumericError("sqrt_psd: negative eigenvalue " + std::to_string(e));
    roots[k] = e <= floor ? 0.0 : std::sqrt(e);
  }
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      complex s{};
      for (std::size_t k = 0; k < N; ++k)
        s += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < N; ++i) out(i, i) = out(i, i).real();
  return out;
}

/// Singular values (descending) via the Hermitian dilation [[0, X], [X^dagger, 0]],
/// whose spectrum is {+s_k, -s_k}. Accurate to ~eps*||X|| in absolute terms,
/// including the small ones.
template <std::size_t N>
std::array<double, N> singular_values(const Matrix<N>& x) {
  Matrix<2 * N> d;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      d(i, N + j) = x(i, j);
      d(N + j, i) = std::conj(x(i, j));
    }
  const auto eig = hermitian_eigen(d, std::numeric_limits<double>::infinity());
  std::array<double, N> s{};
  for (std::size_t k = 0; k < N; ++k) s[k] = std::max(0.0, eig.values[k]);
  return s;
}

}  // namespace cpdiag
