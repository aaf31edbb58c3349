#pragma once

// Symplectic linear algebra for two-mode Gaussian covariance matrices.
//
// Convention: quadrature ordering (q-, p-, q+, p+), vacuum variance 1/2.
// Block invariants are determinants of the 2x2 sub-blocks of the full
// matrix, so the vacuum has I1 = I2 = 1/4 and symplectic eigenvalues 1/2.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "dce/errors.hpp"

namespace dce {

/// Tolerance for symmetry/shape checks and clamping of round-off.
inline constexpr double kTolNum = 1e-12;
/// Default tolerance for the uncertainty-principle check.
inline constexpr double kTolPhys = 1e-9;

using Matrix4 = Eigen::Matrix4d;
using Matrix2 = Eigen::Matrix2d;

enum class Mode : int { minus = 0, plus = 1 };

/// 4x4 real symmetric covariance matrix of two bosonic modes.
///
/// Construction validates symmetry to kTolNum and then symmetrizes, so
/// entries(i, j) == entries(j, i) holds exactly afterwards.
class CovMatrix2Mode {
 public:
  CovMatrix2Mode() : m_(Matrix4::Identity() * 0.5) {}

  explicit CovMatrix2Mode(const Matrix4& m) {
    if (!m.allFinite()) {
      throw InvalidStateError("covariance matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kTolNum * scale) {
      throw InvalidStateError("covariance matrix is not symmetric");
    }
    m_ = 0.5 * (m + m.transpose());
  }

  static CovMatrix2Mode vacuum() { return CovMatrix2Mode{}; }

  /// Product of two thermal modes with local variances a and b.
  static CovMatrix2Mode product_thermal(double a, double b) {
    Matrix4 m = Matrix4::Zero();
    m.diagonal() << a, a, b, b;
    return CovMatrix2Mode(m);
  }

  const Matrix4& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Matrix2 block_a() const { return m_.block<2, 2>(0, 0); }
  Matrix2 block_b() const { return m_.block<2, 2>(2, 2); }
  Matrix2 block_c() const { return m_.block<2, 2>(0, 2); }

  friend bool operator==(const CovMatrix2Mode& x, const CovMatrix2Mode& y) {
    return x.m_ == y.m_;
  }

 private:
  Matrix4 m_;
};

/// Block-diagonal symplectic form with (0, 1; -1, 0) per mode.
struct SymplecticForm {
  static Matrix4 omega() {
    Matrix4 w = Matrix4::Zero();
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
  }
};

struct BlockInvariants {
  double i1 = 0.0;  // det A
  double i2 = 0.0;  // det B
  double i3 = 0.0;  // det C
  double i4 = 0.0;  // det V
};

struct SymplecticSpectrum {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
};

namespace detail {

inline double det2(const Matrix2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Inverse square root of a 2x2 symmetric positive definite matrix:
// sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
inline Matrix2 inv_sqrt_spd2(const Matrix2& m) {
  const double s = std::sqrt(det2(m));
  const double t = std::sqrt(m.trace() + 2.0 * s);
  Matrix2 root = (m + s * Matrix2::Identity()) / t;
  const double d = det2(root);
  Matrix2 inv;
  inv << root(1, 1), -root(0, 1), -root(1, 0), root(0, 0);
  return inv / d;
}

inline bool positive_definite(const Matrix4& m) {
  Eigen::LLT<Matrix4> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace detail

inline BlockInvariants block_invariants(const CovMatrix2Mode& v) {
  return BlockInvariants{detail::det2(v.block_a()), detail::det2(v.block_b()),
                         detail::det2(v.block_c()), v.matrix().determinant()};
}

/// Symplectic eigenvalues, i.e. the moduli of the eigenvalues of iΩV.
///
/// Uses the two-mode closed form ν² = (Δ ± √(Δ² − 4 det V))/2 with
/// Δ = I1 + I2 + 2 I3. The discriminant is evaluated after bringing the
/// local blocks to √I·1 by local symplectic maps; there it factors into
/// terms that stay accurate when ν- ≈ ν+.
inline SymplecticSpectrum symplectic_eigenvalues(const CovMatrix2Mode& v) {
  if (!detail::positive_definite(v.matrix())) {
    throw InvalidStateError("covariance matrix is not positive definite");
  }
  const Matrix2 blk_a = v.block_a();
  const Matrix2 blk_b = v.block_b();
  const double a = std::sqrt(detail::det2(blk_a));
  const double b = std::sqrt(detail::det2(blk_b));

  // Correlation block in local standard form: C' = √(ab) A^{-1/2} C B^{-1/2}.
  const Matrix2 cn =
      std::sqrt(a * b) * detail::inv_sqrt_spd2(blk_a) * v.block_c() * detail::inv_sqrt_spd2(blk_b);
  // Signed singular values of C' are c1 = Q + R, c2 = Q - R.
  const double e = 0.5 * (cn(0, 0) + cn(1, 1));
  const double f = 0.5 * (cn(0, 0) - cn(1, 1));
  const double g = 0.5 * (cn(1, 0) + cn(0, 1));
  const double h = 0.5 * (cn(1, 0) - cn(0, 1));
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);

  const double delta = a * a + b * b + 2.0 * (q - r) * (q + r);
  const double amb = a - b;
  const double apb = a + b;
  const double disc = (amb * apb) * (amb * apb) + 4.0 * (apb * apb * q * q - amb * amb * r * r);
  const double scale = delta * delta;
  if (disc < -kTolNum * scale) {
    throw NumericalError(fmt::format("negative symplectic discriminant {}", disc));
  }
  const double s = std::sqrt(std::max(disc, 0.0));
  const double lo2 = 0.5 * (delta - s);
  const double hi2 = 0.5 * (delta + s);
  if (!(lo2 > 0.0)) {
    throw InvalidStateError("non-positive symplectic eigenvalue");
  }
  return {std::sqrt(lo2), std::sqrt(hi2)};
}

/// Flips the sign of the selected mode's p quadrature (Gaussian PPT map).
inline CovMatrix2Mode partial_transpose(const CovMatrix2Mode& v, Mode mode) {
  const int m = static_cast<int>(mode);
  if (m != 0 && m != 1) {
    throw ArgumentError(fmt::format("invalid mode index {}", m));
  }
  const int p = 2 * m + 1;
  Matrix4 out = v.matrix();
  out.row(p) *= -1.0;
  out.col(p) *= -1.0;
  return CovMatrix2Mode(out);
}

/// Exchanges the two modes, i.e. (q-, p-) <-> (q+, p+).
inline CovMatrix2Mode swap_modes(const CovMatrix2Mode& v) {
  Eigen::PermutationMatrix<4> perm;
  perm.indices() << 2, 3, 0, 1;
  return CovMatrix2Mode(perm * v.matrix() * perm.transpose());
}

/// True iff the state obeys the uncertainty relation ν- >= 1/2 - tol.
inline bool is_physical(const CovMatrix2Mode& v, double tol_phys = kTolPhys) {
  try {
    return symplectic_eigenvalues(v).nu_minus >= 0.5 - tol_phys;
  } catch (const Error&) {
    return false;
  }
}

/// Rewrites an off-diagonal block c·σx as c·σz.
inline CovMatrix2Mode standardize(const CovMatrix2Mode& v) {
  const Matrix2 c = v.block_c();
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if (std::abs(c(0, 0)) > kTolNum * scale || std::abs(c(1, 1)) > kTolNum * scale ||
      std::abs(c(0, 1) - c(1, 0)) > kTolNum * scale) {
    throw ShapeError("off-diagonal block is not proportional to sigma_x");
  }
  const double mag = 0.5 * (c(0, 1) + c(1, 0));
  Matrix4 out = v.matrix();
  Matrix2 cz;
  cz << mag, 0.0, 0.0, -mag;
  out.block<2, 2>(0, 2) = cz;
  out.block<2, 2>(2, 0) = cz.transpose();
  return CovMatrix2Mode(out);
}

}  // namespace dce
