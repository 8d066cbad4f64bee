#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <sstream>
#include <string>

#include "discordlab/exceptions.hpp"

namespace discordlab {

inline constexpr double kPhysicalityTol = 1e-9;

/// Two-mode covariance matrix in standard form, shot-noise units
/// (vacuum quadrature variance = 1).  Quadrature order is
/// (x_A, p_A, x_B, p_B); the only nonzero off-diagonal entries are the
/// x_A-x_B and p_A-p_B cross covariances.
template <std::floating_point Scalar = double>
struct TwoModeCovariance {
  Scalar a_xx{1};  ///< var(x_A)
  Scalar a_pp{1};  ///< var(p_A)
  Scalar b_xx{1};  ///< var(x_B)
  Scalar b_pp{1};  ///< var(p_B)
  Scalar c_x{0};   ///< cov(x_A, x_B)
  Scalar c_p{0};   ///< cov(p_A, p_B)

  using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
  using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

  static TwoModeCovariance vacuum() { return {}; }

  Matrix4 toMatrix() const {
    Matrix4 m;
    m << a_xx, 0, c_x, 0,
         0, a_pp, 0, c_p,
         c_x, 0, b_xx, 0,
         0, c_p, 0, b_pp;
    return m;
  }

  Matrix2 blockA() const { return Eigen::DiagonalMatrix<Scalar, 2>(a_xx, a_pp); }
  Matrix2 blockB() const { return Eigen::DiagonalMatrix<Scalar, 2>(b_xx, b_pp); }
  Matrix2 blockCross() const { return Eigen::DiagonalMatrix<Scalar, 2>(c_x, c_p); }

  friend bool operator==(const TwoModeCovariance&, const TwoModeCovariance&) = default;
};

using TwoModeCovarianced = TwoModeCovariance<double>;
using TwoModeCovariancef = TwoModeCovariance<float>;

/// Relabels the two modes (A <-> B).  Measures that single out mode B are
/// not symmetric under this map in general.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> swapModes(const TwoModeCovariance<Scalar>& sigma) {
  return {sigma.b_xx, sigma.b_pp, sigma.a_xx, sigma.a_pp, sigma.c_x, sigma.c_p};
}

/// Symplectic invariants of a standard-form state together with the
/// symplectic eigenvalues they determine.  nu_tilde_minus is the smaller
/// eigenvalue of the partial transpose (p_B sign flip), the PPT witness.
template <std::floating_point Scalar = double>
struct SymplecticInvariants {
  Scalar i1{};     ///< det of mode-A block
  Scalar i2{};     ///< det of mode-B block
  Scalar i3{};     ///< det of the cross block (may be negative)
  Scalar i4{};     ///< det of the full 4x4 matrix
  Scalar delta{};  ///< i1 + i2 + 2*i3
  Scalar nu_minus{};
  Scalar nu_plus{};
  Scalar nu_tilde_minus{};
};

using SymplecticInvariantsd = SymplecticInvariants<double>;

namespace detail {

/// Solves nu^2 from x^2 - delta*x + i4 = 0 with the stable conjugate form
/// for the small root.  Throws if the discriminant is negative beyond tol.
template <std::floating_point Scalar>
std::pair<Scalar, Scalar> symplecticPairSquared(Scalar delta, Scalar i4, Scalar tol) {
  using std::sqrt;
  Scalar disc = delta * delta - 4 * i4;
  const Scalar scale = std::max(Scalar(1), delta * delta);
  if (disc < -tol * scale) {
    std::ostringstream os;
    os << "complex symplectic spectrum: delta^2 - 4*I4 = " << disc;
    throw ComplexEigenvalue(os.str());
  }
  if (disc < 0) disc = 0;
  const Scalar root = sqrt(disc);
  const Scalar large = (delta + root) / 2;
  const Scalar small = (large > 0) ? i4 / large : Scalar(0);
  return {small, large};
}

template <std::floating_point Scalar>
bool positiveDefinite(const typename TwoModeCovariance<Scalar>::Matrix4& m) {
  Eigen::LLT<typename TwoModeCovariance<Scalar>::Matrix4> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace detail

/// Computes symplectic eigenvalues directly from invariant values.
/// nu_{-+}^2 are the roots of x^2 - delta*x + i4.
template <std::floating_point Scalar>
std::pair<Scalar, Scalar> symplecticEigsFromInvariants(Scalar i1, Scalar i2, Scalar i3,
                                                       Scalar i4,
                                                       Scalar tol = Scalar(kPhysicalityTol)) {
  using std::sqrt;
  const auto [lo, hi] = detail::symplecticPairSquared(i1 + i2 + 2 * i3, i4, tol);
  return {sqrt(lo), sqrt(hi)};
}

/// Symplectic invariants and eigenvalues of a standard-form state.
///
/// i4 uses the factored closed form (a_xx*b_xx - c_x^2)(a_pp*b_pp - c_p^2),
/// which is exact for standard-form matrices and avoids the cancellation of
/// the generic 4x4 expansion.
template <std::floating_point Scalar>
SymplecticInvariants<Scalar> invariants(const TwoModeCovariance<Scalar>& sigma,
                                        Scalar tol = Scalar(kPhysicalityTol)) {
  using std::sqrt;
  if (!detail::positiveDefinite<Scalar>(sigma.toMatrix()))
    throw NonPositiveMatrix("covariance matrix is not positive definite");

  SymplecticInvariants<Scalar> inv;
  inv.i1 = sigma.a_xx * sigma.a_pp;
  inv.i2 = sigma.b_xx * sigma.b_pp;
  inv.i3 = sigma.c_x * sigma.c_p;
  inv.i4 = (sigma.a_xx * sigma.b_xx - sigma.c_x * sigma.c_x) *
           (sigma.a_pp * sigma.b_pp - sigma.c_p * sigma.c_p);
  inv.delta = inv.i1 + inv.i2 + 2 * inv.i3;

  const auto [lo, hi] = detail::symplecticPairSquared(inv.delta, inv.i4, tol);
  inv.nu_minus = sqrt(lo);
  inv.nu_plus = sqrt(hi);

  const Scalar delta_tilde = inv.i1 + inv.i2 - 2 * inv.i3;
  const auto [tlo, thi] = detail::symplecticPairSquared(delta_tilde, inv.i4, tol);
  inv.nu_tilde_minus = sqrt(tlo);
  return inv;
}

/// Outcome of the uncertainty-relation check.  `ok` is true iff the matrix
/// is symmetric positive definite and nu_minus >= 1 - tol.
struct PhysicalityVerdict {
  bool ok = true;
  std::string violation;  ///< empty when ok
  double value = 0;       ///< the violating quantity
};

template <std::floating_point Scalar>
PhysicalityVerdict validatePhysicality(const TwoModeCovariance<Scalar>& sigma,
                                       Scalar tol = Scalar(kPhysicalityTol)) {
  const Scalar min_var = std::min(std::min(sigma.a_xx, sigma.a_pp),
                                  std::min(sigma.b_xx, sigma.b_pp));
  if (!(min_var > 0))
    return {false, "non-positive variance", static_cast<double>(min_var)};
  if (!detail::positiveDefinite<Scalar>(sigma.toMatrix())) {
    Eigen::SelfAdjointEigenSolver<typename TwoModeCovariance<Scalar>::Matrix4> es(
        sigma.toMatrix(), Eigen::EigenvaluesOnly);
    return {false, "matrix not positive definite",
            static_cast<double>(es.eigenvalues().minCoeff())};
  }
  SymplecticInvariants<Scalar> inv;
  try {
    inv = invariants(sigma, tol);
  } catch (const ComplexEigenvalue&) {
    return {false, "complex symplectic spectrum", 0.0};
  }
  if (inv.nu_minus < 1 - tol)
    return {false, "uncertainty bound nu_minus >= 1 violated",
            static_cast<double>(inv.nu_minus)};
  return {};
}

/// Extracts the six standard-form entries from a full 4x4 symmetric matrix.
/// Every off-standard entry (the x-p cross terms within and between modes)
/// must have magnitude <= tol, as must any asymmetry.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> coerceStandardForm(
    const typename TwoModeCovariance<Scalar>::Matrix4& full, Scalar tol) {
  using std::abs;
  Scalar worst_asym = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      worst_asym = std::max(worst_asym, abs(full(i, j) - full(j, i)));
  if (worst_asym > tol) {
    std::ostringstream os;
    os << "matrix asymmetry " << worst_asym << " exceeds tolerance " << tol;
    throw NotStandardForm(os.str(), static_cast<double>(worst_asym), -1, -1);
  }

  // Off-standard positions in the (x_A, p_A, x_B, p_B) ordering.
  constexpr int kOff[4][2] = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
  Scalar worst = 0;
  int wr = 0, wc = 0;
  for (auto [i, j] : kOff) {
    const Scalar v = abs((full(i, j) + full(j, i)) / 2);
    if (v > worst) {
      worst = v;
      wr = i;
      wc = j;
    }
  }
  if (worst > tol) {
    std::ostringstream os;
    os << "off-standard-form entry (" << wr << "," << wc << ") = " << worst
       << " exceeds tolerance " << tol;
    throw NotStandardForm(os.str(), static_cast<double>(worst), wr, wc);
  }

  return {full(0, 0), full(1, 1), full(2, 2), full(3, 3),
          (full(0, 2) + full(2, 0)) / 2, (full(1, 3) + full(3, 1)) / 2};
}

}  // namespace discordlab
