#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>

#include "discordlab/covariance.hpp"
#include "discordlab/exceptions.hpp"

namespace discordlab {

/// Reporting unit for all entropic quantities.
enum class LogUnit { Bits, Nats };

constexpr std::string_view toString(LogUnit u) {
  return u == LogUnit::Bits ? "bits" : "nats";
}

/// Which closed-form expression produced e_min.
enum class EminBranch { A, B, Degenerate };

constexpr std::string_view toString(EminBranch b) {
  switch (b) {
    case EminBranch::A: return "a";
    case EminBranch::B: return "b";
    default: return "degenerate";
  }
}

/// All correlation measures of one state.  The informational quantities
/// are in the requested unit; e_min is a dimensionless determinant.
template <std::floating_point Scalar = double>
struct MeasureReport {
  Scalar mutual_info_I{};
  Scalar classical_info_J{};
  Scalar discord_D{};
  Scalar log_negativity{};
  Scalar e_min{1};
  bool separable{true};
  EminBranch branch{EminBranch::A};
};

using MeasureReportd = MeasureReport<double>;

/// Pure single-mode Gaussian measurement, sigma_M = R(phi) diag(lambda,
/// 1/lambda) R(phi)^T.  lambda = 1 is heterodyne; lambda -> 0 or infinity
/// approaches homodyne along the rotated axes.
template <std::floating_point Scalar = double>
struct MeasurementCovariance {
  Scalar lambda{1};
  Scalar phi{0};

  typename TwoModeCovariance<Scalar>::Matrix2 toMatrix() const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(phi), s = sin(phi);
    typename TwoModeCovariance<Scalar>::Matrix2 m;
    m << lambda * c * c + s * s / lambda, (lambda - 1 / lambda) * c * s,
        (lambda - 1 / lambda) * c * s, lambda * s * s + c * c / lambda;
    return m;
  }
};

namespace detail {

/// Bosonic entropy function in nats; x is a symplectic eigenvalue >= 1.
template <std::floating_point Scalar>
Scalar entropyFNats(Scalar x) {
  using std::log;
  if (x <= 1) return 0;
  const Scalar hi = (x + 1) / 2;
  const Scalar lo = (x - 1) / 2;
  return hi * log(hi) - lo * log(lo);
}

template <std::floating_point Scalar>
constexpr Scalar unitScale(LogUnit unit) {
  return unit == LogUnit::Bits ? Scalar(1) / std::numbers::ln2_v<Scalar> : Scalar(1);
}

}  // namespace detail

/// Entropy of a thermal mode with symplectic eigenvalue x:
/// f(x) = ((x+1)/2) log((x+1)/2) - ((x-1)/2) log((x-1)/2), f(1) = 0.
template <std::floating_point Scalar>
Scalar entropyF(Scalar x, LogUnit unit = LogUnit::Bits, Scalar tol = Scalar(kPhysicalityTol)) {
  if (x < 1 - tol) {
    std::ostringstream os;
    os << "entropy argument " << x << " below 1";
    throw DomainError(os.str());
  }
  return detail::entropyFNats(x) * detail::unitScale<Scalar>(unit);
}

/// Von Neumann mutual information I = f(sqrt(I1)) + f(sqrt(I2)) - f(nu-) - f(nu+).
template <std::floating_point Scalar>
Scalar mutualInformation(const SymplecticInvariants<Scalar>& inv, LogUnit unit = LogUnit::Bits) {
  using std::sqrt;
  const Scalar nats = detail::entropyFNats(sqrt(inv.i1)) + detail::entropyFNats(sqrt(inv.i2)) -
                      detail::entropyFNats(inv.nu_minus) - detail::entropyFNats(inv.nu_plus);
  return nats * detail::unitScale<Scalar>(unit);
}

template <std::floating_point Scalar>
Scalar mutualInformation(const TwoModeCovariance<Scalar>& sigma, LogUnit unit = LogUnit::Bits) {
  return mutualInformation(invariants(sigma), unit);
}

template <std::floating_point Scalar = double>
struct EminResult {
  Scalar value{1};
  EminBranch branch{EminBranch::A};
};

/// Minimal conditional determinant of mode A over Gaussian measurements on
/// mode B, in closed form.  Branch a) applies when
/// (I4 - I1 I2)^2 <= I3^2 (I2+1)(I1+I4); branch b) otherwise.  A pure and
/// uncorrelated mode B makes both expressions degenerate and the
/// product-state limit I1 is returned.
template <std::floating_point Scalar>
EminResult<Scalar> eMin(const SymplecticInvariants<Scalar>& inv,
                        Scalar tol = Scalar(1e-8)) {
  using std::abs;
  using std::sqrt;
  const Scalar i1 = inv.i1, i2 = inv.i2, i3 = inv.i3, i4 = inv.i4;
  if (abs(i2 - 1) < tol && abs(i3) < tol) return {i1, EminBranch::Degenerate};

  const Scalar gap = i4 - i1 * i2;
  if (gap * gap <= i3 * i3 * (i2 + 1) * (i1 + i4)) {
    const Scalar rad = std::max(i3 * i3 + (i2 - 1) * (i4 - i1), Scalar(0));
    const Scalar num = 2 * i3 * i3 + (i2 - 1) * (i4 - i1) + 2 * abs(i3) * sqrt(rad);
    return {num / ((i2 - 1) * (i2 - 1)), EminBranch::A};
  }
  const Scalar rad =
      std::max(i3 * i3 * i3 * i3 + gap * gap - 2 * i3 * i3 * (i4 + i1 * i2), Scalar(0));
  return {(i1 * i2 - i3 * i3 + i4 - sqrt(rad)) / (2 * i2), EminBranch::B};
}

/// Smaller symplectic eigenvalue of the partially transposed state;
/// < 1 certifies entanglement, >= 1 certifies separability here.
template <std::floating_point Scalar>
Scalar pptWitness(const TwoModeCovariance<Scalar>& sigma) {
  return invariants(sigma).nu_tilde_minus;
}

/// Logarithmic negativity max(0, -log nu_tilde_minus).
template <std::floating_point Scalar>
Scalar logNegativity(const TwoModeCovariance<Scalar>& sigma, LogUnit unit = LogUnit::Bits) {
  using std::log;
  const Scalar nt = pptWitness(sigma);
  return std::max(Scalar(0), -log(nt) * detail::unitScale<Scalar>(unit));
}

template <std::floating_point Scalar>
bool isSeparablePpt(const TwoModeCovariance<Scalar>& sigma,
                    Scalar tol = Scalar(kPhysicalityTol)) {
  return pptWitness(sigma) >= 1 - tol;
}

/// Determinant of mode A's covariance conditioned on measuring sigma_M on
/// mode B: det(alpha - gamma (beta + sigma_M)^-1 gamma^T), on 2x2 blocks.
template <std::floating_point Scalar>
Scalar conditionalADeterminant(const TwoModeCovariance<Scalar>& sigma,
                               const MeasurementCovariance<Scalar>& m) {
  if (!(m.lambda > 0)) throw DomainError("measurement squeezing lambda must be > 0");
  const auto sm = m.toMatrix();
  const Scalar s00 = sigma.b_xx + sm(0, 0);
  const Scalar s01 = sm(0, 1);
  const Scalar s11 = sigma.b_pp + sm(1, 1);
  const Scalar det_s = s00 * s11 - s01 * s01;
  if (!(det_s > 0)) throw SingularMatrix("beta + sigma_M is not invertible");

  // eps = alpha - gamma S^-1 gamma^T with diagonal alpha, gamma.
  const Scalar e00 = sigma.a_xx - sigma.c_x * sigma.c_x * s11 / det_s;
  const Scalar e11 = sigma.a_pp - sigma.c_p * sigma.c_p * s00 / det_s;
  const Scalar e01 = sigma.c_x * sigma.c_p * s01 / det_s;
  return e00 * e11 - e01 * e01;
}

template <std::floating_point Scalar = double>
struct OracleResult {
  Scalar e_min{};
  MeasurementCovariance<Scalar> argmin;
};

/// Direct numerical minimization of the conditional determinant over pure
/// Gaussian measurements: a coarse grid in (log10 lambda in [-8, 8],
/// phi in [0, pi)) followed by deterministic Nelder-Mead refinement.
/// Independent of the closed-form branches, which it is used to verify.
template <std::floating_point Scalar>
OracleResult<Scalar> minimizeOracle(const TwoModeCovariance<Scalar>& sigma,
                                    int grid_size = 48, int refine_iters = 200) {
  using std::pow;
  if (grid_size < 2 || refine_iters < 0)
    throw DomainError("oracle needs grid_size >= 2 and refine_iters >= 0");

  // log10 lambda is capped inside the objective so refinement can walk
  // toward the homodyne limit without overflowing 1/lambda.
  const auto objective = [&sigma](Scalar u, Scalar phi) {
    u = std::clamp(u, Scalar(-12), Scalar(12));
    return conditionalADeterminant(sigma,
                                   MeasurementCovariance<Scalar>{pow(Scalar(10), u), phi});
  };

  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int n_phi = std::max(4, grid_size / 2);
  Scalar best_u = 0, best_phi = 0;
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const Scalar u = -8 + Scalar(16) * i / (grid_size - 1);
    for (int j = 0; j < n_phi; ++j) {
      const Scalar phi = pi * j / n_phi;
      const Scalar v = objective(u, phi);
      if (v < best) {
        best = v;
        best_u = u;
        best_phi = phi;
      }
    }
  }

  // Nelder-Mead on (u, phi) seeded half a grid cell around the best point.
  using Point = std::array<Scalar, 2>;
  const Scalar du = Scalar(8) / (grid_size - 1);
  const Scalar dphi = pi / (2 * n_phi);
  std::array<Point, 3> pts{{{best_u, best_phi}, {best_u + du, best_phi}, {best_u, best_phi + dphi}}};
  std::array<Scalar, 3> vals;
  for (int i = 0; i < 3; ++i) vals[i] = objective(pts[i][0], pts[i][1]);

  for (int it = 0; it < refine_iters; ++it) {
    // Order best..worst.
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const std::array<Point, 3> p{pts[idx[0]], pts[idx[1]], pts[idx[2]]};
    const std::array<Scalar, 3> v{vals[idx[0]], vals[idx[1]], vals[idx[2]]};

    const Point cen{(p[0][0] + p[1][0]) / 2, (p[0][1] + p[1][1]) / 2};
    const Point refl{2 * cen[0] - p[2][0], 2 * cen[1] - p[2][1]};
    const Scalar f_refl = objective(refl[0], refl[1]);

    Point new2 = p[2];
    Scalar new_v2 = v[2];
    bool shrink = false;
    if (f_refl < v[0]) {
      const Point exp{3 * cen[0] - 2 * p[2][0], 3 * cen[1] - 2 * p[2][1]};
      const Scalar f_exp = objective(exp[0], exp[1]);
      if (f_exp < f_refl) {
        new2 = exp;
        new_v2 = f_exp;
      } else {
        new2 = refl;
        new_v2 = f_refl;
      }
    } else if (f_refl < v[1]) {
      new2 = refl;
      new_v2 = f_refl;
    } else {
      const Point con{(cen[0] + p[2][0]) / 2, (cen[1] + p[2][1]) / 2};
      const Scalar f_con = objective(con[0], con[1]);
      if (f_con < v[2]) {
        new2 = con;
        new_v2 = f_con;
      } else {
        shrink = true;
      }
    }

    if (shrink) {
      pts[0] = p[0];
      vals[0] = v[0];
      pts[1] = {(p[0][0] + p[1][0]) / 2, (p[0][1] + p[1][1]) / 2};
      pts[2] = {(p[0][0] + p[2][0]) / 2, (p[0][1] + p[2][1]) / 2};
      vals[1] = objective(pts[1][0], pts[1][1]);
      vals[2] = objective(pts[2][0], pts[2][1]);
    } else {
      pts = {p[0], p[1], new2};
      vals = {v[0], v[1], new_v2};
    }
  }

  int ibest = 0;
  for (int i = 1; i < 3; ++i)
    if (vals[i] < vals[ibest]) ibest = i;
  const Scalar u = std::clamp(pts[ibest][0], Scalar(-12), Scalar(12));
  Scalar phi = std::fmod(pts[ibest][1], pi);
  if (phi < 0) phi += pi;
  return {vals[ibest], MeasurementCovariance<Scalar>{pow(Scalar(10), u), phi}};
}

/// Evaluates the full report: mutual information, Gaussian-measurement
/// information J = I - D, discord via the closed form, and the
/// entanglement quantities.  Discord within 1e-9 of zero is clamped so the
/// uncorrelated case reports exactly zero.
template <std::floating_point Scalar>
MeasureReport<Scalar> measureReport(const TwoModeCovariance<Scalar>& sigma,
                                    LogUnit unit = LogUnit::Bits) {
  using std::log;
  using std::sqrt;
  const auto inv = invariants(sigma);
  const auto em = eMin(inv);

  const Scalar f_a = detail::entropyFNats(sqrt(inv.i1));
  const Scalar f_b = detail::entropyFNats(sqrt(inv.i2));
  const Scalar f_m = detail::entropyFNats(inv.nu_minus);
  const Scalar f_p = detail::entropyFNats(inv.nu_plus);
  const Scalar f_e = detail::entropyFNats(sqrt(std::max(em.value, Scalar(1))));

  const Scalar scale = detail::unitScale<Scalar>(unit);
  MeasureReport<Scalar> rep;
  rep.e_min = em.value;
  rep.branch = em.branch;
  rep.mutual_info_I = (f_a + f_b - f_m - f_p) * scale;
  Scalar discord_nats = f_b - f_m - f_p + f_e;
  if (std::abs(discord_nats) * detail::unitScale<Scalar>(LogUnit::Bits) <= Scalar(1e-9))
    discord_nats = 0;
  rep.discord_D = discord_nats * scale;
  rep.classical_info_J = rep.mutual_info_I - rep.discord_D;
  rep.separable = inv.nu_tilde_minus >= 1 - Scalar(kPhysicalityTol);
  rep.log_negativity = std::max(Scalar(0), -log(inv.nu_tilde_minus) * scale);
  return rep;
}

/// Gaussian quantum discord of the state, measuring on mode B.
template <std::floating_point Scalar>
Scalar gaussianDiscord(const TwoModeCovariance<Scalar>& sigma, LogUnit unit = LogUnit::Bits) {
  return measureReport(sigma, unit).discord_D;
}

}  // namespace discordlab
