#pragma once

#include <cmath>
#include <concepts>

#include "discordlab/covariance.hpp"
#include "discordlab/exceptions.hpp"

namespace discordlab {

/// Squeezed-light source, quoted in dB relative to shot noise.  Both values
/// are positive; anti-squeezing below squeezing would violate the
/// uncertainty product of the source.
template <std::floating_point Scalar = double>
struct SqueezerSpec {
  Scalar squeezing_db{};      ///< noise reduction below shot noise
  Scalar antisqueezing_db{};  ///< excess noise above shot noise
};

/// Classical modulation depth: variance added to each quadrature of the
/// thermal-like mode before splitting, in shot-noise units.
template <std::floating_point Scalar = double>
struct ModulationSpec {
  Scalar depth{};
};

/// Converts a variance in shot-noise units to dB below shot noise.
template <std::floating_point Scalar>
Scalar varianceToDb(Scalar variance) {
  using std::log10;
  return -10 * log10(variance);
}

template <std::floating_point Scalar>
Scalar dbToVariance(Scalar db) {
  using std::pow;
  return pow(Scalar(10), -db / 10);
}

/// Two identical amplitude-squeezed modes, one rotated by pi/2, interfered
/// on a symmetric beamsplitter.  Produces an entangled state with
/// anti-correlated phase quadratures (c_p = -c_x).
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> twoModeFromSqueezers(const SqueezerSpec<Scalar>& spec) {
  using std::pow;
  if (spec.squeezing_db < 0 || spec.antisqueezing_db < 0)
    throw DomainError("squeezer dB values must be >= 0");
  const Scalar v_sq = pow(Scalar(10), -spec.squeezing_db / 10);
  const Scalar v_anti = pow(Scalar(10), spec.antisqueezing_db / 10);
  if (v_sq * v_anti < 1 - Scalar(kPhysicalityTol))
    throw UnphysicalSqueezer("squeezer variance product below uncertainty limit");
  const Scalar diag = (v_sq + v_anti) / 2;
  const Scalar c = (v_sq - v_anti) / 2;
  return {diag, diag, diag, diag, c, -c};
}

/// Ideal two-mode squeezed vacuum with squeezing parameter r >= 0.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> tmsv(Scalar r) {
  using std::cosh;
  using std::sinh;
  if (r < 0) throw DomainError("tmsv squeezing parameter must be >= 0");
  const Scalar ch = cosh(2 * r);
  const Scalar sh = sinh(2 * r);
  return {ch, ch, ch, ch, sh, -sh};
}

/// Squeezing parameter of the two-mode squeezed vacuum whose total mean
/// photon number over both modes is nbar.
template <std::floating_point Scalar>
Scalar tmsvParameterForMeanPhotons(Scalar nbar) {
  using std::asinh;
  using std::sqrt;
  if (nbar < 0) throw DomainError("mean photon number must be >= 0");
  return asinh(sqrt(nbar / 2));
}

/// Thermal-like mode diag(1+M, 1+M) split with vacuum on a symmetric
/// beamsplitter.  Separable by construction, with positively correlated
/// quadratures on both axes.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> splitThermal(const ModulationSpec<Scalar>& mod) {
  if (mod.depth < 0) throw DomainError("modulation depth must be >= 0");
  const Scalar diag = 1 + mod.depth / 2;
  const Scalar c = mod.depth / 2;
  return {diag, diag, diag, diag, c, c};
}

/// Total mean photon number of both modes.
template <std::floating_point Scalar>
Scalar meanPhotonNumber(const TwoModeCovariance<Scalar>& sigma) {
  return (sigma.a_xx + sigma.a_pp + sigma.b_xx + sigma.b_pp - 4) / 4;
}

/// Two-mode squeezing in dB: the best noise reduction among the four joint
/// quadratures (x_A +- x_B)/sqrt(2), (p_A +- p_B)/sqrt(2).
template <std::floating_point Scalar>
Scalar twoModeSqueezingDb(const TwoModeCovariance<Scalar>& sigma) {
  const Scalar vx_minus = (sigma.a_xx + sigma.b_xx - 2 * sigma.c_x) / 2;
  const Scalar vx_plus = (sigma.a_xx + sigma.b_xx + 2 * sigma.c_x) / 2;
  const Scalar vp_minus = (sigma.a_pp + sigma.b_pp - 2 * sigma.c_p) / 2;
  const Scalar vp_plus = (sigma.a_pp + sigma.b_pp + 2 * sigma.c_p) / 2;
  const Scalar best = std::min(std::min(vx_minus, vx_plus), std::min(vp_minus, vp_plus));
  return varianceToDb(best);
}

}  // namespace discordlab
