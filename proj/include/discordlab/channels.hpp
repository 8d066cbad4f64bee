#pragma once

#include <cmath>
#include <concepts>
#include <limits>

#include "discordlab/covariance.hpp"
#include "discordlab/exceptions.hpp"

namespace discordlab {

/// One-parameter family of single-mode Gaussian channels on mode B.
template <std::floating_point Scalar = double>
struct ChannelSpec {
  Scalar transmittance{1};  ///< T in [0, 1]
  Scalar added_noise{0};    ///< kappa >= 0, shot-noise units per quadrature
};

/// Homodyne-detector imperfections: finite efficiency, electronic noise,
/// and finite common-mode rejection of the subtraction.
template <std::floating_point Scalar = double>
struct DetectorSpec {
  Scalar efficiency{1};  ///< eta in (0, 1]
  Scalar electronic_noise_db{-std::numeric_limits<Scalar>::infinity()};
  Scalar cmr_db{std::numeric_limits<Scalar>::infinity()};
};

/// Beamsplitter loss on mode B with a vacuum environment.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> attenuateModeB(const TwoModeCovariance<Scalar>& sigma, Scalar t) {
  using std::sqrt;
  if (!(t >= 0 && t <= 1)) throw DomainError("transmittance must lie in [0, 1]");
  TwoModeCovariance<Scalar> out = sigma;
  out.b_xx = t * sigma.b_xx + (1 - t);
  out.b_pp = t * sigma.b_pp + (1 - t);
  out.c_x = sqrt(t) * sigma.c_x;
  out.c_p = sqrt(t) * sigma.c_p;
  return out;
}

/// Classical (additive Gaussian) noise on both quadratures of mode B.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> addClassicalNoiseModeB(const TwoModeCovariance<Scalar>& sigma,
                                                 Scalar kappa) {
  if (!(kappa >= 0)) throw DomainError("added noise must be >= 0");
  TwoModeCovariance<Scalar> out = sigma;
  out.b_xx += kappa;
  out.b_pp += kappa;
  return out;
}

/// Apparent covariance after detection: efficiency eta on both modes,
/// then the common-mode leak eps = M * 10^(-cmr/10) and electronic noise
/// added to every variance.  The leak scales with the modulation depth M
/// and is uncorrelated between modes, so it does not touch c.
template <std::floating_point Scalar>
TwoModeCovariance<Scalar> detectorMap(const TwoModeCovariance<Scalar>& sigma,
                                      const DetectorSpec<Scalar>& det,
                                      Scalar modulation_depth) {
  using std::pow;
  if (!(det.efficiency > 0 && det.efficiency <= 1))
    throw DomainError("detector efficiency must lie in (0, 1]");
  if (!(modulation_depth >= 0)) throw DomainError("modulation depth must be >= 0");

  const Scalar eta = det.efficiency;
  const Scalar leak = modulation_depth * pow(Scalar(10), -det.cmr_db / 10);
  const Scalar electronic = pow(Scalar(10), det.electronic_noise_db / 10);
  const Scalar add = leak + electronic;

  TwoModeCovariance<Scalar> out;
  out.a_xx = eta * sigma.a_xx + (1 - eta) + add;
  out.a_pp = eta * sigma.a_pp + (1 - eta) + add;
  out.b_xx = eta * sigma.b_xx + (1 - eta) + add;
  out.b_pp = eta * sigma.b_pp + (1 - eta) + add;
  out.c_x = eta * sigma.c_x;
  out.c_p = eta * sigma.c_p;
  return out;
}

}  // namespace discordlab
