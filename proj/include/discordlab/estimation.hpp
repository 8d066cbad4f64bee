#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <random>
#include <vector>

#include "discordlab/covariance.hpp"
#include "discordlab/exceptions.hpp"
#include "discordlab/measures.hpp"
#include "discordlab/sampling.hpp"

namespace discordlab {

/// Unbiased sample covariance (divisor n-1); the mean is estimated, not
/// assumed zero.
template <std::floating_point Scalar>
typename TwoModeCovariance<Scalar>::Matrix4 estimateCovariance(
    const QuadratureSamples<Scalar>& samples) {
  const Eigen::Index n = samples.count();
  if (n < 2) throw InsufficientData("covariance estimation needs n >= 2");
  const Eigen::Matrix<Scalar, 1, 4> mean = samples.rows.colwise().mean();
  const auto centered = samples.rows.rowwise() - mean;
  return (centered.adjoint() * centered) / Scalar(n - 1);
}

/// One-sigma error bars for the informational measures.
template <std::floating_point Scalar = double>
struct ErrorBars {
  Scalar mutual_info_I{};
  Scalar classical_info_J{};
  Scalar discord_D{};
  Scalar log_negativity{};
};

template <std::floating_point Scalar = double>
struct EstimatedMeasures {
  MeasureReport<Scalar> report;  ///< point estimate from the full sample
  ErrorBars<Scalar> errors;      ///< bootstrap standard deviations
  int resamples{};
  int projected_resamples{};     ///< resamples nudged back to nu_minus = 1
  Scalar point_projection{};     ///< diagonal loading applied to the point estimate
};

using EstimatedMeasuresd = EstimatedMeasures<double>;

/// Smallest uniform diagonal loading delta >= 0 with
/// nu_minus(sigma + delta I) = 1.  Returns the loaded state and delta;
/// delta = 0 when the input is already physical.  Loading every variance by
/// the same amount is measure-monotone and parameter-free.
template <std::floating_point Scalar>
std::pair<TwoModeCovariance<Scalar>, Scalar> projectToPhysical(
    const TwoModeCovariance<Scalar>& sigma) {
  const auto load = [&sigma](Scalar d) {
    TwoModeCovariance<Scalar> s = sigma;
    s.a_xx += d;
    s.a_pp += d;
    s.b_xx += d;
    s.b_pp += d;
    return s;
  };
  const auto nuMinus = [&load](Scalar d) { return invariants(load(d)).nu_minus; };

  const Scalar nu0 = nuMinus(0);
  if (nu0 >= 1) return {sigma, Scalar(0)};

  // Symplectic eigenvalues are superadditive, so nu_minus(sigma + dI) >=
  // nu0 + d; the bracket below is guaranteed to straddle 1.
  Scalar lo = 0, hi = (1 - nu0) + Scalar(1e-12);
  while (nuMinus(hi) < 1) hi *= 2;
  for (int i = 0; i < 200 && (hi - lo) > Scalar(1e-16) * (1 + hi); ++i) {
    const Scalar mid = (lo + hi) / 2;
    (nuMinus(mid) < 1 ? lo : hi) = mid;
  }
  return {load(hi), hi};
}

namespace detail {

/// Standard-form coercion tolerance for an estimated covariance: six
/// standard errors of the largest off-standard entry.
template <std::floating_point Scalar>
Scalar coercionTol(const typename TwoModeCovariance<Scalar>::Matrix4& cov, Eigen::Index n) {
  using std::sqrt;
  constexpr int kOff[4][2] = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
  Scalar worst = 0;
  for (auto [i, j] : kOff) {
    const Scalar var_ij = (cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / Scalar(n - 1);
    worst = std::max(worst, sqrt(var_ij));
  }
  return 6 * worst;
}

template <std::floating_point Scalar>
struct ResampleOutcome {
  MeasureReport<Scalar> report;
  Scalar nu_minus_raw{};
  bool projected = false;
};

template <std::floating_point Scalar>
ResampleOutcome<Scalar> measuresFromEstimate(
    const typename TwoModeCovariance<Scalar>::Matrix4& cov, Eigen::Index n, LogUnit unit,
    Scalar* projection = nullptr) {
  const auto std_form = coerceStandardForm<Scalar>(cov, coercionTol<Scalar>(cov, n));
  ResampleOutcome<Scalar> out;
  out.nu_minus_raw = invariants(std_form).nu_minus;
  auto [physical, delta] = projectToPhysical(std_form);
  out.projected = delta > 0;
  if (projection) *projection = delta;
  out.report = measureReport(physical, unit);
  return out;
}

}  // namespace detail

/// Bootstrap estimate of all measures with symmetric error bars.
///
/// B row resamples produce B reports; the error bar per measure is the
/// standard deviation across them.  Resampled covariances that dip below
/// the uncertainty bound are projected back (and counted); states sitting
/// exactly on the bound fluctuate below it in about half of all resamples
/// at any n, so only violations beyond six bootstrap standard deviations
/// of nu_minus count toward the degenerate-bootstrap abort.
template <std::floating_point Scalar>
EstimatedMeasures<Scalar> measuresWithErrors(const QuadratureSamples<Scalar>& samples,
                                             int resamples, std::uint64_t seed,
                                             LogUnit unit = LogUnit::Bits) {
  using Matrix4 = typename TwoModeCovariance<Scalar>::Matrix4;
  using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
  using std::sqrt;

  const Eigen::Index n = samples.count();
  if (n < 100) throw InsufficientData("bootstrap needs n >= 100");
  if (resamples < 50) throw InsufficientData("bootstrap needs >= 50 resamples");

  EstimatedMeasures<Scalar> out;
  out.resamples = resamples;
  out.report = detail::measuresFromEstimate<Scalar>(estimateCovariance(samples), n, unit,
                                                    &out.point_projection)
                   .report;

  // Resample index sets are pre-drawn so the outcome depends only on
  // (seed, resamples), not on evaluation order.
  std::mt19937_64 gen(seed);
  std::vector<std::uint32_t> indices(static_cast<std::size_t>(resamples) * n);
  for (auto& ix : indices) ix = static_cast<std::uint32_t>(gen() % n);

  std::vector<detail::ResampleOutcome<Scalar>> outcomes(resamples);
  for (int b = 0; b < resamples; ++b) {
    Vector4 sum = Vector4::Zero();
    Matrix4 sq = Matrix4::Zero();
    const std::uint32_t* ix = indices.data() + static_cast<std::size_t>(b) * n;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vector4 row = samples.rows.row(ix[i]).transpose();
      sum += row;
      sq += row * row.transpose();
    }
    const Matrix4 cov = (sq - sum * sum.transpose() / Scalar(n)) / Scalar(n - 1);
    outcomes[b] = detail::measuresFromEstimate<Scalar>(cov, n, unit);
  }

  Scalar nu_mean = 0;
  for (const auto& o : outcomes) nu_mean += o.nu_minus_raw;
  nu_mean /= resamples;
  Scalar nu_var = 0;
  for (const auto& o : outcomes) nu_var += (o.nu_minus_raw - nu_mean) * (o.nu_minus_raw - nu_mean);
  const Scalar nu_sd = sqrt(nu_var / std::max(resamples - 1, 1));

  int hard_violations = 0;
  for (const auto& o : outcomes) {
    if (o.projected) ++out.projected_resamples;
    if (o.nu_minus_raw < 1 - 6 * nu_sd - Scalar(kPhysicalityTol)) ++hard_violations;
  }
  if (hard_violations > resamples / 5)
    throw DegenerateBootstrap("more than 20% of resamples unphysical beyond statistical scale");

  const auto stddev = [&](auto field) {
    Scalar mean = 0;
    for (const auto& o : outcomes) mean += field(o.report);
    mean /= resamples;
    Scalar var = 0;
    for (const auto& o : outcomes) {
      const Scalar d = field(o.report) - mean;
      var += d * d;
    }
    return sqrt(var / std::max(resamples - 1, 1));
  };
  out.errors.mutual_info_I = stddev([](const auto& r) { return r.mutual_info_I; });
  out.errors.classical_info_J = stddev([](const auto& r) { return r.classical_info_J; });
  out.errors.discord_D = stddev([](const auto& r) { return r.discord_D; });
  out.errors.log_negativity = stddev([](const auto& r) { return r.log_negativity; });
  return out;
}

}  // namespace discordlab
