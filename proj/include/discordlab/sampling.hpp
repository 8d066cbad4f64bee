#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>

#include "discordlab/covariance.hpp"
#include "discordlab/exceptions.hpp"

namespace discordlab {

/// Simultaneous quadrature draws, one row per (x_A, p_A, x_B, p_B).
/// Identical (sigma, n, seed) reproduce the matrix bit for bit.
template <std::floating_point Scalar = double>
struct QuadratureSamples {
  std::uint64_t seed{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 4> rows;

  Eigen::Index count() const { return rows.rows(); }
};

using QuadratureSamplesd = QuadratureSamples<double>;

namespace detail {

/// Standard-normal stream: mt19937_64 bits mapped to (0, 1] uniforms and
/// Box-Muller pairs.  mt19937_64 is fully specified by the standard, so
/// the stream is reproducible across implementations.
template <std::floating_point Scalar>
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  Scalar next() {
    using std::cos;
    using std::log;
    using std::sin;
    using std::sqrt;
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Scalar u1 = uniform01();
    const Scalar u2 = uniform01();
    const Scalar radius = sqrt(Scalar(-2) * log(u1));
    const Scalar angle = 2 * std::numbers::pi_v<Scalar> * u2;
    spare_ = radius * sin(angle);
    have_spare_ = true;
    return radius * cos(angle);
  }

 private:
  Scalar uniform01() {
    // 53 high bits, shifted into (0, 1] so log() stays finite.
    const std::uint64_t bits = (gen_() >> 11) + 1;
    return Scalar(bits) * Scalar(0x1p-53);
  }

  std::mt19937_64 gen_;
  Scalar spare_{};
  bool have_spare_ = false;
};

}  // namespace detail

/// Draws n zero-mean Gaussian quadrature 4-tuples with covariance sigma
/// via the Cholesky factor applied to seeded standard normals.
template <std::floating_point Scalar>
QuadratureSamples<Scalar> sample(const TwoModeCovariance<Scalar>& sigma, Eigen::Index n,
                                 std::uint64_t seed) {
  using Matrix4 = typename TwoModeCovariance<Scalar>::Matrix4;
  using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
  if (n < 2) throw DomainError("sample: need n >= 2");

  Eigen::LLT<Matrix4> llt(sigma.toMatrix());
  if (llt.info() != Eigen::Success)
    throw FactorizationFailure("covariance is numerically non-positive");
  const Matrix4 root = llt.matrixL();

  QuadratureSamples<Scalar> out;
  out.seed = seed;
  out.rows.resize(n, 4);
  detail::NormalStream<Scalar> stream(seed);
  Vector4 z;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < 4; ++k) z[k] = stream.next();
    out.rows.row(i) = (root * z).transpose();
  }
  return out;
}

/// Applies beamsplitter loss directly to sample records: x_B -> sqrt(T) x_B
/// + sqrt(1-T) v with fresh vacuum draws v from the given seed.  Used to
/// cross-check the covariance-level channel against the sample level.
template <std::floating_point Scalar>
QuadratureSamples<Scalar> attenuateSamplesModeB(const QuadratureSamples<Scalar>& in, Scalar t,
                                                std::uint64_t vacuum_seed) {
  using std::sqrt;
  if (!(t >= 0 && t <= 1)) throw DomainError("transmittance must lie in [0, 1]");
  QuadratureSamples<Scalar> out = in;
  detail::NormalStream<Scalar> vac(vacuum_seed);
  const Scalar rt = sqrt(t), rr = sqrt(1 - t);
  for (Eigen::Index i = 0; i < out.rows.rows(); ++i) {
    out.rows(i, 2) = rt * out.rows(i, 2) + rr * vac.next();
    out.rows(i, 3) = rt * out.rows(i, 3) + rr * vac.next();
  }
  return out;
}

}  // namespace discordlab
