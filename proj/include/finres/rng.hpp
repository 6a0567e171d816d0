#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace finres {

/// Seeded random source with distribution code owned here, so draws are
/// bit-identical across standard libraries (std::normal_distribution and
/// friends are implementation-defined).
///
/// Independent streams are derived from (seed, stream) through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on the open interval (0, 1).
  double Uniform();
  double Normal();
  /// Gamma(shape, scale = 1) via Marsaglia–Tsang.
  double Gamma(double shape);
  /// Draw from IG(shape, scale): density ∝ x^{-shape-1} exp(-scale / x).
  double InverseGamma(double shape, double scale);
  /// Index drawn proportionally to nonnegative weights.
  std::size_t Categorical(std::span<const double> weights);

  std::uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Mixes a seed and a stream index into a 64-bit engine seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace finres
